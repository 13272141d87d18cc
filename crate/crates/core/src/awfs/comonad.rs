use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::sync::Arc;

use super::ef::{copair, e_object, e_square, EfPresentation};
use super::monad::mu;
use crate::error::{contract, input, invariant, Result};
use crate::factorization::{orthogonal_lift, CommutingSquare};
use crate::kernel::{enumerate_functors_over, validate_functor, FinCat, FinFunctor, Guard};
use crate::lens::{lambda_presentation, validate_lens, DeltaLens};
use crate::report::ValidationReport;

/// `δ_f : Jf → JLf`, sending `(a, u)` to `(a, ⟨1_a, u⟩)`.
pub fn delta_small(ef: &EfPresentation, elf: &EfPresentation) -> Result<FinFunctor> {
    if elf.f != ef.lf {
        return Err(input("second presentation is not of Lf"));
    }
    let (jf, jlf) = (&ef.jf, &elf.jf);
    let b = ef.f.cod();
    let obj_map: Vec<_> =
        jf.j.objects()
            .map(|x| {
                let (a, u) = jf.decode_object(x);
                jlf.object(a, ef.lift(ef.object(a, b.identity(ef.f.obj(a))), u))
            })
            .collect();
    let mor_map =
        jf.j.morphisms()
            .map(|m| {
                let (x, v) = jf.decode_morphism(m);
                let (a, u) = jf.decode_object(x);
                jlf.morphism(obj_map[x.0], ef.lift(ef.object(a, u), v))
            })
            .collect();
    FinFunctor::new(jf.j.clone(), jlf.j.clone(), obj_map, mor_map)
}

/// `δ_f` as the diagonal of left `Sf`, right `T_{Lf}`, top `S_{Lf}`, bottom `α_f`.
pub fn delta_small_by_lifting(ef: &EfPresentation, elf: &EfPresentation) -> Result<FinFunctor> {
    let sq = CommutingSquare::new(
        ef.jf.s.clone(),
        elf.jf.t.clone(),
        elf.jf.s.clone(),
        ef.alpha.clone(),
    )?;
    orthogonal_lift(&sq)
}

/// `Δ_f = [α_{Lf} ∘ δ_f, L²f] : Ef → ELf`.
pub fn delta(ef: &EfPresentation, elf: &EfPresentation) -> Result<FinFunctor> {
    let d = delta_small(ef, elf)?;
    copair(ef, &elf.alpha.after(&d)?, &elf.lf)
}

/// `(δ_f, Δ_f)`, after checking `δ_f` against its defining diagonal and the
/// counit laws `R_{Lf} ∘ Δ_f = 1` and `E⟨1_A, Rf⟩ ∘ Δ_f = 1`.
pub fn comonad_data(ef: &EfPresentation, elf: &EfPresentation) -> Result<(FinFunctor, FinFunctor)> {
    let d = delta_small(ef, elf)?;
    if let Some(diff) = delta_small_by_lifting(ef, elf)?.difference(&d) {
        return Err(invariant(format!(
            "δ_f differs from its defining diagonal: {diff}"
        )));
    }
    let big = copair(ef, &elf.alpha.after(&d)?, &elf.lf)?;
    let id_e = FinFunctor::identity(ef.e.clone());
    if elf.rf.after(&big)? != id_e || counit_square(ef, elf)?.after(&big)? != id_e {
        return Err(invariant("Δ_f fails a counit law"));
    }
    Ok((d, big))
}

/// `E⟨1_A, Rf⟩ : ELf → Ef`.
fn counit_square(ef: &EfPresentation, elf: &EfPresentation) -> Result<FinFunctor> {
    let sq = CommutingSquare::new(
        ef.lf.clone(),
        ef.f.clone(),
        FinFunctor::identity(ef.f.dom().clone()),
        ef.rf.clone(),
    )?;
    e_square(&sq, elf, ef)
}

/// Counit, coassociativity and naturality of `Δ` at `f`.
pub fn validate_comonad(f: &FinFunctor, squares: &[CommutingSquare]) -> Result<ValidationReport> {
    validate_comonad_with(f, squares, &delta)
}

/// [`validate_comonad`] with the comultiplication supplied by the caller.
pub fn validate_comonad_with(
    f: &FinFunctor,
    squares: &[CommutingSquare],
    delta: &dyn Fn(&EfPresentation, &EfPresentation) -> Result<FinFunctor>,
) -> Result<ValidationReport> {
    let mut r = ValidationReport::new();
    let ef = e_object(f)?;
    let elf = e_object(&ef.lf)?;
    let big = delta(&ef, &elf)?;
    let fr = validate_functor(&big);
    if !fr.ok() {
        r.merge(fr.scoped("delta-functor"));
        return Ok(r);
    }
    let d = delta_small(&ef, &elf)?;
    if let Some(diff) = delta_small_by_lifting(&ef, &elf)?.difference(&d) {
        r.push("delta-universal", [diff]);
    }
    if let Some(diff) = copair(&ef, &elf.alpha.after(&d)?, &elf.lf)?.difference(&big) {
        r.push("delta-copairing", [diff]);
    }
    let id_e = FinFunctor::identity(ef.e.clone());
    if let Some(diff) = elf.rf.after(&big)?.difference(&id_e) {
        r.push("counit-left", [diff]);
    }
    if let Some(diff) = counit_square(&ef, &elf)?.after(&big)?.difference(&id_e) {
        r.push("counit-right", [diff]);
    }
    let id_a = FinFunctor::identity(f.dom().clone());
    match CommutingSquare::new(ef.lf.clone(), elf.lf.clone(), id_a, big.clone()) {
        Err(e) => r.push("delta-boundary", [e.to_string()]),
        Ok(sq) => {
            let ellf = e_object(&elf.lf)?;
            let e_delta = e_square(&sq, &elf, &ellf)?;
            let delta_lf = delta(&elf, &ellf)?;
            if let Some(diff) = delta_lf.after(&big)?.difference(&e_delta.after(&big)?) {
                r.push("coassociativity", [diff]);
            }
        }
    }

    let mut cache: HashMap<usize, (EfPresentation, EfPresentation, FinFunctor)> = HashMap::new();
    for (i, sq) in squares.iter().enumerate() {
        if sq.left() != f {
            return Err(input("square does not start at f"));
        }
        let g = sq.right();
        let key = squares
            .iter()
            .position(|s| s.right() == g)
            .expect("present");
        let (eg, elg, delta_g) = &*match cache.entry(key) {
            Entry::Occupied(e) => e.into_mut(),
            Entry::Vacant(v) => {
                let eg = e_object(g)?;
                let elg = e_object(&eg.lf)?;
                let delta_g = delta(&eg, &elg)?;
                v.insert((eg, elg, delta_g))
            }
        };
        let ehk = e_square(sq, &ef, eg)?;
        let lsq =
            CommutingSquare::new(ef.lf.clone(), eg.lf.clone(), sq.top().clone(), ehk.clone())?;
        let ehe = e_square(&lsq, &elf, elg)?;
        if let Some(diff) = delta_g.after(&ehk)?.difference(&ehe.after(&big)?) {
            r.push("delta-naturality", [format!("square {i}"), diff]);
        }
    }
    Ok(r)
}

/// The distributive law `λ_f = ⟨Δ_f, μ_f⟩ : LRf → RLf`: its square, its
/// compatibility with `η` and `ε`, and
/// `Δ_f ∘ μ_f = μ_{Lf} ∘ E⟨Δ_f, μ_f⟩ ∘ Δ_{Rf}`.
pub fn validate_distributive_law(f: &FinFunctor) -> Result<ValidationReport> {
    validate_distributive_law_with(f, &delta)
}

/// [`validate_distributive_law`] with the comultiplication supplied by the caller.
pub fn validate_distributive_law_with(
    f: &FinFunctor,
    delta: &dyn Fn(&EfPresentation, &EfPresentation) -> Result<FinFunctor>,
) -> Result<ValidationReport> {
    let mut r = ValidationReport::new();
    let ef = e_object(f)?;
    let erf = e_object(&ef.rf)?;
    let elf = e_object(&ef.lf)?;
    let delta_f = delta(&ef, &elf)?;
    let mu_f = mu(&ef, &erf)?;
    let fr = validate_functor(&delta_f);
    if !fr.ok() {
        r.merge(fr.scoped("delta-functor"));
        return Ok(r);
    }
    let id_b = FinFunctor::identity(f.cod().clone());
    let id_e = FinFunctor::identity(ef.e.clone());

    if let Some(d) = delta_f.after(&ef.lf)?.difference(&elf.lf) {
        r.push("lambda-unit", ["Δ_f ∘ Lf".into(), d]);
    }
    let eta = CommutingSquare::new(f.clone(), ef.rf.clone(), ef.lf.clone(), id_b)?;
    if let Some(d) = mu_f.after(&e_square(&eta, &ef, &erf)?)?.difference(&id_e) {
        r.push("lambda-unit", ["μ_f ∘ E⟨Lf, 1⟩".into(), d]);
    }
    if let Some(d) = counit_square(&ef, &elf)?.after(&delta_f)?.difference(&id_e) {
        r.push("lambda-counit", ["E⟨1, Rf⟩ ∘ Δ_f".into(), d]);
    }
    if let Some(d) = ef.rf.after(&mu_f)?.difference(&erf.rf) {
        r.push("lambda-counit", ["Rf ∘ μ_f".into(), d]);
    }
    let lambda = match CommutingSquare::new(
        erf.lf.clone(),
        elf.rf.clone(),
        delta_f.clone(),
        mu_f.clone(),
    ) {
        Ok(sq) => sq,
        Err(e) => {
            r.push("lambda-square", [e.to_string()]);
            return Ok(r);
        }
    };
    if let Some(d) = elf.rf.after(&delta_f)?.difference(&id_e) {
        r.push("lambda-square", ["R_{Lf} ∘ Δ_f".into(), d]);
    }
    let e_lrf = e_object(&erf.lf)?;
    let e_rlf = e_object(&elf.rf)?;
    let delta_rf = delta(&erf, &e_lrf)?;
    let e_lambda = e_square(&lambda, &e_lrf, &e_rlf)?;
    let mu_lf = mu(&elf, &e_rlf)?;
    let lhs = delta_f.after(&mu_f)?;
    let rhs = mu_lf.after(&e_lambda)?.after(&delta_rf)?;
    if let Some(d) = lhs.difference(&rhs) {
        r.push("lambda-multiplication", [d]);
    }
    Ok(r)
}

/// A coalgebra for the comonad `L`: `q : B → Ef` with `Rf ∘ q = 1`.
#[derive(Clone, Debug)]
pub struct LCoalgebra {
    pub ef: Arc<EfPresentation>,
    pub q: FinFunctor,
}

impl LCoalgebra {
    pub fn f(&self) -> &FinFunctor {
        &self.ef.f
    }
}

pub fn validate_l_coalgebra(c: &LCoalgebra) -> Result<ValidationReport> {
    let mut r = ValidationReport::new();
    let (ef, q, f) = (&c.ef, &c.q, c.f());
    if q.dom() != f.cod() || q.cod() != &ef.e {
        r.push("coalgebra-typing", ["q is not a map B → Ef"]);
        return Ok(r);
    }
    let fr = validate_functor(q);
    if !fr.ok() {
        r.merge(fr.scoped("coalgebra-functor"));
        return Ok(r);
    }
    if let Some(d) = ef
        .rf
        .after(q)?
        .difference(&FinFunctor::identity(f.cod().clone()))
    {
        r.push("coalgebra-section", [d]);
    }
    if let Some(d) = q.after(f)?.difference(&ef.lf) {
        r.push("coalgebra-boundary", [d]);
        return Ok(r);
    }
    let elf = e_object(&ef.lf)?;
    let sq = CommutingSquare::new(
        f.clone(),
        ef.lf.clone(),
        FinFunctor::identity(f.dom().clone()),
        q.clone(),
    )?;
    let eq = e_square(&sq, ef, &elf)?;
    if let Some(d) = delta(ef, &elf)?.after(q)?.difference(&eq.after(q)?) {
        r.push("coalgebra-coassociativity", [d]);
    }
    Ok(r)
}

/// `(Lf, Δ_f)`.
pub fn cofree_coalgebra(ef: &EfPresentation) -> Result<LCoalgebra> {
    let elf = e_object(&ef.lf)?;
    let q = delta(ef, &elf)?;
    Ok(LCoalgebra {
        ef: Arc::new(elf),
        q,
    })
}

/// `(1_A, L(1_A))`.
pub fn identity_coalgebra(a: Arc<FinCat>) -> Result<LCoalgebra> {
    let ef = e_object(&FinFunctor::identity(a))?;
    let q = ef.lf.clone();
    Ok(LCoalgebra {
        ef: Arc::new(ef),
        q,
    })
}

/// Every functor `q : B → Ef` with `Rf ∘ q = 1_B`; the coalgebras are those
/// passing [`validate_l_coalgebra`].
pub fn enumerate_coalgebra_candidates(
    ef: &Arc<EfPresentation>,
    guard: Guard,
) -> Result<Vec<LCoalgebra>> {
    let id_b = FinFunctor::identity(ef.f.cod().clone());
    Ok(enumerate_functors_over(&ef.rf, &id_b, guard)?
        .into_iter()
        .map(|q| LCoalgebra { ef: ef.clone(), q })
        .collect())
}

/// The diagonal `d : B → C` of a square from a coalgebra to a lens:
/// `d = [ψ ∘ ℓ, h] ∘ q`, where `ℓ : Jf → Λ(g, ψ)` lifts `k ∘ Tf` through
/// the discrete opfibration `Λ(g, ψ) → D`.
pub fn lift_against_coalgebra(
    sq: &CommutingSquare,
    c: &LCoalgebra,
    l: &DeltaLens,
) -> Result<FinFunctor> {
    if sq.left() != c.f() || sq.right() != l.functor() {
        return Err(contract(
            "square legs differ from the coalgebra and lens functors",
        ));
    }
    let cr = validate_l_coalgebra(c)?;
    if !cr.ok() {
        return Err(contract(format!("not an L-coalgebra: {cr}")));
    }
    let lr = validate_lens(l);
    if !lr.ok() {
        return Err(contract(format!("not a delta lens: {lr}")));
    }
    let (ef, h, k) = (&c.ef, sq.top(), sq.bottom());
    let jf = &ef.jf;
    let pres = lambda_presentation(l)?;
    let inv = pres.phi.inverse_on_objects();
    let top_obj: Vec<_> = jf.s.dom().objects().map(|a| inv[h.obj(a).0]).collect();
    let top_mor = top_obj.iter().map(|&x| pres.lambda.identity(x)).collect();
    let top = FinFunctor::new(jf.s.dom().clone(), pres.lambda.clone(), top_obj, top_mor)?;
    let defining = CommutingSquare::new(jf.s.clone(), pres.over.clone(), top, k.after(&jf.t)?)?;
    let ell = orthogonal_lift(&defining)?;
    let d = copair(ef, &pres.phi.after(&ell)?, h)?.after(&c.q)?;
    if d.after(c.f())? != *h || l.functor().after(&d)? != *k {
        return Err(invariant("lifted diagonal does not solve its square"));
    }
    Ok(d)
}
