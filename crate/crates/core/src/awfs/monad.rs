use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::sync::Arc;

use super::ef::{copair, e_object, e_square, EfMorphism, EfPresentation};
use crate::error::{contract, input, invariant, Result};
use crate::factorization::CommutingSquare;
use crate::kernel::{enumerate_functors_over, validate_functor, FinFunctor, Guard};
use crate::lens::DeltaLens;
use crate::report::ValidationReport;
use crate::semimonad::{j_object, j_square, jr_from_lens, lens_from_jr, nu, JrAlgebra};

/// `μ_f : ERf → Ef`. The object `((a, u), u')` goes to `(a, u' ∘ u)`; the
/// `Ef`-leg is the identity and the `JRf`-leg goes through `ν_f`.
pub fn mu(ef: &EfPresentation, erf: &EfPresentation) -> Result<FinFunctor> {
    if erf.f != ef.rf {
        return Err(input("second presentation is not of Rf"));
    }
    let (b, e) = (ef.f.cod(), &ef.e);
    let at = |x, u2| {
        let (a, u) = ef.decode_object(x);
        ef.object(a, b.comp(u2, u))
    };
    let obj_map = erf.e.objects().map(|y| {
        let (x, u2) = erf.decode_object(y);
        at(x, u2)
    });
    let obj_map: Vec<_> = obj_map.collect();
    let mor_map = erf
        .e
        .morphisms()
        .map(|m| match erf.decode_morphism(m) {
            EfMorphism::Identity { a: x, u } => e.identity(at(x, u)),
            EfMorphism::KindII { a: x, u1, v } => ef.lift(at(x, u1), v),
            EfMorphism::KindI {
                a1: x1,
                u1,
                v,
                w,
                u2,
            } => {
                let x2 = e.tgt(w);
                e.comp(ef.lift(x2, u2), e.comp(w, ef.lift(at(x1, u1), v)))
            }
        })
        .collect();
    FinFunctor::new(erf.e.clone(), ef.e.clone(), obj_map, mor_map)
}

/// `μ_f` as the copairing of `α_f ∘ ν_f ∘ J⟨α_f, 1_B⟩⁻¹` with `1_{Ef}`.
pub fn mu_by_copairing(ef: &EfPresentation, erf: &EfPresentation) -> Result<FinFunctor> {
    let jf = &ef.jf;
    let jtf = j_object(&jf.t)?;
    let to_r = CommutingSquare::new(
        jf.t.clone(),
        ef.rf.clone(),
        ef.alpha.clone(),
        FinFunctor::identity(ef.f.cod().clone()),
    )?;
    let j_alpha = j_square(&to_r, &jtf, &erf.jf)?;
    let inv = j_alpha
        .inverse()
        .ok_or_else(|| invariant("J⟨α_f, 1⟩ is not invertible"))?;
    let jleg = ef.alpha.after(&nu(jf, &jtf)?)?.after(&inv)?;
    copair(erf, &jleg, &FinFunctor::identity(ef.e.clone()))
}

/// Unit, associativity and naturality of `μ` at `f`, with `η_f = ⟨Lf, 1⟩`.
pub fn validate_monad(f: &FinFunctor, squares: &[CommutingSquare]) -> Result<ValidationReport> {
    validate_monad_with(f, squares, &mu)
}

/// [`validate_monad`] with the multiplication supplied by the caller.
pub fn validate_monad_with(
    f: &FinFunctor,
    squares: &[CommutingSquare],
    mu: &dyn Fn(&EfPresentation, &EfPresentation) -> Result<FinFunctor>,
) -> Result<ValidationReport> {
    let mut r = ValidationReport::new();
    let ef = e_object(f)?;
    let erf = e_object(&ef.rf)?;
    let mu_f = mu(&ef, &erf)?;
    let fr = validate_functor(&mu_f);
    if !fr.ok() {
        r.merge(fr.scoped("mu-functor"));
        return Ok(r);
    }
    let id_b = FinFunctor::identity(f.cod().clone());
    let id_e = FinFunctor::identity(ef.e.clone());
    if CommutingSquare::new(f.clone(), ef.rf.clone(), ef.lf.clone(), id_b.clone()).is_err() {
        r.push("eta-square", ["Rf ∘ Lf differs from f"]);
    }
    if let Some(d) = mu_by_copairing(&ef, &erf)?.difference(&mu_f) {
        r.push("mu-universal", [d]);
    }
    if let Some(d) = mu_f.after(&erf.lf)?.difference(&id_e) {
        r.push("mu-left-unit", [d]);
    }
    let eta = CommutingSquare::new(f.clone(), ef.rf.clone(), ef.lf.clone(), id_b.clone())?;
    if let Some(d) = mu_f.after(&e_square(&eta, &ef, &erf)?)?.difference(&id_e) {
        r.push("mu-right-unit", [d]);
    }
    match CommutingSquare::new(erf.rf.clone(), ef.rf.clone(), mu_f.clone(), id_b) {
        Err(e) => r.push("mu-boundary", [e.to_string()]),
        Ok(sq) => {
            let errf = e_object(&erf.rf)?;
            let e_mu = e_square(&sq, &errf, &erf)?;
            let mu_rf = mu(&erf, &errf)?;
            if let Some(d) = mu_f.after(&e_mu)?.difference(&mu_f.after(&mu_rf)?) {
                r.push("mu-associativity", [d]);
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
        let (eg, erg, mu_g) = &*match cache.entry(key) {
            Entry::Occupied(e) => e.into_mut(),
            Entry::Vacant(v) => {
                let eg = e_object(g)?;
                let erg = e_object(&eg.rf)?;
                let mu_g = mu(&eg, &erg)?;
                v.insert((eg, erg, mu_g))
            }
        };
        let tag = format!("square {i}");
        let ehk = e_square(sq, &ef, eg)?;
        if eg.rf.after(&ehk)? != sq.bottom().after(&ef.rf)?
            || ehk.after(&ef.lf)? != eg.lf.after(sq.top())?
        {
            r.push("e-boundary", [tag.clone()]);
            continue;
        }
        let jhk = j_square(sq, &ef.jf, &eg.jf)?;
        if let Some(d) = ehk.after(&ef.alpha)?.difference(&eg.alpha.after(&jhk)?) {
            r.push("e-alpha", [tag.clone(), d]);
        }
        let rsq = CommutingSquare::new(
            ef.rf.clone(),
            eg.rf.clone(),
            ehk.clone(),
            sq.bottom().clone(),
        )?;
        let eek = e_square(&rsq, &erf, erg)?;
        if let Some(d) = mu_g.after(&eek)?.difference(&ehk.after(&mu_f)?) {
            r.push("mu-naturality", [tag, d]);
        }
    }
    Ok(r)
}

/// An algebra for the monad `R`: `p_hat : Ef → A` over `Rf`.
#[derive(Clone, Debug)]
pub struct RAlgebra {
    pub ef: Arc<EfPresentation>,
    pub p_hat: FinFunctor,
}

impl RAlgebra {
    pub fn f(&self) -> &FinFunctor {
        &self.ef.f
    }
}

impl PartialEq for RAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.ef.f == other.ef.f && self.p_hat == other.p_hat
    }
}

impl Eq for RAlgebra {}

pub fn validate_r_algebra(alg: &RAlgebra) -> Result<ValidationReport> {
    let erf = e_object(&alg.ef.rf)?;
    let mu_f = mu(&alg.ef, &erf)?;
    check_r_algebra(alg, &erf, &mu_f)
}

fn check_r_algebra(
    alg: &RAlgebra,
    erf: &EfPresentation,
    mu_f: &FinFunctor,
) -> Result<ValidationReport> {
    let mut r = ValidationReport::new();
    let (ef, p, f) = (&alg.ef, &alg.p_hat, alg.f());
    if p.dom() != &ef.e || p.cod() != f.dom() {
        r.push("algebra-typing", ["p_hat is not a map Ef → A"]);
        return Ok(r);
    }
    let fr = validate_functor(p);
    if !fr.ok() {
        r.merge(fr.scoped("algebra-functor"));
        return Ok(r);
    }
    if let Some(d) = p
        .after(&ef.lf)?
        .difference(&FinFunctor::identity(f.dom().clone()))
    {
        r.push("r-unit", [d]);
    }
    if let Some(d) = f.after(p)?.difference(&ef.rf) {
        r.push("algebra-boundary", [d]);
        return Ok(r);
    }
    let sq = CommutingSquare::new(
        ef.rf.clone(),
        f.clone(),
        p.clone(),
        FinFunctor::identity(f.cod().clone()),
    )?;
    let ep = e_square(&sq, erf, ef)?;
    if let Some(d) = p.after(mu_f)?.difference(&p.after(&ep)?) {
        r.push("algebra-associativity", [d]);
    }
    Ok(r)
}

/// `q_hat ∘ E⟨h, k⟩ = h ∘ p_hat` for a square from `a1.f` to `a2.f`.
pub fn validate_r_morphism(
    sq: &CommutingSquare,
    a1: &RAlgebra,
    a2: &RAlgebra,
) -> Result<ValidationReport> {
    let mut r = ValidationReport::new();
    if sq.left() != a1.f() || sq.right() != a2.f() {
        r.push("boundary", ["square legs differ from the algebra functors"]);
        return Ok(r);
    }
    let ehk = e_square(sq, &a1.ef, &a2.ef)?;
    if let Some(d) = a2
        .p_hat
        .after(&ehk)?
        .difference(&sq.top().after(&a1.p_hat)?)
    {
        r.push("r-morphism", [d]);
    }
    Ok(r)
}

/// `p_hat = [p, 1_A]`.
pub fn r_algebra_from_jr(alg: &JrAlgebra, ef: Arc<EfPresentation>) -> Result<RAlgebra> {
    if alg.f() != &ef.f {
        return Err(input("presentation is not of the algebra functor"));
    }
    let p_hat = copair(&ef, &alg.p, &FinFunctor::identity(ef.f.dom().clone()))?;
    Ok(RAlgebra { ef, p_hat })
}

/// `p = p_hat ∘ α_f`.
pub fn jr_from_r_algebra(alg: &RAlgebra) -> Result<JrAlgebra> {
    let report = validate_r_algebra(alg)?;
    if !report.ok() {
        return Err(contract(format!("not an R-algebra: {report}")));
    }
    Ok(JrAlgebra {
        jf: alg.ef.jf.clone(),
        p: alg.p_hat.after(&alg.ef.alpha)?,
    })
}

pub fn lens_to_r_algebra(l: &DeltaLens, ef: Arc<EfPresentation>) -> Result<RAlgebra> {
    let jr = jr_from_lens(l, ef.jf.clone())?;
    r_algebra_from_jr(&jr, ef)
}

pub fn r_algebra_to_lens(alg: &RAlgebra) -> Result<DeltaLens> {
    lens_from_jr(&jr_from_r_algebra(alg)?)
}

/// Every functor `p_hat : Ef → A` with `f ∘ p_hat = Rf`.
pub fn enumerate_r_algebra_candidates(
    ef: &Arc<EfPresentation>,
    guard: Guard,
) -> Result<Vec<RAlgebra>> {
    Ok(enumerate_functors_over(&ef.f, &ef.rf, guard)?
        .into_iter()
        .map(|p_hat| RAlgebra {
            ef: ef.clone(),
            p_hat,
        })
        .collect())
}

pub fn enumerate_r_algebras(ef: &Arc<EfPresentation>, guard: Guard) -> Result<Vec<RAlgebra>> {
    let erf = e_object(&ef.rf)?;
    let mu_f = mu(ef, &erf)?;
    let mut out = Vec::new();
    for alg in enumerate_r_algebra_candidates(ef, guard)? {
        if check_r_algebra(&alg, &erf, &mu_f)?.ok() {
            out.push(alg);
        }
    }
    Ok(out)
}

/// The lens on `Rf` whose chosen lift of `v` at `(a, u)` is `⟨1_a, v⟩`.
pub fn free_lens(ef: &EfPresentation) -> DeltaLens {
    let lifts = DeltaLens::domain_pairs(&ef.rf)
        .map(|(x, v)| ((x, v), ef.lift(x, v)))
        .collect();
    DeltaLens::new(ef.rf.clone(), lifts)
}

/// The free algebra `(Rf, μ_f)`.
pub fn free_algebra(ef: &EfPresentation) -> Result<RAlgebra> {
    let erf = Arc::new(e_object(&ef.rf)?);
    let p_hat = mu(ef, &erf)?;
    Ok(RAlgebra { ef: erf, p_hat })
}
