//! Delta lenses: a functor with a chosen lift for every morphism out of an
//! image object.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use crate::error::{contract, input, Result};
use crate::factorization::{opfibration_lifts, CommutingSquare};
use crate::kernel::{
    is_bijective_on_objects, CategoryBuilder, FinCat, FinFunctor, Guard, Mor, Obj,
};
use crate::report::ValidationReport;

/// Chosen lifts `φ(a, u)`, keyed by `(a, u)` with `u` leaving `f(a)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LiftingTable {
    entries: BTreeMap<(Obj, Mor), Mor>,
}

impl LiftingTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, a: Obj, u: Mor, lift: Mor) -> Option<Mor> {
        self.entries.insert((a, u), lift)
    }

    pub fn get(&self, a: Obj, u: Mor) -> Option<Mor> {
        self.entries.get(&(a, u)).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((Obj, Mor), Mor)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }
}

impl FromIterator<((Obj, Mor), Mor)> for LiftingTable {
    fn from_iter<I: IntoIterator<Item = ((Obj, Mor), Mor)>>(iter: I) -> Self {
        Self {
            entries: iter.into_iter().collect(),
        }
    }
}

/// A functor `f : A → B` with a lifting table. Construction does not check
/// the lens laws; see [`validate_lens`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaLens {
    functor: FinFunctor,
    lifts: LiftingTable,
}

impl DeltaLens {
    pub fn new(functor: FinFunctor, lifts: LiftingTable) -> Self {
        Self { functor, lifts }
    }

    /// The identity lens on `c`.
    pub fn identity(c: Arc<FinCat>) -> Self {
        let lifts = c.morphisms().map(|u| ((c.src(u), u), u)).collect();
        Self {
            functor: FinFunctor::identity(c),
            lifts,
        }
    }

    pub fn functor(&self) -> &FinFunctor {
        &self.functor
    }

    pub fn lifts(&self) -> &LiftingTable {
        &self.lifts
    }

    /// `φ(a, u)`. Panics if the entry is missing, which a valid lens rules out.
    pub fn phi(&self, a: Obj, u: Mor) -> Mor {
        self.lifts.get(a, u).unwrap_or_else(|| {
            panic!(
                "no lift for ({}, {})",
                self.functor.dom().object_id(a),
                self.functor.cod().morphism_id(u)
            )
        })
    }

    /// `p(a, u)`, the target of the chosen lift.
    pub fn p(&self, a: Obj, u: Mor) -> Obj {
        self.functor.dom().tgt(self.phi(a, u))
    }

    /// Every `(a, u)` the table must cover.
    pub fn domain_pairs(f: &FinFunctor) -> impl Iterator<Item = (Obj, Mor)> + '_ {
        f.dom()
            .objects()
            .flat_map(move |a| f.cod().out_of(f.obj(a)).iter().map(move |&u| (a, u)))
    }
}

/// Totality, typing and the three lens laws: `f φ(a,u) = u`,
/// `φ(a, 1) = 1` and `φ(a, v∘u) = φ(p(a,u), v) ∘ φ(a,u)`.
pub fn validate_lens(l: &DeltaLens) -> ValidationReport {
    let f = l.functor();
    let (a_cat, b_cat) = (f.dom(), f.cod());
    let mut r = ValidationReport::new();
    let an = |x: Obj| a_cat.object_id(x).to_string();
    let bn = |m: Mor| b_cat.morphism_id(m).to_string();
    for ((a, u), w) in l.lifts().iter() {
        let in_range =
            a.0 < a_cat.num_objects() && u.0 < b_cat.num_morphisms() && w.0 < a_cat.num_morphisms();
        if !in_range {
            r.push("typing", [format!("{a:?}"), format!("{u:?}")]);
            continue;
        }
        if b_cat.src(u) != f.obj(a) || a_cat.src(w) != a {
            r.push("typing", [an(a), bn(u)]);
        }
    }
    if !r.ok() {
        return r;
    }
    let mut total = true;
    for (a, u) in DeltaLens::domain_pairs(f) {
        if l.lifts().get(a, u).is_none() {
            r.push("totality", [an(a), bn(u)]);
            total = false;
        }
    }
    if !total {
        return r;
    }
    for (a, u) in DeltaLens::domain_pairs(f) {
        r.check(f.mor(l.phi(a, u)) == u, "L1", [an(a), bn(u)]);
    }
    for a in a_cat.objects() {
        let one = b_cat.identity(f.obj(a));
        r.check(l.phi(a, one) == a_cat.identity(a), "L2", [an(a), bn(one)]);
    }
    for (a, u) in DeltaLens::domain_pairs(f) {
        let w = l.phi(a, u);
        let p = a_cat.tgt(w);
        for &v in b_cat.out_of(b_cat.tgt(u)) {
            // typing of the right-hand side only makes sense once L1 holds
            if b_cat.src(v) != f.obj(p) {
                r.push("L3", [an(a), bn(u), bn(v)]);
                continue;
            }
            let lhs = l.phi(a, b_cat.comp(v, u));
            let rhs = a_cat.compose(l.phi(p, v), w);
            r.check(rhs == Some(lhs), "L3", [an(a), bn(u), bn(v)]);
        }
    }
    r
}

/// The unique lens structure on a discrete opfibration.
pub fn lens_from_discrete_opfibration(f: &FinFunctor) -> Result<DeltaLens> {
    let lifts =
        opfibration_lifts(f).ok_or_else(|| contract("functor is not a discrete opfibration"))?;
    Ok(DeltaLens::new(f.clone(), lifts.into_iter().collect()))
}

/// Whether every morphism is its own chosen lift: `φ(a, f w) = w`.
pub fn is_discrete_opfibration_lens(l: &DeltaLens) -> bool {
    let (f, a_cat) = (l.functor(), l.functor().dom());
    a_cat
        .morphisms()
        .all(|w| l.lifts().get(a_cat.src(w), f.mor(w)) == Some(w))
}

/// Checks that `sq : l1 → l2` commutes with the chosen lifts:
/// `h φ(a, u) = ψ(h a, k u)`.
pub fn validate_lens_morphism(
    sq: &CommutingSquare,
    l1: &DeltaLens,
    l2: &DeltaLens,
) -> ValidationReport {
    let mut r = ValidationReport::new();
    if sq.left() != l1.functor() || sq.right() != l2.functor() {
        r.push("boundary", ["square legs differ from the lens functors"]);
        return r;
    }
    let (h, k) = (sq.top(), sq.bottom());
    let f = l1.functor();
    for (a, u) in DeltaLens::domain_pairs(f) {
        let holds = l2.lifts().get(h.obj(a), k.mor(u)) == Some(h.mor(l1.phi(a, u)));
        r.check(
            holds,
            "lift-preservation",
            [f.dom().object_id(a), f.cod().morphism_id(u)],
        );
    }
    r
}

/// Sequential composite: `χ(a, u) = φ₁(a, φ₂(f a, u))`.
pub fn compose_lenses(l1: &DeltaLens, l2: &DeltaLens) -> Result<DeltaLens> {
    let (f, g) = (l1.functor(), l2.functor());
    if f.cod() != g.dom() {
        return Err(input("lenses do not share a boundary"));
    }
    let gf = g.after(f)?;
    let lifts = DeltaLens::domain_pairs(&gf)
        .map(|(a, u)| ((a, u), l1.phi(a, l2.phi(f.obj(a), u))))
        .collect();
    Ok(DeltaLens::new(gf, lifts))
}

/// `Λ(f, φ)`: one morphism `a → p(a, u)` per pair `(a, u)`, with
/// `phi : Λ → A` and `over = f ∘ phi : Λ → B`.
#[derive(Clone, Debug)]
pub struct LambdaPresentation {
    pub lambda: Arc<FinCat>,
    pub phi: FinFunctor,
    pub over: FinFunctor,
}

pub fn lambda_presentation(l: &DeltaLens) -> Result<LambdaPresentation> {
    let report = validate_lens(l);
    if !report.ok() {
        return Err(contract(format!("not a delta lens: {report}")));
    }
    let f = l.functor();
    let (a_cat, b_cat) = (f.dom(), f.cod());
    let mut builder = CategoryBuilder::new();
    let objs: Vec<usize> = a_cat
        .objects()
        .map(|a| builder.object(a_cat.object_id(a)))
        .collect();
    let mut arrow: HashMap<(Obj, Mor), usize> = HashMap::new();
    for (a, u) in DeltaLens::domain_pairs(f) {
        let name = format!("({}⇐{})", a_cat.object_id(a), b_cat.morphism_id(u));
        let m = builder.morphism(name, objs[a.0], objs[l.p(a, u).0]);
        if b_cat.is_identity(u) {
            builder.identity(objs[a.0], m);
        }
        arrow.insert((a, u), m);
    }
    for (a, u) in DeltaLens::domain_pairs(f) {
        let p = l.p(a, u);
        for &v in b_cat.out_of(b_cat.tgt(u)) {
            builder.compose(
                arrow[&(p, v)],
                arrow[&(a, u)],
                arrow[&(a, b_cat.comp(v, u))],
            );
        }
    }
    let built = builder.build()?;
    let lambda = Arc::new(built.cat);
    let mut phi_mor = vec![Mor(0); lambda.num_morphisms()];
    let mut over_mor = vec![Mor(0); lambda.num_morphisms()];
    for (&(a, u), &m) in &arrow {
        phi_mor[built.morphisms[m].0] = l.phi(a, u);
        over_mor[built.morphisms[m].0] = u;
    }
    let phi_obj: Vec<Obj> = a_cat.objects().collect();
    let over_obj: Vec<Obj> = a_cat.objects().map(|a| f.obj(a)).collect();
    let phi = FinFunctor::new(lambda.clone(), a_cat.clone(), phi_obj, phi_mor)?;
    let over = FinFunctor::new(lambda.clone(), b_cat.clone(), over_obj, over_mor)?;
    Ok(LambdaPresentation { lambda, phi, over })
}

/// Recovers the lens from `Λ`: `φ(a, u) = phi(unique over-lift of u at a)`.
pub fn lens_from_lambda(pres: &LambdaPresentation, f: &FinFunctor) -> Result<DeltaLens> {
    if !is_bijective_on_objects(&pres.phi) {
        return Err(contract("phi is not bijective on objects"));
    }
    if f.after(&pres.phi)? != pres.over {
        return Err(contract("over differs from f after phi"));
    }
    let lifts = opfibration_lifts(&pres.over)
        .ok_or_else(|| contract("over is not a discrete opfibration"))?;
    let inv = pres.phi.inverse_on_objects();
    let table = DeltaLens::domain_pairs(f)
        .map(|(a, u)| ((a, u), pres.phi.mor(lifts[&(inv[a.0], u)])))
        .collect();
    Ok(DeltaLens::new(f.clone(), table))
}

/// Every lifting table on `f` satisfying the lens laws, in lexicographic
/// order of the lift choices per pair.
pub fn enumerate_lens_structures(f: &FinFunctor, guard: Guard) -> Result<Vec<DeltaLens>> {
    let (a_cat, b_cat) = (f.dom(), f.cod());
    // L1 and L2 cut the candidates; the guard counts what is left
    let pairs: Vec<(Obj, Mor)> = DeltaLens::domain_pairs(f).collect();
    let candidates: Vec<Vec<Mor>> = pairs
        .iter()
        .map(|&(a, u)| {
            if b_cat.is_identity(u) {
                vec![a_cat.identity(a)]
            } else {
                a_cat
                    .out_of(a)
                    .iter()
                    .copied()
                    .filter(|&w| f.mor(w) == u)
                    .collect()
            }
        })
        .collect();
    let count = candidates
        .iter()
        .fold(1u128, |acc, c| acc.saturating_mul(c.len() as u128));
    guard.check(count)?;
    let index: HashMap<(Obj, Mor), usize> =
        pairs.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let mut out = Vec::new();
    let mut choice: Vec<Option<Mor>> = vec![None; pairs.len()];
    let search = LensSearch {
        f,
        pairs: &pairs,
        candidates: &candidates,
        index: &index,
    };
    search.step(0, &mut choice, &mut out);
    Ok(out)
}

struct LensSearch<'a> {
    f: &'a FinFunctor,
    pairs: &'a [(Obj, Mor)],
    candidates: &'a [Vec<Mor>],
    index: &'a HashMap<(Obj, Mor), usize>,
}

impl LensSearch<'_> {
    fn step(&self, i: usize, choice: &mut Vec<Option<Mor>>, out: &mut Vec<DeltaLens>) {
        if i == self.pairs.len() {
            let lifts = self
                .pairs
                .iter()
                .zip(choice.iter())
                .map(|(&k, w)| (k, w.expect("assigned")))
                .collect();
            out.push(DeltaLens::new(self.f.clone(), lifts));
            return;
        }
        for &w in &self.candidates[i] {
            choice[i] = Some(w);
            if self.consistent(i, choice) {
                self.step(i + 1, choice, out);
            }
        }
        choice[i] = None;
    }

    /// The composition law on every triple whose three entries are assigned
    /// and that involves entry `i`.
    fn consistent(&self, i: usize, choice: &[Option<Mor>]) -> bool {
        let (a_cat, b_cat) = (self.f.dom(), self.f.cod());
        let get = |a: Obj, u: Mor| choice[self.index[&(a, u)]];
        let law = |a: Obj, u: Mor, v: Mor| -> bool {
            let (Some(w), Some(wv)) = (get(a, u), get(a, b_cat.comp(v, u))) else {
                return true;
            };
            let Some(pv) = get(a_cat.tgt(w), v) else {
                return true;
            };
            a_cat.compose(pv, w) == Some(wv)
        };
        let (a, u) = self.pairs[i];
        // (a, u) as the first step
        if !b_cat.out_of(b_cat.tgt(u)).iter().all(|&v| law(a, u, v)) {
            return false;
        }
        // (a, u) as the composite v ∘ u0
        for &u0 in b_cat.out_of(self.f.obj(a)) {
            for &v in b_cat.out_of(b_cat.tgt(u0)) {
                if b_cat.comp(v, u0) == u && !law(a, u0, v) {
                    return false;
                }
            }
        }
        // (a, u) as the second step after some (a0, u0) landing on a
        for (j, &(a0, u0)) in self.pairs.iter().enumerate() {
            if let Some(w0) = choice[j] {
                if a_cat.tgt(w0) == a && b_cat.tgt(u0) == b_cat.src(u) && !law(a0, u0, u) {
                    return false;
                }
            }
        }
        true
    }
}
