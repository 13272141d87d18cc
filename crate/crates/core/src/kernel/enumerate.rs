use std::sync::Arc;

use super::category::{FinCat, Mor, Obj};
use super::functor::FinFunctor;
use crate::error::{input, Error, Result};

/// Upper bound on the raw candidate maps an exhaustive search may consider.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guard(pub u128);

impl Default for Guard {
    fn default() -> Self {
        Guard(1_000_000)
    }
}

impl Guard {
    pub fn check(self, candidates: u128) -> Result<()> {
        if candidates > self.0 {
            Err(Error::Guard {
                candidates,
                bound: self.0,
            })
        } else {
            Ok(())
        }
    }
}

/// `|B₀|^|A₀| · |B₁|^|non-identity A₁|`, saturating.
pub fn candidate_count(a: &FinCat, b: &FinCat) -> u128 {
    let objs = (b.num_objects() as u128).saturating_pow(a.num_objects() as u32);
    let non_ids = a.non_identities().count() as u32;
    objs.saturating_mul((b.num_morphisms() as u128).saturating_pow(non_ids))
}

/// Every functor `A → B`, ordered by object assignment and then by morphism
/// assignment (both lexicographic in index order).
pub fn enumerate_functors(
    a: &Arc<FinCat>,
    b: &Arc<FinCat>,
    guard: Guard,
) -> Result<Vec<FinFunctor>> {
    guard.check(candidate_count(a, b))?;
    let objects = vec![b.objects().collect::<Vec<_>>(); a.num_objects()];
    let morphisms = a.morphisms().map(|_| b.morphisms().collect()).collect();
    Ok(Search::new(a, b, objects, morphisms).run())
}

/// Every functor `P : X → A` with `f ∘ P = g`, in the same order as
/// [`enumerate_functors`]. The guard counts candidates inside the fibres of `f`.
pub fn enumerate_functors_over(
    f: &FinFunctor,
    g: &FinFunctor,
    guard: Guard,
) -> Result<Vec<FinFunctor>> {
    if f.cod() != g.cod() {
        return Err(input("functors to lift through must share a codomain"));
    }
    let (a, x) = (f.dom(), g.dom());
    let mut obj_fibre = vec![Vec::new(); f.cod().num_objects()];
    for o in a.objects() {
        obj_fibre[f.obj(o).0].push(o);
    }
    let mut mor_fibre = vec![Vec::new(); f.cod().num_morphisms()];
    for m in a.morphisms() {
        mor_fibre[f.mor(m).0].push(m);
    }
    let objects: Vec<Vec<Obj>> = x.objects().map(|o| obj_fibre[g.obj(o).0].clone()).collect();
    let morphisms: Vec<Vec<Mor>> = x
        .morphisms()
        .map(|m| mor_fibre[g.mor(m).0].clone())
        .collect();
    let count = objects
        .iter()
        .map(|c| c.len() as u128)
        .chain(x.non_identities().map(|m| morphisms[m.0].len() as u128))
        .fold(1u128, |acc, n| acc.saturating_mul(n));
    guard.check(count)?;
    Ok(Search::new(x, a, objects, morphisms).run())
}

struct Search<'a> {
    dom: &'a Arc<FinCat>,
    cod: &'a Arc<FinCat>,
    objects: Vec<Vec<Obj>>,
    morphisms: Vec<Vec<Mor>>,
    order: Vec<Mor>,
    // constraints (g, f, gf) that become checkable once order[i] is assigned
    checks: Vec<Vec<(Mor, Mor, Mor)>>,
}

impl<'a> Search<'a> {
    fn new(
        dom: &'a Arc<FinCat>,
        cod: &'a Arc<FinCat>,
        objects: Vec<Vec<Obj>>,
        morphisms: Vec<Vec<Mor>>,
    ) -> Self {
        let order: Vec<Mor> = dom.non_identities().collect();
        let mut position = vec![None; dom.num_morphisms()];
        for (i, &m) in order.iter().enumerate() {
            position[m.0] = Some(i);
        }
        let mut checks = vec![Vec::new(); order.len()];
        for (g, f) in dom.composable_pairs() {
            if dom.is_identity(g) || dom.is_identity(f) {
                continue;
            }
            let gf = dom.comp(g, f);
            let last = [g, f, gf]
                .iter()
                .filter_map(|m| position[m.0])
                .max()
                .expect("g is not an identity");
            checks[last].push((g, f, gf));
        }
        Search {
            dom,
            cod,
            objects,
            morphisms,
            order,
            checks,
        }
    }

    fn run(&self) -> Vec<FinFunctor> {
        let mut out = Vec::new();
        let mut obj_map = vec![Obj(0); self.dom.num_objects()];
        let mut mor_map = vec![Mor(0); self.dom.num_morphisms()];
        self.objects_from(0, &mut obj_map, &mut mor_map, &mut out);
        out
    }

    fn objects_from(
        &self,
        i: usize,
        obj_map: &mut Vec<Obj>,
        mor_map: &mut Vec<Mor>,
        out: &mut Vec<FinFunctor>,
    ) {
        if i == obj_map.len() {
            // identities are forced; they must still lie in their candidate lists
            for x in self.dom.objects() {
                let m = self.dom.identity(x);
                let n = self.cod.identity(obj_map[x.0]);
                if !self.morphisms[m.0].contains(&n) {
                    return;
                }
                mor_map[m.0] = n;
            }
            self.morphisms_from(0, obj_map, mor_map, out);
            return;
        }
        for &o in &self.objects[i] {
            obj_map[i] = o;
            self.objects_from(i + 1, obj_map, mor_map, out);
        }
    }

    fn morphisms_from(
        &self,
        i: usize,
        obj_map: &[Obj],
        mor_map: &mut Vec<Mor>,
        out: &mut Vec<FinFunctor>,
    ) {
        if i == self.order.len() {
            let f = FinFunctor::new(
                self.dom.clone(),
                self.cod.clone(),
                obj_map.to_vec(),
                mor_map.clone(),
            )
            .expect("search only produces well-formed tables");
            out.push(f);
            return;
        }
        let m = self.order[i];
        let (s, t) = (obj_map[self.dom.src(m).0], obj_map[self.dom.tgt(m).0]);
        for &n in &self.morphisms[m.0] {
            if self.cod.src(n) != s || self.cod.tgt(n) != t {
                continue;
            }
            mor_map[m.0] = n;
            let consistent = self.checks[i].iter().all(|&(g, f, gf)| {
                self.cod.compose(mor_map[g.0], mor_map[f.0]) == Some(mor_map[gf.0])
            });
            if consistent {
                self.morphisms_from(i + 1, obj_map, mor_map, out);
            }
        }
    }
}
