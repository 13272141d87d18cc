use std::collections::HashMap;
use std::sync::Arc;

use super::category::{FinCat, Mor, Obj};
use crate::error::{input, Result};
use crate::report::ValidationReport;

/// A map of finite categories given by its object and morphism tables.
///
/// Construction only checks that the tables have the right shape. Whether the
/// map preserves typing, identities and composites is reported by
/// [`validate_functor`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinFunctor {
    dom: Arc<FinCat>,
    cod: Arc<FinCat>,
    obj_map: Vec<Obj>,
    mor_map: Vec<Mor>,
}

impl FinFunctor {
    pub fn new(
        dom: Arc<FinCat>,
        cod: Arc<FinCat>,
        obj_map: Vec<Obj>,
        mor_map: Vec<Mor>,
    ) -> Result<Self> {
        if obj_map.len() != dom.num_objects() || mor_map.len() != dom.num_morphisms() {
            return Err(input("functor tables do not cover the domain"));
        }
        if obj_map.iter().any(|o| o.0 >= cod.num_objects())
            || mor_map.iter().any(|m| m.0 >= cod.num_morphisms())
        {
            return Err(input("functor tables point outside the codomain"));
        }
        Ok(Self {
            dom,
            cod,
            obj_map,
            mor_map,
        })
    }

    /// Builds a functor from identifier maps; every object and morphism of the
    /// domain must be mapped.
    pub fn from_names<S: AsRef<str>>(
        dom: Arc<FinCat>,
        cod: Arc<FinCat>,
        on_objects: &[(S, S)],
        on_morphisms: &[(S, S)],
    ) -> Result<Self> {
        let mut obj_map = vec![None; dom.num_objects()];
        for (x, y) in on_objects {
            let (x, y) = (x.as_ref(), y.as_ref());
            let sx = dom
                .object_by_id(x)
                .ok_or_else(|| input(format!("unknown domain object `{x}`")))?;
            let ty = cod
                .object_by_id(y)
                .ok_or_else(|| input(format!("unknown codomain object `{y}`")))?;
            obj_map[sx.0] = Some(ty);
        }
        let mut mor_map = vec![None; dom.num_morphisms()];
        for (m, n) in on_morphisms {
            let (m, n) = (m.as_ref(), n.as_ref());
            let sm = dom
                .morphism_by_id(m)
                .ok_or_else(|| input(format!("unknown domain morphism `{m}`")))?;
            let tn = cod
                .morphism_by_id(n)
                .ok_or_else(|| input(format!("unknown codomain morphism `{n}`")))?;
            mor_map[sm.0] = Some(tn);
        }
        let obj_map = obj_map
            .into_iter()
            .enumerate()
            .map(|(i, o)| {
                o.ok_or_else(|| input(format!("object `{}` is not mapped", dom.object_id(Obj(i)))))
            })
            .collect::<Result<Vec<_>>>()?;
        let mor_map = mor_map
            .into_iter()
            .enumerate()
            .map(|(i, m)| {
                m.ok_or_else(|| {
                    input(format!(
                        "morphism `{}` is not mapped",
                        dom.morphism_id(Mor(i))
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(dom, cod, obj_map, mor_map)
    }

    pub fn identity(c: Arc<FinCat>) -> Self {
        let obj_map = c.objects().collect();
        let mor_map = c.morphisms().collect();
        Self {
            dom: c.clone(),
            cod: c,
            obj_map,
            mor_map,
        }
    }

    /// The functor sending everything to `x` and its identity.
    pub fn constant(dom: Arc<FinCat>, cod: Arc<FinCat>, x: Obj) -> Self {
        let i = cod.identity(x);
        let obj_map = vec![x; dom.num_objects()];
        let mor_map = vec![i; dom.num_morphisms()];
        Self {
            dom,
            cod,
            obj_map,
            mor_map,
        }
    }

    pub fn dom(&self) -> &Arc<FinCat> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FinCat> {
        &self.cod
    }

    pub fn obj(&self, x: Obj) -> Obj {
        self.obj_map[x.0]
    }

    pub fn mor(&self, m: Mor) -> Mor {
        self.mor_map[m.0]
    }

    pub fn obj_table(&self) -> &[Obj] {
        &self.obj_map
    }

    pub fn mor_table(&self) -> &[Mor] {
        &self.mor_map
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &FinFunctor) -> Result<FinFunctor> {
        if first.cod != self.dom {
            return Err(input("cannot compose functors: codomain and domain differ"));
        }
        Ok(FinFunctor {
            dom: first.dom.clone(),
            cod: self.cod.clone(),
            obj_map: first.obj_map.iter().map(|&x| self.obj(x)).collect(),
            mor_map: first.mor_map.iter().map(|&m| self.mor(m)).collect(),
        })
    }

    pub fn is_bijective_on_morphisms(&self) -> bool {
        is_bijection(self.mor_map.iter().map(|m| m.0), self.cod.num_morphisms())
    }

    /// The inverse functor when both tables are bijections.
    pub fn inverse(&self) -> Option<FinFunctor> {
        if !is_bijective_on_objects(self) || !self.is_bijective_on_morphisms() {
            return None;
        }
        let mut obj_map = vec![Obj(0); self.cod.num_objects()];
        for (i, y) in self.obj_map.iter().enumerate() {
            obj_map[y.0] = Obj(i);
        }
        let mut mor_map = vec![Mor(0); self.cod.num_morphisms()];
        for (i, n) in self.mor_map.iter().enumerate() {
            mor_map[n.0] = Mor(i);
        }
        Some(FinFunctor {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            obj_map,
            mor_map,
        })
    }

    /// For a functor bijective on objects, the inverse object table.
    pub fn inverse_on_objects(&self) -> Vec<Obj> {
        let mut inv = vec![Obj(0); self.cod.num_objects()];
        for (i, y) in self.obj_map.iter().enumerate() {
            inv[y.0] = Obj(i);
        }
        inv
    }

    pub fn is_faithful(&self) -> bool {
        let mut seen: HashMap<(Obj, Obj, Mor), ()> = HashMap::new();
        self.dom.morphisms().all(|m| {
            seen.insert((self.dom.src(m), self.dom.tgt(m), self.mor(m)), ())
                .is_none()
        })
    }

    /// First place where two parallel functors disagree, as a witness string.
    pub fn difference(&self, other: &FinFunctor) -> Option<String> {
        if self.dom != other.dom {
            return Some("domains differ".into());
        }
        if self.cod != other.cod {
            return Some("codomains differ".into());
        }
        for x in self.dom.objects() {
            if self.obj(x) != other.obj(x) {
                return Some(format!(
                    "object {}: {} vs {}",
                    self.dom.object_id(x),
                    self.cod.object_id(self.obj(x)),
                    self.cod.object_id(other.obj(x))
                ));
            }
        }
        for m in self.dom.morphisms() {
            if self.mor(m) != other.mor(m) {
                return Some(format!(
                    "morphism {}: {} vs {}",
                    self.dom.morphism_id(m),
                    self.cod.morphism_id(self.mor(m)),
                    self.cod.morphism_id(other.mor(m))
                ));
            }
        }
        None
    }
}

fn is_bijection(it: impl ExactSizeIterator<Item = usize>, n: usize) -> bool {
    if it.len() != n {
        return false;
    }
    let mut hit = vec![false; n];
    for i in it {
        if std::mem::replace(&mut hit[i], true) {
            return false;
        }
    }
    true
}

pub fn is_bijective_on_objects(f: &FinFunctor) -> bool {
    is_bijection(f.obj_map.iter().map(|o| o.0), f.cod.num_objects())
}

/// Checks that `f` preserves sources, targets, identities and composites.
pub fn validate_functor(f: &FinFunctor) -> ValidationReport {
    let (a, b) = (f.dom(), f.cod());
    let mut r = ValidationReport::new();
    for m in a.morphisms() {
        let n = f.mor(m);
        r.check(
            b.src(n) == f.obj(a.src(m)),
            "src-preservation",
            [a.morphism_id(m)],
        );
        r.check(
            b.tgt(n) == f.obj(a.tgt(m)),
            "tgt-preservation",
            [a.morphism_id(m)],
        );
    }
    for x in a.objects() {
        r.check(
            f.mor(a.identity(x)) == b.identity(f.obj(x)),
            "identity-preservation",
            [a.object_id(x)],
        );
    }
    for (g, h) in a.composable_pairs() {
        let Some(gh) = a.compose(g, h) else { continue };
        let image = b.compose(f.mor(g), f.mor(h));
        r.check(
            image == Some(f.mor(gh)),
            "composition",
            [a.morphism_id(g), a.morphism_id(h)],
        );
    }
    r
}
