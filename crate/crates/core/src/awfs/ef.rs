use std::collections::HashMap;
use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::error::{contract, input, invariant, Result};
use crate::factorization::{is_initial, CommutingSquare};
use crate::kernel::{
    is_bijective_on_objects, pair_name, validate_functor, CategoryBuilder, FinCat, FinFunctor, Mor,
    Obj,
};
use crate::semimonad::{j_object, JPresentation};

/// A morphism of `Ef` in normal form. Objects of `Ef` are pairs `(a, u)` with
/// `u` leaving `fa`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EfMorphism {
    Identity {
        a: Obj,
        u: Mor,
    },
    /// `⟨1_a, v⟩ : (a, u1) → (a, v ∘ u1)` with `v` not an identity.
    KindII {
        a: Obj,
        u1: Mor,
        v: Mor,
    },
    /// `⟨1, u2⟩ ∘ w ∘ ⟨1, v⟩ : (a1, u1) → (a2, u2)` where `v ∘ u1 = 1`,
    /// `w : a1 → a2` is not an identity and `u2` leaves `f a2`.
    KindI {
        a1: Obj,
        u1: Mor,
        v: Mor,
        w: Mor,
        u2: Mor,
    },
}

impl EfMorphism {
    /// `⟨1_a, v⟩` at `(a, u1)`, collapsing to the identity when `v` is one.
    pub fn lift(f: &FinFunctor, a: Obj, u1: Mor, v: Mor) -> Self {
        if f.cod().is_identity(v) {
            EfMorphism::Identity { a, u: u1 }
        } else {
            EfMorphism::KindII { a, u1, v }
        }
    }

    /// `⟨1, u2⟩ ∘ w ∘ ⟨1, v⟩`, rewritten to `⟨1, u2 ∘ v⟩` when `w` is an identity.
    pub fn through(f: &FinFunctor, a1: Obj, u1: Mor, v: Mor, w: Mor, u2: Mor) -> Self {
        if f.dom().is_identity(w) {
            Self::lift(f, a1, u1, f.cod().comp(u2, v))
        } else {
            EfMorphism::KindI { a1, u1, v, w, u2 }
        }
    }

    pub fn source(&self) -> (Obj, Mor) {
        match *self {
            EfMorphism::Identity { a, u } => (a, u),
            EfMorphism::KindII { a, u1, .. } => (a, u1),
            EfMorphism::KindI { a1, u1, .. } => (a1, u1),
        }
    }

    pub fn target(&self, f: &FinFunctor) -> (Obj, Mor) {
        match *self {
            EfMorphism::Identity { a, u } => (a, u),
            EfMorphism::KindII { a, u1, v } => (a, f.cod().comp(v, u1)),
            EfMorphism::KindI { w, u2, .. } => (f.dom().tgt(w), u2),
        }
    }

    /// Whether the data satisfy the normal-form conditions for `f`.
    pub fn is_well_formed(&self, f: &FinFunctor) -> bool {
        let (a_cat, b) = (f.dom(), f.cod());
        let leaves = |a: Obj, u: Mor| {
            a.0 < a_cat.num_objects() && u.0 < b.num_morphisms() && b.src(u) == f.obj(a)
        };
        match *self {
            EfMorphism::Identity { a, u } => leaves(a, u),
            EfMorphism::KindII { a, u1, v } => {
                leaves(a, u1)
                    && v.0 < b.num_morphisms()
                    && b.src(v) == b.tgt(u1)
                    && !b.is_identity(v)
            }
            EfMorphism::KindI { a1, u1, v, w, u2 } => {
                leaves(a1, u1)
                    && v.0 < b.num_morphisms()
                    && w.0 < a_cat.num_morphisms()
                    && b.compose(v, u1) == Some(b.identity(f.obj(a1)))
                    && a_cat.src(w) == a1
                    && !a_cat.is_identity(w)
                    && leaves(a_cat.tgt(w), u2)
            }
        }
    }

    /// Canonical identifier: `<v>@(a,u1)` for lifts and identities,
    /// `<v|w|u2>@(a1,u1)` for the other kind.
    pub fn name(&self, f: &FinFunctor) -> String {
        let (a_cat, b) = (f.dom(), f.cod());
        let at = |a: Obj, u: Mor| pair_name(a_cat.object_id(a), b.morphism_id(u));
        match *self {
            EfMorphism::Identity { a, u } => {
                format!("<{}>@{}", b.morphism_id(b.identity(b.tgt(u))), at(a, u))
            }
            EfMorphism::KindII { a, u1, v } => format!("<{}>@{}", b.morphism_id(v), at(a, u1)),
            EfMorphism::KindI { a1, u1, v, w, u2 } => format!(
                "<{}|{}|{}>@{}",
                b.morphism_id(v),
                a_cat.morphism_id(w),
                b.morphism_id(u2),
                at(a1, u1)
            ),
        }
    }
}

/// `m2 ∘ m1` in `Ef` by normal-form rewriting.
pub fn compose_ef(f: &FinFunctor, m2: EfMorphism, m1: EfMorphism) -> Result<EfMorphism> {
    if m1.target(f) != m2.source() {
        return Err(input(format!(
            "{} and {} are not composable",
            m2.name(f),
            m1.name(f)
        )));
    }
    let (a_cat, b) = (f.dom(), f.cod());
    Ok(match (m2, m1) {
        (EfMorphism::Identity { .. }, _) => m1,
        (_, EfMorphism::Identity { .. }) => m2,
        (EfMorphism::KindII { v: v2, .. }, EfMorphism::KindII { a, u1, v }) => {
            EfMorphism::lift(f, a, u1, b.comp(v2, v))
        }
        (EfMorphism::KindI { v, w, u2, .. }, EfMorphism::KindII { a, u1, v: v0 }) => {
            EfMorphism::KindI {
                a1: a,
                u1,
                v: b.comp(v, v0),
                w,
                u2,
            }
        }
        (EfMorphism::KindII { v: v2, .. }, EfMorphism::KindI { a1, u1, v, w, u2 }) => {
            EfMorphism::KindI {
                a1,
                u1,
                v,
                w,
                u2: b.comp(v2, u2),
            }
        }
        // the middle ⟨1, v'⟩ ∘ ⟨1, u2⟩ is an identity since v' ∘ u2 = 1
        (EfMorphism::KindI { w: w2, u2: u3, .. }, EfMorphism::KindI { a1, u1, v, w, .. }) => {
            EfMorphism::through(f, a1, u1, v, a_cat.comp(w2, w), u3)
        }
    })
}

/// `Ef` with `Lf : A → Ef`, `Rf : Ef → B` and `α_f : Jf → Ef`.
#[derive(Clone, Debug)]
pub struct EfPresentation {
    pub f: FinFunctor,
    pub jf: Arc<JPresentation>,
    pub e: Arc<FinCat>,
    pub lf: FinFunctor,
    pub rf: FinFunctor,
    pub alpha: FinFunctor,
    objects: Vec<(Obj, Mor)>,
    obj_index: HashMap<(Obj, Mor), Obj>,
    morphisms: Vec<EfMorphism>,
    mor_index: FxHashMap<EfMorphism, Mor>,
}

impl EfPresentation {
    pub fn object(&self, a: Obj, u: Mor) -> Obj {
        self.obj_index[&(a, u)]
    }

    pub fn decode_object(&self, x: Obj) -> (Obj, Mor) {
        self.objects[x.0]
    }

    pub fn morphism(&self, m: &EfMorphism) -> Mor {
        self.mor_index[m]
    }

    pub fn decode_morphism(&self, m: Mor) -> EfMorphism {
        self.morphisms[m.0]
    }

    /// `⟨1, v⟩` leaving the object `x`.
    pub fn lift(&self, x: Obj, v: Mor) -> Mor {
        let (a, u) = self.objects[x.0];
        self.mor_index[&EfMorphism::lift(&self.f, a, u, v)]
    }
}

/// Builds `Ef`, the pushout of `ι_A` along `Sf`, from its normal forms and
/// checks `Rf ∘ Lf = f`, initiality of `Lf`, and that `α_f` is
/// bijective on objects and faithful.
pub fn e_object(f: &FinFunctor) -> Result<EfPresentation> {
    let jf = Arc::new(j_object(f)?);
    let (a_cat, b) = (f.dom(), f.cod());

    let mut forms = Vec::new();
    let mut out: HashMap<(Obj, Mor), Vec<usize>> = HashMap::new();
    let objects: Vec<(Obj, Mor)> = jf.j.objects().map(|x| jf.decode_object(x)).collect();
    for &(a, u) in &objects {
        let mut here = Vec::new();
        for &v in b.out_of(b.tgt(u)) {
            here.push(forms.len());
            forms.push(EfMorphism::lift(f, a, u, v));
        }
        let unit = b.identity(f.obj(a));
        for v in b.hom(b.tgt(u), f.obj(a)).filter(|&v| b.comp(v, u) == unit) {
            for &w in a_cat.out_of(a).iter().filter(|&&w| !a_cat.is_identity(w)) {
                for &u2 in b.out_of(f.obj(a_cat.tgt(w))) {
                    here.push(forms.len());
                    forms.push(EfMorphism::KindI {
                        a1: a,
                        u1: u,
                        v,
                        w,
                        u2,
                    });
                }
            }
        }
        out.insert((a, u), here);
    }

    let mut builder = CategoryBuilder::new();
    let nodes: HashMap<(Obj, Mor), usize> = objects
        .iter()
        .map(|&(a, u)| {
            (
                (a, u),
                builder.object(pair_name(a_cat.object_id(a), b.morphism_id(u))),
            )
        })
        .collect();
    let form_index: FxHashMap<EfMorphism, usize> =
        forms.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    for m in &forms {
        let i = builder.morphism(m.name(f), nodes[&m.source()], nodes[&m.target(f)]);
        if let EfMorphism::Identity { a, u } = *m {
            builder.identity(nodes[&(a, u)], i);
        }
    }
    for (i, &m1) in forms.iter().enumerate() {
        for &j in &out[&m1.target(f)] {
            let gf = compose_ef(f, forms[j], m1)?;
            let k = *form_index
                .get(&gf)
                .ok_or_else(|| invariant(format!("composite {} missing from Ef", gf.name(f))))?;
            builder.compose(j, i, k);
        }
    }
    let built = builder.build()?;
    let e = Arc::new(built.cat);

    let mut obj_table = vec![(Obj(0), Mor(0)); e.num_objects()];
    let mut obj_index = HashMap::new();
    for (&p, &n) in &nodes {
        obj_table[built.objects[n].0] = p;
        obj_index.insert(p, built.objects[n]);
    }
    let mut mor_table = vec![forms[0]; e.num_morphisms()];
    let mut mor_index = FxHashMap::default();
    for (i, &m) in forms.iter().enumerate() {
        mor_table[built.morphisms[i].0] = m;
        mor_index.insert(m, built.morphisms[i]);
    }

    let lf_obj: Vec<Obj> = a_cat
        .objects()
        .map(|a| obj_index[&(a, b.identity(f.obj(a)))])
        .collect();
    let lf_mor = a_cat
        .morphisms()
        .map(|w| {
            let (a1, a2) = (a_cat.src(w), a_cat.tgt(w));
            let (i1, i2) = (b.identity(f.obj(a1)), b.identity(f.obj(a2)));
            mor_index[&EfMorphism::through(f, a1, i1, i1, w, i2)]
        })
        .collect();
    let lf = FinFunctor::new(a_cat.clone(), e.clone(), lf_obj, lf_mor)?;

    let rf_obj = obj_table.iter().map(|&(_, u)| b.tgt(u)).collect();
    let rf_mor = mor_table
        .iter()
        .map(|m| match *m {
            EfMorphism::Identity { u, .. } => b.identity(b.tgt(u)),
            EfMorphism::KindII { v, .. } => v,
            EfMorphism::KindI { v, w, u2, .. } => b.comp(u2, b.comp(f.mor(w), v)),
        })
        .collect();
    let rf = FinFunctor::new(e.clone(), b.clone(), rf_obj, rf_mor)?;

    let alpha_obj =
        jf.j.objects()
            .map(|x| obj_index[&jf.decode_object(x)])
            .collect();
    let alpha_mor =
        jf.j.morphisms()
            .map(|m| {
                let (x, v) = jf.decode_morphism(m);
                let (a, u) = jf.decode_object(x);
                mor_index[&EfMorphism::lift(f, a, u, v)]
            })
            .collect();
    let alpha = FinFunctor::new(jf.j.clone(), e.clone(), alpha_obj, alpha_mor)?;

    let ef = EfPresentation {
        f: f.clone(),
        jf,
        e,
        lf,
        rf,
        alpha,
        objects: obj_table,
        obj_index,
        morphisms: mor_table,
        mor_index,
    };
    // Rf is a functor by the composition rules; the test suite checks it
    for (name, g) in [("Lf", &ef.lf), ("α_f", &ef.alpha)] {
        let r = validate_functor(g);
        if !r.ok() {
            return Err(invariant(format!("{name} is not a functor: {r}")));
        }
    }
    if ef.rf.after(&ef.lf)? != *f {
        return Err(invariant("Rf ∘ Lf differs from f"));
    }
    if !is_initial(&ef.lf) {
        return Err(invariant("Lf is not initial"));
    }
    if !is_bijective_on_objects(&ef.alpha) || !ef.alpha.is_faithful() {
        return Err(invariant("α_f is not bijective on objects and faithful"));
    }
    Ok(ef)
}

/// `E⟨h, k⟩ : Ef → Eg`.
pub fn e_square(
    sq: &CommutingSquare,
    ef: &EfPresentation,
    eg: &EfPresentation,
) -> Result<FinFunctor> {
    if sq.left() != &ef.f || sq.right() != &eg.f {
        return Err(input("square legs differ from the presented functors"));
    }
    let (h, k, g) = (sq.top(), sq.bottom(), &eg.f);
    let obj_map = ef
        .objects
        .iter()
        .map(|&(a, u)| eg.object(h.obj(a), k.mor(u)))
        .collect();
    let mor_map = ef
        .morphisms
        .iter()
        .map(|m| {
            let image = match *m {
                EfMorphism::Identity { a, u } => EfMorphism::Identity {
                    a: h.obj(a),
                    u: k.mor(u),
                },
                EfMorphism::KindII { a, u1, v } => {
                    EfMorphism::lift(g, h.obj(a), k.mor(u1), k.mor(v))
                }
                EfMorphism::KindI { a1, u1, v, w, u2 } => {
                    EfMorphism::through(g, h.obj(a1), k.mor(u1), k.mor(v), h.mor(w), k.mor(u2))
                }
            };
            eg.morphism(&image)
        })
        .collect();
    FinFunctor::new(ef.e.clone(), eg.e.clone(), obj_map, mor_map)
}

/// The functor `Ef → C` out of the pushout determined by `jleg : Jf → C` and
/// `aleg : A → C` with `jleg ∘ Sf = aleg ∘ ι_A`.
pub fn copair(ef: &EfPresentation, jleg: &FinFunctor, aleg: &FinFunctor) -> Result<FinFunctor> {
    let jf = &ef.jf;
    if jleg.dom() != &jf.j || aleg.dom() != ef.f.dom() || jleg.cod() != aleg.cod() {
        return Err(input("copairing legs have the wrong boundary"));
    }
    if jleg.after(&jf.s)? != aleg.after(&jf.iota)? {
        return Err(contract("copairing legs disagree on objects of A"));
    }
    let (f, c) = (&ef.f, jleg.cod());
    let obj_map = ef
        .objects
        .iter()
        .map(|&(a, u)| jleg.obj(jf.object(a, u)))
        .collect();
    let on_j = |a: Obj, u: Mor, v: Mor| jleg.mor(jf.morphism(jf.object(a, u), v));
    let mor_map = ef
        .morphisms
        .iter()
        .map(|m| match *m {
            EfMorphism::Identity { a, u } => c.identity(jleg.obj(jf.object(a, u))),
            EfMorphism::KindII { a, u1, v } => on_j(a, u1, v),
            EfMorphism::KindI { a1, u1, v, w, u2 } => {
                let a2 = f.dom().tgt(w);
                let unit = f.cod().identity(f.obj(a2));
                c.comp(on_j(a2, unit, u2), c.comp(aleg.mor(w), on_j(a1, u1, v)))
            }
        })
        .collect();
    FinFunctor::new(ef.e.clone(), c.clone(), obj_map, mor_map)
}
