//! Initial functors, discrete opfibrations, the factorisation of a functor
//! into one followed by the other, and diagonal fillers for squares.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{contract, input, invariant, Result};
use crate::kernel::{
    pair_name, validate_functor, CategoryBuilder, CommaData, FinCat, FinFunctor, Mor, Obj,
};

/// A commuting square `k ∘ f = g ∘ h`:
///
/// ```text
///   A --h--> C
///   |        |
///   f        g
///   v        v
///   B --k--> D
/// ```
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutingSquare {
    left: FinFunctor,
    right: FinFunctor,
    top: FinFunctor,
    bottom: FinFunctor,
}

impl CommutingSquare {
    pub fn new(
        left: FinFunctor,
        right: FinFunctor,
        top: FinFunctor,
        bottom: FinFunctor,
    ) -> Result<Self> {
        if top.dom() != left.dom()
            || bottom.dom() != left.cod()
            || top.cod() != right.dom()
            || bottom.cod() != right.cod()
        {
            return Err(input("square boundary does not match"));
        }
        let kf = bottom.after(&left)?;
        let gh = right.after(&top)?;
        if let Some(d) = kf.difference(&gh) {
            return Err(input(format!("square does not commute: {d}")));
        }
        Ok(Self {
            left,
            right,
            top,
            bottom,
        })
    }

    /// The identity square on `f`.
    pub fn identity(f: &FinFunctor) -> Self {
        Self {
            left: f.clone(),
            right: f.clone(),
            top: FinFunctor::identity(f.dom().clone()),
            bottom: FinFunctor::identity(f.cod().clone()),
        }
    }

    pub fn left(&self) -> &FinFunctor {
        &self.left
    }

    pub fn right(&self) -> &FinFunctor {
        &self.right
    }

    pub fn top(&self) -> &FinFunctor {
        &self.top
    }

    pub fn bottom(&self) -> &FinFunctor {
        &self.bottom
    }

    /// Pastes `next` to the right of `self`.
    pub fn then(&self, next: &CommutingSquare) -> Result<CommutingSquare> {
        if self.right != next.left {
            return Err(input("squares do not share an edge"));
        }
        Ok(Self {
            left: self.left.clone(),
            right: next.right.clone(),
            top: next.top.after(&self.top)?,
            bottom: next.bottom.after(&self.bottom)?,
        })
    }
}

/// `f = m ∘ e` with `e` initial and `m` a discrete opfibration.
#[derive(Clone, Debug)]
pub struct Factorisation {
    pub e: FinFunctor,
    pub m: FinFunctor,
    pub mid: Arc<FinCat>,
}

/// The unique lift of `u` starting at `x`, per `(x, u)`, or `None` when some
/// lift is missing or ambiguous.
pub(crate) fn opfibration_lifts(g: &FinFunctor) -> Option<HashMap<(Obj, Mor), Mor>> {
    let (c, d) = (g.dom(), g.cod());
    let mut lifts = HashMap::new();
    for x in c.objects() {
        let out = c.out_of(x);
        if out.len() != d.out_of(g.obj(x)).len() {
            return None;
        }
        for &w in out {
            if lifts.insert((x, g.mor(w)), w).is_some() {
                return None;
            }
        }
    }
    Some(lifts)
}

pub fn is_discrete_opfibration(f: &FinFunctor) -> bool {
    opfibration_lifts(f).is_some()
}

pub fn is_initial(f: &FinFunctor) -> bool {
    f.cod().objects().all(|b| {
        let data = CommaData::new(f, b);
        let comps = data.components(f);
        !comps.is_empty() && comps.iter().all(|&k| k == comps[0])
    })
}

pub fn comprehensive_factorise(f: &FinFunctor) -> Factorisation {
    let (a, b) = (f.dom(), f.cod());
    let commas: Vec<CommaData> = b.objects().map(|y| CommaData::new(f, y)).collect();
    let labels: Vec<Vec<usize>> = commas.iter().map(|d| d.components(f)).collect();
    let mut builder = CategoryBuilder::new();
    // (b, representative comma index) -> builder object
    let mut node: HashMap<(Obj, usize), usize> = HashMap::new();
    let mut names: HashMap<(Obj, usize), String> = HashMap::new();
    for y in b.objects() {
        let mut reps: Vec<usize> = labels[y.0].clone();
        reps.sort_unstable();
        reps.dedup();
        for r in reps {
            let name = pair_name(
                b.object_id(y),
                &format!("[{}]", commas[y.0].object_name(f, r)),
            );
            node.insert((y, r), builder.object(name.clone()));
            names.insert((y, r), name);
        }
    }
    let component_of = |y: Obj, x: Obj, u: Mor| labels[y.0][commas[y.0].index[&(x, u)]];
    // every (b, κ) with v : b → b' has exactly one arrow over v
    let mut arrow: HashMap<(Obj, usize, Mor), (usize, Obj, usize)> = HashMap::new();
    for (&(y, r), &src) in &node {
        let (x, u) = commas[y.0].objects[r];
        for &v in b.out_of(y) {
            let y2 = b.tgt(v);
            let r2 = component_of(y2, x, b.comp(v, u));
            let m = builder.morphism(
                format!("<{}>@{}", b.morphism_id(v), names[&(y, r)]),
                src,
                node[&(y2, r2)],
            );
            if b.is_identity(v) {
                builder.identity(src, m);
            }
            arrow.insert((y, r, v), (m, y2, r2));
        }
    }
    for (&(y, r, v), &(m, y2, r2)) in &arrow {
        for &v2 in b.out_of(y2) {
            let (m2, _, _) = arrow[&(y2, r2, v2)];
            let (m21, _, _) = arrow[&(y, r, b.comp(v2, v))];
            builder.compose(m2, m, m21);
        }
    }
    let built = builder.build().expect("factorisation names are unique");
    let mid = Arc::new(built.cat);
    let obj_of = |y: Obj, r: usize| built.objects[node[&(y, r)]];
    let mor_of = |y: Obj, r: usize, v: Mor| built.morphisms[arrow[&(y, r, v)].0];

    let mut m_obj = vec![Obj(0); mid.num_objects()];
    let mut m_mor = vec![Mor(0); mid.num_morphisms()];
    for (&(y, r, v), &(m, _, _)) in &arrow {
        m_obj[obj_of(y, r).0] = y;
        m_mor[built.morphisms[m].0] = v;
    }
    let m = FinFunctor::new(mid.clone(), b.clone(), m_obj, m_mor)
        .expect("projection tables are well formed");

    let e_obj: Vec<Obj> = a
        .objects()
        .map(|x| {
            let y = f.obj(x);
            obj_of(y, component_of(y, x, b.identity(y)))
        })
        .collect();
    let e_mor: Vec<Mor> = a
        .morphisms()
        .map(|w| {
            let x = a.src(w);
            let y = f.obj(x);
            mor_of(y, component_of(y, x, b.identity(y)), f.mor(w))
        })
        .collect();
    let e =
        FinFunctor::new(a.clone(), mid.clone(), e_obj, e_mor).expect("unit tables are well formed");
    Factorisation { e, m, mid }
}

/// The unique diagonal `d : B → C` of a square whose left leg is initial and
/// whose right leg is a discrete opfibration.
pub fn orthogonal_lift(sq: &CommutingSquare) -> Result<FinFunctor> {
    let (f, g, h, k) = (sq.left(), sq.right(), sq.top(), sq.bottom());
    if !is_initial(f) {
        return Err(contract("left leg of the square is not initial"));
    }
    let lifts = opfibration_lifts(g)
        .ok_or_else(|| contract("right leg of the square is not a discrete opfibration"))?;
    let b = f.cod();
    let mut obj_map = Vec::with_capacity(b.num_objects());
    for y in b.objects() {
        let data = CommaData::new(f, y);
        let anchor = (0..data.objects.len())
            .min_by_key(|&i| data.object_name(f, i))
            .ok_or_else(|| contract("empty comma category under an initial functor"))?;
        let (x, beta) = data.objects[anchor];
        let w = lifts[&(h.obj(x), k.mor(beta))];
        obj_map.push(g.dom().tgt(w));
    }
    let mor_map = b
        .morphisms()
        .map(|v| lifts[&(obj_map[b.src(v).0], k.mor(v))])
        .collect();
    let d = FinFunctor::new(b.clone(), g.dom().clone(), obj_map, mor_map)?;
    let report = validate_functor(&d);
    if !report.ok() {
        return Err(invariant(format!("diagonal is not a functor: {report}")));
    }
    if let Some(diff) = d.after(f)?.difference(h) {
        return Err(invariant(format!(
            "diagonal does not restrict to the top edge: {diff}"
        )));
    }
    if let Some(diff) = g.after(&d)?.difference(k) {
        return Err(invariant(format!(
            "diagonal does not lie over the bottom edge: {diff}"
        )));
    }
    Ok(d)
}
