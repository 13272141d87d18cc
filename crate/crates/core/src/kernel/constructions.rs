use std::collections::HashMap;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use super::category::{pair_name, CategoryBuilder, FinCat, Mor, Obj};
use super::functor::FinFunctor;
use crate::error::{input, Result};

/// The discrete category on the objects of `c`, keeping the identity names.
pub fn discrete(c: &FinCat) -> FinCat {
    let mut b = CategoryBuilder::new();
    for x in c.objects() {
        let o = b.object(c.object_id(x));
        let i = b.identity_named(o, c.morphism_id(c.identity(x)));
        b.compose(i, i, i);
    }
    b.build()
        .expect("discrete category has unique identifiers")
        .cat
}

/// The counit `discrete(c) → c`.
pub fn counit_inclusion(c: &Arc<FinCat>) -> FinFunctor {
    let d = Arc::new(discrete(c));
    let obj_map = c.objects().collect();
    let mor_map = c.objects().map(|x| c.identity(x)).collect();
    FinFunctor::new(d, c.clone(), obj_map, mor_map).expect("inclusion tables are well formed")
}

/// The discrete category comonad applied to a functor.
pub fn discrete_functor(f: &FinFunctor) -> FinFunctor {
    let dom = Arc::new(discrete(f.dom()));
    let cod = Arc::new(discrete(f.cod()));
    let obj_map: Vec<Obj> = f.dom().objects().map(|x| f.obj(x)).collect();
    let mor_map = dom.objects().map(|x| cod.identity(obj_map[x.0])).collect();
    FinFunctor::new(dom, cod, obj_map, mor_map).expect("discrete tables are well formed")
}

/// Objects and generating arrows of the comma category `F / b`.
#[derive(Debug, Clone)]
pub(crate) struct CommaData {
    /// `(a, u : F a → b)`, in domain-object then morphism order.
    pub objects: Vec<(Obj, Mor)>,
    pub index: HashMap<(Obj, Mor), usize>,
    /// `(from, w, to)` with `to.u ∘ F w = from.u`.
    pub arrows: Vec<(usize, Mor, usize)>,
}

impl CommaData {
    pub(crate) fn new(f: &FinFunctor, b: Obj) -> Self {
        let (a_cat, b_cat) = (f.dom(), f.cod());
        let mut by_source: HashMap<Obj, Vec<Mor>> = HashMap::new();
        for &u in b_cat.incoming(b) {
            by_source.entry(b_cat.src(u)).or_default().push(u);
        }
        let mut objects = Vec::new();
        for a in a_cat.objects() {
            if let Some(us) = by_source.get(&f.obj(a)) {
                objects.extend(us.iter().map(|&u| (a, u)));
            }
        }
        let index: HashMap<_, _> = objects.iter().enumerate().map(|(i, &o)| (o, i)).collect();
        let mut arrows = Vec::new();
        for (i, &(a, u)) in objects.iter().enumerate() {
            for &w in a_cat.out_of(a) {
                let a2 = a_cat.tgt(w);
                let fw = f.mor(w);
                for &u2 in by_source.get(&f.obj(a2)).map(Vec::as_slice).unwrap_or(&[]) {
                    if b_cat.compose(u2, fw) == Some(u) {
                        arrows.push((i, w, index[&(a2, u2)]));
                    }
                }
            }
        }
        CommaData {
            objects,
            index,
            arrows,
        }
    }

    pub(crate) fn object_name(&self, f: &FinFunctor, i: usize) -> String {
        let (a, u) = self.objects[i];
        pair_name(f.dom().object_id(a), f.cod().morphism_id(u))
    }

    /// Component label per object: the index of the member with the least name.
    pub(crate) fn components(&self, f: &FinFunctor) -> Vec<usize> {
        let n = self.objects.len();
        let mut uf = UnionFind::<usize>::new(n);
        for &(i, _, j) in &self.arrows {
            uf.union(i, j);
        }
        let names: Vec<String> = (0..n).map(|i| self.object_name(f, i)).collect();
        let mut least: HashMap<usize, usize> = HashMap::new();
        for i in 0..n {
            let root = uf.find(i);
            let e = least.entry(root).or_insert(i);
            if names[i] < names[*e] {
                *e = i;
            }
        }
        (0..n).map(|i| least[&uf.find(i)]).collect()
    }
}

/// The comma category `F / b`: objects `(a, u : F a → b)`, arrows `w : a → a'`
/// with `u' ∘ F w = u`.
pub fn comma_to_object(f: &FinFunctor, b: Obj) -> Result<FinCat> {
    if b.0 >= f.cod().num_objects() {
        return Err(input(format!(
            "object index {} is not in the codomain",
            b.0
        )));
    }
    let data = CommaData::new(f, b);
    let a_cat = f.dom();
    let mut builder = CategoryBuilder::new();
    let names: Vec<String> = (0..data.objects.len())
        .map(|i| data.object_name(f, i))
        .collect();
    for n in &names {
        builder.object(n.clone());
    }
    let mut arrow_of: HashMap<(usize, Mor, usize), usize> = HashMap::new();
    for &(i, w, j) in &data.arrows {
        let m = builder.morphism(
            format!("{}:{}->{}", a_cat.morphism_id(w), names[i], names[j]),
            i,
            j,
        );
        arrow_of.insert((i, w, j), m);
        if a_cat.is_identity(w) {
            builder.identity(i, m);
        }
    }
    let mut leaving: Vec<Vec<(Mor, usize)>> = vec![Vec::new(); data.objects.len()];
    for &(i, w, j) in &data.arrows {
        leaving[i].push((w, j));
    }
    for &(i, w, j) in &data.arrows {
        for &(w2, k) in &leaving[j] {
            let ww = a_cat.comp(w2, w);
            builder.compose(
                arrow_of[&(j, w2, k)],
                arrow_of[&(i, w, j)],
                arrow_of[&(i, ww, k)],
            );
        }
    }
    Ok(builder.build()?.cat)
}

/// The coslice `b / B`: objects are morphisms out of `b`, arrows `v : u₁ → u₂`
/// with `v ∘ u₁ = u₂`.
pub fn coslice(c: &FinCat, b: Obj) -> Result<FinCat> {
    if b.0 >= c.num_objects() {
        return Err(input(format!(
            "object index {} is not in the category",
            b.0
        )));
    }
    let mut builder = CategoryBuilder::new();
    let mut obj_of = HashMap::new();
    for &u in c.out_of(b) {
        obj_of.insert(u, builder.object(c.morphism_id(u)));
    }
    let mut mor_of = HashMap::new();
    for &u in c.out_of(b) {
        for &v in c.out_of(c.tgt(u)) {
            let vu = c.comp(v, u);
            let m = builder.morphism(
                format!("{}@{}", c.morphism_id(v), c.morphism_id(u)),
                obj_of[&u],
                obj_of[&vu],
            );
            mor_of.insert((u, v), m);
            if c.is_identity(v) {
                builder.identity(obj_of[&u], m);
            }
        }
    }
    for &u in c.out_of(b) {
        for &v in c.out_of(c.tgt(u)) {
            let vu = c.comp(v, u);
            for &v2 in c.out_of(c.tgt(v)) {
                builder.compose(
                    mor_of[&(vu, v2)],
                    mor_of[&(u, v)],
                    mor_of[&(u, c.comp(v2, v))],
                );
            }
        }
    }
    Ok(builder.build()?.cat)
}

/// Component label per object: the least-named member of its component.
pub fn components(c: &FinCat) -> Vec<Obj> {
    let n = c.num_objects();
    let mut uf = UnionFind::<usize>::new(n);
    for m in c.morphisms() {
        uf.union(c.src(m).0, c.tgt(m).0);
    }
    // objects are sorted by identifier, so the least index is the least name
    let mut least: HashMap<usize, usize> = HashMap::new();
    for i in 0..n {
        least.entry(uf.find(i)).or_insert(i);
    }
    (0..n).map(|i| Obj(least[&uf.find(i)])).collect()
}

/// Nonempty with a single connected component. The empty category is not
/// connected.
pub fn is_connected(c: &FinCat) -> bool {
    let comps = components(c);
    !comps.is_empty() && comps.iter().all(|&k| k == comps[0])
}

/// Disjoint union with identifiers tagged `[i]id`, plus the injections.
pub fn coproduct(cs: &[Arc<FinCat>]) -> (Arc<FinCat>, Vec<FinFunctor>) {
    let mut b = CategoryBuilder::new();
    let mut objs = Vec::new();
    let mut mors = Vec::new();
    for (i, c) in cs.iter().enumerate() {
        let o: Vec<usize> = c
            .objects()
            .map(|x| b.object(format!("[{i}]{}", c.object_id(x))))
            .collect();
        let m: Vec<usize> = c
            .morphisms()
            .map(|f| {
                b.morphism(
                    format!("[{i}]{}", c.morphism_id(f)),
                    o[c.src(f).0],
                    o[c.tgt(f).0],
                )
            })
            .collect();
        for x in c.objects() {
            b.identity(o[x.0], m[c.identity(x).0]);
        }
        for (g, f) in c.composable_pairs() {
            if let Some(gf) = c.compose(g, f) {
                b.compose(m[g.0], m[f.0], m[gf.0]);
            }
        }
        objs.push(o);
        mors.push(m);
    }
    let built = b.build().expect("tagged identifiers are unique");
    let sum = Arc::new(built.cat);
    let injections = cs
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let obj_map = objs[i].iter().map(|&o| built.objects[o]).collect();
            let mor_map = mors[i].iter().map(|&m| built.morphisms[m]).collect();
            FinFunctor::new(c.clone(), sum.clone(), obj_map, mor_map)
                .expect("injection tables are well formed")
        })
        .collect();
    (sum, injections)
}
