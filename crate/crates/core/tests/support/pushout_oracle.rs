//! Ef by brute force: paths in the free category on the two generator
//! families, quotiented by one-step rewrites of the leg compositions.

use std::collections::{BTreeMap, HashMap};

use deltalens_core::{FinFunctor, Mor, Obj};
use petgraph::unionfind::UnionFind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Gen {
    /// `⟨1_a, v⟩` leaving `(a, u)`.
    J { a: Obj, u: Mor, v: Mor },
    /// `w` between `(a, 1)` and `(a', 1)`.
    A { w: Mor },
}

/// The quotient category, keyed by identifier.
#[derive(Debug, PartialEq, Eq)]
pub struct OracleCategory {
    pub objects: Vec<String>,
    pub morphisms: BTreeMap<String, (String, String)>,
    pub compose: BTreeMap<(String, String), String>,
}

struct Paths<'a> {
    f: &'a FinFunctor,
    paths: Vec<(Obj, Mor, Vec<Gen>)>,
    index: HashMap<(Obj, Mor, Vec<Gen>), usize>,
}

impl Paths<'_> {
    fn tgt(&self, g: Gen) -> (Obj, Mor) {
        let (a_cat, b) = (self.f.dom(), self.f.cod());
        match g {
            Gen::J { a, u, v } => (a, b.comp(v, u)),
            Gen::A { w } => (a_cat.tgt(w), b.identity(self.f.obj(a_cat.tgt(w)))),
        }
    }

    fn generators(&self, at: (Obj, Mor)) -> Vec<Gen> {
        let (a_cat, b) = (self.f.dom(), self.f.cod());
        let (a, u) = at;
        let mut out: Vec<Gen> = b
            .out_of(b.tgt(u))
            .iter()
            .filter(|&&v| !b.is_identity(v))
            .map(|&v| Gen::J { a, u, v })
            .collect();
        if b.is_identity(u) {
            out.extend(
                a_cat
                    .out_of(a)
                    .iter()
                    .filter(|&&w| !a_cat.is_identity(w))
                    .map(|&w| Gen::A { w }),
            );
        }
        out
    }

    fn extend(&mut self, start: (Obj, Mor), at: (Obj, Mor), path: &mut Vec<Gen>, max_len: usize) {
        let key = (start.0, start.1, path.clone());
        self.index.insert(key.clone(), self.paths.len());
        self.paths.push(key);
        if path.len() == max_len {
            return;
        }
        for g in self.generators(at) {
            path.push(g);
            let next = self.tgt(g);
            self.extend(start, next, path, max_len);
            path.pop();
        }
    }

    /// The composite of two adjacent generators, `None` for an identity.
    fn merge(&self, first: Gen, second: Gen) -> Option<Option<Gen>> {
        let (a_cat, b) = (self.f.dom(), self.f.cod());
        match (first, second) {
            (Gen::J { a, u, v }, Gen::J { v: v2, .. }) => {
                let vv = b.comp(v2, v);
                Some((!b.is_identity(vv)).then_some(Gen::J { a, u, v: vv }))
            }
            (Gen::A { w }, Gen::A { w: w2 }) => {
                let ww = a_cat.comp(w2, w);
                Some((!a_cat.is_identity(ww)).then_some(Gen::A { w: ww }))
            }
            _ => None,
        }
    }
}

/// Builds the quotient from every path of length at most `max_len`, which
/// must be at least twice the length of the longest reduced path.
pub fn pushout_oracle(f: &FinFunctor, max_len: usize) -> Result<OracleCategory, String> {
    let (a_cat, b) = (f.dom(), f.cod());
    let nodes: Vec<(Obj, Mor)> = a_cat
        .objects()
        .flat_map(|a| b.out_of(f.obj(a)).iter().map(move |&u| (a, u)))
        .collect();
    let mut p = Paths {
        f,
        paths: Vec::new(),
        index: HashMap::new(),
    };
    for &n in &nodes {
        p.extend(n, n, &mut Vec::new(), max_len);
    }
    let mut uf = UnionFind::<usize>::new(p.paths.len());
    for (i, (a, u, path)) in p.paths.iter().enumerate() {
        for k in 1..path.len() {
            if let Some(m) = p.merge(path[k - 1], path[k]) {
                let mut shorter = path[..k - 1].to_vec();
                shorter.extend(m);
                shorter.extend_from_slice(&path[k + 1..]);
                uf.union(i, p.index[&(*a, *u, shorter)]);
            }
        }
    }

    let node_name = |(a, u): (Obj, Mor)| format!("({},{})", a_cat.object_id(a), b.morphism_id(u));
    // a class is named after its shortest member
    let mut best: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, path) in p.paths.iter().enumerate() {
        let root = uf.find(i);
        let e = best.entry(root).or_insert(i);
        if path.2.len() < p.paths[*e].2.len() {
            *e = i;
        }
    }
    let mut class_name = HashMap::new();
    let mut morphisms = BTreeMap::new();
    for (&root, &i) in &best {
        let (a, u, path) = &p.paths[i];
        let start = (*a, *u);
        let end = path.last().map(|&g| p.tgt(g)).unwrap_or(start);
        let id = |m: Mor| b.morphism_id(m).to_string();
        let name = match path.as_slice() {
            [] => format!("<{}>@{}", id(b.identity(b.tgt(*u))), node_name(start)),
            [Gen::J { v, .. }] => format!("<{}>@{}", id(*v), node_name(start)),
            _ => {
                let (pre, w, post) = match path.as_slice() {
                    [Gen::A { w }] => (None, *w, None),
                    [Gen::J { v, .. }, Gen::A { w }] => (Some(*v), *w, None),
                    [Gen::A { w }, Gen::J { v, .. }] => (None, *w, Some(*v)),
                    [Gen::J { v, .. }, Gen::A { w }, Gen::J { v: v2, .. }] => {
                        (Some(*v), *w, Some(*v2))
                    }
                    other => {
                        return Err(format!(
                            "class of {} has no reduced path: {other:?}",
                            node_name(start)
                        ))
                    }
                };
                let v = pre.unwrap_or(b.identity(f.obj(*a)));
                let u2 = post.unwrap_or(b.identity(f.obj(a_cat.tgt(w))));
                format!(
                    "<{}|{}|{}>@{}",
                    id(v),
                    a_cat.morphism_id(w),
                    id(u2),
                    node_name(start)
                )
            }
        };
        if path.len() * 2 > max_len {
            return Err(format!(
                "reduced path for {name} is too long for the bound {max_len}"
            ));
        }
        class_name.insert(root, name.clone());
        morphisms.insert(name, (node_name(start), node_name(end)));
    }

    let mut compose = BTreeMap::new();
    let reps: Vec<(usize, usize)> = best.iter().map(|(&r, &i)| (r, i)).collect();
    for &(r1, i1) in &reps {
        for &(r2, i2) in &reps {
            let (a1, u1, path1) = &p.paths[i1];
            let (a2, u2, path2) = &p.paths[i2];
            let end1 = path1.last().map(|&g| p.tgt(g)).unwrap_or((*a1, *u1));
            if end1 != (*a2, *u2) {
                continue;
            }
            let mut joined = path1.clone();
            joined.extend_from_slice(path2);
            let k = p.index[&(*a1, *u1, joined)];
            compose.insert(
                (class_name[&r2].clone(), class_name[&r1].clone()),
                class_name[&uf.find(k)].clone(),
            );
        }
    }
    let mut objects: Vec<String> = nodes.iter().map(|&n| node_name(n)).collect();
    objects.sort();
    Ok(OracleCategory {
        objects,
        morphisms,
        compose,
    })
}
