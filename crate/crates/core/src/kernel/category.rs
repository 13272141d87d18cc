use std::collections::HashMap;
use std::fmt;

use crate::error::{input, Result};
use crate::report::ValidationReport;

/// Index of an object inside one [`FinCat`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Obj(pub usize);

/// Index of a morphism inside one [`FinCat`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mor(pub usize);

const MISSING: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismData {
    pub id: String,
    pub src: Obj,
    pub tgt: Obj,
}

/// A finite category given by explicit tables.
///
/// Objects and morphisms are sorted by identifier, so two categories with the
/// same identifiers and tables are equal as values. The composition table may
/// be incomplete or wrong; [`validate_category`] reports such defects. Only
/// structural problems (unknown identifiers, duplicate entries, a missing
/// identity declaration) are rejected at construction.
#[derive(Clone)]
pub struct FinCat {
    objects: Vec<String>,
    morphisms: Vec<MorphismData>,
    identities: Vec<Mor>,
    out: Vec<Vec<Mor>>,
    into: Vec<Vec<Mor>>,
    out_pos: Vec<u32>,
    // table[f][out_pos[g]] = g ∘ f, for g leaving tgt(f)
    table: Vec<Vec<u32>>,
    // composition entries on pairs that are not composable
    stray: Vec<(Mor, Mor, Mor)>,
    obj_index: HashMap<String, Obj>,
    mor_index: HashMap<String, Mor>,
}

impl PartialEq for FinCat {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.morphisms == other.morphisms
            && self.identities == other.identities
            && self.table == other.table
            && self.stray == other.stray
    }
}

impl Eq for FinCat {}

impl fmt::Debug for FinCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinCat")
            .field("objects", &self.objects)
            .field(
                "morphisms",
                &self.morphisms.iter().map(|m| &m.id).collect::<Vec<_>>(),
            )
            .finish()
    }
}

impl FinCat {
    /// Builds a category from identifier tables.
    ///
    /// `morphisms` are `(id, src, tgt)`, `identities` are `(object, morphism)`
    /// and `compose` entries are `(g, f, g∘f)`.
    pub fn from_tables<S: AsRef<str>>(
        objects: &[S],
        morphisms: &[(S, S, S)],
        identities: &[(S, S)],
        compose: &[(S, S, S)],
    ) -> Result<FinCat> {
        let mut b = CategoryBuilder::new();
        let mut objs = HashMap::new();
        for o in objects {
            let o = o.as_ref();
            if objs.insert(o.to_string(), b.object(o)).is_some() {
                return Err(input(format!("duplicate object `{o}`")));
            }
        }
        let mut mors = HashMap::new();
        for (id, s, t) in morphisms {
            let (id, s, t) = (id.as_ref(), s.as_ref(), t.as_ref());
            let src = *objs
                .get(s)
                .ok_or_else(|| input(format!("morphism `{id}` has unknown source `{s}`")))?;
            let tgt = *objs
                .get(t)
                .ok_or_else(|| input(format!("morphism `{id}` has unknown target `{t}`")))?;
            if mors
                .insert(id.to_string(), b.morphism(id, src, tgt))
                .is_some()
            {
                return Err(input(format!("duplicate morphism `{id}`")));
            }
        }
        for (o, m) in identities {
            let (o, m) = (o.as_ref(), m.as_ref());
            let x = *objs
                .get(o)
                .ok_or_else(|| input(format!("identity declared for unknown object `{o}`")))?;
            let i = *mors
                .get(m)
                .ok_or_else(|| input(format!("identity of `{o}` is unknown morphism `{m}`")))?;
            b.identity(x, i);
        }
        for (g, f, gf) in compose {
            let (g, f, gf) = (g.as_ref(), f.as_ref(), gf.as_ref());
            let lookup = |m: &str| {
                mors.get(m).copied().ok_or_else(|| {
                    input(format!(
                        "composition entry for pair ({g}, {f}) names unknown morphism `{m}`"
                    ))
                })
            };
            b.compose(lookup(g)?, lookup(f)?, lookup(gf)?);
        }
        Ok(b.build()?.cat)
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl ExactSizeIterator<Item = Obj> + Clone {
        (0..self.objects.len()).map(Obj)
    }

    pub fn morphisms(&self) -> impl ExactSizeIterator<Item = Mor> + Clone {
        (0..self.morphisms.len()).map(Mor)
    }

    pub fn non_identities(&self) -> impl Iterator<Item = Mor> + '_ {
        self.morphisms().filter(move |&m| !self.is_identity(m))
    }

    pub fn object_id(&self, x: Obj) -> &str {
        &self.objects[x.0]
    }

    pub fn morphism_id(&self, m: Mor) -> &str {
        &self.morphisms[m.0].id
    }

    pub fn object_by_id(&self, id: &str) -> Option<Obj> {
        self.obj_index.get(id).copied()
    }

    pub fn morphism_by_id(&self, id: &str) -> Option<Mor> {
        self.mor_index.get(id).copied()
    }

    pub fn src(&self, m: Mor) -> Obj {
        self.morphisms[m.0].src
    }

    pub fn tgt(&self, m: Mor) -> Obj {
        self.morphisms[m.0].tgt
    }

    pub fn identity(&self, x: Obj) -> Mor {
        self.identities[x.0]
    }

    pub fn is_identity(&self, m: Mor) -> bool {
        self.identities[self.src(m).0] == m
    }

    /// Morphisms with source `x`, ascending.
    pub fn out_of(&self, x: Obj) -> &[Mor] {
        &self.out[x.0]
    }

    /// Morphisms with target `x`, ascending.
    pub fn incoming(&self, x: Obj) -> &[Mor] {
        &self.into[x.0]
    }

    pub fn hom(&self, x: Obj, y: Obj) -> impl Iterator<Item = Mor> + '_ {
        self.out[x.0]
            .iter()
            .copied()
            .filter(move |&m| self.tgt(m) == y)
    }

    /// `g ∘ f` from the table, `None` when the pair is not composable or the
    /// entry is missing.
    pub fn compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        if self.tgt(f) != self.src(g) {
            return None;
        }
        match self.table[f.0][self.out_pos[g.0] as usize] {
            MISSING => None,
            gf => Some(Mor(gf as usize)),
        }
    }

    /// `g ∘ f` in a category known to be valid.
    ///
    /// Panics when the entry is absent, which cannot happen for a category
    /// that passes [`validate_category`].
    pub fn comp(&self, g: Mor, f: Mor) -> Mor {
        self.compose(g, f).unwrap_or_else(|| {
            panic!(
                "no composite for ({}, {}) in a category assumed valid",
                self.morphism_id(g),
                self.morphism_id(f)
            )
        })
    }

    /// All composable pairs `(g, f)`.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (Mor, Mor)> + '_ {
        self.morphisms()
            .flat_map(move |f| self.out_of(self.tgt(f)).iter().map(move |&g| (g, f)))
    }

    pub fn stray_entries(&self) -> &[(Mor, Mor, Mor)] {
        &self.stray
    }

    /// Identifier-level composition table `(g, f, g∘f)` in canonical order.
    pub fn compose_entries(&self) -> Vec<(Mor, Mor, Mor)> {
        let mut entries: Vec<_> = self
            .composable_pairs()
            .filter_map(|(g, f)| self.compose(g, f).map(|gf| (g, f, gf)))
            .chain(self.stray.iter().copied())
            .collect();
        entries.sort_by(|a, b| {
            (self.morphism_id(a.0), self.morphism_id(a.1))
                .cmp(&(self.morphism_id(b.0), self.morphism_id(b.1)))
        });
        entries
    }

    /// Applies a string-level change to a copy of the composition table.
    /// Used to build deliberately broken fixtures.
    pub fn with_entry(&self, g: Mor, f: Mor, gf: Mor) -> FinCat {
        let mut c = self.clone();
        if c.tgt(f) == c.src(g) {
            c.table[f.0][c.out_pos[g.0] as usize] = gf.0 as u32;
        } else {
            c.stray.retain(|e| (e.0, e.1) != (g, f));
            c.stray.push((g, f, gf));
        }
        c
    }
}

/// Incrementally assembles a [`FinCat`] from builder-local indices.
#[derive(Debug, Default, Clone)]
pub struct CategoryBuilder {
    objects: Vec<String>,
    morphisms: Vec<(String, usize, usize)>,
    identities: Vec<Option<usize>>,
    compose: Vec<(usize, usize, usize)>,
}

/// A built category plus the map from builder indices to final indices.
#[derive(Debug, Clone)]
pub struct Built {
    pub cat: FinCat,
    pub objects: Vec<Obj>,
    pub morphisms: Vec<Mor>,
}

impl CategoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(&mut self, id: impl Into<String>) -> usize {
        self.objects.push(id.into());
        self.identities.push(None);
        self.objects.len() - 1
    }

    pub fn morphism(&mut self, id: impl Into<String>, src: usize, tgt: usize) -> usize {
        self.morphisms.push((id.into(), src, tgt));
        self.morphisms.len() - 1
    }

    pub fn identity(&mut self, obj: usize, mor: usize) {
        self.identities[obj] = Some(mor);
    }

    /// Adds the identity morphism `id` for `obj` together with its unit entries
    /// `1∘1 = 1`. Unit entries with other morphisms are added by
    /// [`CategoryBuilder::unit_entries`].
    pub fn identity_named(&mut self, obj: usize, id: impl Into<String>) -> usize {
        let m = self.morphism(id, obj, obj);
        self.identity(obj, m);
        m
    }

    pub fn compose(&mut self, g: usize, f: usize, gf: usize) {
        self.compose.push((g, f, gf));
    }

    /// Adds every `g ∘ 1 = g` and `1 ∘ f = f` entry not already present.
    pub fn unit_entries(&mut self) {
        let mut have: std::collections::HashSet<(usize, usize)> =
            self.compose.iter().map(|&(g, f, _)| (g, f)).collect();
        let ids = self.identities.clone();
        for m in 0..self.morphisms.len() {
            let (_, s, t) = self.morphisms[m];
            if let Some(i) = ids[s] {
                if have.insert((m, i)) {
                    self.compose.push((m, i, m));
                }
            }
            if let Some(i) = ids[t] {
                if have.insert((i, m)) {
                    self.compose.push((i, m, m));
                }
            }
        }
    }

    pub fn build(self) -> Result<Built> {
        let mut obj_order: Vec<usize> = (0..self.objects.len()).collect();
        obj_order.sort_by(|&a, &b| self.objects[a].cmp(&self.objects[b]));
        let mut obj_map = vec![Obj(0); self.objects.len()];
        for (new, &old) in obj_order.iter().enumerate() {
            obj_map[old] = Obj(new);
        }
        let objects: Vec<String> = obj_order.iter().map(|&o| self.objects[o].clone()).collect();
        if let Some(w) = objects.windows(2).find(|w| w[0] == w[1]) {
            return Err(input(format!("duplicate object `{}`", w[0])));
        }

        let mut mor_order: Vec<usize> = (0..self.morphisms.len()).collect();
        mor_order.sort_by(|&a, &b| self.morphisms[a].0.cmp(&self.morphisms[b].0));
        let mut mor_map = vec![Mor(0); self.morphisms.len()];
        for (new, &old) in mor_order.iter().enumerate() {
            mor_map[old] = Mor(new);
        }
        let morphisms: Vec<MorphismData> = mor_order
            .iter()
            .map(|&m| {
                let (id, s, t) = &self.morphisms[m];
                MorphismData {
                    id: id.clone(),
                    src: obj_map[*s],
                    tgt: obj_map[*t],
                }
            })
            .collect();
        if let Some(w) = morphisms.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(input(format!("duplicate morphism `{}`", w[0].id)));
        }

        let mut identities = vec![Mor(0); objects.len()];
        for (old, id) in self.identities.iter().enumerate() {
            match id {
                Some(m) => identities[obj_map[old].0] = mor_map[*m],
                None => {
                    return Err(input(format!(
                        "object `{}` has no identity",
                        self.objects[old]
                    )));
                }
            }
        }

        let mut out = vec![Vec::new(); objects.len()];
        let mut into = vec![Vec::new(); objects.len()];
        let mut out_pos = vec![0u32; morphisms.len()];
        for (i, m) in morphisms.iter().enumerate() {
            out_pos[i] = out[m.src.0].len() as u32;
            out[m.src.0].push(Mor(i));
            into[m.tgt.0].push(Mor(i));
        }
        let mut table: Vec<Vec<u32>> = morphisms
            .iter()
            .map(|m| vec![MISSING; out[m.tgt.0].len()])
            .collect();
        let mut stray = Vec::new();
        for &(g, f, gf) in &self.compose {
            let (g, f, gf) = (mor_map[g], mor_map[f], mor_map[gf]);
            let pair = || format!("({}, {})", morphisms[g.0].id, morphisms[f.0].id);
            if morphisms[f.0].tgt == morphisms[g.0].src {
                let slot = &mut table[f.0][out_pos[g.0] as usize];
                if *slot != MISSING {
                    return Err(input(format!(
                        "duplicate composition entry for pair {}",
                        pair()
                    )));
                }
                *slot = gf.0 as u32;
            } else {
                if stray.iter().any(|e: &(Mor, Mor, Mor)| (e.0, e.1) == (g, f)) {
                    return Err(input(format!(
                        "duplicate composition entry for pair {}",
                        pair()
                    )));
                }
                stray.push((g, f, gf));
            }
        }
        stray.sort();

        let obj_index = objects
            .iter()
            .enumerate()
            .map(|(i, o)| (o.clone(), Obj(i)))
            .collect();
        let mor_index = morphisms
            .iter()
            .enumerate()
            .map(|(i, m)| (m.id.clone(), Mor(i)))
            .collect();
        Ok(Built {
            cat: FinCat {
                objects,
                morphisms,
                identities,
                out,
                into,
                out_pos,
                table,
                stray,
                obj_index,
                mor_index,
            },
            objects: obj_map,
            morphisms: mor_map,
        })
    }
}

/// Checks identity typing, totality and typing of composition, the unit laws
/// and associativity.
pub fn validate_category(c: &FinCat) -> ValidationReport {
    let mut r = ValidationReport::new();
    let id = |m: Mor| c.morphism_id(m).to_string();
    for x in c.objects() {
        let i = c.identity(x);
        r.check(
            c.src(i) == x && c.tgt(i) == x,
            "identity-typing",
            [c.object_id(x).to_string(), id(i)],
        );
    }
    for (g, f) in c.composable_pairs() {
        match c.compose(g, f) {
            None => r.push("totality", [id(g), id(f)]),
            Some(gf) => r.check(
                c.src(gf) == c.src(f) && c.tgt(gf) == c.tgt(g),
                "composite-typing",
                [id(g), id(f), id(gf)],
            ),
        }
    }
    for &(g, f, _) in c.stray_entries() {
        r.push("composability", [id(g), id(f)]);
    }
    for f in c.morphisms() {
        let left = c.identity(c.tgt(f));
        if c.compose(left, f) != Some(f) {
            r.push("left-unit", [id(f)]);
        }
        let right = c.identity(c.src(f));
        if c.compose(f, right) != Some(f) {
            r.push("right-unit", [id(f)]);
        }
    }
    for f in c.morphisms() {
        for &g in c.out_of(c.tgt(f)) {
            let Some(gf) = c.compose(g, f) else { continue };
            for &h in c.out_of(c.tgt(g)) {
                let Some(hg) = c.compose(h, g) else { continue };
                let lhs = if c.src(h) == c.tgt(gf) {
                    c.compose(h, gf)
                } else {
                    None
                };
                let rhs = if c.tgt(f) == c.src(hg) {
                    c.compose(hg, f)
                } else {
                    None
                };
                if lhs.is_none() || rhs.is_none() || lhs != rhs {
                    r.push("associativity", [id(h), id(g), id(f)]);
                }
            }
        }
    }
    r
}

pub(crate) fn pair_name(x: &str, y: &str) -> String {
    format!("({x},{y})")
}
