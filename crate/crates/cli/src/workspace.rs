//! Named categories, functors and lenses, validated on load.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use deltalens_core::{
    corpus, validate_category, validate_functor, validate_lens, DeltaLens, FinCat, FinFunctor,
    LiftingTable,
};

use crate::error::{CliError, Result};
use crate::format::{CategoryDoc, FunctorDoc, LensDoc, LiftDoc, MorphismDoc, WorkspaceDoc};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorEntry {
    pub dom: String,
    pub cod: String,
    pub functor: FinFunctor,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LensEntry {
    pub functor: String,
    pub lens: DeltaLens,
}

/// Entries from files, plus the corpus categories that functors may refer
/// to by name without defining them.
#[derive(Clone, Debug)]
pub struct Workspace {
    pub categories: BTreeMap<String, Arc<FinCat>>,
    pub functors: BTreeMap<String, FunctorEntry>,
    pub lenses: BTreeMap<String, LensEntry>,
    pub corpus: Vec<(String, Arc<FinCat>)>,
}

impl Default for Workspace {
    fn default() -> Self {
        Self::with_corpus(
            corpus::fixtures()
                .into_iter()
                .map(|(n, c)| (n.to_string(), c))
                .collect(),
        )
    }
}

impl Workspace {
    pub fn with_corpus(corpus: Vec<(String, Arc<FinCat>)>) -> Self {
        Workspace {
            categories: BTreeMap::new(),
            functors: BTreeMap::new(),
            lenses: BTreeMap::new(),
            corpus,
        }
    }

    /// An empty workspace sharing this one's corpus.
    pub fn derived(&self) -> Self {
        Self::with_corpus(self.corpus.clone())
    }

    pub fn category(&self, name: &str) -> Result<&Arc<FinCat>> {
        self.categories
            .get(name)
            .or_else(|| self.corpus.iter().find(|(n, _)| n == name).map(|(_, c)| c))
            .ok_or_else(|| CliError::Unknown {
                kind: "category",
                name: name.into(),
            })
    }

    pub fn functor(&self, name: &str) -> Result<&FunctorEntry> {
        self.functors.get(name).ok_or_else(|| CliError::Unknown {
            kind: "functor",
            name: name.into(),
        })
    }

    pub fn lens(&self, name: &str) -> Result<&LensEntry> {
        self.lenses.get(name).ok_or_else(|| CliError::Unknown {
            kind: "lens",
            name: name.into(),
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::default().load_into(path)
    }

    /// Loads `path` against this workspace's corpus.
    pub fn load_into(&self, path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.into(),
            source,
        })?;
        self.parse_into(&text)
    }

    pub fn parse_into(&self, text: &str) -> Result<Self> {
        let doc: WorkspaceDoc =
            serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        self.read_doc(doc)
    }

    fn read_doc(&self, doc: WorkspaceDoc) -> Result<Self> {
        let mut ws = self.derived();
        for (name, c) in doc.categories {
            let cat = category_read_doc(&name, c)?;
            let report = validate_category(&cat);
            if !report.ok() {
                return Err(CliError::Invalid {
                    entry: format!("category `{name}`"),
                    report,
                });
            }
            ws.categories.insert(name, Arc::new(cat));
        }
        for (name, d) in doc.functors {
            let (dom, cod) = (ws.category(&d.dom)?.clone(), ws.category(&d.cod)?.clone());
            let on_objects: Vec<_> = d.on_objects.iter().collect();
            let on_morphisms: Vec<_> = d.on_morphisms.iter().collect();
            let f = FinFunctor::from_names(dom, cod, &on_objects, &on_morphisms)
                .map_err(CliError::core(format!("functor `{name}`")))?;
            let report = validate_functor(&f);
            if !report.ok() {
                return Err(CliError::Invalid {
                    entry: format!("functor `{name}`"),
                    report,
                });
            }
            ws.functors.insert(
                name,
                FunctorEntry {
                    dom: d.dom,
                    cod: d.cod,
                    functor: f,
                },
            );
        }
        for (name, d) in doc.lenses {
            let f = ws.functor(&d.functor)?.functor.clone();
            let lens = lens_read_doc(&name, f, &d.lifts)?;
            let report = validate_lens(&lens);
            if !report.ok() {
                return Err(CliError::Invalid {
                    entry: format!("lens `{name}`"),
                    report,
                });
            }
            ws.lenses.insert(
                name,
                LensEntry {
                    functor: d.functor,
                    lens,
                },
            );
        }
        Ok(ws)
    }

    pub fn to_doc(&self) -> WorkspaceDoc {
        WorkspaceDoc {
            categories: self
                .categories
                .iter()
                .map(|(n, c)| (n.clone(), category_doc(c)))
                .collect(),
            functors: self
                .functors
                .iter()
                .map(|(n, e)| (n.clone(), functor_doc(e)))
                .collect(),
            lenses: self
                .lenses
                .iter()
                .map(|(n, e)| (n.clone(), lens_doc(e)))
                .collect(),
        }
    }

    /// Pretty JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_doc()).expect("documents serialise");
        s.push('\n');
        s
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        fs::write(path, self.to_json()).map_err(|source| CliError::Io {
            path: path.into(),
            source,
        })
    }

    /// Copies category `name` from `from` unless it is a corpus category.
    pub fn import_category(&mut self, from: &Workspace, name: &str) -> Result<()> {
        if let Some(c) = from.categories.get(name) {
            self.categories.insert(name.into(), c.clone());
        } else {
            from.category(name)?;
        }
        Ok(())
    }

    /// Copies functor `name` together with the categories it refers to.
    pub fn import_functor(&mut self, from: &Workspace, name: &str) -> Result<()> {
        let e = from.functor(name)?.clone();
        self.import_category(from, &e.dom)?;
        self.import_category(from, &e.cod)?;
        self.functors.insert(name.into(), e);
        Ok(())
    }
}

fn category_read_doc(name: &str, c: CategoryDoc) -> Result<FinCat> {
    let mut compose = Vec::with_capacity(c.compose.len());
    for entry in &c.compose {
        match entry.as_slice() {
            [g, f, gf] => compose.push((g.as_str(), f.as_str(), gf.as_str())),
            _ => {
                return Err(CliError::Parse(format!(
                    "category `{name}`: composition entry [{}] is not of the form [g, f, g∘f]",
                    entry.join(", ")
                )))
            }
        }
    }
    let objects: Vec<&str> = c.objects.iter().map(String::as_str).collect();
    let morphisms: Vec<(&str, &str, &str)> = c
        .morphisms
        .iter()
        .map(|m| (m.id.as_str(), m.src.as_str(), m.tgt.as_str()))
        .collect();
    let identities: Vec<(&str, &str)> = c
        .identities
        .iter()
        .map(|(o, m)| (o.as_str(), m.as_str()))
        .collect();
    FinCat::from_tables(&objects, &morphisms, &identities, &compose)
        .map_err(CliError::core(format!("category `{name}`")))
}

fn lens_read_doc(name: &str, f: FinFunctor, lifts: &[LiftDoc]) -> Result<DeltaLens> {
    let (a, b) = (f.dom(), f.cod());
    let mut table = LiftingTable::new();
    for l in lifts {
        let bad =
            |what: &str, id: &str| CliError::Parse(format!("lens `{name}`: unknown {what} `{id}`"));
        let x = a
            .object_by_id(&l.object)
            .ok_or_else(|| bad("object", &l.object))?;
        let u = b
            .morphism_by_id(&l.over)
            .ok_or_else(|| bad("morphism", &l.over))?;
        let w = a
            .morphism_by_id(&l.lift)
            .ok_or_else(|| bad("morphism", &l.lift))?;
        if table.insert(x, u, w).is_some() {
            return Err(CliError::Parse(format!(
                "lens `{name}`: two lifts for ({}, {})",
                l.object, l.over
            )));
        }
    }
    Ok(DeltaLens::new(f, table))
}

pub fn category_doc(c: &FinCat) -> CategoryDoc {
    let id = |m| c.morphism_id(m).to_string();
    let mut compose: Vec<Vec<String>> = c
        .compose_entries()
        .into_iter()
        .map(|(g, f, gf)| vec![id(g), id(f), id(gf)])
        .collect();
    compose.sort();
    CategoryDoc {
        objects: c.objects().map(|x| c.object_id(x).to_string()).collect(),
        morphisms: c
            .morphisms()
            .map(|m| MorphismDoc {
                id: id(m),
                src: c.object_id(c.src(m)).into(),
                tgt: c.object_id(c.tgt(m)).into(),
            })
            .collect(),
        identities: c
            .objects()
            .map(|x| (c.object_id(x).to_string(), id(c.identity(x))))
            .collect(),
        compose,
    }
}

fn functor_doc(e: &FunctorEntry) -> FunctorDoc {
    let f = &e.functor;
    let (a, b) = (f.dom(), f.cod());
    FunctorDoc {
        dom: e.dom.clone(),
        cod: e.cod.clone(),
        on_objects: a
            .objects()
            .map(|x| {
                (
                    a.object_id(x).to_string(),
                    b.object_id(f.obj(x)).to_string(),
                )
            })
            .collect(),
        on_morphisms: a
            .morphisms()
            .map(|m| {
                (
                    a.morphism_id(m).to_string(),
                    b.morphism_id(f.mor(m)).to_string(),
                )
            })
            .collect(),
    }
}

fn lens_doc(e: &LensEntry) -> LensDoc {
    let f = e.lens.functor();
    let (a, b) = (f.dom(), f.cod());
    LensDoc {
        functor: e.functor.clone(),
        lifts: e
            .lens
            .lifts()
            .iter()
            .map(|((x, u), w)| LiftDoc {
                object: a.object_id(x).into(),
                over: b.morphism_id(u).into(),
                lift: a.morphism_id(w).into(),
            })
            .collect(),
    }
}
