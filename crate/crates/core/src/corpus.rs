//! Built-in fixture categories and the functors and squares between them
//! that the law suites sweep over.

use std::sync::Arc;

use crate::error::Result;
use crate::factorization::CommutingSquare;
use crate::kernel::{enumerate_functors, CategoryBuilder, FinCat, FinFunctor, Guard};
use crate::lens::{enumerate_lens_structures, DeltaLens};

fn build(
    objects: &[&str],
    arrows: &[(&str, &str, &str)],
    extra: &[(&str, &str, &str)],
) -> Arc<FinCat> {
    let mut b = CategoryBuilder::new();
    let obj: Vec<usize> = objects.iter().map(|o| b.object(*o)).collect();
    let pos = |id: &str| {
        objects
            .iter()
            .position(|o| *o == id)
            .expect("fixture object")
    };
    let mut ids = Vec::new();
    for (i, o) in objects.iter().enumerate() {
        ids.push((format!("1_{o}"), b.identity_named(obj[i], format!("1_{o}"))));
    }
    for (id, s, t) in arrows {
        ids.push((id.to_string(), b.morphism(*id, obj[pos(s)], obj[pos(t)])));
    }
    let m = |id: &str| {
        ids.iter()
            .find(|(n, _)| n == id)
            .expect("fixture morphism")
            .1
    };
    for (g, f, gf) in extra {
        b.compose(m(g), m(f), m(gf));
    }
    b.unit_entries();
    Arc::new(b.build().expect("fixtures are well formed").cat)
}

/// The terminal category.
pub fn one() -> Arc<FinCat> {
    build(&["*"], &[], &[])
}

/// The interval `0 → 1`.
pub fn two() -> Arc<FinCat> {
    build(&["0", "1"], &[("u", "0", "1")], &[])
}

pub fn disc2() -> Arc<FinCat> {
    build(&["0", "1"], &[], &[])
}

/// Two parallel arrows `s, t : 0 → 1`.
pub fn par() -> Arc<FinCat> {
    build(&["0", "1"], &[("s", "0", "1"), ("t", "0", "1")], &[])
}

/// The walking isomorphism `i : 0 ⇄ 1 : j`.
pub fn iso() -> Arc<FinCat> {
    build(
        &["0", "1"],
        &[("i", "0", "1"), ("j", "1", "0")],
        &[("j", "i", "1_0"), ("i", "j", "1_1")],
    )
}

/// The walking retraction: `r ∘ s = 1_0` and the idempotent `e = s ∘ r`.
pub fn ret() -> Arc<FinCat> {
    build(
        &["0", "1"],
        &[("s", "0", "1"), ("r", "1", "0"), ("e", "1", "1")],
        &[
            ("r", "s", "1_0"),
            ("s", "r", "e"),
            ("e", "e", "e"),
            ("e", "s", "s"),
            ("r", "e", "r"),
        ],
    )
}

/// One object with an idempotent `e ∘ e = e`.
pub fn idem() -> Arc<FinCat> {
    build(&["*"], &[("e", "*", "*")], &[("e", "e", "e")])
}

/// The fixture set, by name.
pub fn fixtures() -> Vec<(&'static str, Arc<FinCat>)> {
    vec![
        ("one", one()),
        ("two", two()),
        ("disc2", disc2()),
        ("par", par()),
        ("iso", iso()),
        ("ret", ret()),
        ("idem", idem()),
    ]
}

pub fn fixture(name: &str) -> Option<Arc<FinCat>> {
    fixtures()
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, c)| c)
}

/// A named functor between fixtures.
#[derive(Clone, Debug)]
pub struct CorpusFunctor {
    pub name: String,
    pub functor: FinFunctor,
}

/// Every functor between every ordered pair of fixtures, named
/// `dom->cod#i` in enumeration order.
pub fn corpus_functors(guard: Guard) -> Result<Vec<CorpusFunctor>> {
    functors_between(&fixtures(), guard)
}

/// Every functor between every ordered pair of the given categories.
pub fn functors_between<S: AsRef<str>>(
    fx: &[(S, Arc<FinCat>)],
    guard: Guard,
) -> Result<Vec<CorpusFunctor>> {
    let mut out = Vec::new();
    for (an, a) in fx {
        let an = an.as_ref();
        for (bn, b) in fx {
            let bn = bn.as_ref();
            for (i, f) in enumerate_functors(a, b, guard)?.into_iter().enumerate() {
                out.push(CorpusFunctor {
                    name: format!("{an}->{bn}#{i}"),
                    functor: f,
                });
            }
        }
    }
    Ok(out)
}

/// A named lens structure on a corpus functor.
#[derive(Clone, Debug)]
pub struct CorpusLens {
    pub name: String,
    pub lens: DeltaLens,
}

/// Every lens structure on every corpus functor, named `functor/i`.
pub fn corpus_lenses(guard: Guard) -> Result<Vec<CorpusLens>> {
    lenses_on(&corpus_functors(guard)?, guard)
}

/// Every lens structure on each of `functors`.
pub fn lenses_on(functors: &[CorpusFunctor], guard: Guard) -> Result<Vec<CorpusLens>> {
    let mut out = Vec::new();
    for cf in functors {
        for (i, lens) in enumerate_lens_structures(&cf.functor, guard)?
            .into_iter()
            .enumerate()
        {
            out.push(CorpusLens {
                name: format!("{}/{i}", cf.name),
                lens,
            });
        }
    }
    Ok(out)
}

/// Commuting squares from `f` to `g`, at most `cap` of them, in enumeration
/// order of `(h, k)`.
pub fn squares_between(
    f: &FinFunctor,
    g: &FinFunctor,
    guard: Guard,
    cap: usize,
) -> Result<Vec<CommutingSquare>> {
    let mut out = Vec::new();
    let tops = enumerate_functors(f.dom(), g.dom(), guard)?;
    let bottoms = enumerate_functors(f.cod(), g.cod(), guard)?;
    for k in &bottoms {
        let kf = k.after(f)?;
        for h in &tops {
            if out.len() == cap {
                return Ok(out);
            }
            if g.after(h)? == kf {
                out.push(CommutingSquare::new(
                    f.clone(),
                    g.clone(),
                    h.clone(),
                    k.clone(),
                )?);
            }
        }
    }
    Ok(out)
}

/// Commuting squares between corpus functors `f → g`, at most `per_pair` for
/// each ordered pair, keyed by the index of `f` in `functors`.
pub fn corpus_squares(
    functors: &[CorpusFunctor],
    guard: Guard,
    per_pair: usize,
) -> Result<Vec<(usize, CommutingSquare)>> {
    let mut out = Vec::new();
    for (i, f) in functors.iter().enumerate() {
        for g in functors {
            for sq in squares_between(&f.functor, &g.functor, guard, per_pair)? {
                out.push((i, sq));
            }
        }
    }
    Ok(out)
}
