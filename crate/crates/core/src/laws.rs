//! Law-suite runner: every invariant check over the fixture corpus, as data.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rayon::prelude::*;

use crate::awfs::{
    e_object, enumerate_r_algebras, free_lens, lens_to_r_algebra, r_algebra_to_lens,
    validate_comonad, validate_distributive_law, validate_monad,
};
use crate::corpus::{
    corpus_squares, fixtures, functors_between, lenses_on, two, CorpusFunctor, CorpusLens,
};
use crate::error::Result;
use crate::factorization::{
    comprehensive_factorise, is_discrete_opfibration, is_initial, orthogonal_lift, CommutingSquare,
};
use crate::kernel::{validate_category, validate_functor, FinCat, Guard};
use crate::lens::{compose_lenses, enumerate_lens_structures, validate_lens};
use crate::report::{ValidationReport, Violation};
use crate::semimonad::validate_semimonad;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    /// Category and functor axioms on the fixtures and corpus functors.
    Kernel,
    /// Comprehensive factorisation and orthogonal lifting.
    Factorization,
    /// Lens axioms, uniqueness over discrete opfibrations, composition.
    Lens,
    /// The semi-monad on Jf.
    Semimonad,
    /// Monad, comonad, distributive law, R-algebras and free lenses.
    Awfs,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::Kernel,
        Suite::Factorization,
        Suite::Lens,
        Suite::Semimonad,
        Suite::Awfs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Kernel => "kernel",
            Suite::Factorization => "factorization",
            Suite::Lens => "lens",
            Suite::Semimonad => "semimonad",
            Suite::Awfs => "awfs",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }
}

/// What to run.
#[derive(Clone, Debug)]
pub struct LawScope {
    pub suites: Vec<Suite>,
    /// The categories the corpus is built from.
    pub fixtures: Vec<(String, Arc<FinCat>)>,
    pub guard: Guard,
    /// Cap on commuting squares per ordered pair of corpus functors.
    pub squares_per_pair: usize,
    /// Also check the monad, comonad and distributive law on Rf and Lf.
    pub tower: bool,
    /// Adds a fixture with a corrupted composition entry to the kernel suite.
    pub broken_fixture: bool,
    /// Shuffles the evaluation order. Results do not depend on it.
    pub seed: u64,
}

impl Default for LawScope {
    fn default() -> Self {
        LawScope {
            suites: Suite::ALL.to_vec(),
            fixtures: fixtures()
                .into_iter()
                .map(|(n, c)| (n.to_string(), c))
                .collect(),
            guard: Guard::default(),
            squares_per_pair: usize::MAX,
            tower: false,
            broken_fixture: false,
            seed: 0,
        }
    }
}

impl LawScope {
    pub fn only(suite: Suite) -> Self {
        LawScope {
            suites: vec![suite],
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LawTally {
    pub passed: usize,
    pub failed: usize,
}

/// A failed case: the law, the subject it was checked on, and the violation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Failure {
    pub law: String,
    pub subject: String,
    pub violation: Violation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawSuiteResult {
    pub tallies: BTreeMap<String, LawTally>,
    pub failures: Vec<Failure>,
    pub wall_time: Duration,
}

impl LawSuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn cases(&self) -> usize {
        self.tallies.values().map(|t| t.passed + t.failed).sum()
    }
}

impl fmt::Display for LawSuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (law, t) in &self.tallies {
            writeln!(f, "{law}: {} passed, {} failed", t.passed, t.failed)?;
        }
        for x in &self.failures {
            writeln!(f, "FAIL {} on {}: {}", x.law, x.subject, x.violation)?;
        }
        write!(
            f,
            "{} cases, {} failures, {:.2}s",
            self.cases(),
            self.failures.len(),
            self.wall_time.as_secs_f64()
        )
    }
}

type Check = Box<dyn Fn() -> Result<ValidationReport> + Send + Sync>;

struct Case {
    law: &'static str,
    subject: String,
    check: Check,
}

fn case(
    law: &'static str,
    subject: impl Into<String>,
    check: impl Fn() -> Result<ValidationReport> + Send + Sync + 'static,
) -> Case {
    Case {
        law,
        subject: subject.into(),
        check: Box::new(check),
    }
}

fn report(law: &str, holds: bool, witness: &[&str]) -> ValidationReport {
    let mut r = ValidationReport::new();
    r.check(holds, law, witness.iter().copied());
    r
}

/// `two` with `u ∘ 1_0` redirected to `1_0`.
fn broken_two() -> FinCat {
    let c = two();
    let m = |id| c.morphism_by_id(id).expect("fixture morphism");
    c.with_entry(m("u"), m("1_0"), m("1_0"))
}

struct Corpus {
    functors: Arc<Vec<CorpusFunctor>>,
    lenses: Arc<Vec<CorpusLens>>,
    squares: Arc<Vec<Vec<CommutingSquare>>>,
}

fn load_corpus(scope: &LawScope) -> Result<Corpus> {
    let functors = functors_between(&scope.fixtures, scope.guard)?;
    let lenses = lenses_on(&functors, scope.guard)?;
    let mut squares = vec![Vec::new(); functors.len()];
    let wants_squares = scope
        .suites
        .iter()
        .any(|s| matches!(s, Suite::Factorization | Suite::Semimonad | Suite::Awfs));
    if wants_squares {
        for (i, sq) in corpus_squares(&functors, scope.guard, scope.squares_per_pair)? {
            squares[i].push(sq);
        }
    }
    Ok(Corpus {
        functors: Arc::new(functors),
        lenses: Arc::new(lenses),
        squares: Arc::new(squares),
    })
}

fn kernel_cases(scope: &LawScope, c: &Corpus, out: &mut Vec<Case>) {
    for (name, cat) in &scope.fixtures {
        let cat = cat.clone();
        out.push(case("category", name, move || Ok(validate_category(&cat))));
    }
    if scope.broken_fixture {
        out.push(case("category", "broken-two", || {
            Ok(validate_category(&broken_two()))
        }));
    }
    for i in 0..c.functors.len() {
        let fs = c.functors.clone();
        out.push(case("functor", &c.functors[i].name, move || {
            Ok(validate_functor(&fs[i].functor))
        }));
    }
}

fn factorization_cases(c: &Corpus, out: &mut Vec<Case>) {
    for i in 0..c.functors.len() {
        let fs = c.functors.clone();
        out.push(case("factorisation", &c.functors[i].name, move || {
            let f = &fs[i].functor;
            let fac = comprehensive_factorise(f);
            let mut r = validate_category(&fac.mid);
            r.check(is_initial(&fac.e), "left-initial", [fs[i].name.as_str()]);
            r.check(
                is_discrete_opfibration(&fac.m),
                "right-opfibration",
                [fs[i].name.as_str()],
            );
            r.check(
                fac.m.after(&fac.e)? == *f,
                "composite",
                [fs[i].name.as_str()],
            );
            Ok(r)
        }));
        if !is_initial(&c.functors[i].functor) {
            continue;
        }
        let (fs, sqs) = (c.functors.clone(), c.squares.clone());
        out.push(case("orthogonal-lift", &c.functors[i].name, move || {
            let mut r = ValidationReport::new();
            for (k, sq) in sqs[i]
                .iter()
                .enumerate()
                .filter(|(_, sq)| is_discrete_opfibration(sq.right()))
            {
                let d = orthogonal_lift(sq)?;
                let solves =
                    d.after(sq.left())? == *sq.top() && sq.right().after(&d)? == *sq.bottom();
                r.check(
                    solves,
                    "diagonal",
                    [fs[i].name.clone(), format!("square {k}")],
                );
            }
            Ok(r)
        }));
    }
}

fn lens_cases(scope: &LawScope, c: &Corpus, out: &mut Vec<Case>) {
    for i in 0..c.lenses.len() {
        let ls = c.lenses.clone();
        out.push(case("lens", &c.lenses[i].name, move || {
            Ok(validate_lens(&ls[i].lens))
        }));
    }
    let guard = scope.guard;
    for i in 0..c.functors.len() {
        if !is_discrete_opfibration(&c.functors[i].functor) {
            continue;
        }
        let fs = c.functors.clone();
        out.push(case(
            "opfibration-lens-unique",
            &c.functors[i].name,
            move || {
                let n = enumerate_lens_structures(&fs[i].functor, guard)?.len();
                Ok(report(
                    "unique-structure",
                    n == 1,
                    &[&fs[i].name, &n.to_string()],
                ))
            },
        ));
    }
    for i in 0..c.lenses.len() {
        let ls = c.lenses.clone();
        out.push(case("lens-composition", &c.lenses[i].name, move || {
            let mut r = ValidationReport::new();
            let l1 = &ls[i].lens;
            for l2 in ls
                .iter()
                .filter(|l2| l2.lens.functor().dom() == l1.functor().cod())
            {
                let l = compose_lenses(l1, &l2.lens)?;
                r.merge(validate_lens(&l).scoped(&format!("{} ; {}", ls[i].name, l2.name)));
            }
            Ok(r)
        }));
    }
}

fn semimonad_cases(c: &Corpus, out: &mut Vec<Case>) {
    for i in 0..c.functors.len() {
        let (fs, sqs) = (c.functors.clone(), c.squares.clone());
        out.push(case("semimonad", &c.functors[i].name, move || {
            validate_semimonad(&fs[i].functor, &sqs[i])
        }));
    }
}

fn awfs_cases(scope: &LawScope, c: &Corpus, out: &mut Vec<Case>) {
    let guard = scope.guard;
    for i in 0..c.functors.len() {
        let name = c.functors[i].name.clone();
        let fs = c.functors.clone();
        out.push(case("e-object", &name, move || {
            let ef = e_object(&fs[i].functor)?;
            let mut r = validate_category(&ef.e);
            r.merge(validate_functor(&ef.rf).scoped("Rf"));
            Ok(r)
        }));
        let (fs, sqs) = (c.functors.clone(), c.squares.clone());
        out.push(case("monad", &name, move || {
            validate_monad(&fs[i].functor, &sqs[i])
        }));
        let (fs, sqs) = (c.functors.clone(), c.squares.clone());
        out.push(case("comonad", &name, move || {
            validate_comonad(&fs[i].functor, &sqs[i])
        }));
        let fs = c.functors.clone();
        out.push(case("distributive-law", &name, move || {
            validate_distributive_law(&fs[i].functor)
        }));
        let fs = c.functors.clone();
        out.push(case("free-lens", &name, move || {
            Ok(validate_lens(&free_lens(&e_object(&fs[i].functor)?)))
        }));
        let fs = c.functors.clone();
        out.push(case("lens-algebra-bijection", &name, move || {
            let f = &fs[i].functor;
            let ef = Arc::new(e_object(f)?);
            let lenses = enumerate_lens_structures(f, guard)?;
            let algebras = enumerate_r_algebras(&ef, guard)?;
            let mut r = report("counts", lenses.len() == algebras.len(), &[&fs[i].name]);
            for (k, l) in lenses.iter().enumerate() {
                let alg = lens_to_r_algebra(l, ef.clone())?;
                r.check(
                    algebras.contains(&alg),
                    "lens-to-algebra",
                    [fs[i].name.clone(), format!("lens {k}")],
                );
                r.check(
                    r_algebra_to_lens(&alg)? == *l,
                    "round-trip",
                    [fs[i].name.clone(), format!("lens {k}")],
                );
            }
            Ok(r)
        }));
        if scope.tower {
            let fs = c.functors.clone();
            out.push(case("tower", &name, move || {
                let ef = e_object(&fs[i].functor)?;
                let mut r = ValidationReport::new();
                for (level, g) in [("Rf", &ef.rf), ("Lf", &ef.lf)] {
                    r.merge(validate_monad(g, &[])?.scoped(level));
                    r.merge(validate_comonad(g, &[])?.scoped(level));
                    r.merge(validate_distributive_law(g)?.scoped(level));
                }
                Ok(r)
            }));
        }
    }
}

/// Runs the selected suites. Cases are evaluated in parallel in a
/// seed-dependent order; the result is sorted by (law, subject) so it does
/// not depend on the order or the thread count.
pub fn run_laws(scope: &LawScope) -> Result<LawSuiteResult> {
    let start = Instant::now();
    let corpus = load_corpus(scope)?;
    let mut cases = Vec::new();
    let mut suites = scope.suites.clone();
    suites.sort();
    suites.dedup();
    for s in suites {
        match s {
            Suite::Kernel => kernel_cases(scope, &corpus, &mut cases),
            Suite::Factorization => factorization_cases(&corpus, &mut cases),
            Suite::Lens => lens_cases(scope, &corpus, &mut cases),
            Suite::Semimonad => semimonad_cases(&corpus, &mut cases),
            Suite::Awfs => awfs_cases(scope, &corpus, &mut cases),
        }
    }
    cases.shuffle(&mut StdRng::seed_from_u64(scope.seed));

    let mut outcomes: Vec<(&'static str, String, Vec<Violation>)> = cases
        .par_iter()
        .map(|c| {
            let violations = match (c.check)() {
                Ok(r) => r.violations().to_vec(),
                Err(e) => vec![Violation {
                    law: "error".into(),
                    witness: vec![e.to_string()],
                }],
            };
            (c.law, c.subject.clone(), violations)
        })
        .collect();
    outcomes.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));

    let mut tallies: BTreeMap<String, LawTally> = BTreeMap::new();
    let mut failures = Vec::new();
    for (law, subject, violations) in outcomes {
        let t = tallies.entry(law.to_string()).or_default();
        if violations.is_empty() {
            t.passed += 1;
        } else {
            t.failed += 1;
            failures.extend(violations.into_iter().map(|violation| Failure {
                law: law.to_string(),
                subject: subject.clone(),
                violation,
            }));
        }
    }
    Ok(LawSuiteResult {
        tallies,
        failures,
        wall_time: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(suites: Vec<Suite>) -> LawScope {
        LawScope {
            suites,
            squares_per_pair: 1,
            ..LawScope::default()
        }
    }

    #[test]
    fn default_corpus_passes() {
        let r = run_laws(&quick(Suite::ALL.to_vec())).unwrap();
        assert!(r.passed(), "{r}");
        for law in [
            "category",
            "functor",
            "factorisation",
            "lens",
            "semimonad",
            "monad",
            "comonad",
            "free-lens",
        ] {
            assert!(r.tallies[law].passed > 0, "{law}");
        }
    }

    #[test]
    fn broken_fixture_is_reported_with_witness() {
        let scope = LawScope {
            broken_fixture: true,
            ..quick(vec![Suite::Kernel])
        };
        let r = run_laws(&scope).unwrap();
        assert!(!r.passed());
        assert_eq!(r.tallies["category"].failed, 1);
        assert!(r.failures.iter().all(|f| f.subject == "broken-two"));
        assert!(r
            .failures
            .iter()
            .any(|f| f.violation.law == "right-unit" && f.violation.witness == ["u"]));
    }

    #[test]
    fn scope_limits_the_laws_run() {
        let r = run_laws(&LawScope::only(Suite::Factorization)).unwrap();
        assert!(r.passed(), "{r}");
        let laws: Vec<&str> = r.tallies.keys().map(String::as_str).collect();
        assert_eq!(laws, ["factorisation", "orthogonal-lift"]);
    }

    #[test]
    fn results_do_not_depend_on_the_seed() {
        let scope = |seed| LawScope {
            seed,
            broken_fixture: true,
            ..quick(vec![Suite::Kernel, Suite::Lens])
        };
        let (a, b) = (run_laws(&scope(0)).unwrap(), run_laws(&scope(17)).unwrap());
        assert_eq!((a.tallies, a.failures), (b.tallies, b.failures));
    }
}
