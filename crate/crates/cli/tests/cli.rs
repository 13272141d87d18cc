use std::path::Path;
use std::process::{Command, Output};

use deltalens_cli::Workspace;
use deltalens_core::orthogonal_lift;

fn deltalens(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_deltalens"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

const ID_TWO: &str = r#"{"functors": {"id": {"dom": "two", "cod": "two",
  "on_objects": {"0": "0", "1": "1"}, "on_morphisms": {"1_0": "1_0", "1_1": "1_1", "u": "u"}}}}"#;

#[test]
fn validate_reports_counts() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "w.json", ID_TWO);
    let o = deltalens(&["validate", &f]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "ok: 0 categories, 1 functors, 0 lenses\n");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        deltalens(&["validate", "/nonexistent.json"]).status.code(),
        Some(2)
    );
    let garbled = write(dir.path(), "g.json", "{");
    assert_eq!(deltalens(&["validate", &garbled]).status.code(), Some(2));
    let not_functor = ID_TWO.replace(r#""u": "u""#, r#""u": "1_0""#);
    let bad = write(dir.path(), "b.json", &not_functor);
    let o = deltalens(&["validate", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("functor `id` is invalid"));
    assert_eq!(deltalens(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn factorise_writes_a_loadable_workspace() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "w.json", ID_TWO);
    let out = dir.path().join("fac.json");
    let o = deltalens(&["factorise", &f, "id", "-o", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let ws = Workspace::load(&out).unwrap();
    let (e, m) = (&ws.functors["id.e"].functor, &ws.functors["id.m"].functor);
    assert_eq!(m.after(e).unwrap(), ws.functors["id"].functor);
    assert_eq!(ws.functors["id.e"].cod, "id.mid");
}

#[test]
fn jf_and_free_lens() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "w.json", ID_TWO);
    let o = deltalens(&["jf", &f, "id"]);
    let ws = Workspace::default().parse_into(&stdout(&o)).unwrap();
    let j = &ws.categories["J(id)"];
    assert_eq!((j.num_objects(), j.num_morphisms()), (3, 4));
    assert_eq!(ws.functors["S(id)"].dom, "two_0");
    assert_eq!(ws.categories["two_0"].num_morphisms(), 2);

    let out = dir.path().join("free.json");
    assert!(
        deltalens(&["free-lens", &f, "id", "-o", out.to_str().unwrap()])
            .status
            .success()
    );
    let ws = Workspace::load(&out).unwrap();
    let e = &ws.categories["E(id)"];
    assert_eq!((e.num_objects(), e.num_morphisms()), (3, 5));
    assert!(ws.lenses.contains_key("free(id)"));
    let dot = stdout(&deltalens(&["export-dot", out.to_str().unwrap(), "E(id)"]));
    assert_eq!(dot.matches(" -> ").count(), 2);
}

#[test]
fn enumerate_functors_and_lenses() {
    let o = deltalens(&["enumerate", "functors", "two", "two"]);
    let ws = Workspace::default().parse_into(&stdout(&o)).unwrap();
    assert_eq!(ws.functors.len(), 3);
    assert!(ws.functors.contains_key("two->two#2"));

    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "w.json",
        &stdout(&deltalens(&["enumerate", "functors", "two", "one"])),
    );
    let o = deltalens(&["enumerate", "lenses", &f, "two->one#0"]);
    let ws = Workspace::default().parse_into(&stdout(&o)).unwrap();
    assert_eq!(ws.lenses.len(), 1);

    let o = deltalens(&["--guard", "2", "enumerate", "functors", "two", "two"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("guard"));
}

/// The square from 1 → 2 (picking 0) to id_2, with top 0 and bottom id.
const SQUARE: &str = r#"{"functors": {
  "left": {"dom": "one", "cod": "two", "on_objects": {"*": "0"}, "on_morphisms": {"1_*": "1_0"}},
  "right": {"dom": "two", "cod": "two", "on_objects": {"0": "0", "1": "1"}, "on_morphisms": {"1_0": "1_0", "1_1": "1_1", "u": "u"}},
  "top": {"dom": "one", "cod": "two", "on_objects": {"*": "0"}, "on_morphisms": {"1_*": "1_0"}},
  "bottom": {"dom": "two", "cod": "two", "on_objects": {"0": "0", "1": "1"}, "on_morphisms": {"1_0": "1_0", "1_1": "1_1", "u": "u"}}},
 "lenses": {"id": {"functor": "right", "lifts": [
  {"object": "0", "over": "1_0", "lift": "1_0"}, {"object": "0", "over": "u", "lift": "u"}, {"object": "1", "over": "1_1", "lift": "1_1"}]}}}"#;

#[test]
fn lift_in_both_modes() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "sq.json", SQUARE);
    let args = ["lift", &f, "left", "right", "top", "bottom"];
    let o = deltalens(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let ws = Workspace::default().parse_into(&stdout(&o)).unwrap();
    let d = &ws.functors["diagonal"].functor;
    let fx = |n: &str| ws.functors[n].functor.clone();
    let sq = deltalens_core::CommutingSquare::new(fx("left"), fx("right"), fx("top"), fx("bottom"))
        .unwrap();
    assert_eq!(*d, orthogonal_lift(&sq).unwrap());
    assert_eq!(*d, fx("bottom"));

    let mut with_lens = args.to_vec();
    with_lens.extend(["--lens", "id", "--name", "d"]);
    let o = deltalens(&with_lens);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let ws = Workspace::default().parse_into(&stdout(&o)).unwrap();
    assert_eq!(ws.functors["d"].functor, *d);

    // swapping the legs breaks commutativity
    let o = deltalens(&["lift", &f, "left", "right", "bottom", "top"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn laws_scoped_to_factorization() {
    let o = deltalens(&["laws", "--suite", "factorization"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let laws: Vec<&str> = out
        .lines()
        .filter(|l| l.contains(" passed, "))
        .map(|l| l.split(':').next().unwrap())
        .collect();
    assert_eq!(laws, ["factorisation", "orthogonal-lift"]);
}

#[test]
fn laws_report_a_broken_fixture() {
    let o = deltalens(&["laws", "--suite", "kernel", "--broken-fixture"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL category on broken-two: right-unit: u"));
}

#[test]
fn laws_are_deterministic_across_seeds() {
    let run = |seed: &str| {
        let o = deltalens(&[
            "laws",
            "--suite",
            "kernel",
            "--suite",
            "lens",
            "--broken-fixture",
            "--seed",
            seed,
        ]);
        let text = stdout(&o);
        // drop the timing line
        text.lines()
            .filter(|l| !l.contains(" cases, "))
            .map(str::to_string)
            .collect::<Vec<_>>()
    };
    assert_eq!(run("0"), run("12345"));
}

#[test]
fn custom_corpus_replaces_the_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    let c = write(
        dir.path(),
        "c.json",
        r#"{"categories": {"pt": {"objects": ["x"], "morphisms": [{"id": "1_x", "src": "x", "tgt": "x"}],
            "identities": {"x": "1_x"}, "compose": [["1_x", "1_x", "1_x"]]}}}"#,
    );
    let o = deltalens(&["--corpus", &c, "laws", "--suite", "kernel"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(
        out.contains("category: 1 passed") && out.contains("functor: 1 passed"),
        "{out}"
    );

    let o = deltalens(&["--corpus", &c, "enumerate", "functors", "pt", "pt"]);
    assert!(o.status.success());
    assert_eq!(
        deltalens(&["--corpus", &c, "enumerate", "functors", "two", "pt"])
            .status
            .code(),
        Some(2)
    );
}
