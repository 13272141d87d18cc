use std::sync::Arc;

use super::*;
use crate::corpus::{disc2, fixtures, iso, one, two};

fn m(c: &FinCat, id: &str) -> Mor {
    c.morphism_by_id(id).unwrap()
}

fn o(c: &FinCat, id: &str) -> Obj {
    c.object_by_id(id).unwrap()
}

fn ids(c: &FinCat) -> (Vec<&str>, Vec<&str>) {
    (
        c.objects().map(|x| c.object_id(x)).collect(),
        c.morphisms().map(|f| c.morphism_id(f)).collect(),
    )
}

#[test]
fn fixtures_are_categories() {
    for (name, c) in fixtures() {
        let r = validate_category(&c);
        assert!(r.ok(), "{name}: {r}");
    }
}

#[test]
fn broken_right_unit_is_reported() {
    let c = two();
    let bad = c.with_entry(m(&c, "u"), m(&c, "1_0"), m(&c, "1_0"));
    let r = validate_category(&bad);
    assert!(r.has_witness("right-unit", &["u"]), "{r}");
}

#[test]
fn single_entry_mutations_are_caught() {
    // A mutation can only go unnoticed when the result is itself a category.
    // On the fixtures that happens once: e∘e := 1 turns the idempotent into Z/2.
    let mut unnoticed = Vec::new();
    for (name, c) in fixtures() {
        for (g, f, gf) in c.compose_entries() {
            for other in c.morphisms().filter(|&x| x != gf) {
                if validate_category(&c.with_entry(g, f, other)).ok() {
                    let id = |m| c.morphism_id(m).to_string();
                    unnoticed.push(format!("{name}: {}∘{} := {}", id(g), id(f), id(other)));
                }
            }
        }
    }
    assert_eq!(unnoticed, ["idem: e∘e := 1_*"]);
}

#[test]
fn from_tables_rejects_duplicate_entries() {
    let err = FinCat::from_tables(
        &["0"],
        &[("1_0", "0", "0")],
        &[("0", "1_0")],
        &[("1_0", "1_0", "1_0"), ("1_0", "1_0", "1_0")],
    )
    .unwrap_err();
    assert!(err.to_string().contains("(1_0, 1_0)"), "{err}");
}

#[test]
fn functor_examples() {
    let (t, u) = (two(), one());
    assert!(validate_functor(&FinFunctor::identity(t.clone())).ok());
    let bang = FinFunctor::constant(t.clone(), u.clone(), Obj(0));
    assert!(validate_functor(&bang).ok());
    // u ↦ 1_1 with 0 ↦ 0
    let bad = FinFunctor::from_names(
        t.clone(),
        t.clone(),
        &[("0", "0"), ("1", "1")],
        &[("1_0", "1_0"), ("1_1", "1_1"), ("u", "1_1")],
    )
    .unwrap();
    assert!(validate_functor(&bad).has_witness("src-preservation", &["u"]));
}

#[test]
fn discrete_examples() {
    let d = discrete(&two());
    assert_eq!(ids(&d), (vec!["0", "1"], vec!["1_0", "1_1"]));
    assert_eq!(discrete(&one()), *one());
    assert_eq!(discrete(&iso()), *disc2());
    for (_, c) in fixtures() {
        let d = discrete(&c);
        assert_eq!(discrete(&d), d);
        let i = counit_inclusion(&c);
        assert!(validate_functor(&i).ok());
        assert!(is_bijective_on_objects(&i));
    }
    assert_eq!(counit_inclusion(&one()), FinFunctor::identity(one()));
}

#[test]
fn counit_is_natural() {
    let guard = Guard::default();
    for (_, c) in fixtures() {
        for (_, d) in fixtures() {
            for f in enumerate_functors(&c, &d, guard).unwrap() {
                let lhs = f.after(&counit_inclusion(&c)).unwrap();
                let rhs = counit_inclusion(&d).after(&discrete_functor(&f)).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn bijective_on_objects_examples() {
    assert!(is_bijective_on_objects(&FinFunctor::identity(two())));
    assert!(!is_bijective_on_objects(&FinFunctor::constant(
        two(),
        one(),
        Obj(0)
    )));
}

#[test]
fn comma_examples() {
    let t = two();
    let id = FinFunctor::identity(t.clone());
    let c = comma_to_object(&id, o(&t, "1")).unwrap();
    assert_eq!(ids(&c).0, vec!["(0,u)", "(1,1_1)"]);
    assert_eq!(c.non_identities().count(), 1);
    assert!(validate_category(&c).ok());

    let c = comma_to_object(&FinFunctor::identity(one()), Obj(0)).unwrap();
    assert_eq!((c.num_objects(), c.num_morphisms()), (1, 1));

    let bang = FinFunctor::constant(disc2(), one(), Obj(0));
    let c = comma_to_object(&bang, Obj(0)).unwrap();
    assert_eq!((c.num_objects(), c.num_morphisms()), (2, 2));
    assert!(!is_connected(&c));

    assert!(matches!(
        comma_to_object(&id, Obj(7)),
        Err(crate::Error::Input(_))
    ));
}

#[test]
fn coslice_examples() {
    let c = coslice(&one(), Obj(0)).unwrap();
    assert_eq!((c.num_objects(), c.num_morphisms()), (1, 1));
    let t = two();
    let c = coslice(&t, o(&t, "0")).unwrap();
    assert_eq!(ids(&c).0, vec!["1_0", "u"]);
    assert_eq!(c.non_identities().count(), 1);
    assert!(validate_category(&c).ok());
    let c = coslice(&t, o(&t, "1")).unwrap();
    assert_eq!((c.num_objects(), c.num_morphisms()), (1, 1));
    assert!(coslice(&t, Obj(2)).is_err());
}

#[test]
fn connectedness_examples() {
    assert!(is_connected(&two()));
    assert!(!is_connected(&disc2()));
    let (empty, _) = coproduct(&[]);
    assert!(!is_connected(&empty));
}

#[test]
fn coproduct_examples() {
    let (s, inj) = coproduct(&[one(), one()]);
    assert_eq!((s.num_objects(), s.num_morphisms()), (2, 2));
    assert_eq!(s.non_identities().count(), 0);
    assert_eq!(inj.len(), 2);
    let (e, _) = coproduct(&[]);
    assert_eq!((e.num_objects(), e.num_morphisms()), (0, 0));
    let (s, inj) = coproduct(&[two(), one()]);
    assert_eq!((s.num_objects(), s.num_morphisms()), (3, 4));
    assert!(validate_category(&s).ok());
    let mut hit_o = vec![false; s.num_objects()];
    let mut hit_m = vec![false; s.num_morphisms()];
    for i in &inj {
        assert!(validate_functor(i).ok());
        i.obj_table().iter().for_each(|x| hit_o[x.0] = true);
        i.mor_table().iter().for_each(|x| hit_m[x.0] = true);
    }
    assert!(hit_o.iter().all(|&h| h) && hit_m.iter().all(|&h| h));
}

#[test]
fn enumeration_examples() {
    let g = Guard::default();
    assert_eq!(enumerate_functors(&one(), &two(), g).unwrap().len(), 2);
    assert_eq!(enumerate_functors(&two(), &one(), g).unwrap().len(), 1);
    assert_eq!(enumerate_functors(&two(), &two(), g).unwrap().len(), 3);
    let err = enumerate_functors(&two(), &two(), Guard(2)).unwrap_err();
    assert!(matches!(err, crate::Error::Guard { .. }));
}

/// All raw object and morphism assignments, filtered by `validate_functor`.
fn brute_force(a: &Arc<FinCat>, b: &Arc<FinCat>) -> Vec<FinFunctor> {
    let (na, ma, nb, mb) = (
        a.num_objects(),
        a.num_morphisms(),
        b.num_objects(),
        b.num_morphisms(),
    );
    let total_o = nb.pow(na as u32);
    let total_m = mb.pow(ma as u32);
    let mut out = Vec::new();
    for io in 0..total_o {
        let obj: Vec<Obj> = (0..na).map(|i| Obj(io / nb.pow(i as u32) % nb)).collect();
        for im in 0..total_m {
            let mor: Vec<Mor> = (0..ma).map(|i| Mor(im / mb.pow(i as u32) % mb)).collect();
            let f = FinFunctor::new(a.clone(), b.clone(), obj.clone(), mor).unwrap();
            if validate_functor(&f).ok() {
                out.push(f);
            }
        }
    }
    out
}

#[test]
fn enumeration_matches_brute_force() {
    let small: Vec<_> = fixtures()
        .into_iter()
        .filter(|(_, c)| c.num_morphisms() <= 4)
        .collect();
    for (an, a) in &small {
        for (bn, b) in &small {
            let mut fast = enumerate_functors(a, b, Guard::default()).unwrap();
            let mut slow = brute_force(a, b);
            let key = |f: &FinFunctor| (f.obj_table().to_vec(), f.mor_table().to_vec());
            fast.sort_by_key(key);
            slow.sort_by_key(key);
            assert_eq!(fast, slow, "{an} -> {bn}");
        }
    }
}

#[test]
fn enumeration_over_a_base() {
    let t = two();
    let bang = FinFunctor::constant(t.clone(), one(), Obj(0));
    // sections of 2 → 1 over the identity of 1
    let sections =
        enumerate_functors_over(&bang, &FinFunctor::identity(one()), Guard::default()).unwrap();
    assert_eq!(sections.len(), 2);
    let all = enumerate_functors(&one(), &t, Guard::default()).unwrap();
    assert_eq!(sections, all);
}
