use criterion::{black_box, criterion_group, criterion_main, Criterion};
use deltalens_core::awfs::{e_object, mu};
use deltalens_core::corpus::{iso, one, ret, two};
use deltalens_core::{
    comprehensive_factorise, enumerate_functors, orthogonal_lift, CommutingSquare, FinFunctor,
    Guard, Obj,
};

fn factorisation(c: &mut Criterion) {
    let f = FinFunctor::constant(ret(), two(), Obj(1));
    c.bench_function("comprehensive_factorise ret->two", |b| {
        b.iter(|| comprehensive_factorise(black_box(&f)))
    });
}

fn pushout(c: &mut Criterion) {
    for (name, f) in [
        ("id_iso", FinFunctor::identity(iso())),
        ("id_ret", FinFunctor::identity(ret())),
    ] {
        c.bench_function(&format!("e_object {name}"), |b| {
            b.iter(|| e_object(black_box(&f)).unwrap())
        });
        let ef = e_object(&f).unwrap();
        let erf = e_object(&ef.rf).unwrap();
        c.bench_function(&format!("mu {name}"), |b| {
            b.iter(|| mu(black_box(&ef), &erf).unwrap())
        });
    }
}

fn enumeration(c: &mut Criterion) {
    let (r, i) = (ret(), iso());
    c.bench_function("enumerate_functors ret->ret", |b| {
        b.iter(|| enumerate_functors(black_box(&r), &r, Guard::default()).unwrap())
    });
    c.bench_function("enumerate_functors iso->ret", |b| {
        b.iter(|| enumerate_functors(black_box(&i), &r, Guard::default()).unwrap())
    });
}

fn lifting(c: &mut Criterion) {
    // 1 → 2 at 0 is initial; the right factor of id_2 is a discrete opfibration
    let left = FinFunctor::constant(one(), two(), Obj(0));
    let fac = comprehensive_factorise(&FinFunctor::identity(two()));
    let right = fac.m.clone();
    let top = fac.e.after(&left).unwrap();
    let sq = CommutingSquare::new(left, right, top, FinFunctor::identity(two())).unwrap();
    c.bench_function("orthogonal_lift", |b| {
        b.iter(|| orthogonal_lift(black_box(&sq)).unwrap())
    });
}

criterion_group!(benches, factorisation, pushout, enumeration, lifting);
criterion_main!(benches);
