use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use realpencil::algebra::{resultant, ProjPoint, TernaryForm, UniPoly};
use realpencil::fixtures;
use realpencil::pencil::{build_pencil, certify_totally_real};
use realpencil::realroots::{count_real_roots, isolate_roots};
use realpencil::topology::compute_topology;

fn curve(name: &str) -> TernaryForm {
    fixtures::load(name).unwrap().form().unwrap()
}

/// Wilkinson-like product with ten close integer roots, plus a quadratic
/// without real roots.
fn wilkinson() -> UniPoly {
    let mut p = UniPoly::from_ints(&[1, 0, 1]);
    for r in -5..5 {
        p = &p * &UniPoly::from_ints(&[-r, 1]);
    }
    p
}

fn roots(c: &mut Criterion) {
    let p = wilkinson();
    c.bench_function("count_real_roots/degree-12", |b| b.iter(|| count_real_roots(black_box(&p), None, None).unwrap()));
    c.bench_function("isolate_roots/degree-12", |b| b.iter(|| isolate_roots(black_box(&p)).unwrap()));
}

fn resultants(c: &mut Criterion) {
    let p = UniPoly::from_ints(&[3, -1, 4, 1, -5, 9, 2, -6]);
    let q = UniPoly::from_ints(&[2, 7, -1, 8, 2, -8, 1]);
    c.bench_function("resultant/7x6", |b| b.iter(|| resultant(black_box(&p), black_box(&q)).unwrap()));
}

fn topology(c: &mut Criterion) {
    let mut g = c.benchmark_group("topology");
    g.sample_size(10);
    for name in ["conic", "harnack-quartic", "quintic-nonconvex"] {
        let f = curve(name);
        g.bench_function(name, |b| b.iter(|| compute_topology(black_box(&f)).unwrap()));
    }
    g.finish();
}

fn certify(c: &mut Criterion) {
    let mut g = c.benchmark_group("certify");
    g.sample_size(10);
    let circle = curve("conic");
    let lines = build_pencil(&[ProjPoint::ints(0, 0, 1)], 1).unwrap();
    g.bench_function("lines-through-centre", |b| b.iter(|| certify_totally_real(black_box(&circle), &lines).unwrap()));
    let quintic = curve("quintic-nonconvex");
    let base = [ProjPoint::ints(-3, 1, 1), ProjPoint::ints(1, -3, 1), ProjPoint::ints(1, 3, 1), ProjPoint::ints(3, 1, 1)];
    let conics = build_pencil(&base, 2).unwrap();
    g.bench_function("quintic-conic-pencil", |b| b.iter(|| certify_totally_real(black_box(&quintic), &conics).unwrap()));
    g.finish();
}

criterion_group!(benches, roots, resultants, topology, certify);
criterion_main!(benches);
