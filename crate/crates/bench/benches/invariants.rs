use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use qproj_bench::{code, uniform};
use qproj_core::{projectivize, CharPolyMethod, Metric};

fn charpoly(c: &mut Criterion) {
    let mut group = c.benchmark_group("charpoly");
    let cases = [
        ("U(2,4;2)", uniform(2, 2, 4)),
        ("U(2,3;3)", uniform(3, 2, 3)),
        ("code n=4", code(3, 4).associated_qmatroid()),
    ];
    for (name, qm) in &cases {
        for method in [CharPolyMethod::Definition, CharPolyMethod::Flats, CharPolyMethod::Recursive] {
            group.bench_with_input(BenchmarkId::new(format!("{method:?}"), name), qm, |b, qm| {
                b.iter(|| qm.clone().char_poly(black_box(method)).unwrap())
            });
        }
    }
    group.finish();
}

fn projectivization(c: &mut Criterion) {
    let qm = uniform(2, 2, 4);
    c.bench_function("projectivize U(2,4;2)", |b| b.iter(|| projectivize(black_box(&qm)).unwrap()));
    let p = projectivize(&qm).unwrap();
    c.bench_function("P(M) charpoly recursive", |b| {
        b.iter(|| p.matroid().char_poly(CharPolyMethod::Recursive).unwrap())
    });
}

fn codes(c: &mut Criterion) {
    let code = code(3, 4);
    c.bench_function("rank weight distribution", |b| b.iter(|| code.weight_distribution(Metric::Rank).unwrap()));
    c.bench_function("critical histogram t=1", |b| b.iter(|| code.critical_histogram(black_box(1)).unwrap()));
}

criterion_group!(benches, charpoly, projectivization, codes);
criterion_main!(benches);
