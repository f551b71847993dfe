use criterion::{criterion_group, criterion_main, Criterion};

use shiftlab_bench::{fibonacci, golden_mean};
use shiftlab_core::{
    build_partial_map, certify, characteristic_defect, language_words, Alphabet, BlockCode, Margin,
};

fn bench_language(c: &mut Criterion) {
    let gm = golden_mean();
    c.bench_function("golden_mean_language_20", |b| {
        b.iter(|| language_words(&gm, 20).unwrap())
    });
    let fib = fibonacci();
    c.bench_function("fibonacci_language_100", |b| {
        b.iter(|| language_words(&fib, 100).unwrap())
    });
}

fn bench_measure(c: &mut Criterion) {
    let fib = fibonacci();
    let autos = vec![
        certify(&fib, &BlockCode::identity(Alphabet::binary()), 3, 8)
            .unwrap()
            .unwrap(),
        certify(&fib, &BlockCode::shift(Alphabet::binary(), 1), 3, 8)
            .unwrap()
            .unwrap(),
    ];
    c.bench_function("characteristic_defect_50", |b| {
        b.iter(|| characteristic_defect(&fib, &autos, 50, 2).unwrap())
    });
}

fn bench_sofic(c: &mut Criterion) {
    let fib = fibonacci();
    let id = certify(&fib, &BlockCode::identity(Alphabet::binary()), 3, 8)
        .unwrap()
        .unwrap();
    c.bench_function("partial_map_12", |b| {
        b.iter(|| build_partial_map(&fib, &id, 12, Margin::new(0, 2)).unwrap())
    });
}

criterion_group!(benches, bench_language, bench_measure, bench_sofic);
criterion_main!(benches);
