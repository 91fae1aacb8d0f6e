use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use curv4_core::classify::wpm_discriminant_oracle;
use curv4_core::pinch::{
    lemma_algebraic2_oracle, lemma_k3k1_oracle, pointwise_bound_oracle, PointwiseLemma,
};

fn bench(c: &mut Criterion) {
    let mut g = c.benchmark_group("oracles");
    g.sample_size(10);
    g.bench_function("k3k1 res 400", |b| {
        b.iter(|| lemma_k3k1_oracle(black_box(5.0 / 6.0), black_box(1.0), 400).unwrap())
    });
    g.bench_function("algebraic2 res 400", |b| {
        b.iter(|| lemma_algebraic2_oracle(black_box(1.0), black_box(1.0), 400).unwrap())
    });
    for (lemma, param) in [
        (PointwiseLemma::Kupper, 0.8),
        (PointwiseLemma::Kdiff, 0.5),
        (PointwiseLemma::A2a1, 0.1),
    ] {
        g.bench_function(format!("{} res 120", lemma.name()), |b| {
            b.iter(|| pointwise_bound_oracle(lemma, black_box(param), 120).unwrap())
        });
    }
    g.bench_function("wpm discriminant res 1000", |b| {
        b.iter(|| wpm_discriminant_oracle(1000, 1e-9).unwrap())
    });
    g.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
