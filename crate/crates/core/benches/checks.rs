use algebroid::bialgebroid::{check_compatibility, verify_duality_lemmas};
use algebroid::{fixtures, par, SampleConfig};
use criterion::{criterion_group, criterion_main, Criterion};

fn compatibility(c: &mut Criterion) {
    let pair = fixtures::contact_pair();
    let cfg = SampleConfig::new(0, 2, 16).unwrap();
    let mut g = c.benchmark_group("contact pair compatibility");
    g.sample_size(10);
    g.bench_function("parallel", |b| b.iter(|| check_compatibility(&pair, &cfg)));
    g.bench_function("sequential", |b| {
        b.iter(|| par::sequential(|| check_compatibility(&pair, &cfg)))
    });
    g.finish();
}

fn lemmas(c: &mut Criterion) {
    let pair = fixtures::contact_pair();
    let cfg = SampleConfig::new(0, 2, 8).unwrap();
    let mut g = c.benchmark_group("contact pair duality lemmas");
    g.sample_size(10);
    g.bench_function("parallel", |b| b.iter(|| verify_duality_lemmas(&pair, &cfg)));
    g.bench_function("sequential", |b| {
        b.iter(|| par::sequential(|| verify_duality_lemmas(&pair, &cfg)))
    });
    g.finish();
}

criterion_group!(benches, compatibility, lemmas);
criterion_main!(benches);
