use criterion::{criterion_group, criterion_main, Criterion};
use qcr_core::catalog::{rho_abd, rho_ghz_w, smolin};
use qcr_core::{roof_minimize, PureMeasure, QubitSubset, RoofConfig};

fn roofs(c: &mut Criterion) {
    let cfg = RoofConfig::default();
    let mut g = c.benchmark_group("roof");
    g.sample_size(10);
    let abd = rho_abd(0.5).unwrap();
    g.bench_function("three_tangle rho_abd", |b| {
        b.iter(|| roof_minimize(&abd, &PureMeasure::ThreeTangle, &cfg))
    });
    let ghzw = rho_ghz_w(0.8).unwrap();
    g.bench_function("three_tangle rho_ghz_w above p1", |b| {
        b.iter(|| roof_minimize(&ghzw, &PureMeasure::ThreeTangle, &cfg))
    });
    let one = PureMeasure::OneTangle(QubitSubset::single(0));
    g.bench_function("one_tangle rho_ghz_w", |b| b.iter(|| roof_minimize(&ghzw, &one, &cfg)));
    let s = smolin(0.3).unwrap();
    g.bench_function("e_ms smolin", |b| b.iter(|| roof_minimize(&s, &PureMeasure::Ems, &cfg)));
    g.finish();
}

criterion_group!(benches, roofs);
criterion_main!(benches);
