use criterion::{black_box, criterion_group, criterion_main, Criterion};
use qcr_core::catalog::{phi_abd, psi4, psi6, rho_ghz_w, smolin};
use qcr_core::{concurrence, e_ms, negativity, purify, three_tangle_pure, QubitSubset};

fn pure(c: &mut Criterion) {
    let phi = phi_abd(0.6, 0.4, 1.0).unwrap();
    let p4 = psi4(0.5).unwrap();
    let p6 = psi6(0.8).unwrap();
    c.bench_function("three_tangle_pure", |b| b.iter(|| three_tangle_pure(black_box(&phi))));
    c.bench_function("e_ms 4 qubits", |b| b.iter(|| e_ms(black_box(&p4))));
    c.bench_function("e_ms 6 qubits", |b| b.iter(|| e_ms(black_box(&p6))));
}

fn mixed(c: &mut Criterion) {
    let rho = rho_ghz_w(0.2).unwrap();
    let ab = rho.partial_trace(&QubitSubset::new(vec![0, 1]).unwrap()).unwrap();
    let s = smolin(0.8).unwrap();
    let a = QubitSubset::single(0);
    c.bench_function("concurrence", |b| b.iter(|| concurrence(black_box(&ab))));
    c.bench_function("negativity 4 qubits", |b| b.iter(|| negativity(black_box(&s), &a)));
    c.bench_function("purify smolin", |b| b.iter(|| purify(black_box(&s))));
}

criterion_group!(benches, pure, mixed);
criterion_main!(benches);
