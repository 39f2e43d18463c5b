use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use pstlab_bench::{admissible_spectrum, canonical, SIZES};
use pstlab_core::pst::EndToEndPropagator;
use pstlab_core::{
    audit_chain, certify, classify_parity, decompose, falsify_search, saturation_scan, synthesize,
    CertifyConfig, SearchConfig,
};

fn eigensolve(c: &mut Criterion) {
    let mut group = c.benchmark_group("decompose");
    for n in SIZES {
        let chain = canonical(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &chain, |b, chain| {
            b.iter(|| decompose(black_box(chain)).unwrap())
        });
    }
    group.finish();

    let chain = canonical(128);
    c.bench_function("classify_parity/128", |b| {
        b.iter(|| classify_parity(decompose(&chain).unwrap(), black_box(&chain)).unwrap())
    });
}

fn synthesis(c: &mut Criterion) {
    let mut group = c.benchmark_group("synthesize");
    // the inverse problem leaves double precision well before 512 sites
    for n in [8, 32, 64] {
        let spectrum = admissible_spectrum(n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &spectrum, |b, s| {
            b.iter(|| synthesize(black_box(s)).unwrap())
        });
    }
    group.finish();
}

fn verification(c: &mut Criterion) {
    let chain = canonical(64);
    c.bench_function("certify/64", |b| {
        b.iter(|| certify(black_box(&chain), &CertifyConfig::default()).unwrap())
    });
    c.bench_function("audit_chain/64", |b| b.iter(|| audit_chain(black_box(&chain)).unwrap()));

    let propagator = EndToEndPropagator::from_chain(&chain).unwrap();
    c.bench_function("fidelity_peaks/64", |b| {
        b.iter(|| propagator.peaks(black_box(20.0)).count())
    });
}

fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweeps");
    group.sample_size(10);
    group.bench_function("saturation_scan/2..40", |b| b.iter(|| saturation_scan(2..=40)));
    group.bench_function("falsify_search/N7x1000", |b| {
        b.iter(|| {
            falsify_search(black_box(&SearchConfig {
                n_sites: 7,
                samples: 1000,
                max_multiplier: 9,
                seed: 1,
            }))
        })
    });
    group.finish();
}

criterion_group!(benches, eigensolve, synthesis, verification, sweeps);
criterion_main!(benches);
