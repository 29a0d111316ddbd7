use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use triality_core::sample::Sampler;
use triality_core::symspace::antipodal_set;
use triality_core::verify::{run_selected, BackendSelection, RunConfig};
use triality_core::{ApproxReal, ImaginaryUnit, QuadExt, Rational, TrialityTriple};

fn sampler() -> Sampler {
    Sampler::new(ChaCha8Rng::seed_from_u64(7), 1e-9)
}

fn octonion_products(c: &mut Criterion) {
    let mut smp = sampler();
    let (x, y) = (smp.octonion::<Rational>(), smp.octonion::<Rational>());
    c.bench_function("oct_mul/rational", |b| b.iter(|| black_box(&x) * black_box(&y)));
    let (x, y) = (smp.octonion::<QuadExt>(), smp.octonion::<QuadExt>());
    c.bench_function("oct_mul/quad", |b| b.iter(|| black_box(&x) * black_box(&y)));
    let (x, y) = (smp.octonion::<ApproxReal>(), smp.octonion::<ApproxReal>());
    c.bench_function("oct_mul/float", |b| b.iter(|| black_box(&x) * black_box(&y)));
}

fn triple_verification(c: &mut Criterion) {
    let mut smp = sampler();
    let g = smp.spin_word::<Rational>().unwrap();
    c.bench_function("triple_verify/rational_word", |b| {
        b.iter_batched(
            || g.clone().into_parts(),
            |(a, bm, cm)| TrialityTriple::verify(a, bm, cm).unwrap(),
            BatchSize::SmallInput,
        )
    });
    let h = smp.spin_word::<ApproxReal>().unwrap();
    c.bench_function("triple_verify/float_word", |b| {
        b.iter_batched(
            || h.clone().into_parts(),
            |(a, bm, cm)| TrialityTriple::verify(a, bm, cm).unwrap(),
            BatchSize::SmallInput,
        )
    });
    c.bench_function("spin_word/rational", |b| {
        let mut smp = sampler();
        b.iter(|| smp.spin_word::<Rational>().unwrap())
    });
}

fn antipodal(c: &mut Criterion) {
    let e2 = ImaginaryUnit::<QuadExt>::basis(2);
    c.bench_function("antipodal_set/e2", |b| b.iter(|| antipodal_set(black_box(&e2)).unwrap()));
    let v = sampler().imaginary_unit::<QuadExt>();
    c.bench_function("antipodal_set/random", |b| b.iter(|| antipodal_set(black_box(&v)).unwrap()));
}

fn checks(c: &mut Criterion) {
    let mut group = c.benchmark_group("checks");
    group.sample_size(10);
    let cfg = RunConfig { trials: 10, backend: BackendSelection::Both, ..RunConfig::default() };
    for name in ["triple_closure", "kai_property", "maximality_scan"] {
        group.bench_function(name, |b| b.iter(|| run_selected(&cfg, &[name]).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, octonion_products, triple_verification, antipodal, checks);
criterion_main!(benches);
