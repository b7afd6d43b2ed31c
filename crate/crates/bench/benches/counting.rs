use std::hint::black_box;

use concount::gf2::{hamming_code, reed_muller};
use concount::{
    constrained_weight_distribution, count_in_code, weight_distribution, ConstraintSpec,
    CountMethod,
};
use criterion::{criterion_group, criterion_main, Criterion};

fn counts(c: &mut Criterion) {
    let mut g = c.benchmark_group("count_in_code");
    g.sample_size(10);
    let rm86 = reed_muller(8, 6).unwrap();
    g.bench_function("rm86_2charge_dual", |b| {
        b.iter(|| {
            black_box(
                count_in_code(&rm86, ConstraintSpec::TwoCharge, CountMethod::DualSum).unwrap(),
            )
        })
    });
    let rm43 = reed_muller(4, 3).unwrap();
    for (name, m) in [
        ("dual", CountMethod::DualSum),
        ("direct", CountMethod::Direct),
    ] {
        g.bench_function(format!("rm43_rll1_{name}"), |b| {
            b.iter(|| black_box(count_in_code(&rm43, ConstraintSpec::Rll { d: 1 }, m).unwrap()))
        });
    }
    g.finish();
}

fn distributions(c: &mut Criterion) {
    let mut g = c.benchmark_group("weights");
    g.sample_size(10);
    g.bench_function("even_strict_n17", |b| {
        b.iter(|| black_box(weight_distribution(ConstraintSpec::EvenStrict, 17).unwrap()))
    });
    let h4 = hamming_code(4).unwrap();
    g.bench_function("ham4_2charge_in_code", |b| {
        b.iter(|| {
            black_box(constrained_weight_distribution(&h4, ConstraintSpec::TwoCharge).unwrap())
        })
    });
    g.finish();
}

criterion_group!(benches, counts, distributions);
criterion_main!(benches);
