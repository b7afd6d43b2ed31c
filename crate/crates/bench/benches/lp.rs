use std::hint::black_box;

use concount::lp::{del_classic, del_constrained, del_constrained_sym, gensph};
use concount::ConstraintSpec;
use criterion::{criterion_group, criterion_main, Criterion};

fn programs(c: &mut Criterion) {
    let mut g = c.benchmark_group("lp");
    g.sample_size(10);
    g.bench_function("del_classic_n13_d5", |b| {
        b.iter(|| black_box(del_classic(13, 5).unwrap()))
    });
    g.bench_function("sym_2charge_n13_d4", |b| {
        b.iter(|| black_box(del_constrained_sym(13, 4, ConstraintSpec::TwoCharge).unwrap()))
    });
    g.bench_function("sym_subblock_n18_d5", |b| {
        b.iter(|| {
            black_box(del_constrained_sym(18, 5, ConstraintSpec::Subblock { p: 2, z: 2 }).unwrap())
        })
    });
    g.bench_function("full_rll1_n8_d3", |b| {
        b.iter(|| black_box(del_constrained(8, 3, ConstraintSpec::Rll { d: 1 }).unwrap()))
    });
    g.bench_function("gensph_rll2_n10_d5", |b| {
        b.iter(|| black_box(gensph(10, 5, ConstraintSpec::Rll { d: 2 }).unwrap()))
    });
    g.finish();
}

criterion_group!(benches, programs);
criterion_main!(benches);
