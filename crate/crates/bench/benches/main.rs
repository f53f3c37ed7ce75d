//! Benchmarks of the hot paths: dense series multiplication, counting-series
//! convolution, Eisenstein coefficient batches, and twisted divisor sums.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use trisq::counts::count_vec;
use trisq::decomposition::{build_plan, FormParams, Side};
use trisq::divisor::sigma_u64;
use trisq::{phi_series, rat_int, Character, Variant};

fn qseries_mul(c: &mut Criterion) {
    let phi = phi_series(512);
    c.bench_function("qseries_mul_512", |bch| {
        bch.iter(|| black_box(&phi).mul(black_box(&phi)))
    });
}

fn counting_series(c: &mut Criterion) {
    c.bench_function("count_vec_(4,2)_all_4096", |bch| {
        bch.iter(|| count_vec(black_box(4), black_box(2), Variant::All, 4096))
    });
}

fn alpha_batch(c: &mut Criterion) {
    let params = FormParams::new(4, 2).expect("supported exponents");
    let plan = build_plan(&params, Side::Psi);
    c.bench_function("alpha_(4,2)_below_2000", |bch| {
        bch.iter(|| {
            let mut acc = rat_int(0);
            let mut m = 10u64;
            while m < 2000 {
                acc += plan.coefficient(black_box(m));
                m += 8;
            }
            acc
        })
    });
}

fn divisor_sums(c: &mut Criterion) {
    c.bench_function("sigma_weight2_below_4000", |bch| {
        bch.iter(|| {
            for n in 1..4000u64 {
                black_box(sigma_u64(
                    2,
                    Character::One,
                    Character::MinusThree,
                    black_box(n),
                ));
            }
        })
    });
}

criterion_group!(benches, qseries_mul, counting_series, alpha_batch, divisor_sums);
criterion_main!(benches);
