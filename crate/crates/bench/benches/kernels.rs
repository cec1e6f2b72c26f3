use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use wsemi_core::curve_load;
use wsemi_core::gf::field_make;
use wsemi_core::poly::TSeries;
use wsemi_core::{lbasis, Divisor, Weierstrass};

const QUARTIC: &str = "X^3*Z+X^4+Y^3*Z+Y*Z^3";
const KLEIN: &str = "X^3*Y+Y^3*Z+X*Z^3";

fn field(c: &mut Criterion) {
    let f = field_make(2, 16).unwrap();
    let xs: Vec<u64> = (1..1025).map(|i| i * 61 % f.order()).collect();
    c.bench_function("gf_2^16_mul_1024", |b| {
        b.iter(|| xs.iter().fold(1u64, |acc, &x| f.mul(acc, black_box(x))))
    });
    let p = field_make(65521, 1).unwrap();
    c.bench_function("gf_65521_inv_1024", |b| b.iter(|| xs.iter().map(|&x| p.inv(black_box(x) + 1).unwrap()).sum::<u64>()));
}

fn series(c: &mut Criterion) {
    let f = field_make(3, 1).unwrap();
    let a = TSeries::new(&f, (0..64).map(|i| (i * 7 + 1) % 3).collect());
    let b = TSeries::new(&f, (0..64).map(|i| (i * 5 + 2) % 3).collect());
    c.bench_function("series_mul_64", |bch| bch.iter(|| black_box(&a).mul(black_box(&b))));
}

fn riemann_roch(c: &mut Criterion) {
    let q = curve_load(QUARTIC, 2).unwrap();
    let d = Divisor::from_pairs([("P1", 4), ("P5", 6)]);
    c.bench_function("lbasis_quartic_4P1_6P5", |b| b.iter(|| lbasis(&q, black_box(&d)).unwrap()));
    c.bench_function("load_klein", |b| b.iter(|| curve_load(black_box(KLEIN), 2).unwrap()));
}

fn semigroups(c: &mut Criterion) {
    let k = curve_load(KLEIN, 2).unwrap();
    c.bench_function("two_point_klein_fresh_cache", |b| {
        b.iter(|| Weierstrass::new(&k).two_point("P1", "P3").unwrap())
    });
}

criterion_group!(benches, field, series, riemann_roch, semigroups);
criterion_main!(benches);
