use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use latres_core::abelian::dual_ab_cohomology;
use latres_core::cohomology::{tate, tate_complete};
use latres_core::reductive::{flasque_resolution, pi1, pi1_check};
use latres_core::{corpus, Config};
use std::hint::black_box;

fn tate_cohomology(c: &mut Criterion) {
    let cfg = Config::default();
    let mut g = c.benchmark_group("tate");
    for name in ["sign.s3", "regular.z3", "z-mod-2.z2"] {
        let m = corpus::module(name, &cfg).unwrap();
        let whole = m.group().whole();
        g.bench_with_input(BenchmarkId::new("formula", name), &m, |b, m| {
            b.iter(|| tate(&whole, black_box(m), 0, &cfg).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("complete", name), &m, |b, m| {
            b.iter(|| tate_complete(&whole, black_box(m), 2, &cfg).unwrap())
        });
    }
    g.finish();
}

fn resolutions(c: &mut Criterion) {
    let cfg = Config::default();
    let mut g = c.benchmark_group("flasque_resolution");
    for (name, gd) in latres_bench::data(&cfg) {
        g.bench_with_input(BenchmarkId::from_parameter(name), &gd, |b, gd| {
            b.iter(|| flasque_resolution(black_box(gd), &cfg).unwrap())
        });
    }
    g.finish();
}

fn fundamental_group(c: &mut Criterion) {
    let cfg = Config::default();
    let mut g = c.benchmark_group("pi1");
    for (name, gd) in latres_bench::data(&cfg) {
        let res = flasque_resolution(&gd, &cfg).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(name), &res, |b, res| {
            b.iter(|| {
                let pi = pi1(black_box(res)).unwrap();
                pi1_check(res, &pi, &cfg).unwrap()
            })
        });
    }
    g.finish();
}

fn abelian(c: &mut Criterion) {
    let cfg = Config::default();
    let mut g = c.benchmark_group("dual_ab_cohomology");
    for (name, gd) in latres_bench::data(&cfg) {
        g.bench_with_input(BenchmarkId::from_parameter(name), &gd, |b, gd| {
            b.iter(|| dual_ab_cohomology(black_box(gd), 1, &cfg).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, tate_cohomology, resolutions, fundamental_group, abelian);
criterion_main!(benches);
