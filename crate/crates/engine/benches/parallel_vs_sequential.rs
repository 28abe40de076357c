//! Rayon vs sequential comparison on the data-parallel hot paths: the
//! blockwise resolution build and the coboundary-rank stage.
//!
//! The parallel feature compiles rayon in; `exec::set_sequential` selects
//! the execution mode at runtime so one binary benches both.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hh_engine::algebra::Algebra;
use hh_engine::cohomology::CochainComplex;
use hh_engine::exec;
use hh_engine::field::Field;
use hh_engine::quiver::Family;
use hh_engine::resolution::Resolution;
use std::sync::Arc;

fn bench_resolution(c: &mut Criterion) {
    let mut group = c.benchmark_group("resolution_build");
    group.sample_size(10);
    for (family, s, p, depth) in [(Family::E7, 2usize, 2u64, 20usize), (Family::E8, 1, 3, 30)] {
        let alg = Arc::new(Algebra::build(family, s, Field::new(p).unwrap()).unwrap());
        for sequential in [false, true] {
            let mode = if sequential { "sequential" } else { "parallel" };
            let id = BenchmarkId::new(mode, format!("{family}-s{s}-p{p}-deg{depth}"));
            group.bench_function(id, |b| {
                b.iter(|| {
                    exec::set_sequential(sequential);
                    let res = Resolution::build(alg.clone(), depth);
                    exec::set_sequential(false);
                    res.max_degree()
                })
            });
        }
    }
    group.finish();
}

fn bench_cochain_ranks(c: &mut Criterion) {
    let mut group = c.benchmark_group("cochain_ranks");
    group.sample_size(10);
    let alg = Arc::new(Algebra::build(Family::E7, 2, Field::new(3).unwrap()).unwrap());
    let res = Resolution::build(alg, 34);
    for sequential in [false, true] {
        let mode = if sequential { "sequential" } else { "parallel" };
        group.bench_function(BenchmarkId::new(mode, "e7-s2-p3-deg34"), |b| {
            b.iter(|| {
                exec::set_sequential(sequential);
                let cx = CochainComplex::build(&res, 34);
                exec::set_sequential(false);
                cx.hh_dim(17)
            })
        });
    }
    group.finish();
}

criterion_group!(benches, bench_resolution, bench_cochain_ranks);
criterion_main!(benches);
