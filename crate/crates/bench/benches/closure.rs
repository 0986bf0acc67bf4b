use std::sync::Arc;

use criterion::{criterion_group, criterion_main, Criterion};
use lattgen_core::constructions::{
    fano_check, matrix_u_generators, table1, thm1_generators, thm3_generators,
};
use lattgen_core::field::Field;
use lattgen_core::lattice::{
    closure, BaseLattice, ClosureOptions, FiniteLattice, VerifyMode, VerifyOptions,
};

fn gf(s: &str) -> Field {
    s.parse().unwrap()
}

fn enumeration(c: &mut Criterion) {
    c.bench_function("subspaces GF(3)^4", |b| {
        b.iter(|| BaseLattice::subspaces(&gf("3"), 4).unwrap().size())
    });
    c.bench_function("gaussian binomial table", |b| b.iter(table1));
}

fn closures(c: &mut Criterion) {
    let base = Arc::new(BaseLattice::subspaces(&gf("2"), 3).unwrap());
    let l = FiniteLattice::base(base.clone());
    let quad: Vec<Vec<u32>> = base.atoms()[..3]
        .iter()
        .map(|&a| vec![a])
        .chain([vec![base.atoms()[6]]])
        .collect();
    let opts = ClosureOptions {
        cap: usize::MAX,
        witnesses: false,
    };
    c.bench_function("closure Fano, 4 generators", |b| {
        b.iter(|| closure(&l, &quad, opts).unwrap().len())
    });
    c.bench_function("fano square check", |b| b.iter(fano_check));

    let r = thm1_generators(&gf("3^2"), 3).unwrap();
    c.bench_function("closure thm1 GF(9)", |b| {
        b.iter(|| {
            r.verify(VerifyMode::Closure, VerifyOptions::default())
                .unwrap()
                .closure_size
        })
    });
    let r = thm3_generators(&[(gf("2"), 1), (gf("3"), 1)]).unwrap();
    c.bench_function("closure product GF(2) x GF(3)", |b| {
        b.iter(|| {
            r.verify(VerifyMode::Closure, VerifyOptions::default())
                .unwrap()
                .closure_size
        })
    });
}

fn certificates(c: &mut Criterion) {
    let r = matrix_u_generators(&gf("2"), None).unwrap();
    c.bench_function("certificate matrix U", |b| {
        b.iter(|| {
            r.verify(VerifyMode::Fgtln, VerifyOptions::default())
                .unwrap()
                .generates
        })
    });
    let mut g = c.benchmark_group("slow");
    g.sample_size(10);
    g.bench_function("closure matrix U (65536)", |b| {
        b.iter(|| {
            r.verify(
                VerifyMode::Closure,
                VerifyOptions {
                    cap: usize::MAX,
                    witnesses: false,
                },
            )
            .unwrap()
            .closure_size
        })
    });
    g.finish();
}

criterion_group!(benches, enumeration, closures, certificates);
criterion_main!(benches);
