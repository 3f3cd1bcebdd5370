use criterion::{black_box, criterion_group, criterion_main, Criterion};
use latdiff_bench::{chain, probe_operators, quasi};
use latdiff_core::{check_weight, count_ops, CountQuery, Weight};

fn chains(c: &mut Criterion) {
    let mut g = c.benchmark_group("chain_enumeration");
    for n in [4, 5, 6] {
        let l = chain(n);
        g.bench_function(format!("L_{n}"), |b| {
            b.iter(|| count_ops(&CountQuery::new(black_box(&l), Weight::One)).unwrap())
        });
    }
    g.finish();
}

fn quasis(c: &mut Criterion) {
    let mut g = c.benchmark_group("quasi_enumeration");
    for m in [2, 3, 4] {
        let l = quasi(m);
        g.bench_function(format!("M_{m}"), |b| {
            b.iter(|| count_ops(&CountQuery::new(black_box(&l), Weight::One)).unwrap())
        });
    }
    g.finish();
}

fn membership(c: &mut Criterion) {
    let l = quasi(5);
    let ops = probe_operators(&l);
    c.bench_function("check_weight_M_5", |b| {
        b.iter(|| {
            for d in &ops {
                for w in Weight::ALL {
                    black_box(check_weight(&l, d, w).unwrap());
                }
            }
        })
    });
}

criterion_group!(benches, chains, quasis, membership);
criterion_main!(benches);
