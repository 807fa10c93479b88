use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mukai::bqf::{bqf_table, ClassListOptions};
use mukai::numsol::solve_numerical_with;
use mukai::tame::TameSystem;
use mukai::{Exec, MukaiVector, SlopeValue, SurfaceParams};
use num_bigint::BigInt;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn numerical_solutions(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve_numerical");
    group.sample_size(10);
    for (n, v) in [(1u64, MukaiVector::new(1, 0, -7)), (6, MukaiVector::new(1, 1, -5))] {
        let ctx = SurfaceParams::new(n).unwrap();
        let bound = BigInt::from(200_000);
        for (name, exec) in MODES {
            group.bench_with_input(BenchmarkId::new(name, format!("n={n} v={v}")), &exec, |b, &exec| {
                b.iter(|| solve_numerical_with(&v, &ctx, &bound, exec).unwrap())
            });
        }
    }
    group.finish();
}

fn slope_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("classify_many");
    group.sample_size(10);
    let ctx = SurfaceParams::new(2).unwrap();
    let grid: Vec<SlopeValue> = (0..2000).map(|k| SlopeValue::ratio(-10 * 1999 + 20 * k, 1999).unwrap()).collect();
    for (name, exec) in MODES {
        group.bench_function(name, |b| {
            b.iter(|| {
                let sys = TameSystem::new(&ctx, &BigInt::from(3)).unwrap();
                sys.classify_many(grid.clone(), (-16, 16), exec)
            })
        });
    }
    group.finish();
}

fn class_table(c: &mut Criterion) {
    let mut group = c.benchmark_group("bqf_table");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(name, |b| b.iter(|| bqf_table(100, ClassListOptions::default(), exec).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, numerical_solutions, slope_sweep, class_table);
criterion_main!(benches);
