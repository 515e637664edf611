use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use krull_core::atoms::{enumerate_atoms, AtomSet, DEFAULT_CAP};
use krull_core::invariants::{delta_set, delta_star, monoid_omega_tame, CoverLimits};
use krull_core::presets::{build_preset, Family};
use krull_core::transfer::{builtin, check_transfer};
use krull_core::Exec;
use std::hint::black_box;

const POLICIES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn atoms(family: Family) -> AtomSet {
    enumerate_atoms(
        build_preset(family).unwrap().alphabet_arc(),
        DEFAULT_CAP,
        &Exec::Parallel,
    )
    .unwrap()
}

fn bench_atoms(c: &mut Criterion) {
    let mut g = c.benchmark_group("atom_enumeration");
    for family in [
        Family::Cube {
            r: 3,
            include_zero: false,
        },
        Family::Cyclic { n: 8 },
    ] {
        let alphabet = build_preset(family).unwrap().alphabet_arc();
        for (name, exec) in POLICIES {
            g.bench_with_input(BenchmarkId::new(name, family), &alphabet, |b, a| {
                b.iter(|| enumerate_atoms(black_box(a.clone()), DEFAULT_CAP, &exec).unwrap())
            });
        }
    }
    g.finish();
}

fn bench_sweeps(c: &mut Criterion) {
    let mut g = c.benchmark_group("product_sweep");
    g.sample_size(10);
    let c6 = atoms(Family::Cyclic { n: 6 });
    for (name, exec) in POLICIES {
        g.bench_function(BenchmarkId::new(name, "delta_set cyclic:6 bound 5"), |b| {
            b.iter(|| delta_set(black_box(&c6), 5, &exec))
        });
    }
    g.finish();
}

fn bench_subsets(c: &mut Criterion) {
    let mut g = c.benchmark_group("delta_star");
    g.sample_size(10);
    let cube = atoms(Family::Cube {
        r: 3,
        include_zero: false,
    });
    for (name, exec) in POLICIES {
        g.bench_function(BenchmarkId::new(name, "cube:3"), |b| {
            b.iter(|| delta_star(black_box(&cube), &exec).unwrap())
        });
    }
    g.finish();
}

fn bench_covers(c: &mut Criterion) {
    let mut g = c.benchmark_group("omega_tame");
    g.sample_size(10);
    let c6 = atoms(Family::Cyclic { n: 6 });
    for (name, exec) in POLICIES {
        g.bench_function(BenchmarkId::new(name, "cyclic:6"), |b| {
            b.iter(|| monoid_omega_tame(black_box(&c6), CoverLimits::default(), &exec).unwrap())
        });
    }
    g.finish();
}

fn bench_transfer(c: &mut Criterion) {
    let mut g = c.benchmark_group("transfer_check");
    g.sample_size(10);
    let map = builtin::nine_point_to_c4();
    for (name, exec) in POLICIES {
        g.bench_function(BenchmarkId::new(name, "nine_point bound 7"), |b| {
            b.iter(|| check_transfer(black_box(&map), 7, &exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(
    benches,
    bench_atoms,
    bench_sweeps,
    bench_subsets,
    bench_covers,
    bench_transfer
);
criterion_main!(benches);
