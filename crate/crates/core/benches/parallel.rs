use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hyperdelta::exec::Exec;
use hyperdelta::heights::{default_places, sample_points, subspace_margin};
use hyperdelta::poly::parse_poly;
use hyperdelta::position::{distributive_constant, dimension_profile, HypersurfaceFamily, Variety, DEFAULT_SUBSET_CAP};
use hyperdelta::rational::{int, ratio};
use hyperdelta::replace::{build_replacement, SearchConfig};
use hyperdelta::weights::{hilbert_weight_bruteforce, WeightVector, DEFAULT_ORACLE_CAP};

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn family(v: &Variety, nv: usize, src: &[&str]) -> HypersurfaceFamily {
    HypersurfaceFamily::new(v, src.iter().map(|s| parse_poly(s, nv).unwrap()).collect()).unwrap()
}

fn bench_delta(c: &mut Criterion) {
    let v = Variety::projective_space(3);
    let fam = family(
        &v,
        4,
        &["x0", "x1", "x0 + x1", "x2", "x3", "x2 - x3", "x0 + x2", "x1 + x3", "x0 + x1 + x2 + x3", "x1 - x2"],
    );
    let mut g = c.benchmark_group("distributive_constant");
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| distributive_constant(&v, &fam, DEFAULT_SUBSET_CAP, exec).unwrap())
        });
    }
    g.finish();
}

fn bench_oracle(c: &mut Criterion) {
    let v = Variety::new(3, vec![parse_poly("x0*x2 - x1^2", 3).unwrap()]).unwrap();
    let w = WeightVector::new(vec![int(2), int(3), int(1)], 3).unwrap();
    let mut g = c.benchmark_group("hilbert_weight_bruteforce");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| hilbert_weight_bruteforce(&v, 3, &w, DEFAULT_ORACLE_CAP, exec).unwrap())
        });
    }
    g.finish();
}

fn bench_replacement(c: &mut Criterion) {
    let v = Variety::projective_space(3);
    let fam = family(&v, 4, &["x0 + x1", "x0 - x1", "x0", "x2 - x3", "x3", "x1 + x2"]);
    let prof = dimension_profile(&v, &fam, &[0, 1, 2, 3, 4, 5]).unwrap();
    let mut g = c.benchmark_group("build_replacement");
    for (name, exec) in MODES {
        let cfg = SearchConfig { exec, ..SearchConfig::default() };
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| build_replacement(&v, &fam, &prof, 7, &cfg).unwrap())
        });
    }
    g.finish();
}

fn bench_margin(c: &mut Criterion) {
    let v = Variety::projective_space(2);
    let fam = family(&v, 3, &["x0", "x1", "x2", "x0 + x1 + x2"]);
    let pts: Vec<_> = sample_points(&v, 2, 12, usize::MAX)
        .into_iter()
        .filter(|p| p.coords().iter().all(|x| *x != 0.into()) && p.coords().iter().sum::<num_bigint::BigInt>() != 0.into())
        .take(200)
        .collect();
    let mut g = c.benchmark_group("subspace_margin");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| subspace_margin(&v, &fam, &int(1), &ratio(1, 2), &default_places(), &pts, 50, exec).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, bench_delta, bench_oracle, bench_replacement, bench_margin);
criterion_main!(benches);
