//! Parallel vs sequential timing for the three search-heavy paths.
//!
//! With the `parallel` feature the "sequential" variant runs the same code
//! inside a one-thread rayon pool; build with `--no-default-features` to
//! time the plain-iterator fallback instead.

use std::path::PathBuf;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use torsor::aut::compute_aut;
use torsor::{
    enumerate_aut_relators, parse_aut_generators, parse_group, parse_presentation, Automorphism, Budgets, FiniteGroup,
    MappingTorus, PermutationModel,
};

fn catalog(rel: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../catalog").join(rel);
    std::fs::read_to_string(path).unwrap()
}

fn group(name: &str) -> FiniteGroup {
    parse_group(&catalog(&format!("groups/{name}.json"))).unwrap()
}

fn variants() -> Vec<(&'static str, rayon::ThreadPool)> {
    let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    if torsor::par::is_parallel() {
        let all = rayon::ThreadPoolBuilder::new().build().unwrap();
        vec![("parallel", all), ("sequential", one)]
    } else {
        vec![("fallback", one)]
    }
}

fn aut_search(c: &mut Criterion) {
    let mut g = c.benchmark_group("compute_aut");
    for name in ["s4", "a5"] {
        let h = group(name);
        for (label, pool) in variants() {
            g.bench_with_input(BenchmarkId::new(label, name), &h, |b, h| {
                b.iter(|| pool.install(|| compute_aut(h).unwrap()))
            });
        }
    }
    g.finish();
}

fn direct_out(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_out_direct");
    g.sample_size(20);
    for name in ["s4", "a5"] {
        let h = group(name);
        let m = MappingTorus::new(h.clone(), Automorphism::identity(&h)).unwrap();
        for (label, pool) in variants() {
            g.bench_with_input(BenchmarkId::new(label, name), &m, |b, m| {
                b.iter(|| pool.install(|| m.enumerate_out_direct_default().unwrap()))
            });
        }
    }
    g.finish();
}

fn relators(c: &mut Criterion) {
    let p = parse_presentation(&catalog("presentations/s3.json")).unwrap();
    let a = parse_aut_generators(&p, &catalog("presentations/s3_inner.json")).unwrap();
    let model = PermutationModel::new(&p, parse_group(&catalog("presentations/s3_model.json")).unwrap()).unwrap();
    let budgets = Budgets { max_aut_len: 5, max_states: 100_000, max_word_len: 32 };
    let mut g = c.benchmark_group("enumerate_aut_relators");
    g.sample_size(10);
    for (label, pool) in variants() {
        g.bench_function(BenchmarkId::new(label, "s3-len5"), |b| {
            b.iter(|| pool.install(|| enumerate_aut_relators(&p, &a, budgets, Some(&model)).count()))
        });
    }
    g.finish();
}

criterion_group!(benches, aut_search, direct_out, relators);
criterion_main!(benches);
