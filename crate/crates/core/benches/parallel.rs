use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use reflmono::analysis::{analyze, Options};
use reflmono::extdata::{Character, ExtensionDatum};
use reflmono::fixtures::{corpus, q_quadratic};
use reflmono::hecke::{build_hecke, ReflectionInput};
use reflmono::par::Exec;
use reflmono::reflgrp::{hyperplanes, GroupDatum, DEFAULT_GROUP_CAP};
use reflmono::selftest;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("rayon", Exec::Rayon)];

fn carousel_sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("carousel_sweep");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(name, |b| b.iter(|| selftest::run("carousel", exec).unwrap()));
    }
    g.finish();
}

fn hecke_regular_module(c: &mut Criterion) {
    let mut g = c.benchmark_group("hecke_regular_module");
    g.sample_size(10);
    let rb = q_quadratic(&reflmono::cyclo::CycNumber::from_integer(3));
    for (m, p, r) in [(1, 1, 4), (2, 1, 3)] {
        let w = GroupDatum::catalog(m, p, r).unwrap().build(DEFAULT_GROUP_CAP).unwrap();
        let input: Vec<ReflectionInput> = hyperplanes(&w)
            .unwrap()
            .hyperplanes
            .iter()
            .enumerate()
            .map(|(a, h)| ReflectionInput {
                hyperplane: a,
                reflection: h.generator,
                normal: h.normal.clone(),
                rbar: rb.clone(),
            })
            .collect();
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, format!("G({m},{p},{r})")), &input, |b, input| {
                b.iter(|| build_hecke(&w, input, exec).unwrap())
            });
        }
    }
    g.finish();
}

fn corpus_analysis(c: &mut Criterion) {
    let runs: Vec<(ExtensionDatum, Character, Option<reflmono::chi::RbarParams>)> = corpus()
        .into_iter()
        .filter(|f| f.expected_exit == 0)
        .flat_map(|f| {
            let e = ExtensionDatum::from_file(f.datum().unwrap(), None, DEFAULT_GROUP_CAP).unwrap();
            f.characters
                .iter()
                .map(|s| (e.clone(), Character::parse(&e, s).unwrap(), f.rbar.clone()))
                .collect::<Vec<_>>()
        })
        .collect();
    let mut g = c.benchmark_group("corpus_analysis");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_function(name, |b| {
            b.iter(|| {
                for (e, chi, rbar) in &runs {
                    analyze(e, chi, rbar.as_ref(), Options { convention: None, exec });
                }
            })
        });
    }
    g.finish();
}

criterion_group!(benches, carousel_sweep, hecke_regular_module, corpus_analysis);
criterion_main!(benches);
