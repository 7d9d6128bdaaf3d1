use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use seqfmeca_bench::chain_model;
use seqfmeca_core::catalog::{enumerate_candidates, ProfileConfig};
use seqfmeca_core::fmeca::{init_worksheet, RiskMatrix};
use seqfmeca_core::report::{emit_fmeca, ReportOptions};
use seqfmeca_core::trace::{mutate, nominal_trace};
use seqfmeca_core::{dsl, model::validate_model};
use std::hint::black_box;

const SIZES: [usize; 3] = [8, 64, 256];

fn bench_parse(c: &mut Criterion) {
    let mut group = c.benchmark_group("parse");
    for size in SIZES {
        let source = dsl::serialize(&chain_model(size));
        group.bench_with_input(BenchmarkId::from_parameter(size), &source, |b, source| {
            b.iter(|| black_box(dsl::parse(source, "bench.rau")));
        });
    }
    group.finish();
}

fn bench_validate(c: &mut Criterion) {
    let mut group = c.benchmark_group("validate");
    for size in SIZES {
        let model = chain_model(size);
        group.bench_with_input(BenchmarkId::from_parameter(size), &model, |b, model| {
            b.iter(|| black_box(validate_model(model)));
        });
    }
    group.finish();
}

fn bench_enumerate(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerate");
    let profiles = ProfileConfig::default();
    for size in SIZES {
        let model = chain_model(size);
        group.bench_with_input(BenchmarkId::from_parameter(size), &model, |b, model| {
            b.iter(|| black_box(enumerate_candidates(model, &profiles)));
        });
    }
    group.finish();
}

fn bench_mutate_all(c: &mut Criterion) {
    let mut group = c.benchmark_group("mutate-all");
    let profiles = ProfileConfig::default();
    for size in SIZES {
        let model = chain_model(size);
        let candidates = enumerate_candidates(&model, &profiles);
        let interaction = &model.interactions[0];
        group.bench_function(BenchmarkId::from_parameter(size), |b| {
            b.iter(|| {
                let trace = nominal_trace(interaction).unwrap();
                black_box(trace);
                for candidate in &candidates.items {
                    black_box(mutate(interaction, candidate, 0).unwrap());
                }
            });
        });
    }
    group.finish();
}

fn bench_report(c: &mut Criterion) {
    let mut group = c.benchmark_group("report-markdown");
    let profiles = ProfileConfig::default();
    let matrix = RiskMatrix::default_matrix();
    let options = ReportOptions::default();
    for size in SIZES {
        let model = chain_model(size);
        let candidates = enumerate_candidates(&model, &profiles);
        let worksheet = init_worksheet(&model, &candidates).unwrap();
        group.bench_function(BenchmarkId::from_parameter(size), |b| {
            b.iter(|| black_box(emit_fmeca(&worksheet, &matrix, &options)));
        });
    }
    group.finish();
}

criterion_group!(
    benches,
    bench_parse,
    bench_validate,
    bench_enumerate,
    bench_mutate_all,
    bench_report
);
criterion_main!(benches);
