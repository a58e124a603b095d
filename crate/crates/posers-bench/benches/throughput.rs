use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion, Throughput};

use posers::attack::frequency_matrix;
use posers::auth::{classify_read, sc_test};
use posers::ingest::{dedup, parse_fastq};
use posers::synth::{write_library, LibraryFormat, SynthConfig};
use posers_bench::{cpol_regions, random_regions, reference_design};

fn bench_classify(c: &mut Criterion) {
    let design = reference_design();
    let regions = random_regions(1_000_000);
    let mut group = c.benchmark_group("classify");
    group.sample_size(10);
    group.throughput(Throughput::Elements(regions.len() as u64));
    group.bench_function("sc_test_1m_random", |b| {
        b.iter(|| sc_test(&design, black_box(&regions), 1_000_000, 0.0).unwrap())
    });
    group.bench_function("classify_read_single", |b| {
        let region = &regions[0];
        b.iter(|| classify_read(&design, black_box(region)).unwrap())
    });
    group.finish();
}

fn bench_parse(c: &mut Criterion) {
    let design = reference_design();
    let records = posers::synth::synth_cpol(&design, &SynthConfig::new(100_000, 3)).unwrap();
    let mut fastq = Vec::new();
    write_library(&mut fastq, &records, &design, true, LibraryFormat::Fastq).unwrap();

    let mut group = c.benchmark_group("ingest");
    group.sample_size(10);
    group.throughput(Throughput::Bytes(fastq.len() as u64));
    group.bench_function("parse_fastq_100k", |b| {
        b.iter(|| {
            let reader = parse_fastq(std::io::Cursor::new(black_box(&fastq)));
            reader.map(|r| r.unwrap().seq.len()).sum::<usize>()
        })
    });
    group.finish();
}

fn bench_dedup(c: &mut Criterion) {
    let design = reference_design();
    let regions = cpol_regions(&design, 500_000);
    let mut group = c.benchmark_group("dedup");
    group.sample_size(10);
    group.throughput(Throughput::Elements(regions.len() as u64));
    group.bench_function("dedup_500k", |b| {
        b.iter(|| dedup(black_box(regions.clone())))
    });
    group.finish();
}

fn bench_frequency(c: &mut Criterion) {
    let design = reference_design();
    let regions = cpol_regions(&design, 500_000);
    let mut group = c.benchmark_group("attack");
    group.sample_size(10);
    group.throughput(Throughput::Elements(regions.len() as u64));
    group.bench_function("frequency_matrix_500k", |b| {
        b.iter(|| frequency_matrix(black_box(&regions)).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_classify, bench_parse, bench_dedup, bench_frequency);
criterion_main!(benches);
