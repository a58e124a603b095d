//! Handlers behind the CLI surface. Every command is deterministic given
//! its flags, the seed and its input files (registry timestamps excepted).

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};

use posers::attack::{
    assess_prediction, enumerate_restrictions, frequency_matrix, predict_design_with_baseline,
    PredictionBaseline,
};
use posers::auth::{authenticate, apply_cross_run, AuthOptions, AuthReport, AuthVerdict, CrossRunFindings};
use posers::design::{
    decode_design, encode_design, generate_design, Design, DesignParams, DEFAULT_FLANK_3,
    DEFAULT_FLANK_5,
};
use posers::ingest::{
    cross_run_shared, extract_design_region, make_run_digest, parse_auto, read_digest,
    write_digest, Deduper, FilterReport, RegionOutcome,
};
use posers::iupac_code_of;
use posers::math::{design_stats, DesignStats};
use posers::report::KvReport;
use posers::synth::{
    forge_from_design, forge_pcr, synth_cpol, synth_random, write_library, ErrorModel,
    LibraryFormat, SynthConfig,
};
use posers::SequenceRecord;

use crate::registry;
use crate::{
    AttackCmd, AuthArgs, CalcArgs, Cli, Command, DesignCmd, ForgeCmd, IngestCmd, OutputFormat,
    RegistryCmd, SynthCmd,
};

/// Reads synthesized per invocation chunk; bounds memory for large requests.
const SYNTH_CHUNK: usize = 1_000_000;

pub fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Design(DesignCmd::New(args)) => design_new(cli, args),
        Command::Design(DesignCmd::Stats(args)) => design_stats_cmd(cli, args),
        Command::Calc(args) => calc(cli, args),
        Command::Synth(SynthCmd::Cpol(args)) => synth_cpol_cmd(cli, args),
        Command::Synth(SynthCmd::Random(args)) => synth_random_cmd(cli, args),
        Command::Forge(ForgeCmd::Pcr(args)) => forge_pcr_cmd(cli, args),
        Command::Forge(ForgeCmd::FromPredicted(args)) => forge_from_predicted_cmd(cli, args),
        Command::Ingest(IngestCmd::Filter(args)) => ingest_filter(cli, args),
        Command::Ingest(IngestCmd::Dedup(args)) => ingest_dedup(cli, args),
        Command::Auth(args) => auth(cli, args),
        Command::Attack(AttackCmd::Predict(args)) => attack_predict(cli, args),
        Command::Attack(AttackCmd::Enumerate(args)) => attack_enumerate(cli, args),
        Command::Registry(RegistryCmd::Add(args)) => registry_add(cli, args),
        Command::Registry(RegistryCmd::RecordRun(args)) => registry_record_run(cli, args),
        Command::Registry(RegistryCmd::List(args)) => registry_list(cli, args),
    }
}

fn load_design(path: &Path) -> Result<Design> {
    let bytes = std::fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(decode_design(&bytes)?)
}

fn stats_for_design(design: &Design, epsilon: f64) -> Result<DesignStats> {
    let (k1, k2, k3) = design.rule_counts();
    Ok(design_stats(k1 as u32, k2 as u32, k3 as u32, epsilon)?)
}

fn print_stats(format: OutputFormat, stats: &DesignStats) {
    match format {
        OutputFormat::Kv => {
            let mut out = String::new();
            stats.kv_lines("stats", &mut out);
            print!("{out}");
        }
        OutputFormat::Text => {
            println!("missing rate:              {:e}", stats.missing_rate);
            println!("forbidden tuples:          {}", stats.forbidden_tuples);
            println!("required sample size:      {}", stats.required_n);
            println!("hardened sample size:      {}", stats.adjusted_n);
            println!("product capacity:          {}", stats.capacity);
            println!("max producible sequences:  {:.4e}", stats.max_sequences);
        }
    }
}

fn print_rules(design: &Design) {
    println!("rules ({}):", design.rules.len());
    for rule in &design.rules {
        println!("  position {:>3}: {}", rule.position + 1, iupac_code_of(rule.allowed));
    }
}

fn design_new(cli: &Cli, args: &crate::DesignNewArgs) -> Result<u8> {
    if args.out.exists() && !args.force {
        bail!("{} exists; pass --force to overwrite", args.out.display());
    }
    let params = DesignParams {
        region_len: args.length,
        k1: args.k1,
        k2: args.k2,
        k3: args.k3,
        epsilon: args.epsilon,
    };
    let flank5 = args.flank5.as_deref().unwrap_or(DEFAULT_FLANK_5);
    let flank3 = args.flank3.as_deref().unwrap_or(DEFAULT_FLANK_3);
    let mut design = generate_design(&params, cli.seed, flank5, flank3)?;
    if let Some(id) = &args.id {
        design.id = id.clone();
    }
    std::fs::write(&args.out, encode_design(&design)?)
        .with_context(|| format!("writing {}", args.out.display()))?;
    eprintln!("design written to {} (keep this file secret)", args.out.display());

    if design.rules.is_empty() {
        eprintln!("warning: design has no restricted positions; it cannot authenticate anything");
    } else {
        print_stats(cli.format, &stats_for_design(&design, args.epsilon)?);
    }
    if args.reveal {
        print_rules(&design);
    }
    Ok(0)
}

fn design_stats_cmd(cli: &Cli, args: &crate::DesignStatsArgs) -> Result<u8> {
    let design = load_design(&args.design)?;
    if design.rules.is_empty() {
        bail!("design has no restricted positions; stats are undefined");
    }
    print_stats(cli.format, &stats_for_design(&design, args.epsilon)?);
    if args.reveal {
        print_rules(&design);
    }
    Ok(0)
}

fn calc(cli: &Cli, args: &CalcArgs) -> Result<u8> {
    let stats = design_stats(args.k1, args.k2, args.k3, args.epsilon)?;
    print_stats(cli.format, &stats);
    Ok(0)
}

fn library_format(fasta: bool) -> LibraryFormat {
    if fasta {
        LibraryFormat::Fasta
    } else {
        LibraryFormat::Fastq
    }
}

/// Writes a large library in seeded chunks: chunk c of a request uses seed
/// `seed + c`, and record ids number the whole file consecutively.
fn write_chunked<F>(
    out_path: &Path,
    total: usize,
    design: &Design,
    include_flanks: bool,
    format: LibraryFormat,
    mut synth_chunk: F,
) -> Result<()>
where
    F: FnMut(usize, u64) -> Result<Vec<SequenceRecord>>,
{
    let file = File::create(out_path).with_context(|| format!("creating {}", out_path.display()))?;
    let mut out = BufWriter::new(file);
    let mut produced = 0usize;
    let mut chunk_idx = 0u64;
    let mut next_id = 0u64;
    while produced < total || (total == 0 && chunk_idx == 0) {
        let want = SYNTH_CHUNK.min(total - produced);
        let mut records = synth_chunk(want, chunk_idx)?;
        for rec in &mut records {
            rec.id = format!("r{next_id:08}");
            next_id += 1;
        }
        write_library(&mut out, &records, design, include_flanks, format)?;
        produced += want;
        chunk_idx += 1;
        if total == 0 {
            break;
        }
    }
    out.flush()?;
    Ok(())
}

fn synth_cpol_cmd(cli: &Cli, args: &crate::SynthCpolArgs) -> Result<u8> {
    let design = load_design(&args.design)?;
    let error = ErrorModel::uniform(args.error_rate)?;
    let ratios = args.ratios.clone();
    let base_seed = cli.seed;
    write_chunked(
        &args.out,
        args.reads,
        &design,
        !args.no_flanks,
        library_format(args.fasta),
        |want, chunk| {
            let config = SynthConfig {
                total_reads: want,
                ratios: ratios.clone(),
                error: error.clone(),
                include_flanks: !args.no_flanks,
                seed: base_seed.wrapping_add(chunk),
            };
            Ok(synth_cpol(&design, &config)?)
        },
    )?;
    eprintln!("wrote {} reads to {}", args.reads, args.out.display());
    Ok(0)
}

fn synth_random_cmd(cli: &Cli, args: &crate::SynthRandomArgs) -> Result<u8> {
    let flank5 = args.flank5.as_deref().unwrap_or(DEFAULT_FLANK_5);
    let flank3 = args.flank3.as_deref().unwrap_or(DEFAULT_FLANK_3);
    // Carrier design: only the flanks and region length matter for writing.
    let carrier = Design {
        id: "random-control".into(),
        region_len: args.length,
        rules: vec![],
        flank5: flank5.to_string(),
        flank3: flank3.to_string(),
        ratios: None,
        seed: cli.seed,
    };
    let base_seed = cli.seed;
    let length = args.length;
    write_chunked(
        &args.out,
        args.count,
        &carrier,
        !args.no_flanks,
        library_format(args.fasta),
        |want, chunk| Ok(synth_random(length, want, base_seed.wrapping_add(chunk))),
    )?;
    eprintln!("wrote {} reads to {}", args.count, args.out.display());
    Ok(0)
}

fn read_records(path: &Path) -> Result<Vec<SequenceRecord>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let records: std::result::Result<Vec<_>, _> = parse_auto(BufReader::new(file))?.collect();
    Ok(records?)
}

fn forge_pcr_cmd(cli: &Cli, args: &crate::ForgePcrArgs) -> Result<u8> {
    let source = read_records(&args.source)?;
    let forged = forge_pcr(&source, args.source_reads, args.total, cli.seed)?;
    // Source reads already carry whatever flanks they were sequenced with.
    let carrier = Design {
        id: "forge-pcr".into(),
        region_len: 0,
        rules: vec![],
        flank5: String::new(),
        flank3: String::new(),
        ratios: None,
        seed: cli.seed,
    };
    let file = File::create(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    let mut out = BufWriter::new(file);
    write_library(&mut out, &forged, &carrier, false, library_format(args.fasta))?;
    out.flush()?;
    eprintln!("wrote {} reads to {}", forged.len(), args.out.display());
    Ok(0)
}

fn forge_from_predicted_cmd(cli: &Cli, args: &crate::ForgeFromPredictedArgs) -> Result<u8> {
    let predicted = load_design(&args.predicted)?;
    let error = ErrorModel::uniform(args.error_rate)?;
    let base_seed = cli.seed;
    write_chunked(
        &args.out,
        args.reads,
        &predicted,
        !args.no_flanks,
        library_format(args.fasta),
        |want, chunk| {
            let config = SynthConfig {
                total_reads: want,
                ratios: None,
                error: error.clone(),
                include_flanks: !args.no_flanks,
                seed: base_seed.wrapping_add(chunk),
            };
            Ok(forge_from_design(&predicted, &config)?)
        },
    )?;
    eprintln!("wrote {} reads to {}", args.reads, args.out.display());
    Ok(0)
}

fn print_filter_report(format: OutputFormat, report: &FilterReport) {
    match format {
        OutputFormat::Kv => {
            let mut out = String::new();
            report.kv_lines("filter", &mut out);
            print!("{out}");
        }
        OutputFormat::Text => {
            println!(
                "filtered {} reads: kept {}, wrong length {}, flank mismatch {}, ambiguous {}",
                report.total(),
                report.kept,
                report.rejected_wrong_length,
                report.rejected_flank_mismatch,
                report.rejected_ambiguous_base
            );
        }
    }
}

fn ingest_filter(cli: &Cli, args: &crate::IngestFilterArgs) -> Result<u8> {
    let design = load_design(&args.design)?;
    let file = File::open(&args.reads).with_context(|| format!("opening {}", args.reads.display()))?;
    let out_file =
        File::create(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    let mut out = BufWriter::new(out_file);

    let mut report = FilterReport::default();
    for record in parse_auto(BufReader::new(file))? {
        let record = record?;
        let outcome = extract_design_region(&record.seq, &design, args.max_flank_mismatch);
        if let RegionOutcome::Region(region) = &outcome {
            writeln!(out, "{region}")?;
        }
        report.tally(&outcome);
    }
    out.flush()?;
    print_filter_report(cli.format, &report);
    Ok(0)
}

fn read_region_lines(path: &Path) -> Result<Vec<String>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let mut regions = Vec::new();
    for line in BufReader::new(file).lines() {
        let line = line?;
        let trimmed = line.trim();
        if !trimmed.is_empty() {
            regions.push(trimmed.to_string());
        }
    }
    Ok(regions)
}

fn ingest_dedup(cli: &Cli, args: &crate::IngestDedupArgs) -> Result<u8> {
    let file =
        File::open(&args.regions).with_context(|| format!("opening {}", args.regions.display()))?;
    let mut deduper = Deduper::new();
    let mut total = 0u64;
    for line in BufReader::new(file).lines() {
        let line = line?;
        let trimmed = line.trim();
        if !trimmed.is_empty() {
            deduper.push(trimmed.to_string());
            total += 1;
        }
    }
    let (uniques, profile) = deduper.finish();

    if let Some(out_path) = &args.out {
        let out_file =
            File::create(out_path).with_context(|| format!("creating {}", out_path.display()))?;
        let mut out = BufWriter::new(out_file);
        for region in &uniques {
            writeln!(out, "{region}")?;
        }
        out.flush()?;
    }
    if let Some(digest_path) = &args.digest_out {
        let run_id = args.run_id.as_deref().expect("clap enforces --run-id");
        let region_len = uniques.first().map(|r| r.len()).unwrap_or(0);
        let digest = make_run_digest(run_id, region_len, uniques.clone(), total)?;
        let mut file = File::create(digest_path)
            .with_context(|| format!("creating {}", digest_path.display()))?;
        write_digest(&mut file, &digest)?;
    }

    match cli.format {
        OutputFormat::Kv => {
            let mut out = String::new();
            profile.kv_lines("dup", &mut out);
            print!("{out}");
        }
        OutputFormat::Text => {
            println!(
                "{} reads, {} unique ({:.2}% rank-1)",
                profile.total,
                profile.unique_count,
                100.0 * profile.rank_fraction(1)
            );
            for (rank, count) in &profile.histogram {
                println!("  occurrence rank {rank}: {count}");
            }
        }
    }
    Ok(0)
}

fn print_auth_report(format: OutputFormat, report: &AuthReport) {
    match format {
        OutputFormat::Kv => print!("{}", report.to_kv()),
        OutputFormat::Text => {
            println!(
                "filter: {} reads, kept {} (wrong length {}, flank mismatch {}, ambiguous {})",
                report.filter.total(),
                report.filter.kept,
                report.filter.rejected_wrong_length,
                report.filter.rejected_flank_mismatch,
                report.filter.rejected_ambiguous_base
            );
            println!(
                "duplication: {} unique of {} ({:.2}% rank-1)",
                report.duplication.unique_count,
                report.duplication.total,
                100.0 * report.duplication.rank_fraction(1)
            );
            println!(
                "combination test: {} examined, {} non-authentic (rate {:.4e}, required {}) -> {}",
                report.sc.examined,
                report.sc.non_authentic,
                report.sc.empirical_rate,
                report.sc.required_n,
                report.sc.verdict
            );
            let pass = report.sv.positions.iter().filter(|p| p.status == posers::auth::SvStatus::Pass).count();
            let fail: Vec<_> =
                report.sv.positions.iter().filter(|p| p.status == posers::auth::SvStatus::Fail).collect();
            println!(
                "variety test: overall {} ({} positions: {} pass, {} fail, {} inconclusive)",
                report.sv.overall,
                report.sv.positions.len(),
                pass,
                fail.len(),
                report.sv.positions.len() - pass - fail.len()
            );
            for p in fail {
                println!(
                    "  position {}: allowed {}, observed {} in {} exclusive reads -> fail",
                    p.position + 1,
                    p.allowed,
                    p.observed,
                    p.exclusive_reads
                );
            }
            if let Some(cross) = &report.cross_run {
                if cross.shared_with.is_empty() {
                    println!("cross-run: no shared sequences with other products");
                } else {
                    for (product, run, count) in &cross.shared_with {
                        println!(
                            "cross-run: shares {count} sequences with product {product} (run {run})"
                        );
                    }
                }
            }
            println!("verdict: {}", report.verdict);
        }
    }
}

fn auth(cli: &Cli, args: &AuthArgs) -> Result<u8> {
    let design = load_design(&args.design)?;
    let file = File::open(&args.reads).with_context(|| format!("opening {}", args.reads.display()))?;
    let options = AuthOptions {
        required_n: args.required_n,
        tolerance: args.tolerance,
        max_flank_mismatch: args.max_flank_mismatch,
        min_evidence: args.min_evidence,
        epsilon: args.epsilon,
    };
    let mut run = authenticate(&design, BufReader::new(file), &options)?;

    if let Some(registry_path) = &args.registry {
        let (Some(batch_id), Some(product_id), Some(run_id)) =
            (&args.batch_id, &args.product_id, &args.run_id)
        else {
            bail!("--registry requires --batch-id, --product-id and --run-id");
        };
        let digest = make_run_digest(
            run_id.clone(),
            design.region_len,
            std::mem::take(&mut run.unique_regions),
            run.report.duplication.total,
        )?;
        let mut findings = CrossRunFindings::default();
        for (record, other) in registry::other_product_digests(registry_path, batch_id, product_id)? {
            if other.region_len != digest.region_len {
                continue;
            }
            let shared = cross_run_shared(&digest, &other)?;
            if !shared.is_empty() {
                findings
                    .shared_with
                    .push((record.product_id.clone(), record.run_id.clone(), shared.len() as u64));
            }
        }
        apply_cross_run(&mut run.report, findings);
        registry::record_run(registry_path, batch_id, product_id, run_id, &digest)?;
    }

    print_auth_report(cli.format, &run.report);
    Ok(match run.report.verdict {
        AuthVerdict::Authentic => 0,
        AuthVerdict::Forged => 2,
        AuthVerdict::Inconclusive => 3,
    })
}

fn attack_predict(cli: &Cli, args: &crate::AttackPredictArgs) -> Result<u8> {
    let regions: Vec<String> = if let Some(regions_path) = &args.regions {
        read_region_lines(regions_path)?
    } else if let Some(reads_path) = &args.reads {
        let flank5 = args.flank5.clone().unwrap_or_default();
        let flank3 = args.flank3.clone().unwrap_or_default();
        let records = read_records(reads_path)?;
        let first = records
            .first()
            .ok_or_else(|| anyhow::anyhow!("no reads in {}", reads_path.display()))?;
        if first.seq.len() <= flank5.len() + flank3.len() {
            bail!("reads are shorter than the provided flanks");
        }
        let carrier = Design {
            id: "observed".into(),
            region_len: first.seq.len() - flank5.len() - flank3.len(),
            rules: vec![],
            flank5,
            flank3,
            ratios: None,
            seed: 0,
        };
        records
            .iter()
            .filter_map(|r| match extract_design_region(&r.seq, &carrier, 2) {
                RegionOutcome::Region(region) => Some(region),
                RegionOutcome::Rejected(_) => None,
            })
            .collect()
    } else {
        bail!("pass --reads (with flanks) or --regions");
    };

    let fm = frequency_matrix(&regions)?;
    let baseline = if args.letter_mean_baseline {
        PredictionBaseline::PerLetterMean
    } else {
        PredictionBaseline::OverallMean
    };
    let predicted = predict_design_with_baseline(&fm, args.assumed_k, args.assumed_i, baseline)?;

    match cli.format {
        OutputFormat::Kv => {
            let mut out = String::new();
            predicted.kv_lines("predict", &mut out);
            print!("{out}");
        }
        OutputFormat::Text => {
            println!("predicted {} restricted positions:", predicted.rules.len());
            for rule in &predicted.rules {
                println!("  position {:>3}: {}", rule.position + 1, iupac_code_of(rule.allowed));
            }
        }
    }

    if let Some(truth_path) = &args.truth {
        let truth = load_design(truth_path)?;
        let assessment = assess_prediction(&truth, &predicted)?;
        match cli.format {
            OutputFormat::Kv => {
                let mut out = String::new();
                assessment.kv_lines("assess", &mut out);
                print!("{out}");
            }
            OutputFormat::Text => {
                println!(
                    "assessment: {} correct, {} FNP, {} FPN, {} FHP",
                    assessment.correct.len(),
                    assessment.fnp.len(),
                    assessment.fpn.len(),
                    assessment.fhp.len()
                );
                let mut calls: Vec<(usize, &str)> = Vec::new();
                calls.extend(assessment.correct.iter().map(|p| (*p, "correct")));
                calls.extend(assessment.fnp.iter().map(|p| (*p, "FNP")));
                calls.extend(assessment.fpn.iter().map(|p| (*p, "FPN")));
                calls.extend(assessment.fhp.iter().map(|p| (*p, "FHP")));
                calls.sort_by_key(|(p, _)| *p);
                for (pos, label) in calls {
                    println!("  position {:>3}: {label}", pos + 1);
                }
            }
        }
    }

    if let Some(out_path) = &args.emit_design {
        let design = predicted.to_design(
            "predicted",
            args.flank5.as_deref().unwrap_or(""),
            args.flank3.as_deref().unwrap_or(""),
            cli.seed,
        );
        std::fs::write(out_path, encode_design(&design)?)
            .with_context(|| format!("writing {}", out_path.display()))?;
        eprintln!("prediction written to {}", out_path.display());
    }
    Ok(0)
}

fn attack_enumerate(cli: &Cli, args: &crate::AttackEnumerateArgs) -> Result<u8> {
    let regions = read_region_lines(&args.regions)?;
    let findings = enumerate_restrictions(&regions, args.max_k, args.max_checks)?;
    match cli.format {
        OutputFormat::Kv => {
            let mut out = String::new();
            findings.as_slice().kv_lines("enumerate", &mut out);
            print!("{out}");
        }
        OutputFormat::Text => {
            if findings.is_empty() {
                println!("no missing letter tuples at any tested position subset");
            }
            for finding in &findings {
                let positions: Vec<String> =
                    finding.positions.iter().map(|p| (p + 1).to_string()).collect();
                println!(
                    "positions {{{}}}: {} missing tuples: {}",
                    positions.join(","),
                    finding.missing_tuples.len(),
                    finding.missing_tuples.join(",")
                );
            }
        }
    }
    Ok(0)
}

fn registry_add(_cli: &Cli, args: &crate::RegistryAddArgs) -> Result<u8> {
    registry::add_batch(&args.registry, &args.batch_id, &args.design_ref, &args.products)?;

    // Capacity courtesy check: warn (not error) when a batch claims more
    // products than its design supports.
    if let Ok(design) = load_design(Path::new(&args.design_ref)) {
        if let Ok(stats) = stats_for_design(&design, posers::math::DEFAULT_EPSILON) {
            if args.products.len() as u64 > stats.capacity {
                eprintln!(
                    "warning: {} products exceed the design's capacity of {}",
                    args.products.len(),
                    stats.capacity
                );
            }
        }
    }
    println!("batch {} registered with {} products", args.batch_id, args.products.len());
    Ok(0)
}

fn registry_record_run(_cli: &Cli, args: &crate::RegistryRecordRunArgs) -> Result<u8> {
    let file =
        File::open(&args.digest).with_context(|| format!("opening {}", args.digest.display()))?;
    let digest = read_digest(BufReader::new(file))?;
    registry::record_run(&args.registry, &args.batch_id, &args.product_id, &args.run_id, &digest)?;
    println!(
        "recorded run {} for product {} ({} unique sequences)",
        args.run_id,
        args.product_id,
        digest.sequences.len()
    );
    Ok(0)
}

fn registry_list(cli: &Cli, args: &crate::RegistryListArgs) -> Result<u8> {
    let registry = registry::load(&args.registry)?;
    match cli.format {
        OutputFormat::Kv => {
            println!("registry.batches={}", registry.batches.len());
            for batch in &registry.batches {
                let prefix = format!("registry.batch.{}", batch.batch_id);
                println!("{prefix}.design_ref={}", batch.design_ref);
                println!("{prefix}.products={}", batch.products.join(","));
                println!("{prefix}.runs={}", batch.runs.len());
                for run in &batch.runs {
                    println!(
                        "{prefix}.run.{}.{}={} ts={}",
                        run.product_id, run.run_id, run.digest, run.timestamp
                    );
                }
            }
        }
        OutputFormat::Text => {
            if registry.batches.is_empty() {
                println!("registry is empty");
            }
            for batch in &registry.batches {
                println!("batch {} (design {})", batch.batch_id, batch.design_ref);
                println!("  products: {}", batch.products.join(", "));
                for run in &batch.runs {
                    println!(
                        "  run {} of product {} -> {} (recorded {})",
                        run.run_id, run.product_id, run.digest, run.timestamp
                    );
                }
            }
        }
    }
    Ok(0)
}
