//! Command-line front end: `simulate`, `fit`, `eval`, and `benchmark`.
//!
//! The binary in `src/bin/demix.rs` is a thin wrapper around [`run`]; every
//! command is an ordinary library function so the full pipeline is testable
//! in-process. Exit codes: 0 success, 2 validation error, 3 data error,
//! 4 numerical failure.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::RunConfig;
use crate::evaluation::{self, AggregateReport, MetricsReport};
use crate::event_model::{
    ingest_stream, ingest_stream_filtered, load_stopwords, write_stream, Dataset, OriginPolicy,
};
use crate::generator::{generate, make_scenario, scenario_fit_config};
use crate::smc::{fit_sequence, ClusterSummary, ClusteringResult};
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(
    name = "demix",
    about = "Cluster a stream of marked events into its latent sources",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a labeled synthetic stream (JSONL plus a truth sidecar).
    Simulate(SimulateArgs),
    /// Fit a stream: labels, per-source summaries, and an intensity trace.
    Fit(FitArgs),
    /// Score labels against a stream; emits a JSON report and a CSV row.
    Eval(EvalArgs),
    /// Compare the full model against ablations over a seed grid.
    Benchmark(BenchmarkArgs),
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// JSON run configuration; defaults apply when omitted.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Scenario preset overriding the generator section
    /// (separable | overlapping | vendor-only | time-only).
    #[arg(long)]
    pub scenario: Option<String>,
    /// Output JSONL path; the truth sidecar lands next to it.
    #[arg(long)]
    pub out: PathBuf,
    /// Override every configured seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Override the number of generated events.
    #[arg(long)]
    pub events: Option<usize>,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Input JSONL stream.
    #[arg(long)]
    pub stream: PathBuf,
    /// Output directory for result.json and trace.csv.
    #[arg(long, value_name = "DIR")]
    pub out_dir: PathBuf,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Override the particle count.
    #[arg(long)]
    pub particles: Option<usize>,
    /// Drop the vendor factor from assignment scoring (the time+content
    /// baseline).
    #[arg(long)]
    pub ablate_vendor: bool,
    /// Drop the content factor from assignment scoring.
    #[arg(long)]
    pub ablate_content: bool,
    /// Drop the time factor from assignment scoring.
    #[arg(long)]
    pub ablate_time: bool,
    /// Stop-word file (one word per line) applied during ingestion.
    #[arg(long)]
    pub stopwords: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    /// Labels file(s): fit output (result.json) or a bare JSON array.
    #[arg(long, required = true, num_args = 1..)]
    pub labels: Vec<PathBuf>,
    /// Stream file(s) aligned with --labels.
    #[arg(long, required = true, num_args = 1..)]
    pub stream: Vec<PathBuf>,
    /// Output report path (JSON); a CSV lands next to it.
    #[arg(long)]
    pub out: PathBuf,
    /// Also emit the mean over sequences (multi-sequence mode).
    #[arg(long)]
    pub aggregate: bool,
}

#[derive(Debug, Args)]
pub struct BenchmarkArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Scenario preset to benchmark on.
    #[arg(long, default_value = "separable")]
    pub scenario: String,
    /// Number of seeds in the grid.
    #[arg(long, default_value_t = 20)]
    pub seeds: u64,
    /// Base seed; run i uses base + i.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub particles: Option<usize>,
    /// Override the number of generated events per run.
    #[arg(long)]
    pub events: Option<usize>,
}

/// Parses argv and dispatches; the binary maps errors to exit codes.
pub fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Simulate(args) => cmd_simulate(&args).map(|_| ()),
        Command::Fit(args) => cmd_fit(&args).map(|_| ()),
        Command::Eval(args) => cmd_eval(&args).map(|_| ()),
        Command::Benchmark(args) => {
            let summary = cmd_benchmark(&args)?;
            println!("{summary}");
            Ok(())
        }
    }
}

/// Truth sidecar path for a stream path: `stream.jsonl` -> `stream.truth.json`.
pub fn truth_sidecar_path(stream: &Path) -> PathBuf {
    stream.with_extension("truth.json")
}

pub fn cmd_simulate(args: &SimulateArgs) -> Result<(PathBuf, PathBuf)> {
    let mut config = RunConfig::load(args.config.as_deref())?;
    if let Some(name) = &args.scenario {
        config.generator = make_scenario(name)?;
    }
    if let Some(seed) = args.seed {
        config.override_seed(seed);
    }
    if let Some(events) = args.events {
        config.generator.num_events = events;
    }
    config.validate()?;

    let generated = generate(&config.generator)?;
    write_stream(&generated.dataset, &args.out)?;
    let sidecar = truth_sidecar_path(&args.out);
    fs::write(
        &sidecar,
        serde_json::to_string_pretty(&generated.truth).expect("sidecar serializes"),
    )?;
    Ok((args.out.clone(), sidecar))
}

fn apply_fit_overrides(config: &mut RunConfig, args: &FitArgs) {
    if let Some(seed) = args.seed {
        config.override_seed(seed);
    }
    if let Some(particles) = args.particles {
        config.fit.smc.num_particles = particles;
    }
    if args.ablate_vendor {
        config.fit.smc.ablation.use_vendor = false;
    }
    if args.ablate_content {
        config.fit.smc.ablation.use_content = false;
    }
    if args.ablate_time {
        config.fit.smc.ablation.use_time = false;
    }
}

fn load_dataset(stream: &Path, stopwords: Option<&Path>) -> Result<Dataset> {
    match stopwords {
        None => ingest_stream(stream, OriginPolicy::FirstEvent),
        Some(path) => {
            let words = load_stopwords(path)?;
            ingest_stream_filtered(stream, OriginPolicy::FirstEvent, &words)
        }
    }
}

/// Writes the per-source intensity trace: one `time` column plus one column
/// per source, sampled on the shared grid.
pub fn write_trace_csv(result: &ClusteringResult, path: &Path) -> Result<()> {
    let mut out = String::new();
    out.push_str("time");
    for h in 0..result.h_hat {
        out.push_str(&format!(",cluster_{h}"));
    }
    out.push('\n');
    for (i, t) in result.trace_times.iter().enumerate() {
        out.push_str(&format!("{t}"));
        for cluster in &result.clusters {
            out.push_str(&format!(",{}", cluster.intensity[i]));
        }
        out.push('\n');
    }
    fs::write(path, out)?;
    Ok(())
}

pub fn cmd_fit(args: &FitArgs) -> Result<ClusteringResult> {
    let mut config = RunConfig::load(args.config.as_deref())?;
    apply_fit_overrides(&mut config, args);
    config.validate()?;

    let stopwords = args
        .stopwords
        .as_deref()
        .or(config.stopwords_path.as_deref().map(Path::new));
    let dataset = load_dataset(&args.stream, stopwords)?;
    let result = fit_sequence(&dataset, &config.fit)?;
    if !result.stream_log_likelihood.is_finite() {
        return Err(Error::Numerical(format!(
            "stream log-likelihood degenerated ({} zero-intensity events)",
            result.degenerate_events
        )));
    }

    fs::create_dir_all(&args.out_dir)?;
    fs::write(
        args.out_dir.join("result.json"),
        serde_json::to_string_pretty(&result).expect("result serializes"),
    )?;
    fs::write(
        args.out_dir.join("labels.json"),
        serde_json::to_string(&result.labels).expect("labels serialize"),
    )?;
    write_trace_csv(&result, &args.out_dir.join("trace.csv"))?;
    Ok(result)
}

/// Accepts either a full fit result or a bare JSON array of labels.
pub fn load_labels(path: &Path) -> Result<ClusteringResult> {
    let text = fs::read_to_string(path)?;
    if let Ok(result) = serde_json::from_str::<ClusteringResult>(&text) {
        return Ok(result);
    }
    let labels: Vec<usize> = serde_json::from_str(&text)
        .map_err(|e| Error::data(1, format!("labels file {}: {e}", path.display())))?;
    Ok(bare_result(labels))
}

fn bare_result(labels: Vec<usize>) -> ClusteringResult {
    let h_hat = labels.iter().copied().max().map_or(0, |m| m + 1);
    ClusteringResult {
        labels,
        h_hat,
        stream_log_likelihood: 0.0,
        degenerate_events: 0,
        trace_times: Vec::new(),
        clusters: Vec::new(),
    }
}

/// Rebuilds per-source word/vendor summaries from labels and data, for
/// labels files that carry no summaries of their own.
fn summaries_from_labels(labels: &[usize], dataset: &Dataset, h_hat: usize) -> Vec<ClusterSummary> {
    let mut word_counts: Vec<std::collections::BTreeMap<usize, u64>> =
        vec![Default::default(); h_hat];
    let mut vendor_counts: Vec<std::collections::BTreeMap<usize, u64>> =
        vec![Default::default(); h_hat];
    let mut times: Vec<Vec<f64>> = vec![Vec::new(); h_hat];
    for (txn, &label) in dataset.stream.transactions.iter().zip(labels) {
        for (&w, &c) in &txn.content {
            *word_counts[label].entry(w).or_insert(0) += c as u64;
        }
        *vendor_counts[label].entry(txn.vendor_id).or_insert(0) += 1;
        times[label].push(txn.time);
    }
    (0..h_hat)
        .map(|h| {
            let mut words: Vec<(usize, u64)> =
                word_counts[h].iter().map(|(&w, &c)| (w, c)).collect();
            words.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
            let top_words = words
                .into_iter()
                .take(15)
                .filter_map(|(w, c)| dataset.vocabulary.word(w).map(|s| (s.to_string(), c)))
                .collect();
            let mut vendors: Vec<(usize, u64)> =
                vendor_counts[h].iter().map(|(&v, &c)| (v, c)).collect();
            vendors.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
            let vendor_histogram = vendors
                .into_iter()
                .filter_map(|(v, c)| dataset.vendors.name(v).map(|s| (s.to_string(), c)))
                .collect();
            ClusterSummary {
                size: times[h].len(),
                event_times: times[h].clone(),
                kernel_weights: Vec::new(),
                top_words,
                vendor_histogram,
                intensity: Vec::new(),
            }
        })
        .collect()
}

/// The eval command's JSON output: per-sequence reports plus the mean row
/// in aggregate mode.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EvalOutput {
    pub per_sequence: Vec<MetricsReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mean: Option<AggregateReport>,
}

fn csv_cell(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.6}")).unwrap_or_default()
}

fn report_csv(reports: &[MetricsReport], mean: Option<&AggregateReport>) -> String {
    let mut out = String::from("sequence,ars,nmi,v_score,h_score,silhouette,c_v,h_hat\n");
    for (i, r) in reports.iter().enumerate() {
        out.push_str(&format!(
            "{i},{},{},{},{},{},{},{}\n",
            csv_cell(r.ars),
            csv_cell(r.nmi),
            csv_cell(r.v_score),
            csv_cell(r.h_score),
            csv_cell(r.silhouette),
            csv_cell(r.c_v),
            r.h_hat
        ));
    }
    if let Some(m) = mean {
        out.push_str(&format!(
            "mean,{},{},{},{},{},{},{}\n",
            csv_cell(m.ars),
            csv_cell(m.nmi),
            csv_cell(m.v_score),
            csv_cell(m.h_score),
            csv_cell(m.silhouette),
            csv_cell(m.c_v),
            m.mean_h_hat
        ));
    }
    out
}

pub fn cmd_eval(args: &EvalArgs) -> Result<EvalOutput> {
    if args.labels.len() != args.stream.len() {
        return Err(Error::invalid(format!(
            "{} labels files vs {} stream files",
            args.labels.len(),
            args.stream.len()
        )));
    }
    let mut reports = Vec::new();
    for (labels_path, stream_path) in args.labels.iter().zip(&args.stream) {
        let dataset = ingest_stream(stream_path, OriginPolicy::FirstEvent)?;
        let mut result = load_labels(labels_path)?;
        if result.labels.len() != dataset.stream.len() {
            return Err(Error::invalid(format!(
                "{}: {} labels vs {} events in {}",
                labels_path.display(),
                result.labels.len(),
                dataset.stream.len(),
                stream_path.display(),
            )));
        }
        if result.clusters.is_empty() {
            result.clusters = summaries_from_labels(&result.labels, &dataset, result.h_hat);
        }
        reports.push(evaluation::report(&result, &dataset)?);
    }

    let mean = if args.aggregate {
        Some(evaluation::aggregate(&reports))
    } else {
        None
    };
    let output = EvalOutput {
        per_sequence: reports,
        mean,
    };
    fs::write(
        &args.out,
        serde_json::to_string_pretty(&output).expect("report serializes"),
    )?;
    fs::write(
        args.out.with_extension("csv"),
        report_csv(&output.per_sequence, output.mean.as_ref()),
    )?;
    Ok(output)
}

/// One model variant in the benchmark comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    /// Time + content + vendor.
    Full,
    /// Vendor factor off (the time+content baseline).
    VendorAblated,
    /// Time factor and vendor factor off.
    ContentOnly,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Full, Variant::VendorAblated, Variant::ContentOnly];

    pub fn label(self) -> &'static str {
        match self {
            Variant::Full => "full",
            Variant::VendorAblated => "vendor-ablated",
            Variant::ContentOnly => "content-only",
        }
    }

    fn apply(self, config: &mut RunConfig) {
        match self {
            Variant::Full => {}
            Variant::VendorAblated => config.fit.smc.ablation.use_vendor = false,
            Variant::ContentOnly => {
                config.fit.smc.ablation.use_vendor = false;
                config.fit.smc.ablation.use_time = false;
            }
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VariantSummary {
    pub variant: String,
    pub ars_mean: f64,
    pub ars_sd: f64,
    pub nmi_mean: f64,
    pub nmi_sd: f64,
    pub v_mean: f64,
    pub h_mean: f64,
    pub h_hat_mean: f64,
    /// Per-seed NMI values, for paired comparisons.
    pub nmi_per_seed: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BenchmarkSummary {
    pub scenario: String,
    pub seeds: u64,
    pub variants: Vec<VariantSummary>,
}

impl std::fmt::Display for BenchmarkSummary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "scenario {} over {} seeds (mean +/- sd)",
            self.scenario, self.seeds
        )?;
        writeln!(
            f,
            "{:<16} {:>16} {:>16} {:>8} {:>8} {:>6}",
            "variant", "ARS", "NMI", "V", "H", "H_hat"
        )?;
        for v in &self.variants {
            writeln!(
                f,
                "{:<16} {:>7.4}+/-{:<6.4} {:>7.4}+/-{:<6.4} {:>8.4} {:>8.4} {:>6.1}",
                v.variant,
                v.ars_mean,
                v.ars_sd,
                v.nmi_mean,
                v.nmi_sd,
                v.v_mean,
                v.h_mean,
                v.h_hat_mean
            )?;
        }
        Ok(())
    }
}

fn mean_sd(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() < 2 {
        return (mean, 0.0);
    }
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Generates the scenario once per seed, fits every variant on the same
/// stream, and scores each against the truth labels.
///
/// Without `--config`, each scenario uses its companion fit settings
/// ([`scenario_fit_config`]); an explicit config overrides them.
pub fn cmd_benchmark(args: &BenchmarkArgs) -> Result<BenchmarkSummary> {
    let mut base = RunConfig::load(args.config.as_deref())?;
    if args.config.is_none() {
        base.fit = scenario_fit_config(&args.scenario)?;
    }
    let scenario = make_scenario(&args.scenario)?;

    let runs: Vec<Result<Vec<MetricsReport>>> = (0..args.seeds)
        .into_par_iter()
        .map(|i| {
            let seed = args.seed + i;
            let mut generator = scenario.clone();
            generator.seed = seed;
            if let Some(events) = args.events {
                generator.num_events = events;
            }
            let generated = generate(&generator)?;
            Variant::ALL
                .iter()
                .map(|variant| {
                    let mut config = base.clone();
                    config.fit.smc.seed = seed;
                    if let Some(p) = args.particles {
                        config.fit.smc.num_particles = p;
                    }
                    variant.apply(&mut config);
                    config.validate()?;
                    let result = fit_sequence(&generated.dataset, &config.fit)?;
                    evaluation::report(&result, &generated.dataset)
                })
                .collect()
        })
        .collect();

    let mut per_variant: Vec<Vec<MetricsReport>> = vec![Vec::new(); Variant::ALL.len()];
    for run in runs {
        for (slot, report) in run?.into_iter().enumerate() {
            per_variant[slot].push(report);
        }
    }

    let variants = Variant::ALL
        .iter()
        .zip(per_variant)
        .map(|(variant, reports)| {
            let ars: Vec<f64> = reports.iter().filter_map(|r| r.ars).collect();
            let nmi: Vec<f64> = reports.iter().filter_map(|r| r.nmi).collect();
            let v: Vec<f64> = reports.iter().filter_map(|r| r.v_score).collect();
            let h: Vec<f64> = reports.iter().filter_map(|r| r.h_score).collect();
            let h_hat: Vec<f64> = reports.iter().map(|r| r.h_hat as f64).collect();
            let (ars_mean, ars_sd) = mean_sd(&ars);
            let (nmi_mean, nmi_sd) = mean_sd(&nmi);
            VariantSummary {
                variant: variant.label().to_string(),
                ars_mean,
                ars_sd,
                nmi_mean,
                nmi_sd,
                v_mean: mean_sd(&v).0,
                h_mean: mean_sd(&h).0,
                h_hat_mean: mean_sd(&h_hat).0,
                nmi_per_seed: nmi,
            }
        })
        .collect();

    Ok(BenchmarkSummary {
        scenario: args.scenario.clone(),
        seeds: args.seeds,
        variants,
    })
}

/// Writes `reports` as the eval CSV schema; used by examples and tests.
pub fn write_report_csv(
    reports: &[MetricsReport],
    mean: Option<&AggregateReport>,
    path: &Path,
) -> Result<()> {
    let mut file = fs::File::create(path)?;
    file.write_all(report_csv(reports, mean).as_bytes())?;
    Ok(())
}
