//! End-to-end command tests: the simulate -> fit -> eval pipeline through
//! the same entry points the binary uses, plus exit-code mapping.

use std::fs;
use std::path::PathBuf;

use demix::cli::{
    cmd_benchmark, cmd_eval, cmd_fit, cmd_simulate, BenchmarkArgs, EvalArgs, FitArgs, SimulateArgs,
};
use demix::config::RunConfig;
use demix::Error;

fn simulate_args(out: PathBuf, scenario: &str, seed: u64) -> SimulateArgs {
    SimulateArgs {
        config: None,
        scenario: Some(scenario.to_string()),
        out,
        seed: Some(seed),
        events: None,
    }
}

fn fit_args(stream: PathBuf, out_dir: PathBuf, seed: u64) -> FitArgs {
    FitArgs {
        config: None,
        stream,
        out_dir,
        seed: Some(seed),
        particles: None,
        ablate_vendor: false,
        ablate_content: false,
        ablate_time: false,
        stopwords: None,
    }
}

#[test]
fn simulate_fit_eval_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let stream = dir.path().join("stream.jsonl");
    let (stream_path, sidecar) =
        cmd_simulate(&simulate_args(stream.clone(), "separable", 3)).unwrap();
    assert_eq!(stream_path, stream);
    assert!(sidecar.exists());
    assert_eq!(fs::read_to_string(&stream).unwrap().lines().count(), 200);

    let fit_dir = dir.path().join("fit");
    let result = cmd_fit(&fit_args(stream.clone(), fit_dir.clone(), 3)).unwrap();
    assert_eq!(result.labels.len(), 200);
    assert!(fit_dir.join("result.json").exists());
    assert!(fit_dir.join("labels.json").exists());
    let trace = fs::read_to_string(fit_dir.join("trace.csv")).unwrap();
    assert!(trace.starts_with("time,cluster_0"));
    assert!(trace.lines().count() > 2);

    let report_path = dir.path().join("report.json");
    let output = cmd_eval(&EvalArgs {
        labels: vec![fit_dir.join("result.json")],
        stream: vec![stream],
        out: report_path.clone(),
        aggregate: false,
    })
    .unwrap();
    assert_eq!(output.per_sequence.len(), 1);
    let report = &output.per_sequence[0];
    assert!(report.ars.unwrap() > 0.8, "ARS {:?}", report.ars);
    assert!(report.silhouette.is_some());
    assert!(report.c_v.is_some());
    assert!(report_path.exists());
    assert!(report_path.with_extension("csv").exists());
}

#[test]
fn eval_accepts_bare_label_arrays_and_aggregates() {
    let dir = tempfile::tempdir().unwrap();
    let mut streams = Vec::new();
    let mut labels = Vec::new();
    for (i, seed) in [5u64, 6, 8].iter().enumerate() {
        let stream = dir.path().join(format!("s{i}.jsonl"));
        cmd_simulate(&simulate_args(stream.clone(), "separable", *seed)).unwrap();
        // perfect labels straight from the truth sidecar stream
        let truth_labels: Vec<usize> = fs::read_to_string(&stream)
            .unwrap()
            .lines()
            .map(|l| {
                serde_json::from_str::<serde_json::Value>(l).unwrap()["truth"]
                    .as_u64()
                    .unwrap() as usize
            })
            .collect();
        let labels_path = dir.path().join(format!("l{i}.json"));
        fs::write(&labels_path, serde_json::to_string(&truth_labels).unwrap()).unwrap();
        streams.push(stream);
        labels.push(labels_path);
    }
    let out = dir.path().join("agg.json");
    let output = cmd_eval(&EvalArgs {
        labels,
        stream: streams,
        out: out.clone(),
        aggregate: true,
    })
    .unwrap();
    assert_eq!(output.per_sequence.len(), 3);
    for r in &output.per_sequence {
        assert_eq!(r.ars, Some(1.0));
        assert_eq!(r.h_score, Some(1.0));
    }
    let mean = output.mean.unwrap();
    assert_eq!(mean.ars, Some(1.0));
    assert_eq!(mean.sequences, 3);
    let csv = fs::read_to_string(out.with_extension("csv")).unwrap();
    assert_eq!(csv.lines().count(), 5); // header + 3 sequences + mean
    assert!(csv.lines().last().unwrap().starts_with("mean,"));
}

#[test]
fn eval_rejects_mismatched_lengths() {
    let dir = tempfile::tempdir().unwrap();
    let stream = dir.path().join("s.jsonl");
    cmd_simulate(&simulate_args(stream.clone(), "separable", 1)).unwrap();
    let labels_path = dir.path().join("short.json");
    fs::write(&labels_path, "[0, 1, 0]").unwrap();
    let err = cmd_eval(&EvalArgs {
        labels: vec![labels_path],
        stream: vec![stream],
        out: dir.path().join("r.json"),
        aggregate: false,
    })
    .unwrap_err();
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn simulate_rejects_zero_events_with_validation_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let mut args = simulate_args(dir.path().join("x.jsonl"), "separable", 0);
    args.events = Some(0);
    let err = cmd_simulate(&args).unwrap_err();
    assert!(matches!(err, Error::Config(_)));
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn fit_missing_input_maps_to_data_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let err = cmd_fit(&fit_args(
        dir.path().join("missing.jsonl"),
        dir.path().join("out"),
        0,
    ))
    .unwrap_err();
    assert_eq!(err.exit_code(), 3);
}

#[test]
fn ablation_flags_change_the_fit() {
    let dir = tempfile::tempdir().unwrap();
    let stream = dir.path().join("s.jsonl");
    cmd_simulate(&simulate_args(stream.clone(), "vendor-only", 2)).unwrap();

    let full = cmd_fit(&fit_args(stream.clone(), dir.path().join("full"), 2)).unwrap();
    let mut ablated_args = fit_args(stream, dir.path().join("ablated"), 2);
    ablated_args.ablate_vendor = true;
    let ablated = cmd_fit(&ablated_args).unwrap();
    assert_ne!(full.labels, ablated.labels);
}

#[test]
fn stopword_file_drops_tokens() {
    let dir = tempfile::tempdir().unwrap();
    let stream = dir.path().join("s.jsonl");
    fs::write(
        &stream,
        concat!(
            "{\"ts\":\"2019-01-01T00:00:00Z\",\"anon_id\":\"x\",\"vendor\":\"v\",\"title\":\"alpha beta\",\"comment\":\"\"}\n",
            "{\"ts\":\"2019-01-02T00:00:00Z\",\"anon_id\":\"x\",\"vendor\":\"v\",\"title\":\"beta gamma\",\"comment\":\"\"}\n",
        ),
    )
    .unwrap();
    let stop = dir.path().join("stop.txt");
    fs::write(&stop, "beta\n").unwrap();

    let mut args = fit_args(stream, dir.path().join("out"), 0);
    args.stopwords = Some(stop);
    let result = cmd_fit(&args).unwrap();
    let words: Vec<String> = result
        .clusters
        .iter()
        .flat_map(|c| c.top_words.iter().map(|(w, _)| w.clone()))
        .collect();
    assert!(words.iter().any(|w| w == "alpha"));
    assert!(!words.iter().any(|w| w == "beta"));
}

#[test]
fn benchmark_smoke_run_is_fast_and_ordered() {
    let start = std::time::Instant::now();
    let summary = cmd_benchmark(&BenchmarkArgs {
        config: None,
        scenario: "separable".to_string(),
        seeds: 1,
        seed: 0,
        particles: None,
        events: Some(200),
    })
    .unwrap();
    assert!(start.elapsed().as_secs() < 60, "smoke run exceeded 60 s");
    assert_eq!(summary.variants.len(), 3);
    let text = summary.to_string();
    assert!(text.contains("full"));
    assert!(text.contains("vendor-ablated"));
    assert!(text.contains("content-only"));
}

#[test]
fn config_round_trip_through_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("config.json");
    fs::write(
        &path,
        r#"{"fit": {"theta0": 0.25, "smc": {"num_particles": 5, "seed": 9}}}"#,
    )
    .unwrap();
    let loaded = RunConfig::load(Some(&path)).unwrap();
    let normalized = loaded.to_normalized_json();
    fs::write(&path, &normalized).unwrap();
    let reloaded = RunConfig::load(Some(&path)).unwrap();
    assert_eq!(loaded, reloaded);
    assert_eq!(normalized, reloaded.to_normalized_json());
}

#[test]
fn binary_reports_exit_codes() {
    // exercised through the real binary to pin the process-level contract
    let bin = env!("CARGO_BIN_EXE_demix");
    let dir = tempfile::tempdir().unwrap();

    let out = std::process::Command::new(bin)
        .args(["fit", "--stream", "/nonexistent.jsonl", "--out-dir"])
        .arg(dir.path().join("o"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));

    let bad_config = dir.path().join("bad.json");
    fs::write(&bad_config, r#"{"fit": {"theta0": -3}}"#).unwrap();
    let out = std::process::Command::new(bin)
        .args(["simulate", "--config"])
        .arg(&bad_config)
        .args(["--out"])
        .arg(dir.path().join("s.jsonl"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    let stream = dir.path().join("ok.jsonl");
    let out = std::process::Command::new(bin)
        .args([
            "simulate",
            "--scenario",
            "separable",
            "--seed",
            "1",
            "--events",
            "40",
            "--out",
        ])
        .arg(&stream)
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(stream.exists());
}
