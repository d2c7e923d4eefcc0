use std::path::Path;
use std::process::{Command, Output};

use cstar_info::channel::{Capacity, CodingExperiment};
use cstar_info::information::{AepSweep, Code};
use cstar_info::Channel64;
use cstar_info_cli::output::{read_csv, read_json};
use cstar_info_cli::run::{ChannelInfoReport, CodeReport, LlnReport};
use cstar_info_cli::ExperimentConfig;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cstar-info"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = cli(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn result<T: serde::de::DeserializeOwned>(text: &str) -> T {
    serde_json::from_value(read_json(text).unwrap().result).unwrap()
}

#[test]
fn aep_example_has_seventeen_rows() {
    let text = stdout(&["aep", "--p", "0.9,0.1", "--eps", "0.2", "--n", "4:20"]);
    let sweep: AepSweep = result(&text);
    assert_eq!(sweep.reports.len(), 17);
    for r in &sweep.reports {
        assert!(r.count_ok);
        if sweep.threshold.is_some_and(|t| r.n >= t) {
            assert!(r.mass_ok);
        }
    }
    let csv = read_csv(&stdout(&["aep", "--p", "0.9,0.1", "--eps", "0.2", "--n", "4:20", "--format", "csv"])).unwrap();
    assert_eq!(csv.rows.len(), 17);
    for (row, r) in csv.rows.iter().zip(&sweep.reports) {
        assert_eq!(row[3].parse::<u64>().unwrap(), r.count);
        assert_eq!(row[4].parse::<f64>().unwrap(), r.prob_mass);
    }
}

#[test]
fn capacity_example() {
    let cap: Capacity<f64> = result(&stdout(&["capacity", "--channel", "bsc(0.11)"]));
    assert!((cap.capacity - 0.5).abs() <= 1e-4, "{}", cap.capacity);
}

#[test]
fn huffman_example() {
    let r: CodeReport = result(&stdout(&["code", "--state", "0.5,0.25,0.25", "--huffman"]));
    assert_eq!(r.lengths, vec![1, 2, 2]);
    assert_eq!(r.metrics.unwrap().expected_length, 1.5);
    assert_eq!(r.code, Code::from_strings(2, &["0", "10", "11"]).unwrap());
}

#[test]
fn code_from_lengths_and_words() {
    let r: CodeReport = result(&stdout(&["code", "--state", "0.4,0.3,0.2,0.1", "--lengths", "1,2,3,3"]));
    assert!(r.prefix_free && r.kraft_ok);
    let r: CodeReport = result(&stdout(&["code", "--state", "0.5,0.5", "--words", "0,01"]));
    assert!(!r.prefix_free && r.metrics.is_none());
    let out = cli(&["code", "--state", "0.5,0.5", "--lengths", "1,1,1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn channel_info_classifies() {
    let r: ChannelInfoReport = result(&stdout(&["channel-info", "--channel", "useless(0.3,0.7)"]));
    assert!(r.classification.is_useless() && r.rank == 1);
    assert!(r.metrics.i_xy.abs() <= 1e-12);
    let r: ChannelInfoReport = result(&stdout(&["channel-info", "--channel", "identity(3)"]));
    assert!(r.classification.is_lossless());
    assert!((r.metrics.i_xy - 3f64.log2()).abs() <= 1e-12);
}

#[test]
fn lln_rows() {
    let r: LlnReport = result(&stdout(&["lln", "--state", "0.7,0.3", "--n", "1:50:7", "--moments", "2"]));
    assert_eq!(r.rows.len(), 8);
    for row in &r.rows {
        assert!((row.moments[0].1 * row.n as f64 - 0.21).abs() <= 1e-12);
        assert!(row.chebyshev_tail <= row.chebyshev_bound + 1e-12);
    }
}

#[test]
fn coding_experiment_echoes_seed_and_is_thread_independent() {
    let args = [
        "coding-experiment", "--channel", "bsc(0.05)", "--rate", "0.4", "--ks", "4,6", "--trials", "4",
        "--seed", "7",
    ];
    let one = Command::new(env!("CARGO_BIN_EXE_cstar-info"))
        .args(args)
        .env("CSTAR_INFO_THREADS", "1")
        .output()
        .unwrap();
    let many = stdout(&args);
    assert_eq!(String::from_utf8(one.stdout).unwrap(), many);
    let doc = read_json(&many).unwrap();
    assert_eq!(doc.config.seed, 7);
    let exp: CodingExperiment = serde_json::from_value(doc.result).unwrap();
    assert!(exp.results.iter().all(|r| r.seed == 7));
    assert_eq!(exp.trials.len(), 8);
}

#[test]
fn coding_experiment_refuses_useless_channel() {
    let out = cli(&["coding-experiment", "--channel", "useless(0.5,0.5)", "--rate", "0.5"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn rerunning_config_reproduces_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_path = dir.path().join("exp.toml");
    let out_path = dir.path().join("out.csv");
    std::fs::write(
        &cfg_path,
        format!(
            "command = \"coding-experiment\"\nseed = 3\nformat = \"csv\"\noutput_path = {:?}\n\n[params]\nchannel = \"bsc(0.1)\"\nrate = 0.5\nks = \"4,6\"\ntrials = 5\n",
            out_path.to_str().unwrap()
        ),
    )
    .unwrap();
    stdout(&["--config", cfg_path.to_str().unwrap()]);
    let first = std::fs::read(&out_path).unwrap();
    stdout(&["--config", cfg_path.to_str().unwrap()]);
    assert_eq!(first, std::fs::read(&out_path).unwrap());

    // the embedded config reruns to the same artifact
    let doc = read_csv(std::str::from_utf8(&first).unwrap()).unwrap();
    let json_cfg = dir.path().join("again.json");
    std::fs::write(&json_cfg, serde_json::to_string(&doc.config).unwrap()).unwrap();
    std::fs::remove_file(&out_path).unwrap();
    stdout(&["--config", json_cfg.to_str().unwrap()]);
    assert_eq!(first, std::fs::read(&out_path).unwrap());
}

#[test]
fn json_artifacts_round_trip() {
    for args in [
        vec!["aep", "--p", "0.6,0.3,0.1", "--n", "1:4"],
        vec!["capacity", "--channel", "bec(0.25)"],
        vec!["channel-info", "--channel", "bsc(0.2)", "--state", "0.3,0.7"],
        vec!["code", "--state", "0.2,0.2,0.6", "--huffman", "--alphabet", "3"],
        vec!["lln", "--state", "0.5,0.5", "--n", "1:5"],
    ] {
        let text = stdout(&args);
        let doc = read_json(&text).unwrap();
        assert_eq!(cstar_info_cli::run(&doc.config).unwrap(), text, "{args:?}");
        let cfg: ExperimentConfig = serde_json::from_str(&serde_json::to_string(&doc.config).unwrap()).unwrap();
        assert_eq!(cfg, doc.config);
    }
}

#[test]
fn channel_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z.json");
    let z = Channel64::from_rows(vec![vec![1.0, 0.0], vec![0.5, 0.5]]).unwrap();
    std::fs::write(&path, serde_json::to_string(&z).unwrap()).unwrap();
    let p = path.to_str().unwrap();
    let cap: Capacity<f64> = result(&stdout(&["capacity", "--channel", p]));
    assert!((cap.capacity - (1.25f64.log2())).abs() <= 1e-6);

    // too few iterations is a numeric failure
    let out = cli(&["capacity", "--channel", p, "--max-iter", "1"]);
    assert_eq!(out.status.code(), Some(3));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"], "numeric_failure");
}

#[test]
fn exit_codes() {
    let guard = cli(&["aep", "--p", "0.5,0.5", "--n", "25"]);
    assert_eq!(guard.status.code(), Some(2));
    let err: serde_json::Value = serde_json::from_slice(&guard.stderr).unwrap();
    assert_eq!(err["exit_code"], 2);
    assert!(cli(&["aep", "--p", "0.5,0.5", "--n", "25", "--guard-override", "25"]).status.success());

    assert_eq!(cli(&["aep", "--p", "0.5,0.6"]).status.code(), Some(1));
    assert_eq!(cli(&["capacity", "--channel", "bsc(1.5)"]).status.code(), Some(1));
    assert_eq!(cli(&["nonsense"]).status.code(), Some(1));
    assert_eq!(cli(&[]).status.code(), Some(1));
}

#[test]
fn strict_config_rejects_unknown_keys() {
    let dir = tempfile::tempdir().unwrap();
    for (name, body) in [
        ("a.toml", "command = \"aep\"\nextra = 1\n[params]\np = \"0.5,0.5\"\n"),
        ("b.toml", "command = \"aep\"\n[params]\np = \"0.5,0.5\"\nepsilon = 0.1\n"),
        ("c.json", "{\"command\":\"teleport\"}"),
        ("d.yaml", "command: aep\n"),
    ] {
        let path = dir.path().join(name);
        std::fs::write(&path, body).unwrap();
        let out = cli(&["--config", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(1), "{name}");
    }
    assert!(!Path::new("/definitely/missing.toml").exists());
    assert_eq!(cli(&["--config", "/definitely/missing.toml"]).status.code(), Some(1));
}
