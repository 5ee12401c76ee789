//! End-to-end runs of the `smpg` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn smpg<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    Command::new(env!("CARGO_BIN_EXE_smpg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> &str {
    std::str::from_utf8(&out.stdout).unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn validate_reports_counts() {
    let out = smpg(["validate", path(&fixture("g2.json"))]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "{\"valid\":true,\"states\":2,\"actions\":2,\"transitions\":2}\n"
    );
}

#[test]
fn validate_rejects_sink() {
    let out = smpg(["validate", path(&fixture("sink.json"))]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["kind"], "SinkState");
    assert!(out.stdout.is_empty());
}

#[test]
fn validate_rejects_unreadable_json() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"states\": [").unwrap();
    let out = smpg(["validate", path(&bad)]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["kind"], "Parse");
}

#[test]
fn verify_star_on_two_state_game() {
    let out = smpg([
        "verify",
        "star",
        path(&fixture("g2.json")),
        "--beta",
        "1/2",
        "--start",
        "a",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "{\"pairs_checked\":1,\"violations\":[],\"value\":\"1/3\"}\n"
    );
}

#[test]
fn eval_both_criteria() {
    let g = fixture("g2.json");
    let s = fixture("g2_strategy.json");
    let out = smpg([
        "eval",
        path(&g),
        "--strategy",
        path(&s),
        "--criterion",
        "discounted",
        "--beta",
        "1/2",
    ]);
    assert_eq!(stdout(&out), "{\"a\":\"1/3\",\"b\":\"-1/3\"}\n");
    let out = smpg([
        "eval",
        path(&g),
        "--strategy",
        path(&s),
        "--criterion",
        "mean",
    ]);
    assert_eq!(stdout(&out), "{\"a\":\"0\",\"b\":\"0\"}\n");
}

#[test]
fn transform_chain_reaches_value_zero() {
    let dir = tempfile::tempdir().unwrap();
    let gb = dir.path().join("gb.json");
    let gp = dir.path().join("gp.json");
    let out = smpg([
        "transform",
        "beta-recurrent",
        path(&fixture("g2.json")),
        "--beta",
        "1/2",
        "--start",
        "a",
        "--out",
        path(&gb),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let gb_map = dir.path().join("gb.map.json");
    assert!(gb_map.exists());

    let out = smpg([
        "eval",
        path(&gb),
        "--strategy",
        path(&fixture("g2_strategy.json")),
        "--criterion",
        "mean",
    ]);
    assert_eq!(stdout(&out), "{\"a\":\"1/3\",\"b\":\"1/3\"}\n");

    let out = smpg(["verify", "star2", path(&gb), "--map", path(&gb_map)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "{\"pairs_checked\":1,\"violations\":[],\"value\":\"0\"}\n"
    );

    let out = smpg([
        "transform",
        "mirror",
        path(&gb),
        "--map",
        path(&gb_map),
        "--out",
        path(&gp),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let map: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("gp.map.json")).unwrap())
            .unwrap();
    assert_eq!(map["kind"], "mirror");
    assert_eq!(map["state_map"]["a"], serde_json::json!(["a1", "a2"]));

    let out = smpg([
        "solve",
        path(&gp),
        "--method",
        "oracle",
        "--criterion",
        "mean",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let sol = json(&out);
    let values = sol["values"].as_object().unwrap();
    assert_eq!(values.len(), 4);
    assert!(values.values().all(|v| v == "0"));
}

#[test]
fn mirror_needs_recurrent_map() {
    let dir = tempfile::tempdir().unwrap();
    let gb = dir.path().join("gb.json");
    let gp = dir.path().join("gp.json");
    smpg([
        "transform",
        "beta-recurrent",
        path(&fixture("g2.json")),
        "--beta",
        "1/2",
        "--start",
        "a",
        "--out",
        path(&gb),
    ]);
    smpg([
        "transform",
        "mirror",
        path(&gb),
        "--map",
        path(&dir.path().join("gb.map.json")),
        "--out",
        path(&gp),
    ]);
    let out = smpg([
        "transform",
        "mirror",
        path(&gp),
        "--map",
        path(&dir.path().join("gp.map.json")),
        "--out",
        path(&dir.path().join("x.json")),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["kind"], "WrongTransformKind");
}

#[test]
fn solve_methods_agree() {
    let g = fixture("g2.json");
    let a = smpg([
        "solve",
        path(&g),
        "--method",
        "si",
        "--criterion",
        "discounted",
        "--beta",
        "1/2",
    ]);
    let b = smpg([
        "solve",
        path(&g),
        "--method",
        "oracle",
        "--criterion",
        "discounted",
        "--beta",
        "1/2",
    ]);
    assert_eq!(json(&a)["values"], json(&b)["values"]);
    assert_eq!(
        json(&a)["values"],
        serde_json::json!({"a": "1/3", "b": "-1/3"})
    );
}

#[test]
fn recover_rebuilds_strategy() {
    let dir = tempfile::tempdir().unwrap();
    let values = dir.path().join("v.json");
    std::fs::write(&values, "{\"a\":\"1/3\",\"b\":\"-1/3\"}").unwrap();
    let out = smpg([
        "recover",
        path(&fixture("g2.json")),
        "--values",
        path(&values),
        "--criterion",
        "discounted",
        "--beta",
        "1/2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "{\"max\":{\"a\":\"X\"},\"min\":{\"b\":\"Y\"}}\n"
    );

    std::fs::write(&values, "{\"a\":\"1\",\"b\":\"-1/3\"}").unwrap();
    let out = smpg([
        "recover",
        path(&fixture("g2.json")),
        "--values",
        path(&values),
        "--criterion",
        "discounted",
        "--beta",
        "1/2",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn pipeline_artifacts_revalidate() {
    let dir = tempfile::tempdir().unwrap();
    let out = smpg([
        "pipeline",
        path(&fixture("g2.json")),
        "--beta",
        "1/2",
        "--out-dir",
        path(dir.path()),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let result = json(&out);
    assert_eq!(
        result["discounted_values"],
        serde_json::json!({"a": "1/3", "b": "-1/3"})
    );
    assert_eq!(
        result["solution"]["values"],
        serde_json::json!({"a": "0", "b": "0"})
    );

    let mut games = 0;
    for entry in std::fs::read_dir(dir.path()).unwrap() {
        let p = entry.unwrap().path();
        let name = p.file_name().unwrap().to_str().unwrap().to_owned();
        if name.ends_with("_recurrent.json") || name.ends_with("_mirror.json") {
            let out = smpg(["validate", path(&p)]);
            assert_eq!(out.status.code(), Some(0), "{name}");
            games += 1;
        }
    }
    assert_eq!(games, 4);
    assert!(dir.path().join("discounted_values.json").exists());
    assert!(dir.path().join("solution.json").exists());
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, "{\"states\":4,\"actions_per_state\":[1,2],\"transitions_per_action\":[1,3],\"reward_bound\":5,\"denominator_bound\":4,\"max_states_fraction\":\"1/2\",\"seed\":7}").unwrap();
    let (g1, g2) = (dir.path().join("g1.json"), dir.path().join("g2.json"));
    assert_eq!(
        smpg(["generate", "--config", path(&cfg), "--out", path(&g1)])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        smpg(["generate", "--config", path(&cfg), "--out", path(&g2)])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(std::fs::read(&g1).unwrap(), std::fs::read(&g2).unwrap());

    let runs: Vec<Vec<u8>> = (0..2)
        .map(|_| smpg(["pipeline", path(&g1), "--beta", "9/10"]).stdout)
        .collect();
    assert!(!runs[0].is_empty());
    assert_eq!(runs[0], runs[1]);

    let strategy = dir.path().join("s.json");
    let rec = smpg([
        "recover",
        path(&g1),
        "--values",
        path(&dir.path().join("none.json")),
        "--criterion",
        "discounted",
        "--beta",
        "1/2",
    ]);
    assert_eq!(rec.status.code(), Some(1));
    let sol = json(&smpg([
        "solve",
        path(&g1),
        "--method",
        "si",
        "--criterion",
        "discounted",
        "--beta",
        "1/2",
    ]));
    std::fs::write(&strategy, sol["strategy"].to_string()).unwrap();
    let sims: Vec<Vec<u8>> = (0..2)
        .map(|_| {
            smpg([
                "simulate",
                path(&g1),
                "--strategy",
                path(&strategy),
                "--start",
                "s0",
                "--horizon",
                "500",
                "--plays",
                "20",
                "--seed",
                "3",
            ])
            .stdout
        })
        .collect();
    assert_eq!(sims[0], sims[1]);
    let est = serde_json::from_slice::<Value>(&sims[0]).unwrap();
    assert!(est["estimate"].is_f64() && est["stderr"].is_f64());
}

#[test]
fn usage_errors_exit_two() {
    let g = fixture("g2.json");
    assert_eq!(
        smpg(["solve", path(&g), "--method", "si", "--criterion", "mean"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        smpg([
            "solve",
            path(&g),
            "--method",
            "oracle",
            "--criterion",
            "discounted"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(smpg(["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        smpg(["verify", "star", path(&g), "--beta", "0.5", "--start", "a"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn domain_errors_exit_one() {
    let g = fixture("g2.json");
    let out = smpg(["verify", "star", path(&g), "--beta", "3/2", "--start", "a"]);
    assert_eq!(out.status.code(), Some(1));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["kind"], "InvalidBeta");
    let out = smpg(["verify", "star", path(&g), "--beta", "1/2", "--start", "zz"]);
    assert_eq!(out.status.code(), Some(1));
    let out = smpg([
        "--cap",
        "1",
        "solve",
        path(&fixture("g2.json")),
        "--method",
        "oracle",
        "--criterion",
        "mean",
    ]);
    assert_eq!(out.status.code(), Some(0));
}
