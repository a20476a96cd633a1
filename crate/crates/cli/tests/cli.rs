// Copyright 2026 The irvlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn irvlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_irvlab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    assert!(o.status.success(), "failed: {}", String::from_utf8_lossy(&o.stderr));
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn sequence_of_worked_example() {
    let out = stdout(&irvlab(&["sequence", "--in", path_str(&fixture("worked_example.soi"))]));
    assert_eq!(out, "h,winner\n1,A\n2,B\n3,C\n");
    assert!(out.trim_end().ends_with("3,C"));
}

#[test]
fn bounds_at_five() {
    let out = stdout(&irvlab(&["bounds", "--k", "5"]));
    let nums: Vec<&str> = out.lines().skip(1).map(|l| l.split(',').nth(1).unwrap()).collect();
    assert_eq!(nums, ["40", "55", "70"]);
}

#[test]
fn construct_round_trips_through_sequence() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("p.soi");
    stdout(&irvlab(&["construct", "--kind", "ctf", "--k", "4", "--sequence", "2,3,4", "--out", path_str(&p)]));
    let seq = stdout(&irvlab(&["sequence", "--in", path_str(&p)]));
    assert_eq!(seq, "h,winner\n1,2\n2,3\n3,4\n");

    let side: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("p.soi.json")).unwrap()).unwrap();
    assert_eq!(side["k"], 4);
    assert_eq!(side["voters"], 24);
    assert_eq!(side["sequence"], serde_json::json!([2, 3, 4]));
    assert_eq!(side["verified"], true);
    assert_eq!(side["tie_class"], "consequential-tie-free");
    assert_eq!(side["provenance"]["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn construct_every_kind() {
    let dir = tempfile::tempdir().unwrap();
    let cases: &[&[&str]] = &[
        &["--kind", "tie-free", "--k", "5", "--sequence", "4,3,4,5"],
        &["--kind", "single-peaked", "--k", "3"],
        &["--kind", "k-types", "--k", "6"],
        &["--kind", "full-ballot", "--k", "4", "--sequence", "6,7,8"],
        &["--kind", "min-length", "--k", "5", "--c", "1", "--sequence", "6,7,8,9,10", "--variant", "tie-free"],
    ];
    for (i, args) in cases.iter().enumerate() {
        let p = dir.path().join(format!("p{i}.soi"));
        let mut full = vec!["construct"];
        full.extend_from_slice(args);
        full.extend_from_slice(&["--out", path_str(&p)]);
        stdout(&irvlab(&full));
        let side: serde_json::Value =
            serde_json::from_str(&std::fs::read_to_string(format!("{}.json", p.display())).unwrap()).unwrap();
        assert_eq!(side["verified"], true, "{args:?}: {side}");
        assert!(irvlab(&["sequence", "--in", path_str(&p)]).status.success());
    }
}

#[test]
fn exit_codes() {
    assert_eq!(irvlab(&["sequence", "--in", "/definitely/not/here.soi"]).status.code(), Some(2));
    assert_eq!(irvlab(&["sequence", "--bogus"]).status.code(), Some(2));
    assert_eq!(irvlab(&["bounds"]).status.code(), Some(2));
    assert_eq!(
        irvlab(&["sequence", "--in", path_str(&fixture("worked_example.soi")), "--tie-break", "coin"]).status.code(),
        Some(2)
    );

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("q.soi");
    let infeasible =
        irvlab(&["construct", "--kind", "ctf", "--k", "4", "--sequence", "2,2,4", "--out", path_str(&out)]);
    assert_eq!(infeasible.status.code(), Some(1));
    assert!(!out.exists(), "nothing written on failure");

    let bad = dir.path().join("bad.soi");
    std::fs::write(&bad, "3\n1,A\n2,B\n3,C\n2,2,1\n2,1,9\n").unwrap();
    let o = irvlab(&["sequence", "--in", path_str(&bad)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));

    assert_eq!(irvlab(&["bounds", "--k", "1"]).status.code(), Some(1));
}

#[test]
fn tabulate_csv() {
    let out = stdout(&irvlab(&["tabulate", "--in", path_str(&fixture("worked_example.soi")), "--length", "4"]));
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("h,round,candidate,tally,eliminated_flag,exhausted_after"));
    assert_eq!(lines.next(), Some("4,1,A,7,0,0"));
    assert!(out.contains("4,1,D,5,1,0"));
    assert!(out.trim_end().ends_with("4,3,C,10,0,14"));
}

#[test]
fn classify_reports_a_class() {
    let out = stdout(&irvlab(&["classify", "--in", path_str(&fixture("worked_example.soi"))]));
    assert!(out.starts_with("tie_class,"));
}

#[test]
fn simulations_are_reproducible_and_thread_independent() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str, threads: &str, sub: &str| {
        let p = dir.path().join(name);
        let args = [
            "--threads",
            threads,
            "simulate",
            sub,
            "--k-max",
            "6",
            "--trials",
            "40",
            "--seed",
            "11",
            "--kind",
            "euclidean",
            "--ballots",
            "partial",
            "--out",
            path_str(&p),
        ];
        stdout(&irvlab(&args));
        std::fs::read(&p).unwrap()
    };
    for sub in ["heatmap", "winners"] {
        let a = run(&format!("{sub}-a.csv"), "1", sub);
        let b = run(&format!("{sub}-b.csv"), "4", sub);
        assert_eq!(a, b);
    }
    let heat = std::fs::read_to_string(dir.path().join("heatmap-a.csv")).unwrap();
    assert!(heat.starts_with("k,h,probability,trials\n"));
    let wins = std::fs::read_to_string(dir.path().join("winners-a.csv")).unwrap();
    assert!(wins.starts_with("k,mean,std,max,trials,kind,ballots\n"));
    assert!(wins.contains(",euclidean,partial"));
    let side: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("heatmap-a.csv.json")).unwrap()).unwrap();
    assert_eq!(side["provenance"]["seed"], 11);
}

#[test]
fn resample_footnote_profile() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("f.soi");
    std::fs::write(&p, "3\n1,A\n2,B\n3,C\n3003,3003,3\n1000,1\n1002,2,1\n1001,3,1\n").unwrap();
    let out = dir.path().join("r.csv");
    let args = ["resample", "--in", path_str(&p), "--trials", "2000", "--seed", "5", "--out", path_str(&out)];
    stdout(&irvlab(&args));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("h,candidate,frequency,actual_winner_flag\n"));
    let a_at_2: f64 =
        text.lines().find(|l| l.starts_with("2,A,")).and_then(|l| l.split(',').nth(2)).unwrap().parse().unwrap();
    assert!((a_at_2 - 2.0 / 3.0).abs() < 0.04, "{a_at_2}");
    assert!(text.contains("2,B,") && text.lines().any(|l| l.starts_with("2,B,") && l.ends_with(",1")));
    // Same seed, same bytes.
    let out2 = dir.path().join("r2.csv");
    stdout(&irvlab(&["resample", "--in", path_str(&p), "--trials", "2000", "--seed", "5", "--out", path_str(&out2)]));
    assert_eq!(text, std::fs::read_to_string(&out2).unwrap());
}

#[test]
fn euclid_cells() {
    let dir = tempfile::tempdir().unwrap();
    let cells = dir.path().join("cells.csv");
    let out = stdout(&irvlab(&["euclid", "--positions", "0,1/2,0.9", "--out", path_str(&cells)]));
    assert_eq!(out, "h,winner\n1,2\n2,2\n");
    let text = std::fs::read_to_string(&cells).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert!(text.contains("0,1/4,1/4,"));
    assert_eq!(irvlab(&["euclid", "--positions", "0,x"]).status.code(), Some(2));
}

#[test]
fn restrict_checks() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("sp.soi");
    std::fs::write(&p, "3\n1,A\n2,B\n3,C\n4,4,3\n2,1,2,3\n1,2,3,1\n1,3,2\n").unwrap();
    let out = stdout(&irvlab(&["restrict", "--in", path_str(&p), "--axis", "1,2,3", "--find-axis"]));
    assert!(out.contains("single_peaked_on_axis,true"));
    assert!(out.contains("axis,A B C"));
    let out = stdout(&irvlab(&["restrict", "--in", path_str(&p), "--crossing-order", "0,1,2,3"]));
    assert_eq!(out, "single_crossing_in_order,true\n");
    assert_eq!(irvlab(&["restrict", "--in", path_str(&p)]).status.code(), Some(2));
}

#[test]
fn lp_search_k4() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("lp.soi");
    stdout(&irvlab(&["lp-search", "--k", "4", "--out", path_str(&p)]));
    let side: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("lp.soi.json")).unwrap()).unwrap();
    assert_eq!(side["verified"], true);
    assert!(side["voters"].as_u64().unwrap() <= 60);
    let seq = stdout(&irvlab(&["sequence", "--in", path_str(&p)]));
    assert_eq!(seq.lines().skip(1).map(|l| l.split(',').nth(1).unwrap()).collect::<Vec<_>>().len(), 3);
    assert_eq!(irvlab(&["lp-search", "--k", "3", "--out", path_str(&p)]).status.code(), Some(1));
}

#[test]
fn preflib_parse_summarize_audit() {
    let dir = tempfile::tempdir().unwrap();
    let fam = dir.path().join("00001");
    std::fs::create_dir(&fam).unwrap();
    std::fs::copy(fixture("worked_example.soi"), fam.join("00001-00000001.soi")).unwrap();
    std::fs::write(fam.join("00001-00000002.toi"), "3\n1,A\n2,B\n3,C\n6,6,3\n3,1,2\n2,{2,3},1\n1,3\n").unwrap();

    let re = dir.path().join("re.soi");
    let out = stdout(&irvlab(&[
        "preflib",
        "parse",
        "--in",
        path_str(&fixture("worked_example.soi")),
        "--out",
        path_str(&re),
    ]));
    assert!(out.contains("voters,24"));
    assert_eq!(stdout(&irvlab(&["sequence", "--in", path_str(&re)])), "h,winner\n1,A\n2,B\n3,C\n");

    let sum = stdout(&irvlab(&["preflib", "summarize", path_str(dir.path().join("00001").as_path())]));
    assert_eq!(sum, "source_tag,elections,k_min,k_max,h_min,h_max,ballots_min,ballots_max\n00001,2,3,4,2,4,6,24\n");

    let rows = dir.path().join("audit.csv");
    let table = stdout(&irvlab(&["preflib", "audit", path_str(&fam), "--out", path_str(&rows)]));
    assert!(table.starts_with("statistic,observed,reference\nelections,2,168\n"));
    let csv = std::fs::read_to_string(&rows).unwrap();
    assert!(csv.contains("00001-00000001.soi,00001,4,4,24,3,A|B|C|C"), "{csv}");
}

#[test]
fn fetch_rejects_bad_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("manifest.txt");
    std::fs::write(&m, "../escape.soi\n").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_irvlab"))
        .args(["preflib", "fetch", "--base-url", "http://127.0.0.1:9", "--manifest", path_str(&m)])
        .env("IRVLAB_CACHE", dir.path().join("cache"))
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(irvlab(&["preflib", "fetch", "--base-url", "x", "--manifest", "/no/such"]).status.code(), Some(2));
}
