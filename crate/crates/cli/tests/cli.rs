use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use nk_core::toolkit::{parse_instance, serialize_instance, serialize_td};
use nk_core::treedecomp::heuristic_td;
use tempfile::TempDir;

fn nk<P: AsRef<std::ffi::OsStr>>(args: &[P]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nk")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf-8 temp path")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn set_cover_example(dir: &TempDir) -> PathBuf {
    let p = dir.path().join("sc.nk");
    let o = nk(&["gen", "set-cover", "--n", "3", "--set", "0,1", "--set", "1,2", "-k", "2", "-o", path_str(&p)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "variant r1n\nexpected true\n");
    p
}

#[test]
fn solve_set_cover_with_brute_force() {
    let dir = TempDir::new().unwrap();
    let p = set_cover_example(&dir);
    let o = nk(&["solve", "-i", path_str(&p), "--variant", "r1n", "--algo", "brute"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("profit 3\nresult {"), "{out}");
    let json: serde_json::Value = serde_json::from_str(out.lines().nth(1).unwrap().strip_prefix("result ").unwrap()).unwrap();
    assert_eq!(json["profit"], 3);
    assert_eq!(json["exact"], true);
}

#[test]
fn every_algorithm_solves_the_set_cover_example() {
    let dir = TempDir::new().unwrap();
    let p = set_cover_example(&dir);
    for algo in ["auto", "brute", "twdp", "cc-det"] {
        let o = nk(&["solve", "-i", path_str(&p), "--variant", "r1n", "--algo", algo, "--mode", "decision"]);
        assert_eq!(o.status.code(), Some(0), "{algo}");
        assert!(stdout(&o).starts_with("profit 3\n"), "{algo}");
    }
}

#[test]
fn decision_false_exits_one() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("k0.nk");
    let o = nk(&["gen", "set-cover", "--n", "3", "--set", "0,1", "--set", "1,2", "-k", "0", "-o", path_str(&p)]);
    assert_eq!(stdout(&o), "variant r1n\nexpected false\n");
    let o = nk(&["solve", "-i", path_str(&p), "--variant", "r1n", "--mode", "decision"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("infeasible\n"));
}

#[test]
fn verify_over_budget_selection() {
    let dir = TempDir::new().unwrap();
    let inst = set_cover_example(&dir);
    let tight = dir.path().join("k1.nk");
    nk(&["gen", "set-cover", "--n", "3", "--set", "0,1", "--set", "1,2", "-k", "1", "-o", path_str(&tight)]);
    let bad = write(&dir, "bad.sol", "solution 4\npick 3\npick 4\npick 0\npick 1\n");
    let o = nk(&["verify", "-i", path_str(&tight), "-s", path_str(&bad), "--variant", "r1n"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("feasible false"));
    let good = write(&dir, "good.sol", "solution 5\npick 0\npick 1\npick 2\npick 3\npick 4\n");
    let o = nk(&["verify", "-i", path_str(&inst), "-s", path_str(&good), "--variant", "r1n"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("weight 2\nprofit 3\nfeasible true\n"));
}

#[test]
fn compare_agrees_on_random_instances() {
    let dir = TempDir::new().unwrap();
    let variants = ["h1n", "hall", "r1n", "rall"];
    for seed in 0..20u64 {
        let p = dir.path().join(format!("r{seed}.nk"));
        let n = (4 + seed % 5).to_string();
        let mut args = vec!["gen", "random", "--n", &n, "--edge-prob", "0.35", "--s", "8", "--seed"];
        let seed_s = seed.to_string();
        args.push(&seed_s);
        if seed % 2 == 1 {
            args.push("--directed");
        }
        args.extend(["-o", path_str(&p)]);
        assert_eq!(nk(&args).status.code(), Some(0));
        let variant = variants[seed as usize % 4];
        let o = nk(&["compare", "-i", path_str(&p), "--variant", variant, "--seed", &seed_s]);
        assert_eq!(o.status.code(), Some(0), "seed {seed}: {}", stdout(&o));
        assert!(stdout(&o).contains("agree"));
    }
}

#[test]
fn generated_files_round_trip() {
    let dir = TempDir::new().unwrap();
    let cases: &[&[&str]] = &[
        &["gen", "random", "--n", "7", "--directed", "--seed", "4"],
        &["gen", "clique", "--n", "4", "--edges", "0-1,1-2,0-2,2-3", "-k", "3"],
        &["gen", "cutting", "--n", "5", "--edge-prob", "0.5", "-k", "1", "-l", "2"],
        &["gen", "star", "--items", "2:3,2:3", "--s", "2"],
    ];
    for (i, args) in cases.iter().enumerate() {
        let o = nk(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        let text = stdout(&o);
        assert_eq!(serialize_instance(&parse_instance(&text).unwrap()), text);
        let p = write(&dir, &format!("g{i}.nk"), &text);
        assert_eq!(nk(&["solve", "-i", path_str(&p), "--variant", "r1n"]).status.code(), Some(0));
    }
    let o = nk(&["gen", "star", "--items", "2:3,2:3", "--s", "2"]);
    let p = write(&dir, "star.nk", &stdout(&o));
    let o = nk(&["solve", "-i", path_str(&p), "--variant", "r1n", "--algo", "twdp"]);
    assert!(stdout(&o).starts_with("profit 3\n"));
}

#[test]
fn solve_with_external_decomposition() {
    let dir = TempDir::new().unwrap();
    let o = nk(&["gen", "random", "--n", "9", "--edge-prob", "0.4", "--seed", "7"]);
    let text = stdout(&o);
    let inst = parse_instance(&text).unwrap();
    let p = write(&dir, "i.nk", &text);
    let td = write(&dir, "i.td", &serialize_td(&heuristic_td(inst.graph()), inst.num_vertices()));
    let with = nk(&["solve", "-i", path_str(&p), "--variant", "rall", "--algo", "twdp", "--td", path_str(&td)]);
    let without = nk(&["solve", "-i", path_str(&p), "--variant", "rall", "--algo", "brute"]);
    assert_eq!(with.status.code(), Some(0));
    assert_eq!(stdout(&with).lines().next(), stdout(&without).lines().next());
    let broken = write(&dir, "bad.td", "s td 1 1 9\nb 1 1\n");
    let o = nk(&["solve", "-i", path_str(&p), "--variant", "rall", "--algo", "twdp", "--td", path_str(&broken)]);
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.nk", "nk 1\ndirected 1\nn 2\nvertex 0 1 1\nvertex 1 1 1\nedge 0 9\nknapsack 1\ndemand 0\n");
    let o = nk(&["solve", "-i", path_str(&bad), "--variant", "r1n"]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 6: unknown vertex 9"));
    assert_eq!(nk(&["solve", "-i", "/nonexistent/x.nk", "--variant", "r1n"]).status.code(), Some(4));
    assert_eq!(nk(&["solve", "--variant", "r1n"]).status.code(), Some(2));
    assert_eq!(nk(&["frobnicate"]).status.code(), Some(2));
    let p = set_cover_example(&dir);
    let o = nk(&["solve", "-i", path_str(&p), "--variant", "rall", "--algo", "cc-rand"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(nk(&["bench", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn bench_prints_csv() {
    let o = nk(&["bench", "--suite", "trees"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("instance,algorithm,width_or_b,wall_time_us,value"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 4);
    for row in rows {
        let cols: Vec<&str> = row.split(',').collect();
        assert_eq!(cols.len(), 5);
        assert_eq!(cols[1], "twdp");
        assert_eq!(cols[2], "1");
        assert!(cols[3].parse::<u64>().is_ok() && cols[4].parse::<u64>().is_ok());
    }
}
