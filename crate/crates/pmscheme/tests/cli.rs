use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn pm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pmscheme"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn construct(dir: &Path, name: &str, args: &[&str]) -> String {
    let mut full = vec!["construct"];
    full.extend_from_slice(args);
    let o = pm(&full);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let path = dir.join(name);
    std::fs::write(&path, &o.stdout).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn agl11_check_both() {
    let dir = TempDir::new().unwrap();
    let f = construct(dir.path(), "agl11.json", &["--family", "agl11"]);
    let o = pm(&["check", "--file", &f, "--lambda", "4,2", "--method", "both"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "definition: yes, index 1\ndesign: yes, index 1\n");
    let o = pm(&["check", "--file", &f, "--lambda", "3,3", "--method", "both"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("definition: no"));
    assert!(stdout(&o).contains("design: no"));
}

#[test]
fn construct_check_round_trip_is_stable() {
    let dir = TempDir::new().unwrap();
    let cases = [
        (vec!["--family", "roundrobin", "--n", "5"], "4,1"),
        (vec!["--family", "hyperoval", "--a", "3"], "3,1,1"),
        (vec!["--family", "full", "--n", "4"], "2,2"),
    ];
    for (i, (args, lambda)) in cases.iter().enumerate() {
        let f = construct(dir.path(), &format!("{i}.json"), args);
        let a = pm(&["check", "--file", &f, "--lambda", lambda, "--method", "both"]);
        let b = pm(&["check", "--file", &f, "--lambda", lambda, "--method", "both"]);
        assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
        assert_eq!(a.stdout, b.stdout);
        let again = pm(&{
            let mut v = vec!["construct"];
            v.extend_from_slice(args);
            v
        });
        assert_eq!(std::fs::read(&f).unwrap(), again.stdout);
    }
}

#[test]
fn text_files_are_accepted() {
    let dir = TempDir::new().unwrap();
    let f = construct(dir.path(), "rr.txt", &["--family", "roundrobin", "--n", "3", "--text"]);
    assert!(std::fs::read_to_string(&f).unwrap().starts_with("1-"));
    let o = pm(&["check", "--file", &f, "--lambda", "2,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "definition: yes, index 1\n");
}

#[test]
fn dual_of_full_set() {
    let dir = TempDir::new().unwrap();
    let f = construct(dir.path(), "full_n3.json", &["--family", "full", "--n", "3"]);
    let o = pm(&["dual", "--file", &f]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "(3)\t15\n(2,1)\t0\n(1,1,1)\t0\n");
    let o = pm(&["dual", "--file", &f, "--json", "--inner"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["dual"]["3"], "15");
    assert_eq!(v["inner"]["2,1"], "6");
}

#[test]
fn table_n_minus_2_2() {
    let o = pm(&["table", "--pattern", "n-2,2", "--range", "4..30", "--index", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let last = stdout(&o).lines().last().unwrap().to_string();
    assert_eq!(last, "feasible n: 6, 9, 12, 15, 18, 21, 24, 27, 30");
}

#[test]
fn screen_exit_codes() {
    let o = pm(&["screen", "--lambda", "2,2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("known not to exist"));
    let o = pm(&["screen", "--lambda", "4,2,1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("not ruled out"));
}

#[test]
fn spectrum_formats() {
    let o = pm(&["spectrum", "--n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("-1/4") && s.contains("-1/2"));
    let o = pm(&["spectrum", "--n", "4", "--pq", "--json", "--threads", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["partitions"][0], "4");
    assert_eq!(v["valencies"][0], "48");
    assert_eq!(v["P"].as_array().unwrap().len(), 5);
    let o = pm(&["spectrum", "--n", "3", "--decimal"]);
    assert!(stdout(&o).contains("-0.250000"));
    let o = pm(&["spectrum", "--n", "3", "--decimal", "--json"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(pm(&["spectrum", "--n", "9"]).status.code(), Some(2));
}

#[test]
fn enumerate_counts() {
    let o = pm(&["enumerate", "--n", "3", "--spheres"]);
    assert_eq!(stdout(&o), "matchings of K_6: 15\n(3)\t8\n(2,1)\t6\n(1,1,1)\t1\n");
    let o = pm(&["enumerate", "--n", "2", "--list"]);
    assert_eq!(stdout(&o).lines().count(), 4);
}

#[test]
fn derive_at_an_edge() {
    let dir = TempDir::new().unwrap();
    let f = construct(dir.path(), "h.json", &["--family", "hyperoval", "--a", "3"]);
    let o = pm(&["derive", "--file", &f, "--at", "3,7"]);
    assert_eq!(o.status.code(), Some(0));
    let d = dir.path().join("d.json");
    std::fs::write(&d, &o.stdout).unwrap();
    let o = pm(&[
        "check",
        "--file",
        d.to_str().unwrap(),
        "--lambda",
        "3,1",
        "--method",
        "both",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("definition: yes, index 1"));
    assert_eq!(pm(&["derive", "--file", &f, "--at", "1,2,3"]).status.code(), Some(2));
}

#[test]
fn search_outcomes() {
    let o = pm(&["search", "--n", "3", "--lambda", "2,1", "--index", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "SAT");
    assert_eq!(v["solution"]["matchings"].as_array().unwrap().len(), 5);
    assert!(v["statistics"]["wall_time_ms"].is_u64());

    let o = pm(&["search", "--n", "4", "--lambda", "2,2", "--index", "1", "--force-base"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "UNSAT");
    assert!(v["solution"].is_null());

    let o = pm(&[
        "search",
        "--n",
        "4",
        "--lambda",
        "3,1",
        "--index",
        "1",
        "--enumerate-all",
        "--node-limit",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(3));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "ABORTED");
}

#[test]
fn search_flag_validation() {
    assert_eq!(
        pm(&["search", "--n", "6", "--lambda", "3,1,1,1", "--index", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        pm(&["search", "--n", "6", "--lambda", "3,1,1,1", "--index", "1", "--stretch"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        pm(&["search", "--n", "4", "--lambda", "3,1", "--index", "1", "--at", "1,2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        pm(&["search", "--n", "4", "--lambda", "3,2", "--index", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        pm(&["search", "--n", "4", "--lambda", "3,1", "--index", "0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn seeded_search() {
    let dir = TempDir::new().unwrap();
    // the members of a 1-factorisation of K8 through the edge 7-8 restrict to one matching of K6
    let seed = dir.path().join("seed.txt");
    std::fs::write(&seed, "1-4 2-6 3-5\n").unwrap();
    let f = seed.to_str().unwrap();
    let o = pm(&[
        "search", "--n", "4", "--lambda", "3,1", "--index", "1", "--seed", f, "--at", "7,8",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "SAT");
    assert_eq!(v["pins"].as_u64(), Some(15));
    let sol = &v["solution"]["matchings"];
    let want = serde_json::json!([[1, 4], [2, 6], [3, 5], [7, 8]]);
    assert!(sol.as_array().unwrap().contains(&want));
    // two matchings cannot both contain 7-8
    std::fs::write(&seed, "1-4 2-6 3-5\n1-2 3-4 5-6\n").unwrap();
    let o = pm(&[
        "search", "--n", "4", "--lambda", "3,1", "--index", "1", "--seed", f, "--at", "7,8",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn malformed_files_give_positions() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "1-2 3-4\n1-3 2-x\n").unwrap();
    let o = pm(&["check", "--file", bad.to_str().unwrap(), "--lambda", "1,1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2, position 7"), "{}", stderr(&o));
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"n\": 2,\n \"matchings\": [[[1,2],[3,4]]\n").unwrap();
    let o = pm(&["dual", "--file", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));
    let o = pm(&["check", "--file", "/nonexistent/x.json", "--lambda", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn construct_flag_validation() {
    assert_eq!(
        pm(&["construct", "--family", "hyperoval", "--n", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(pm(&["construct", "--family", "roundrobin"]).status.code(), Some(2));
    assert_eq!(
        pm(&["construct", "--family", "agl11", "--a", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        pm(&["construct", "--family", "hyperoval", "--a", "5"]).status.code(),
        Some(2)
    );
    assert_eq!(pm(&["bogus"]).status.code(), Some(2));
    assert_eq!(pm(&["--help"]).status.code(), Some(0));
}
