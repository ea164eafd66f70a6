use serde_json::Value;
use std::process::{Command, Output};

fn affgr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_affgr")).args(args).output().expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

#[test]
fn no_arguments_prints_usage() {
    let o = affgr(&[]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("usage: affgr"));
}

#[test]
fn list_names_every_suite() {
    let o = affgr(&["list"]);
    let names: Vec<String> = String::from_utf8(o.stdout).unwrap().lines().map(String::from).collect();
    assert_eq!(
        names,
        [
            "clifford", "signs", "pluecker-ideal", "divided-powers", "det-identity", "shuffle-span",
            "straighten", "kf", "fpoints", "tangent", "ndominance", "export-generators"
        ]
    );
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["frobnicate"][..],
        &["verify", "nope"],
        &["verify", "kf", "--n", "x"],
        &["verify", "kf", "--dim", "3"],
        &["verify", "signs", "--n", "99"],
        &["verify", "fpoints", "--p", "4"],
        &["verify", "fpoints", "--jordan", "2,1", "--dim", "4"],
        &["verify", "kf", "--format", "xml"],
    ] {
        let o = affgr(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(json(&o)["error"]["kind"].is_string(), "{args:?}");
    }
}

#[test]
fn help_prints_schema() {
    for args in [&["--help", "kf"][..], &["verify", "kf", "--help"]] {
        let o = affgr(args);
        assert_eq!(o.status.code(), Some(0));
        let v = json(&o);
        assert_eq!(v["command"], "verify kf");
        let flags: Vec<&str> = v["parameters"].as_array().unwrap().iter().map(|p| p["flag"].as_str().unwrap()).collect();
        assert!(flags.contains(&"--size") && flags.contains(&"--seed"));
    }
}

#[test]
fn clifford_report() {
    let o = affgr(&["verify", "clifford", "--n", "5", "--size", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "verify clifford");
    assert_eq!(v["parameters"]["n"], 5);
    assert_eq!(v["totals"]["failed"], 0);
    assert_eq!(v["totals"]["checks"], 8);
    assert_eq!(v["config_hash"].as_str().unwrap().len(), 64);
}

#[test]
fn reports_are_byte_identical() {
    let args = ["verify", "divided-powers", "--n", "4", "--seed", "17"];
    let a = affgr(&args);
    let b = affgr(&[&args[..], &["--jobs", "1"]].concat());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = affgr(&["verify", "divided-powers", "--n", "4", "--seed", "18"]);
    assert_ne!(json(&a)["config_hash"], json(&c)["config_hash"]);
}

#[test]
fn fpoints_j4_row() {
    let o = affgr(&["verify", "fpoints", "--p", "2", "--dim", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let row = v["table"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["jordan_type"] == "4" && r["k"] == "2")
        .unwrap()
        .clone();
    assert_eq!((row["gr"].as_str(), row["gt"].as_str(), row["st"].as_str()), (Some("35"), Some("1"), Some("1")));
}

#[test]
fn kf_lists_entries() {
    let o = affgr(&["verify", "kf", "--n", "2", "--size", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let last = v["checks"].as_array().unwrap().last().unwrap().clone();
    assert_eq!(last["name"], "n=2 size=4");
    assert!(last["witness"]["nonzero"].as_array().unwrap().iter().any(|e| e == "D[(4)][(2,2)] = -1"));
}

#[test]
fn budget_exceeded_exits_3() {
    let o = affgr(&["verify", "tangent", "--dim", "5", "--budget", "5"]);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(json(&o)["error"]["kind"], "budget");
}

#[test]
fn export_to_stdout_and_file() {
    let o = affgr(&["verify", "export-generators", "--n", "2", "--size", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let doc = String::from_utf8(o.stdout).unwrap();
    assert!(doc.ends_with("gen: +1*X[(-2,1,...)] -1*X[(-1,0,2,...)]\n"));

    let path = std::env::temp_dir().join(format!("affgr-export-{}.txt", std::process::id()));
    let o = affgr(&["verify", "export-generators", "--jordan", "4", "--k", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["checks"][0]["witness"]["variables"], 6);
    let file = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(file.starts_with("ring: X indexed by subset; char: 0\nvar: X[1,2]\n"));
}

#[test]
fn csv_report() {
    let o = affgr(&["verify", "signs", "--n", "3", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("name,status,witness\ncommutation,pass,"));
}
