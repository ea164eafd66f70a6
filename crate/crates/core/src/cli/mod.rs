//! The `affgr` command line: `affgr verify <suite> [flags]`, `affgr list`,
//! `affgr --help <suite>`.
//!
//! Every run prints one schema-versioned JSON report (or CSV with
//! `--format csv`). Exit codes: 0 all checks pass, 1 a mathematical check
//! failed, 2 usage or configuration error, 3 enumeration budget exceeded.

mod suites;

use crate::grassmann::DEFAULT_POINT_BUDGET;
use crate::Error;
use clap::{Parser, ValueEnum};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

pub use suites::SUITES;

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_SEED: u64 = 0x5eed_a77e_c0de_0001;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Flags accepted after `verify <suite>`.
#[derive(Parser, Debug, Clone)]
#[command(no_binary_name = true, disable_help_flag = true)]
pub struct Flags {
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub p: Option<u64>,
    #[arg(long)]
    pub size: Option<usize>,
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub jordan: Option<Vec<usize>>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub jobs: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub budget: Option<u128>,
    #[arg(long)]
    pub timing: bool,
    #[arg(long)]
    pub help: bool,
}

/// One typed parameter of a suite.
#[derive(Clone, Copy, Debug)]
pub struct Param {
    pub flag: &'static str,
    pub kind: &'static str,
    pub default: &'static str,
    pub range: &'static str,
    pub help: &'static str,
}

/// A validated job: suite name, resolved parameters, seed and budget.
#[derive(Clone, Debug)]
pub struct JobSpec {
    pub command: &'static str,
    pub flags: Flags,
    pub seed: u64,
    pub budget: u128,
}

impl JobSpec {
    fn parameters(&self) -> Value {
        let f = &self.flags;
        let mut m = Map::new();
        let mut put = |k: &str, v: Option<Value>| {
            if let Some(v) = v {
                m.insert(k.to_string(), v);
            }
        };
        put("n", f.n.map(Value::from));
        put("k", f.k.map(Value::from));
        put("p", f.p.map(Value::from));
        put("size", f.size.map(Value::from));
        put("dim", f.dim.map(Value::from));
        put("jordan", f.jordan.clone().map(Value::from));
        m.insert("seed".into(), Value::from(self.seed));
        Value::Object(m)
    }
}

/// Result of one named check.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: Value,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, witness: Value) -> Self {
        Check {
            name: name.into(),
            pass,
            witness,
        }
    }
}

/// Output of a suite: checks plus an optional table (CSV-capable).
#[derive(Clone, Debug, Default)]
pub struct SuiteOutput {
    pub checks: Vec<Check>,
    pub table: Option<(Vec<&'static str>, Vec<Vec<String>>)>,
    /// A plain-text document (generator export).
    pub document: Option<String>,
}

/// What the process should print and return.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn usage() -> String {
    let mut s = String::from(
        "usage: affgr verify <suite> [--n N] [--k K] [--p P] [--size S] [--dim D] [--jordan B1,B2,...]\n\
         \x20                         [--seed U64] [--jobs J] [--out PATH] [--format json|csv] [--budget N] [--timing]\n\
         \x20      affgr list\n\
         \x20      affgr --help <suite>\n\nsuites:\n",
    );
    for s2 in SUITES {
        s.push_str(&format!("  {:<18} {}\n", s2.name, s2.summary));
    }
    s
}

fn error_record(kind: &str, message: &str) -> String {
    let v = json!({
        "schema_version": SCHEMA_VERSION,
        "tool_version": env!("CARGO_PKG_VERSION"),
        "error": { "kind": kind, "message": message },
    });
    serde_json::to_string_pretty(&v).expect("json") + "\n"
}

fn out(code: i32, stdout: String) -> Outcome {
    Outcome {
        code,
        stdout,
        stderr: String::new(),
    }
}

fn schema(name: &str) -> Option<String> {
    let suite = SUITES.iter().find(|s| s.name == name)?;
    let params: Vec<Value> = suite
        .params
        .iter()
        .chain(suites::COMMON.iter())
        .map(|p| json!({"flag": p.flag, "type": p.kind, "default": p.default, "range": p.range, "help": p.help}))
        .collect();
    let v = json!({
        "schema_version": SCHEMA_VERSION,
        "command": format!("verify {name}"),
        "summary": suite.summary,
        "parameters": params,
    });
    Some(serde_json::to_string_pretty(&v).expect("json") + "\n")
}

/// Runs the command line `args` (program name excluded) without touching the
/// process state, except for files requested with `--out`.
pub fn execute(args: &[String]) -> Outcome {
    match args.first().map(String::as_str) {
        None => out(0, usage()),
        Some("list") if args.len() == 1 => out(0, SUITES.iter().map(|s| format!("{}\n", s.name)).collect()),
        Some("--help" | "-h" | "help") => match args.get(1) {
            None => out(0, usage()),
            Some(name) => match schema(name) {
                Some(s) => out(0, s),
                None => out(2, error_record("usage", &format!("unknown command `{name}`"))),
            },
        },
        Some("--version") => out(0, format!("affgr {}\n", env!("CARGO_PKG_VERSION"))),
        Some("verify") => match args.get(1) {
            None => out(2, error_record("usage", "missing suite name after `verify`")),
            Some(name) => verify(name, &args[2..]),
        },
        Some(other) => out(2, error_record("usage", &format!("unknown command `{other}`"))),
    }
}

fn verify(name: &str, rest: &[String]) -> Outcome {
    let Some(suite) = SUITES.iter().find(|s| s.name == name) else {
        return out(2, error_record("usage", &format!("unknown suite `{name}`")));
    };
    let flags = match Flags::try_parse_from(rest) {
        Ok(f) => f,
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("").trim_start_matches("error: ").to_string();
            return out(2, error_record("usage", &first));
        }
    };
    if flags.help {
        return out(0, schema(name).expect("known suite"));
    }
    if let Err(msg) = suites::validate(suite, &flags) {
        return out(2, error_record("usage", &msg));
    }
    let job = JobSpec {
        command: suite.name,
        seed: flags.seed.unwrap_or(DEFAULT_SEED),
        budget: flags.budget.unwrap_or(DEFAULT_POINT_BUDGET),
        flags,
    };
    let start = Instant::now();
    let result = match job.flags.jobs {
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j).build() {
            Ok(pool) => pool.install(|| (suite.run)(&job)),
            Err(e) => return out(2, error_record("usage", &format!("cannot start {j} workers: {e}"))),
        },
        None => (suite.run)(&job),
    };
    let output = match result {
        Ok(o) => o,
        Err(Error::Budget { what, estimate, budget }) => {
            let v = json!({
                "schema_version": SCHEMA_VERSION,
                "tool_version": env!("CARGO_PKG_VERSION"),
                "error": {
                    "kind": "budget",
                    "message": format!("{what} needs {estimate} items, budget is {budget}"),
                    "estimate": estimate.to_string(),
                    "budget": budget.to_string(),
                },
            });
            return out(3, serde_json::to_string_pretty(&v).expect("json") + "\n");
        }
        Err(e @ (Error::Precondition(_) | Error::DimensionMismatch(_) | Error::DegreeOverflow(_))) => {
            return out(2, error_record("configuration", &e.to_string()));
        }
        Err(e) => return out(1, error_record("fault", &e.to_string())),
    };
    let elapsed = job.flags.timing.then(|| start.elapsed().as_millis());
    render(&job, &output, elapsed)
}

fn config_hash(job: &JobSpec) -> String {
    let canon = json!({
        "command": job.command,
        "parameters": job.parameters(),
        "budget": job.budget.to_string(),
        "tool_version": env!("CARGO_PKG_VERSION"),
    });
    let digest = Sha256::digest(serde_json::to_string(&canon).expect("json").as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// The JSON report of a finished suite.
pub fn report(job: &JobSpec, output: &SuiteOutput, wall_time_ms: Option<u128>) -> Value {
    let passed = output.checks.iter().filter(|c| c.pass).count();
    let checks: Vec<Value> = output
        .checks
        .iter()
        .map(|c| json!({"name": c.name, "status": if c.pass { "pass" } else { "fail" }, "witness": c.witness}))
        .collect();
    let mut v = json!({
        "schema_version": SCHEMA_VERSION,
        "tool_version": env!("CARGO_PKG_VERSION"),
        "command": format!("verify {}", job.command),
        "parameters": job.parameters(),
        "config_hash": config_hash(job),
        "budget": { "max_enumeration": job.budget.to_string() },
        "checks": checks,
        "totals": { "checks": output.checks.len(), "passed": passed, "failed": output.checks.len() - passed },
    });
    if let Some((header, rows)) = &output.table {
        let rows: Vec<Value> = rows
            .iter()
            .map(|r| Value::Object(header.iter().zip(r).map(|(h, x)| (h.to_string(), Value::from(x.clone()))).collect()))
            .collect();
        v["table"] = Value::from(rows);
    }
    if let Some(ms) = wall_time_ms {
        v["wall_time_ms"] = Value::from(ms as u64);
    }
    v
}

fn to_csv(output: &SuiteOutput) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(vec![]);
    match &output.table {
        Some((header, rows)) => {
            w.write_record(header).expect("csv");
            for r in rows {
                w.write_record(r).expect("csv");
            }
        }
        None => {
            w.write_record(["name", "status", "witness"]).expect("csv");
            for c in &output.checks {
                let status = if c.pass { "pass" } else { "fail" };
                w.write_record([c.name.as_str(), status, &c.witness.to_string()]).expect("csv");
            }
        }
    }
    String::from_utf8(w.into_inner().expect("csv")).expect("utf-8")
}

fn render(job: &JobSpec, output: &SuiteOutput, wall_time_ms: Option<u128>) -> Outcome {
    let code = if output.checks.iter().all(|c| c.pass) { 0 } else { 1 };
    let body = match job.flags.format.unwrap_or(Format::Json) {
        Format::Json => serde_json::to_string_pretty(&report(job, output, wall_time_ms)).expect("json") + "\n",
        Format::Csv => to_csv(output),
    };
    let failed: Vec<&str> = output.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
    let summary = format!(
        "verify {}: {}/{} checks passed{}\n",
        job.command,
        output.checks.len() - failed.len(),
        output.checks.len(),
        if failed.is_empty() { String::new() } else { format!("; failed: {}", failed.join(", ")) }
    );
    // the generator document goes to stdout unless a file is requested
    let (stdout, file_body) = match (&output.document, &job.flags.out) {
        (Some(doc), None) => (doc.clone(), None),
        (Some(doc), Some(_)) => (body, Some(doc.clone())),
        (None, Some(_)) => (String::new(), Some(body)),
        (None, None) => (body, None),
    };
    if let (Some(path), Some(content)) = (&job.flags.out, file_body) {
        if let Err(e) = std::fs::write(path, content) {
            return out(2, error_record("configuration", &format!("cannot write {}: {e}", path.display())));
        }
    }
    Outcome {
        code,
        stdout,
        stderr: summary,
    }
}

/// Entry point used by the binary.
pub fn main_with_args(args: Vec<String>) -> i32 {
    let o = execute(&args);
    print!("{}", o.stdout);
    eprint!("{}", o.stderr);
    o.code
}

/// Suite names with their one-line summaries.
pub fn list_commands() -> BTreeMap<&'static str, &'static str> {
    SUITES.iter().map(|s| (s.name, s.summary)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> Outcome {
        execute(&args.iter().map(|s| s.to_string()).collect::<Vec<_>>())
    }

    #[test]
    fn usage_and_errors() {
        let o = run(&[]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.contains("export-generators"));
        assert_eq!(run(&["list"]).stdout.lines().count(), 12);
        let o = run(&["frobnicate"]);
        assert_eq!(o.code, 2);
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["error"]["kind"], "usage");
        assert_eq!(run(&["verify", "nope"]).code, 2);
        assert_eq!(run(&["verify", "clifford", "--bogus", "1"]).code, 2);
        assert_eq!(run(&["verify", "clifford", "--p", "2"]).code, 2);
        let o = run(&["--help", "fpoints"]);
        assert_eq!(o.code, 0);
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["command"], "verify fpoints");
    }

    #[test]
    fn deterministic_reports() {
        let a = run(&["verify", "clifford", "--n", "4", "--size", "3"]);
        let b = run(&["verify", "clifford", "--n", "4", "--size", "3", "--jobs", "1"]);
        assert_eq!(a.code, 0);
        assert_eq!(a.stdout, b.stdout);
        let v: Value = serde_json::from_str(&a.stdout).unwrap();
        assert_eq!(v["schema_version"], SCHEMA_VERSION);
        assert!(v.get("wall_time_ms").is_none());
    }

    #[test]
    fn budget_exit_code() {
        let o = run(&["verify", "fpoints", "--p", "2", "--dim", "6", "--budget", "10"]);
        assert_eq!(o.code, 3);
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        assert_eq!(v["error"]["kind"], "budget");
    }

    #[test]
    fn fpoints_table() {
        let o = run(&["verify", "fpoints", "--p", "2", "--dim", "4", "--format", "csv"]);
        assert_eq!(o.code, 0);
        assert!(o.stdout.starts_with("p,n,k,jordan_type,gr,gt,st,equal\n"));
        assert!(o.stdout.lines().any(|l| l == "2,4,2,4,35,1,1,true"));
    }
}
