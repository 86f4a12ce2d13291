use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn nabla_kit(cache: &Path, args: &[&str], stdin: Option<&str>) -> Run {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_nabla-kit"));
    cmd.arg("--cache-dir").arg(cache).args(args).env_remove("NABLA_KIT_CACHE");
    cmd.stdin(if stdin.is_some() { Stdio::piped() } else { Stdio::null() });
    cmd.stdout(Stdio::piped()).stderr(Stdio::piped());
    let mut child = cmd.spawn().expect("spawn nabla-kit");
    if let Some(input) = stdin {
        child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    }
    let Output { status, stdout, stderr } = child.wait_with_output().unwrap();
    Run {
        code: status.code().expect("exit code"),
        stdout: String::from_utf8(stdout).unwrap(),
        stderr: String::from_utf8(stderr).unwrap(),
    }
}

fn run(args: &[&str]) -> Run {
    let dir = TempDir::new().unwrap();
    nabla_kit(dir.path(), args, None)
}

fn golden(rel: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), rel].iter().collect();
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn schema() -> jsonschema::Validator {
    let s: Value = serde_json::from_str(&golden("schema/output.schema.json")).unwrap();
    jsonschema::validator_for(&s).expect("schema compiles")
}

fn assert_valid(v: &jsonschema::Validator, out: &str) -> Value {
    let json: Value = serde_json::from_str(out).unwrap_or_else(|e| panic!("not JSON ({e}): {out}"));
    let errors: Vec<String> = v.iter_errors(&json).map(|e| format!("{e} at {}", e.instance_path())).collect();
    assert!(errors.is_empty(), "{out}\n{}", errors.join("\n"));
    json
}

#[test]
fn eval_examples() {
    for (src, want) in [
        ("scalar(nabla(s[2]), s[1,1])", "-q*t"),
        ("expand(nabla(e[2]), s)", "s[2] + (q+t)*s[1,1]"),
        ("pleth(p[2], p[3])", "p[6]"),
    ] {
        let r = run(&["eval", src]);
        assert_eq!(r.code, 0, "{src}: {}", r.stderr);
        assert_eq!(r.stdout.trim_end(), want);
    }
}

#[test]
fn eval_reads_stdin() {
    let dir = TempDir::new().unwrap();
    let r = nabla_kit(dir.path(), &["eval", "-"], Some("# comment\np[1]^2\n\nscalar(s[2], h[2])\n"));
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.stdout, "p[1,1]\n1\n");
    let r = nabla_kit(dir.path(), &["eval", "-"], Some("s[1]\ns[1,2]\n"));
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("line 2"), "{}", r.stderr);
}

#[test]
fn usage_errors_exit_two() {
    let r = run(&["eval", "nabl(s[1])"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("nabla"), "{}", r.stderr);
    let r = run(&["eval", "s[2,3]"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("weakly decreasing"), "{}", r.stderr);
    let r = run(&["eval", "scalar(matrix(2), s[1])"]);
    assert_eq!(r.code, 2);
    let r = run(&["--budget", "2", "eval", "nabla(e[3])"]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("--budget"), "{}", r.stderr);
    assert_eq!(run(&["verify", "--suite", "ID-Z", "--n-max", "2"]).code, 2);
    assert_eq!(run(&["scan", "--target", "nope", "--n", "2"]).code, 2);
    assert_eq!(run(&["matrix", "--n", "0"]).code, 2);
    assert_eq!(run(&["frobnicate"]).code, 2);
}

#[test]
fn matrix_goldens() {
    for n in [2, 3] {
        let r = run(&["matrix", "--n", &n.to_string()]);
        assert_eq!(r.code, 0, "{}", r.stderr);
        assert_eq!(r.stdout, golden(&format!("../core/tests/golden/nabla{n}.txt")));
    }
    let r = run(&["matrix", "--n", "3", "--format", "latex"]);
    assert_eq!(r.stdout, golden("tests/golden/nabla3.tex"));
}

#[test]
fn verify_and_scan() {
    let r = run(&["verify", "--suite", "all", "--n-max", "3"]);
    assert_eq!(r.code, 0, "{}{}", r.stdout, r.stderr);
    let ids: Vec<&str> = r.stdout.lines().filter(|l| l.starts_with("ID-")).collect();
    assert_eq!(ids.len(), 15);
    assert!(ids.iter().all(|l| l.contains(" pass ")), "{}", r.stdout);
    assert!(r.stdout.contains("variant 'printed range k=1..n': fail at n=1"), "{}", r.stdout);
    for target in ["haiman", "bght", "haglund-eps", "gh-eps", "sign"] {
        let r = run(&["scan", "--target", target, "--n", "3"]);
        assert_eq!(r.code, 0, "{target}: {}", r.stdout);
    }
}

fn without_timings(mut v: Value) -> Value {
    for r in v.as_array_mut().unwrap() {
        r.as_object_mut().unwrap().remove("ms");
    }
    v
}

#[test]
fn jobs_do_not_change_reports() {
    let dir = TempDir::new().unwrap();
    let reports = |jobs: &str| {
        let r = nabla_kit(dir.path(), &["--jobs", jobs, "--format", "json", "verify", "--suite", "all", "--n-max", "3"], None);
        assert_eq!(r.code, 0);
        without_timings(serde_json::from_str(&r.stdout).unwrap())
    };
    assert_eq!(reports("1"), reports("4"));
    let scan = |jobs: &str| {
        let r = nabla_kit(dir.path(), &["--jobs", jobs, "--format", "json", "scan", "--target", "bght", "--n", "4"], None);
        without_timings(serde_json::from_str(&r.stdout).unwrap())
    };
    assert_eq!(scan("1"), scan("3"));
}

#[test]
fn json_output_matches_schema() {
    let v = schema();
    let dir = TempDir::new().unwrap();
    let json = |args: &[&str]| {
        let mut full = vec!["--format", "json"];
        full.extend_from_slice(args);
        let r = nabla_kit(dir.path(), &full, None);
        assert!(r.code == 0, "{args:?}: {}", r.stderr);
        assert_valid(&v, &r.stdout)
    };
    json(&["eval", "scalar(nabla(s[2]), s[1,1])"]);
    json(&["eval", "e[2] / (1 - q)"]);
    json(&["eval", "psi(e[2])"]);
    let m = json(&["eval", "matrix(2)"]);
    assert_eq!(m["kind"], "matrix");
    let m = json(&["matrix", "--n", "3"]);
    assert_eq!(m["value"]["text"][2][2], "s3 + s11");
    let reports = json(&["verify", "--suite", "ID-B,ID-M", "--n-max", "3"]);
    assert_eq!(reports[0]["variants"][0]["status"], "fail");
    json(&["scan", "--target", "sign", "--n", "3"]);
    json(&["scan", "--target", "haiman", "--n", "2"]);
    let c = json(&["cache", "--n-max", "2"]);
    assert_eq!(c["entries"][0]["status"], "valid");
    let c = json(&["cache", "--rebuild", "--n-max", "2"]);
    assert_eq!(c["entries"][1]["status"], "rebuilt");
}

#[test]
fn cache_statuses() {
    let dir = TempDir::new().unwrap();
    let r = nabla_kit(dir.path(), &["cache", "--n-max", "2"], None);
    assert!(r.stdout.lines().all(|l| l.contains("missing")), "{}", r.stdout);
    nabla_kit(dir.path(), &["cache", "--rebuild", "--n-max", "2"], None);
    let file = dir.path().join("macdonald_n2.txt");
    let text = std::fs::read_to_string(&file).unwrap();
    std::fs::write(&file, text.replace("[1,1] = t", "[1,1] = t^2")).unwrap();
    let r = nabla_kit(dir.path(), &["cache", "--n-max", "2"], None);
    let lines: Vec<&str> = r.stdout.lines().collect();
    assert!(lines[0].contains("valid"), "{}", r.stdout);
    assert!(lines[1].contains("invalid"), "{}", r.stdout);
}

#[test]
fn env_var_sets_cache_dir() {
    let dir = TempDir::new().unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_nabla-kit"))
        .args(["cache", "--rebuild", "--n-max", "1"])
        .env("NABLA_KIT_CACHE", dir.path())
        .stdout(Stdio::null())
        .status()
        .unwrap();
    assert!(status.success());
    assert!(dir.path().join("macdonald_n1.txt").exists());
}

#[test]
fn schema_rejects_malformed_output() {
    let v = schema();
    for bad in [
        r#"[{"id":"ID-A","range":"","status":"maybe","witness":null,"ms":0}]"#,
        r#"{"kind":"scalar","text":"1","value":{"num":[],"den":[]}}"#,
        r#"{"cache_dir":"x","entries":[{"n":0,"path":"p","status":"valid"}]}"#,
        r#"{"kind":"symfunc","text":"","value":{"basis":"x","terms":[]}}"#,
    ] {
        let json: Value = serde_json::from_str(bad).unwrap();
        assert!(!v.is_valid(&json), "{bad}");
    }
}
