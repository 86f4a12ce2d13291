//! Command-line entry point.

use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use nabla_kit::identities::{check_sign_conjecture, scan_positivity, verify, IdentityId, ScanTarget, Status, VerdictReport};
use nabla_kit::macdonald::{cache_load, cache_path, cache_store, compute_basis, set_budget, set_cache_dir};
use serde_json::json;

use crate::eval::{eval, Value};
use crate::expr::parse;
use crate::render::{self, OutputFormat};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FINDING: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "nabla-kit", version, about = "Exact computations with modified Macdonald polynomials and nabla")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    pub format: OutputFormat,
    /// Directory for cached Macdonald bases.
    #[arg(long, env = "NABLA_KIT_CACHE", global = true, default_value = ".nabla-cache")]
    pub cache_dir: PathBuf,
    /// Worker threads for verify and scan (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Largest degree for which Macdonald bases may be computed.
    #[arg(long, global = true, default_value_t = 8)]
    pub budget: u32,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate an expression; `-` reads one expression per line from stdin.
    Eval { expr: String },
    /// The nabla matrix of degree n with q,t-Schur expanded entries.
    Matrix {
        #[arg(long)]
        n: u32,
    },
    /// Check catalog identities on all degrees up to n-max.
    Verify {
        /// `all`, or identity ids separated by commas (ID-A,ID-K).
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        n_max: u32,
    },
    /// Positivity scan: bght, haiman, haglund-eps, gh-eps, or sign (the
    /// conjectured row signs of the nabla matrix).
    Scan {
        #[arg(long)]
        target: String,
        #[arg(long)]
        n: u32,
    },
    /// Inspect, or with --rebuild recompute, the cached bases.
    Cache {
        #[arg(long)]
        rebuild: bool,
        #[arg(long)]
        n_max: u32,
    },
}

struct Failure(i32, String);

fn usage(msg: impl Into<String>) -> Failure {
    Failure(EXIT_USAGE, msg.into())
}

pub fn run(cli: Cli) -> i32 {
    set_budget(cli.budget);
    set_cache_dir(Some(cli.cache_dir.clone()));
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            log::warn!("thread pool already configured: {e}");
        }
    }
    let outcome = match &cli.command {
        Command::Eval { expr } => run_eval(expr, cli.format),
        Command::Matrix { n } => run_matrix(*n, cli.format),
        Command::Verify { suite, n_max } => run_verify(suite, *n_max, cli.format),
        Command::Scan { target, n } => run_scan(target, *n, cli.format),
        Command::Cache { rebuild, n_max } => run_cache(&cli.cache_dir, *rebuild, *n_max, cli.format),
    };
    match outcome {
        Ok((code, out)) => {
            if !out.is_empty() {
                println!("{out}");
            }
            code
        }
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            code
        }
    }
}

fn eval_one(src: &str, format: OutputFormat) -> Result<String, Failure> {
    let expr = parse(src).map_err(|e| usage(e.to_string()))?;
    let v = eval(&expr).map_err(|e| usage(e.located(src)))?;
    Ok(render::value(&v, format))
}

fn run_eval(expr: &str, format: OutputFormat) -> Result<(i32, String), Failure> {
    if expr != "-" {
        return Ok((EXIT_OK, eval_one(expr, format)?));
    }
    let mut input = String::new();
    std::io::stdin().read_to_string(&mut input).map_err(|e| usage(format!("reading stdin: {e}")))?;
    let mut out = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let result = eval_one(line, format).map_err(|Failure(c, m)| Failure(c, format!("line {}: {m}", i + 1)))?;
        out.push(result);
    }
    Ok((EXIT_OK, out.join("\n")))
}

fn run_matrix(n: u32, format: OutputFormat) -> Result<(i32, String), Failure> {
    if n == 0 {
        return Err(usage("--n must be positive"));
    }
    let m = nabla_kit::identities::nabla_matrix(n).map_err(|e| usage(e.to_string()))?;
    Ok((EXIT_OK, render::value(&Value::Matrix(m), format)))
}

fn exit_for(reports: &[VerdictReport]) -> i32 {
    if reports.iter().any(|r| r.status == Status::Fail) {
        EXIT_FAILURE
    } else if reports.iter().any(|r| r.status == Status::Finding) {
        EXIT_FINDING
    } else {
        EXIT_OK
    }
}

fn run_verify(suite: &str, n_max: u32, format: OutputFormat) -> Result<(i32, String), Failure> {
    let ids: Vec<IdentityId> = if suite.eq_ignore_ascii_case("all") {
        IdentityId::ALL.to_vec()
    } else {
        suite
            .split(',')
            .map(|s| IdentityId::parse(s).ok_or_else(|| usage(format!("unknown identity '{s}' (use ID-A .. ID-O or all)"))))
            .collect::<Result<_, _>>()?
    };
    let mut reports = Vec::new();
    for id in ids {
        reports.push(verify(id, n_max).map_err(|e| usage(format!("{}: {e}", id.code())))?);
    }
    Ok((exit_for(&reports), render::reports(&reports, format)))
}

fn run_scan(target: &str, n: u32, format: OutputFormat) -> Result<(i32, String), Failure> {
    if n == 0 {
        return Err(usage("--n must be positive"));
    }
    let report = if target.eq_ignore_ascii_case("sign") {
        check_sign_conjecture(n)
    } else {
        let t = ScanTarget::parse(target)
            .ok_or_else(|| usage(format!("unknown target '{target}' (bght, haiman, haglund-eps, gh-eps, sign)")))?;
        scan_positivity(t, n)
    }
    .map_err(|e| usage(e.to_string()))?;
    let reports = [report];
    Ok((exit_for(&reports), render::reports(&reports, format)))
}

fn run_cache(dir: &PathBuf, rebuild: bool, n_max: u32, format: OutputFormat) -> Result<(i32, String), Failure> {
    let mut entries = Vec::new();
    for n in 1..=n_max {
        let path = cache_path(dir, n);
        let status = if rebuild {
            let b = compute_basis(n).map_err(|e| usage(e.to_string()))?;
            cache_store(dir, &b).map_err(|e| usage(format!("writing {}: {e}", path.display())))?;
            "rebuilt"
        } else if cache_load(dir, n).is_some() {
            "valid"
        } else if path.exists() {
            "invalid"
        } else {
            "missing"
        };
        entries.push((n, path, status));
    }
    let out = match format {
        OutputFormat::Json => json!({
            "cache_dir": dir.display().to_string(),
            "entries": entries.iter().map(|(n, p, s)| json!({"n": n, "path": p.display().to_string(), "status": s})).collect::<Vec<_>>(),
        })
        .to_string(),
        _ => entries.iter().map(|(n, p, s)| format!("n={n}  {s:<8} {}", p.display())).collect::<Vec<_>>().join("\n"),
    };
    Ok((EXIT_OK, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(status: Status) -> VerdictReport {
        VerdictReport { id: "X".into(), range: String::new(), status, witness: None, ms: 0, note: String::new(), variants: Vec::new() }
    }

    #[test]
    fn exit_codes_rank_failures_above_findings() {
        assert_eq!(exit_for(&[report(Status::Pass)]), EXIT_OK);
        assert_eq!(exit_for(&[report(Status::Pass), report(Status::Finding)]), EXIT_FINDING);
        assert_eq!(exit_for(&[report(Status::Finding), report(Status::Fail)]), EXIT_FAILURE);
        assert_eq!(exit_for(&[]), EXIT_OK);
    }
}
