use std::fs::File;
use std::io::{self, Write};
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use qspecial::identities::{acceptance_criteria, CriterionOutcome};
use qspecial::{SeriesValue, SuiteConfig, TruncationPolicy, VerificationReport};

use crate::params::{resolve_policy, CliError, CliResult, Params};
use crate::registry::{check_function, check_identity, check_sweepable, eval_function, run_identity};

pub const CSV_HEADER: [&str; 9] = ["param1", "param2", "param3", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "residual", "pass"];
const MAX_GRID_POINTS: usize = 100_000;

#[derive(Serialize)]
struct EvalRecord {
    value_re: f64,
    value_im: f64,
    abs_err_est: f64,
    terms_used: usize,
    converged: bool,
}

impl From<SeriesValue> for EvalRecord {
    fn from(v: SeriesValue) -> Self {
        EvalRecord {
            value_re: v.value.re,
            value_im: v.value.im,
            abs_err_est: v.abs_err_est,
            terms_used: v.terms_used,
            converged: v.converged,
        }
    }
}

/// Flags may also appear after the subcommand's positional argument.
fn policy_from(p: &mut Params, eps: Option<f64>, terms: Option<usize>) -> CliResult<TruncationPolicy> {
    let eps = match p.f64("tail-eps")? {
        Some(e) => Some(e),
        None => eps,
    };
    let terms = match p.f64("max-terms")? {
        Some(t) if t >= 1.0 && t.fract() == 0.0 => Some(t as usize),
        Some(t) => return Err(CliError::Usage(format!("--max-terms: expected a positive integer, got {t}"))),
        None => terms,
    };
    resolve_policy(eps, terms)
}

fn print_json<T: Serialize + ?Sized>(v: &T) -> CliResult<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v).map_err(|e| CliError::Io(e.to_string()))?;
    writeln!(out).map_err(|e| CliError::Io(e.to_string()))
}

pub fn eval(function: &str, args: &[String], eps: Option<f64>, terms: Option<usize>) -> CliResult<u8> {
    check_function(function)?;
    let mut p = Params::parse(args)?;
    let policy = policy_from(&mut p, eps, terms)?;
    let v = eval_function(function, &mut p, &policy)?;
    let converged = v.converged;
    print_json(&EvalRecord::from(v))?;
    Ok(if converged { 0 } else { 3 })
}

pub fn verify(identity: &str, args: &[String], eps: Option<f64>, terms: Option<usize>) -> CliResult<u8> {
    check_identity(identity)?;
    let mut p = Params::parse(args)?;
    let policy = policy_from(&mut p, eps, terms)?;
    let reports = run_identity(identity, &mut p, &policy)?;
    if reports.len() == 1 {
        print_json(&reports[0])?;
    } else {
        print_json(&reports)?;
    }
    Ok(if reports.iter().all(|r| r.pass) { 0 } else { 1 })
}

pub fn suite(
    seed: Option<u64>,
    trials: Option<usize>,
    output: Option<&Path>,
    eps: Option<f64>,
    terms: Option<usize>,
) -> CliResult<u8> {
    let policy = resolve_policy(eps, terms)?;
    let cfg = SuiteConfig { seed: seed.unwrap_or(SuiteConfig::DEFAULT_SEED), trials, policy };
    let start = Instant::now();
    let mut outcomes: Vec<CriterionOutcome> = acceptance_criteria().par_iter().map(|c| c.run(&cfg)).collect();
    outcomes.sort_by_key(|o| o.number);
    let reports: Vec<&VerificationReport> = outcomes.iter().flat_map(|o| o.reports.iter()).collect();
    match output {
        Some(path) => {
            let f = File::create(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
            serde_json::to_writer_pretty(io::BufWriter::new(f), &reports).map_err(|e| CliError::Io(e.to_string()))?;
        }
        None => print_json(&reports)?,
    }
    let failed: Vec<&CriterionOutcome> = outcomes.iter().filter(|o| !o.pass()).collect();
    for o in &failed {
        eprintln!("{}", o.summary_line());
        for e in &o.errors {
            eprintln!("  error: {e}");
        }
    }
    let n_fail: usize = outcomes.iter().map(CriterionOutcome::failures).sum();
    eprintln!(
        "suite: {} ({} checks, {} failed, {} of {} criteria passed, seed {}, {:.1}s)",
        if failed.is_empty() { "PASS" } else { "FAIL" },
        reports.len(),
        n_fail,
        outcomes.len() - failed.len(),
        outcomes.len(),
        cfg.seed,
        start.elapsed().as_secs_f64()
    );
    Ok(if failed.is_empty() { 0 } else { 1 })
}

/// `start:stop:step` (inclusive) or `v1,v2,...`.
pub fn parse_grid(name: &str, spec: &str) -> CliResult<Vec<f64>> {
    let bad = |m: &str| CliError::Usage(format!("grid {name}={spec}: {m}"));
    let num = |s: &str| {
        s.trim().parse::<f64>().ok().filter(|x| x.is_finite()).ok_or_else(|| bad(&format!("'{s}' is not a finite number")))
    };
    if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(bad("expected start:stop:step"));
        }
        let (a, b, h) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
        if h <= 0.0 || b < a {
            return Err(bad("need step > 0 and stop >= start"));
        }
        let count = ((b - a) / h + 1e-9).floor() as usize + 1;
        if count > MAX_GRID_POINTS {
            return Err(bad("too many points"));
        }
        Ok((0..count).map(|i| snap(a + i as f64 * h, h)).collect())
    } else {
        let v: Vec<f64> = spec.split(',').map(num).collect::<CliResult<_>>()?;
        if v.is_empty() {
            return Err(bad("empty list"));
        }
        Ok(v)
    }
}

/// Removes accumulated drift below the step's resolution.
fn snap(x: f64, h: f64) -> f64 {
    let scale = 10f64.powi(12 - h.abs().log10().floor() as i32);
    let y = (x * scale).round() / scale;
    if y == 0.0 {
        0.0
    } else {
        y
    }
}

/// Row-major Cartesian product; the first axis varies slowest.
fn grid_points(axes: &[Vec<f64>]) -> Vec<Vec<f64>> {
    axes.iter().fold(vec![Vec::new()], |acc, axis| {
        acc.iter().flat_map(|prefix| axis.iter().map(move |&v| [prefix.as_slice(), &[v]].concat())).collect()
    })
}

pub fn sweep(identity: &str, args: &[String], eps: Option<f64>, terms: Option<usize>) -> CliResult<u8> {
    check_sweepable(identity)?;
    let mut base = Params::parse(args)?;
    let policy = policy_from(&mut base, eps, terms)?;
    let output = base.string("output");
    let grids = base.grids().to_vec();
    if grids.is_empty() || grids.len() > 3 {
        return Err(CliError::Usage(format!("sweep needs one to three --grid axes, got {}", grids.len())));
    }
    let mut names: Vec<&str> = grids.iter().map(|(n, _)| n.as_str()).collect();
    names.sort_unstable();
    names.dedup();
    if names.len() != grids.len() {
        return Err(CliError::Usage("grid axes must have distinct names".into()));
    }
    let axes: Vec<Vec<f64>> = grids.iter().map(|(n, s)| parse_grid(n, s)).collect::<CliResult<_>>()?;
    let points = grid_points(&axes);
    if points.len() > MAX_GRID_POINTS {
        return Err(CliError::Usage("grid has too many points".into()));
    }
    let rows: Vec<CliResult<VerificationReport>> = points
        .par_iter()
        .map(|pt| {
            let mut p = base.clone();
            for ((name, _), &v) in grids.iter().zip(pt) {
                p.set(name, v);
            }
            let mut r = run_identity(identity, &mut p, &policy)?;
            Ok(r.swap_remove(0))
        })
        .collect();
    let sink: Box<dyn Write> = match &output {
        Some(path) => Box::new(File::create(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?),
        None => Box::new(io::stdout()),
    };
    let mut w = csv::Writer::from_writer(sink);
    let io_err = |e: csv::Error| CliError::Io(e.to_string());
    w.write_record(CSV_HEADER).map_err(io_err)?;
    let mut all_pass = true;
    for (pt, row) in points.iter().zip(rows) {
        let r = row?;
        all_pass &= r.pass;
        let mut rec: Vec<String> = (0..3).map(|i| pt.get(i).map(|v| v.to_string()).unwrap_or_default()).collect();
        rec.extend([r.lhs.re, r.lhs.im, r.rhs.re, r.rhs.im].iter().map(|v| v.to_string()));
        rec.push(format!("{:e}", r.rel_residual));
        rec.push(r.pass.to_string());
        w.write_record(&rec).map_err(io_err)?;
    }
    w.flush().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(if all_pass { 0 } else { 1 })
}
