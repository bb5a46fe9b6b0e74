//! Name lookup for evaluable functions and verifiable identities.

use qspecial::identities::{
    discriminate_lemma45, verify_cor44, verify_families, verify_kernels, verify_lemma45, verify_operator_suite, verify_remark36,
    verify_start_consistency, verify_start_identity, verify_theorem41, Lemma45Factor,
};
use qspecial::qcore::{phi_rs, qpoch_finite, qpoch_infinite, w87};
use qspecial::qkernels::{poisson_closed, poisson_series, qhermite_kernel};
use qspecial::qpolys::{asc_h, asc_s, aw_eval, cq_hermite, cq_ultra, qjacobi_eval};
use qspecial::{AWParams, JacobiParams, KernelParams, SeriesValue, SuiteConfig, TruncationPolicy, VerificationReport, C64};

use crate::params::{CliError, CliResult, Params};

pub const FUNCTIONS: &[&str] = &[
    "qpoch",
    "phi_rs",
    "w87",
    "aw",
    "qjacobi",
    "asc_h",
    "asc_s",
    "cq_ultra",
    "cq_hermite",
    "poisson_series",
    "poisson_closed",
    "qhermite_kernel",
];

pub const IDENTITIES: &[&str] =
    &["remark36", "theorem41", "cor44", "lemma45", "start_identity", "operator_suite", "kernels", "families"];

/// Identities producing one report per parameter point.
pub const SWEEPABLE: &[&str] = &["theorem41", "cor44", "lemma45", "start_identity"];

fn lookup(kind: &str, name: &str, table: &[&str]) -> CliResult<()> {
    if table.contains(&name) {
        Ok(())
    } else {
        Err(CliError::Usage(format!("unknown {kind} '{name}'; expected one of: {}", table.join(", "))))
    }
}

pub fn check_function(name: &str) -> CliResult<()> {
    lookup("function", name, FUNCTIONS)
}

pub fn check_identity(name: &str) -> CliResult<()> {
    lookup("identity", name, IDENTITIES)
}

pub fn check_sweepable(name: &str) -> CliResult<()> {
    lookup("sweepable identity", name, SWEEPABLE)
}

fn exact(v: C64, n: usize) -> SeriesValue {
    SeriesValue::exact(v, n + 1)
}

pub fn eval_function(name: &str, p: &mut Params, policy: &TruncationPolicy) -> CliResult<SeriesValue> {
    check_function(name)?;
    let out = match name {
        "qpoch" => {
            let a = p.complex_req("a")?;
            let q = p.q()?;
            match p.f64("n")? {
                None => qpoch_infinite(a, q, policy),
                Some(n) if n >= 0.0 && n.fract() == 0.0 => exact(qpoch_finite(a, q, n as usize), n as usize),
                Some(n) => return Err(CliError::Usage(format!("--n: expected a non-negative integer, got {n}"))),
            }
        }
        "phi_rs" => {
            let num = p.complex_list("num")?;
            let den = p.complex_list("den")?;
            let q = p.q()?;
            let z = p.complex_req("z")?;
            phi_rs(&num, &den, q, z, policy)?
        }
        "w87" => {
            let a = p.complex_req("a")?;
            let bcdef = [p.complex_req("b")?, p.complex_req("c")?, p.complex_req("d")?, p.complex_req("e")?, p.complex_req("f")?];
            let q = p.q()?;
            let z = p.complex_req("z")?;
            w87(a, bcdef, q, z, policy)?
        }
        "aw" => {
            let n = p.usize_req("n")?;
            let x = p.complex_req("x")?;
            let prm = AWParams::new(
                p.complex_or("a", C64::new(0.0, 0.0))?,
                p.complex_or("b", C64::new(0.0, 0.0))?,
                p.complex_or("c", C64::new(0.0, 0.0))?,
                p.complex_or("d", C64::new(0.0, 0.0))?,
                p.q()?,
            );
            exact(aw_eval(n, x, &prm), n)
        }
        "qjacobi" => {
            let n = p.usize_req("n")?;
            let x = p.complex_req("x")?;
            let jp = JacobiParams::new(p.f64_req("alpha")?, p.f64_req("beta")?, p.f64_req("s")?, p.f64_req("t")?, p.q()?)?;
            exact(qjacobi_eval(n, x, &jp), n)
        }
        "asc_h" => {
            let n = p.usize_req("n")?;
            let x = p.complex_req("x")?;
            let (s, t) = (p.f64_req("s")?, p.f64_req("t")?);
            if !(s > 0.0 && t > 0.0) {
                return Err(qspecial::Error::Domain(format!("s and t must be positive, got s={s}, t={t}")).into());
            }
            exact(asc_h(n, x, s, t, p.q()?), n)
        }
        "asc_s" => {
            let n = p.usize_req("n")?;
            let x = p.complex_req("x")?;
            let (a, b) = (p.complex_req("a")?, p.complex_req("b")?);
            exact(asc_s(n, x, a, b, p.q()?), n)
        }
        "cq_ultra" => {
            let n = p.usize_req("n")?;
            let x = p.complex_req("x")?;
            exact(cq_ultra(n, x, p.f64_req("beta")?, p.q()?), n)
        }
        "cq_hermite" => {
            let n = p.usize_req("n")?;
            let x = p.complex_req("x")?;
            exact(cq_hermite(n, x, p.q()?), n)
        }
        "poisson_series" | "poisson_closed" => {
            let kp = KernelParams::new(
                p.complex_req("t")?,
                p.f64_or("tau", 0.0)?,
                p.f64_or("sigma", 0.0)?,
                p.f64_or("mu", 0.0)?,
                p.q()?,
            )?;
            let x = p.complex_req("x")?;
            let y = p.complex_req("y")?;
            if name == "poisson_series" {
                poisson_series(&kp, x, y, policy)
            } else {
                poisson_closed(&kp, x, y, policy)?
            }
        }
        "qhermite_kernel" => {
            let t = p.complex_req("t")?;
            qhermite_kernel(t, p.f64_req("psi")?, p.f64_req("theta")?, p.q()?, policy)?
        }
        _ => unreachable!("checked above"),
    };
    p.finish()?;
    Ok(out)
}

/// Runs one identity check. Parameters not given take documented defaults.
pub fn run_identity(name: &str, p: &mut Params, policy: &TruncationPolicy) -> CliResult<Vec<VerificationReport>> {
    check_identity(name)?;
    let tol = p.f64("tol")?;
    let reports = match name {
        "remark36" => {
            let n = p.usize_or("n", 4)?;
            let a = p.complex_or("a", C64::new(0.3, 0.0))?;
            let b = p.complex_or("b", C64::new(0.2, 0.0))?;
            let c = p.complex_or("c", C64::new(-0.4, 0.0))?;
            let d = p.complex_or("d", C64::new(0.25, 0.0))?;
            let q = p.q_or(0.5)?;
            let y = p.f64_or("y", 0.6)?;
            verify_remark36(n, &AWParams::new(a, b, c, d, q), y)
        }
        "theorem41" => {
            let l = p.usize_or("l", 3)?;
            let (tau, sigma, mu) = (p.f64_or("tau", 0.2)?, p.f64_or("sigma", -0.1)?, p.f64_or("mu", 0.3)?);
            let (psi, theta, phi) = (p.f64_or("psi", 0.8)?, p.f64_or("theta", 1.3)?, p.f64_or("phi", 0.5)?);
            let q = p.q_or(0.5)?;
            vec![verify_theorem41(l, tau, sigma, mu, psi, theta, phi, q, policy)?]
        }
        "cor44" => {
            let l = p.usize_or("l", 5)?;
            let (psi, theta, phi) = (p.f64_or("psi", 0.7)?, p.f64_or("theta", 1.1)?, p.f64_or("phi", 1.9)?);
            vec![verify_cor44(l, psi, theta, phi, p.q_or(0.4)?)?]
        }
        "lemma45" => {
            let n = p.usize_or("n", 2)?;
            let (psi, theta, phi) = (p.f64_or("psi", 0.9)?, p.f64_or("theta", 1.2)?, p.f64_or("phi", 0.4)?);
            let q = p.q_or(0.5)?;
            match p.string("variant").as_deref().unwrap_or("double") {
                "double" => vec![verify_lemma45(n, psi, theta, phi, q, policy, Lemma45Factor::DoubleAngle)?],
                "single" => vec![verify_lemma45(n, psi, theta, phi, q, policy, Lemma45Factor::SingleAngle)?],
                "discriminate" => vec![discriminate_lemma45(psi, theta, phi, q, policy)?],
                other => {
                    return Err(CliError::Usage(format!("--variant: expected double, single or discriminate, got '{other}'")))
                }
            }
        }
        "start_identity" => {
            let l = p.usize_or("l", 1)?;
            if l > 2 {
                return Err(qspecial::Error::IndexOutOfRange(format!("start_identity supports l <= 2, got {l}")).into());
            }
            let (tau, sigma, mu, phi) =
                (p.f64_or("tau", 0.2)?, p.f64_or("sigma", 0.1)?, p.f64_or("mu", -0.3)?, p.f64_or("phi", 0.7)?);
            let dim = p.usize_or("N", 200)?;
            if dim < 150 {
                return Err(qspecial::Error::InsufficientTruncation(format!("start_identity needs N >= 150, got {dim}")).into());
            }
            let q = p.q_or(0.5)?;
            let psi = p.f64("psi")?;
            let theta = p.f64("theta")?;
            let mut out = vec![verify_start_identity(l, tau, sigma, mu, phi, dim, q)?];
            if let (Some(psi), Some(theta)) = (psi, theta) {
                out.extend(verify_start_consistency(l, tau, sigma, mu, psi, theta, phi, dim, q, policy)?);
            }
            out
        }
        "operator_suite" => {
            let (tau, sigma, phi) = (p.f64_or("tau", 0.3)?, p.f64_or("sigma", -0.2)?, p.f64_or("phi", 0.7)?);
            let dim = p.usize_or("N", 150)?;
            verify_operator_suite(tau, sigma, phi, dim, p.q_or(0.5)?, policy)?
        }
        "kernels" => {
            let seed = p.u64_or("seed", SuiteConfig::DEFAULT_SEED)?;
            let points = p.usize_or("points", 20)?;
            verify_kernels(policy, seed, points)?
        }
        "families" => {
            let n = p.usize_or("n", 4)?;
            let psi = p.f64_or("psi", 0.7)?;
            let (s, t) = (p.f64_or("s", 0.8)?, p.f64_or("t", 1.3)?);
            verify_families(n, psi, s, t, p.q_or(0.5)?)?
        }
        _ => unreachable!("checked above"),
    };
    p.finish()?;
    Ok(match tol {
        Some(t) => reports.into_iter().map(|r| r.with_tolerance(t)).collect(),
        None => reports,
    })
}
