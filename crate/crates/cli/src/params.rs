//! Named `--key value` parameters for functions and identities.

use std::collections::BTreeMap;
use std::str::FromStr;

use qspecial::{Error, QParam, TruncationPolicy, C64};

/// Failure categories mapped onto process exit codes.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Lib(Error),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(Error::NonConvergence { .. }) => 3,
            _ => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Parameters given as `--name value` pairs, consumed as they are read so
/// that leftovers can be reported.
#[derive(Debug, Clone, Default)]
pub struct Params {
    values: BTreeMap<String, String>,
    grids: Vec<(String, String)>,
}

impl Params {
    pub fn parse(args: &[String]) -> CliResult<Self> {
        let mut p = Params::default();
        let mut it = args.iter();
        while let Some(flag) = it.next() {
            let key = flag.strip_prefix("--").ok_or_else(|| usage(format!("expected --name, got '{flag}'")))?;
            let (key, value) = match key.split_once('=') {
                Some((k, v)) => (k.to_string(), v.to_string()),
                None => {
                    let v = it.next().ok_or_else(|| usage(format!("missing value for --{key}")))?;
                    (key.to_string(), v.clone())
                }
            };
            if key.is_empty() {
                return Err(usage("empty parameter name"));
            }
            if key == "grid" {
                let (name, spec) =
                    value.split_once('=').ok_or_else(|| usage(format!("grid must be name=start:stop:step, got '{value}'")))?;
                p.grids.push((name.to_string(), spec.to_string()));
            } else if p.values.insert(key.clone(), value).is_some() {
                return Err(usage(format!("--{key} given twice")));
            }
        }
        Ok(p)
    }

    pub fn grids(&self) -> &[(String, String)] {
        &self.grids
    }

    pub fn set(&mut self, key: &str, value: f64) {
        self.values.insert(key.to_string(), value.to_string());
    }

    fn take_raw(&mut self, key: &str) -> Option<String> {
        self.values.remove(key)
    }

    pub fn f64(&mut self, key: &str) -> CliResult<Option<f64>> {
        self.take_raw(key)
            .map(|v| {
                let x = f64::from_str(v.trim()).map_err(|_| usage(format!("--{key}: not a real number: '{v}'")))?;
                if x.is_nan() {
                    return Err(usage(format!("--{key}: NaN is not allowed")));
                }
                Ok(x)
            })
            .transpose()
    }

    pub fn f64_or(&mut self, key: &str, default: f64) -> CliResult<f64> {
        Ok(self.f64(key)?.unwrap_or(default))
    }

    pub fn f64_req(&mut self, key: &str) -> CliResult<f64> {
        self.f64(key)?.ok_or_else(|| usage(format!("missing required parameter --{key}")))
    }

    pub fn usize_or(&mut self, key: &str, default: usize) -> CliResult<usize> {
        match self.f64(key)? {
            None => Ok(default),
            Some(x) if x >= 0.0 && x.fract() == 0.0 && x < 1e9 => Ok(x as usize),
            Some(x) => Err(usage(format!("--{key}: expected a non-negative integer, got {x}"))),
        }
    }

    pub fn usize_req(&mut self, key: &str) -> CliResult<usize> {
        if !self.values.contains_key(key) {
            return Err(usage(format!("missing required parameter --{key}")));
        }
        self.usize_or(key, 0)
    }

    pub fn u64_or(&mut self, key: &str, default: u64) -> CliResult<u64> {
        match self.take_raw(key) {
            None => Ok(default),
            Some(v) => u64::from_str(v.trim()).map_err(|_| usage(format!("--{key}: expected a non-negative integer, got '{v}'"))),
        }
    }

    /// Complex values in the form `re`, `re+imi`, `re-imi` or `imi`.
    pub fn complex(&mut self, key: &str) -> CliResult<Option<C64>> {
        self.take_raw(key).map(|v| parse_complex(&v).map_err(|m| usage(format!("--{key}: {m}")))).transpose()
    }

    pub fn complex_or(&mut self, key: &str, default: C64) -> CliResult<C64> {
        Ok(self.complex(key)?.unwrap_or(default))
    }

    pub fn complex_req(&mut self, key: &str) -> CliResult<C64> {
        self.complex(key)?.ok_or_else(|| usage(format!("missing required parameter --{key}")))
    }

    /// Comma-separated complex list; empty string gives an empty list.
    pub fn complex_list(&mut self, key: &str) -> CliResult<Vec<C64>> {
        match self.take_raw(key) {
            None => Ok(Vec::new()),
            Some(v) if v.trim().is_empty() => Ok(Vec::new()),
            Some(v) => v.split(',').map(|s| parse_complex(s).map_err(|m| usage(format!("--{key}: {m}")))).collect(),
        }
    }

    pub fn string(&mut self, key: &str) -> Option<String> {
        self.take_raw(key)
    }

    pub fn q(&mut self) -> CliResult<QParam> {
        Ok(QParam::new(self.f64_req("q")?)?)
    }

    pub fn q_or(&mut self, default: f64) -> CliResult<QParam> {
        Ok(QParam::new(self.f64_or("q", default)?)?)
    }

    /// Errors on any parameter that no consumer asked for.
    pub fn finish(&self) -> CliResult<()> {
        match self.values.keys().next() {
            None => Ok(()),
            Some(k) => Err(usage(format!("unknown parameter --{k}"))),
        }
    }
}

pub fn parse_complex(s: &str) -> Result<C64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let v = C64::from_str(&t).map_err(|_| format!("not a complex number: '{s}'"))?;
    if v.re.is_nan() || v.im.is_nan() {
        return Err(format!("NaN is not allowed: '{s}'"));
    }
    Ok(v)
}

pub const ENV_TAIL_EPS: &str = "QSPECIAL_TAIL_EPS";
pub const ENV_MAX_TERMS: &str = "QSPECIAL_MAX_TERMS";

/// Policy from defaults, then environment, then command-line flags.
pub fn resolve_policy(tail_eps: Option<f64>, max_terms: Option<usize>) -> CliResult<TruncationPolicy> {
    let d = TruncationPolicy::default();
    let env_eps = match std::env::var(ENV_TAIL_EPS) {
        Ok(v) => Some(f64::from_str(v.trim()).map_err(|_| usage(format!("{ENV_TAIL_EPS}: not a number: '{v}'")))?),
        Err(_) => None,
    };
    let env_terms = match std::env::var(ENV_MAX_TERMS) {
        Ok(v) => Some(usize::from_str(v.trim()).map_err(|_| usage(format!("{ENV_MAX_TERMS}: not an integer: '{v}'")))?),
        Err(_) => None,
    };
    let eps = tail_eps.or(env_eps).unwrap_or(d.tail_eps);
    let terms = max_terms.or(env_terms).unwrap_or(d.max_terms);
    Ok(TruncationPolicy::new(eps, terms)?)
}
