//! `qspecial`: evaluate q-special functions, verify identities, run the
//! acceptance battery and sweep parameter grids.
//!
//! Exit codes: 0 success, 1 verification failure, 2 domain or usage error,
//! 3 non-convergence.

mod commands;
mod params;
mod registry;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

#[derive(Parser, Debug)]
#[command(name = "qspecial", version, about = "q-special functions and identity verification")]
struct Cli {
    /// Tail tolerance for truncated series (overrides QSPECIAL_TAIL_EPS).
    #[arg(long, global = true)]
    tail_eps: Option<f64>,

    /// Term cap for truncated series (overrides QSPECIAL_MAX_TERMS).
    #[arg(long, global = true)]
    max_terms: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one function and print {value_re, value_im, abs_err_est, terms_used, converged}.
    Eval {
        /// One of: qpoch, phi_rs, w87, aw, qjacobi, asc_h, asc_s, cq_ultra, cq_hermite,
        /// poisson_series, poisson_closed, qhermite_kernel.
        function: String,
        /// Parameters as `--name value`.
        #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
        args: Vec<String>,
    },
    /// Verify one identity and print its report(s).
    Verify {
        /// One of: remark36, theorem41, cor44, lemma45, start_identity, operator_suite, kernels, families.
        identity: String,
        #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
        args: Vec<String>,
    },
    /// Run the acceptance battery.
    Suite {
        #[arg(long)]
        seed: Option<u64>,
        /// Random trials per parameter cell; 0 skips every check.
        #[arg(long)]
        trials: Option<usize>,
        /// Write the JSON report array here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Evaluate an identity over a grid (`--grid name=start:stop:step` or `--grid name=v1,v2,...`, up to three)
    /// and print CSV.
    Sweep {
        /// One of: theorem41, cor44, lemma45, start_identity.
        identity: String,
        #[arg(trailing_var_arg = true, allow_hyphen_values = true)]
        args: Vec<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Eval { function, args } => commands::eval(&function, &args, cli.tail_eps, cli.max_terms),
        Command::Verify { identity, args } => commands::verify(&identity, &args, cli.tail_eps, cli.max_terms),
        Command::Suite { seed, trials, output } => commands::suite(seed, trials, output.as_deref(), cli.tail_eps, cli.max_terms),
        Command::Sweep { identity, args } => commands::sweep(&identity, &args, cli.tail_eps, cli.max_terms),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
