//! `hahnchain`: design, certify and simulate perfect-state-transfer XX chains.
//!
//! Exit codes: 0 success / certificate passed, 1 certificate or check
//! failed, 2 usage or malformed input, 3 I/O failure.

mod commands;
mod doc;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "hahnchain", version, about = "Perfect state transfer in dual -1 Hahn XX spin chains")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ParityArg {
    Odd,
    Even,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RemoveArg {
    Top,
    Bottom,
}

/// Chain source: a chain document or explicit parameters.
#[derive(Debug, Args)]
pub struct Source {
    /// Chain document (JSON) produced by `design`.
    pub chain: Option<PathBuf>,
    #[arg(long = "N", conflicts_with = "chain", requires_all = ["alpha", "beta"])]
    pub n: Option<usize>,
    /// Exact rational, e.g. `7/2`.
    #[arg(long, conflicts_with = "chain", allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, conflicts_with = "chain", allow_hyphen_values = true)]
    pub beta: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a PST chain from (parity, N, M1, M2) and certify it.
    Design {
        #[arg(long, value_enum)]
        parity: ParityArg,
        #[arg(long = "N", required_unless_present = "sweep")]
        n: Option<usize>,
        #[arg(long = "M1")]
        m1: u64,
        #[arg(long = "M2")]
        m2: u64,
        /// Comma-separated list of N values designed in parallel; writes a JSON array.
        #[arg(long, value_delimiter = ',', conflicts_with = "n")]
        sweep: Option<Vec<usize>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify PST exactly; exits 0 on pass and 1 on failure.
    Certify {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample the transfer amplitude (e_N| e^{itJ} |e_0) and write CSV.
    Evolve {
        chain: PathBuf,
        /// Final time.
        #[arg(long, conflicts_with = "t_max_over_pi", required_unless_present = "t_max_over_pi")]
        t_max: Option<f64>,
        /// Final time in units of pi, exact rational such as `1/6`.
        #[arg(long)]
        t_max_over_pi: Option<String>,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Remove an extreme level by an exact Christoffel transform.
    Transform {
        chain: PathBuf,
        #[arg(long, value_enum, default_value = "top")]
        remove: RemoveArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recover b, u from the chain's spectrum and spectral weights.
    Reconstruct {
        chain: PathBuf,
        /// Relative tolerance for the round-trip check.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closed-form weights against the reflection weights 1/|P'_{N+1}(x_s)|.
    Weights {
        #[command(flatten)]
        source: Source,
        /// Absolute tolerance on normalised weights.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("hahnchain: {}", e.message());
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_design() {
        let cli = Cli::try_parse_from([
            "hahnchain", "design", "--parity", "odd", "--N", "7", "--M1", "1", "--M2", "2", "--out", "c.json",
        ])
        .unwrap();
        match cli.command {
            Command::Design {
                parity, n, m1, m2, out, ..
            } => {
                assert_eq!(parity, ParityArg::Odd);
                assert_eq!((n, m1, m2), (Some(7), 1, 2));
                assert_eq!(out, Some(PathBuf::from("c.json")));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parses_certify_file() {
        let cli = Cli::try_parse_from(["hahnchain", "certify", "c.json"]).unwrap();
        match cli.command {
            Command::Certify { source, .. } => assert_eq!(source.chain, Some(PathBuf::from("c.json"))),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parses_negative_rational_parameters() {
        let cli = Cli::try_parse_from(["hahnchain", "weights", "--N", "3", "--alpha", "-1/2", "--beta", "0"]).unwrap();
        match cli.command {
            Command::Weights { source, .. } => assert_eq!(source.alpha.as_deref(), Some("-1/2")),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_unknown_flags_and_subcommands() {
        assert!(Cli::try_parse_from(["hahnchain", "design", "--bogus"]).is_err());
        assert!(Cli::try_parse_from(["hahnchain", "frobnicate"]).is_err());
        assert!(Cli::try_parse_from(["hahnchain", "certify", "c.json", "--N", "3"]).is_err());
        assert!(Cli::try_parse_from(["hahnchain", "evolve", "c.json", "--samples", "3"]).is_err());
    }
}
