//! `curv4`: curvature algebra of Einstein four-manifolds from the command
//! line. Machine output is JSON on standard output.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on usage or
//! input errors.

mod output;
mod reports;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::Value;

use curv4_core::{Error, ModelSpace, QuadraticSurd};
use output::{render, Format};
use verify::{Lemma, Params};

#[derive(Debug, Parser)]
#[command(
    name = "curv4",
    version,
    about = "Curvature algebra of Einstein four-manifolds"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact curvature tables of the model spaces.
    Models {
        /// sphere, rp4, cp2 or s2xs2; all four when omitted.
        #[arg(long)]
        name: Option<ModelSpace>,
    },
    /// Scalar curvature, traceless Ricci norm and Weyl spectra of an operator.
    Decompose {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
    },
    /// Berger normal form and a realizing frame.
    Berger {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
    },
    /// Check one closed-form bound against its brute-force oracle.
    Verify {
        #[arg(long, value_enum)]
        lemma: Lemma,
        /// Main parameter (`a` for algebraic2). Accepts expressions such as
        /// `(14 - sqrt(19))/12`.
        #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
        alpha: Option<f64>,
        /// Second parameter (`b` for algebraic2).
        #[arg(long, value_parser = parse_real, allow_hyphen_values = true)]
        delta: Option<f64>,
        /// Grid resolution per axis.
        #[arg(long)]
        grid: Option<usize>,
        /// Seed for the random spot checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run every verification at its default parameters.
    VerifyAll {
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Check the pinching conditions for an operator or Berger data file.
    Classify {
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
        /// Also sample this many frames for the frame form of condition (b).
        #[arg(long)]
        frame_samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Euler characteristic and signature pairs allowed by pinching.
    ChiTau {
        /// Lower curvature bound; exact when given as a fraction, decimal or
        /// quadratic surd.
        #[arg(long, value_parser = parse_surd, allow_hyphen_values = true)]
        alpha: QuadraticSurd,
        /// Report the first failing rule for every rejected pair.
        #[arg(long)]
        explain: bool,
    },
    /// Sharp constants with verified decimal enclosures.
    Constants,
}

fn parse_surd(s: &str) -> Result<QuadraticSurd, String> {
    s.parse::<QuadraticSurd>().map_err(|e| e.to_string())
}

fn parse_real(s: &str) -> Result<f64, String> {
    match s.parse::<QuadraticSurd>() {
        Ok(x) => Ok(x.to_f64()),
        Err(e) => s.trim().parse::<f64>().map_err(|_| e.to_string()),
    }
}

/// A command's JSON output and whether its checks passed.
struct Report {
    json: Value,
    pass: bool,
}

impl Report {
    fn ok(json: Value) -> Self {
        Self { json, pass: true }
    }
}

fn execute(command: Command) -> curv4_core::Result<Report> {
    Ok(match command {
        Command::Models { name } => Report::ok(reports::models(name)),
        Command::Decompose { input } => {
            Report::ok(reports::decompose(&curv4_core::io::read_input(&input)?)?)
        }
        Command::Berger { input } => {
            Report::ok(reports::berger(&curv4_core::io::read_input(&input)?)?)
        }
        Command::Verify {
            lemma,
            alpha,
            delta,
            grid,
            seed,
        } => {
            let o = verify::run(
                lemma,
                &Params {
                    alpha,
                    delta,
                    grid,
                    seed,
                },
            )?;
            Report {
                json: o.json,
                pass: o.pass,
            }
        }
        Command::VerifyAll { grid } => {
            let o = verify::run_all(grid)?;
            Report {
                json: o.json,
                pass: o.pass,
            }
        }
        Command::Classify {
            input,
            frame_samples,
            seed,
        } => {
            let input = curv4_core::io::read_input(&input)?;
            Report::ok(reports::classify(&input, frame_samples, seed)?)
        }
        Command::ChiTau { alpha, explain } => Report::ok(reports::chi_tau(alpha, explain)?),
        Command::Constants => {
            let (json, pass) = reports::constants()?;
            Report { json, pass }
        }
    })
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BoundViolated(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(report) => {
            print!("{}", render(&report.json, cli.format));
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("curv4: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::BoundViolated("x".into())), 1);
        assert_eq!(exit_code(&Error::Format("x".into())), 2);
        assert_eq!(
            exit_code(&Error::NotEinstein {
                norm: 1.0,
                tolerance: 1e-9
            }),
            2
        );
    }

    #[test]
    fn real_parameters_accept_expressions() {
        assert_eq!(parse_real("5/6"), Ok(5.0 / 6.0));
        assert_eq!(parse_real("1e-3"), Ok(1e-3));
        assert!((parse_real("(14 - sqrt(19))/12").unwrap() - 0.8034250880382773).abs() < 1e-15);
        assert!(parse_real("abc").is_err());
    }
}
