//! Command-line surface.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::algebra_file::load_algebra;
use crate::error::{Error, Result};
use crate::expr::{parse_expr, print_expr};
use crate::prelie::{build_hat, HatLie, PreLieAlgebra};
use crate::reduce::Reducer;
use crate::report::Report;
use crate::rules::FamilySet;
use crate::suite;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "prelie-embed", version, about = "Rota-Baxter rewriting for pre-Lie algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Families {
    Straighten,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the pre-Lie identity on all basis triples.
    CheckPrelie { file: PathBuf },
    /// Print the bracket and operator tables of the doubled Lie algebra.
    Hat { file: PathBuf },
    /// Print the normal form of an expression.
    Nf {
        file: PathBuf,
        #[arg(short = 'e', long = "expr")]
        expr: String,
        #[arg(long, value_enum, default_value = "all")]
        families: Families,
    },
    /// Check every composition among relations within the bounds.
    GsbVerify {
        file: PathBuf,
        #[arg(long)]
        max_deg: u32,
        #[arg(long)]
        max_rdeg: u32,
        /// Worker threads; 0 picks one per core.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Sampled identities in the enveloping algebra and the embedding.
    EnvelopeVerify {
        file: PathBuf,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// The straightening identity for `y x^l` and its binomial identity.
    Lemma34 {
        file: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_l: usize,
        #[arg(long, default_value_t = 12)]
        max_binomial_l: usize,
    },
    /// Compare normal forms under two reduction strategies.
    Confluence {
        file: PathBuf,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn load_hat(path: &Path) -> Result<(PreLieAlgebra, HatLie)> {
    let a = load_algebra(path)?;
    let hat = build_hat(&a)?;
    Ok((a, hat))
}

fn finish(report: &Report, json: Option<&Path>, out: &mut dyn Write) -> Result<i32> {
    write!(out, "{}", report.summary())?;
    if let Some(path) = json {
        fs::write(path, report.to_json() + "\n")?;
    }
    Ok(if report.pass { EXIT_PASS } else { EXIT_FAIL })
}

pub fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    match cli.command {
        Command::CheckPrelie { file } => {
            let a = load_algebra(&file)?;
            finish(&suite::prelie_report(&a), None, out)
        }
        Command::Hat { file } => {
            let (_, hat) = load_hat(&file)?;
            write!(out, "{}", suite::hat_tables(&hat))?;
            finish(&suite::hat_report(&hat), None, out)
        }
        Command::Nf {
            file,
            expr,
            families,
        } => {
            let (a, hat) = load_hat(&file)?;
            let p = parse_expr(&expr, a.dim())?;
            let families = match families {
                Families::Straighten => FamilySet::STRAIGHTEN,
                Families::All => FamilySet::ALL,
            };
            let nf = Reducer::new(&hat).families(families).normal_form(&p)?;
            writeln!(out, "{}", print_expr(&nf))?;
            Ok(EXIT_PASS)
        }
        Command::GsbVerify {
            file,
            max_deg,
            max_rdeg,
            jobs,
            json,
        } => {
            let (_, hat) = load_hat(&file)?;
            let report = suite::gsb_report(&hat, max_deg, max_rdeg, jobs)?;
            finish(&report, json.as_deref(), out)
        }
        Command::EnvelopeVerify {
            file,
            samples,
            seed,
            json,
        } => {
            let (a, hat) = load_hat(&file)?;
            let report = suite::envelope_report(&a, &hat, samples, seed)?;
            finish(&report, json.as_deref(), out)
        }
        Command::Lemma34 {
            file,
            max_l,
            max_binomial_l,
        } => {
            let (_, hat) = load_hat(&file)?;
            finish(&suite::lemma_report(&hat, max_l, max_binomial_l)?, None, out)
        }
        Command::Confluence { file, samples, seed } => {
            let (_, hat) = load_hat(&file)?;
            finish(&suite::confluence_report(&hat, samples, seed)?, None, out)
        }
    }
}

/// Parses arguments and runs; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::StepLimit(_) => EXIT_FAIL,
                _ => EXIT_USAGE,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(args.iter().copied(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn usage_errors_exit_two() {
        let (code, _, err) = run_capture(&["prelie-embed", "frobnicate"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(!err.is_empty());
        let (code, _, err) = run_capture(&["prelie-embed", "nf", "/nonexistent.json", "-e", "x1"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.starts_with("error:"));
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_capture(&["prelie-embed", "--help"]);
        assert_eq!(code, EXIT_PASS);
        assert!(out.contains("gsb-verify"));
    }
}
