use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use reflmono::extdata::Convention;
use reflmono::par::Exec;
use reflmono_cli::run::{
    parse_twist, run_analyze, run_carousel, run_catalog, run_selftest, AnalyzeArgs, Output, EXIT_USAGE,
};

#[derive(Parser)]
#[command(name = "reflmono", version, about = "Induced braid-group modules of reflection-group extensions")]
struct Cli {
    /// Distribute independent per-hyperplane work over threads.
    #[arg(long, global = true)]
    parallel: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ConventionArg {
    Standard,
    FlipInertia,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full pipeline on a datum file for one character.
    Analyze {
        datum: PathBuf,
        /// `trivial`, `k:a1,…` on the canonical generators of I, or a JSON object.
        #[arg(long)]
        chi: String,
        /// JSON file with `by_orbit` / `by_hyperplane` R̄ polynomials.
        #[arg(long)]
        rbar: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        convention: Option<ConventionArg>,
    },
    /// Print a catalog group with its arrangement.
    Catalog {
        #[command(subcommand)]
        family: CatalogFamily,
    },
    /// Build the rank-one carousel model and its minimal polynomials.
    Carousel {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        e: usize,
        #[arg(long, allow_hyphen_values = true)]
        sgn: i8,
        /// Root of unity exp(2πi·a/b), written `a/b`.
        #[arg(long, default_value = "0/1", allow_hyphen_values = true)]
        twist: String,
    },
    /// Run the property suites: all, cyclo, reflgrp, extdata, chi, carousel, hecke or induce.
    Selftest {
        #[arg(default_value = "all")]
        scope: String,
    },
}

#[derive(Subcommand)]
enum CatalogFamily {
    /// G(m, p, r)
    G { m: usize, p: usize, r: usize },
}

fn emit(out: Output, path: Option<&PathBuf>) -> ExitCode {
    match path {
        Some(p) => {
            if let Err(e) = fs::write(p, &out.json) {
                eprintln!("cannot write {}: {e}", p.display());
                return ExitCode::from(EXIT_USAGE as u8);
            }
        }
        None => print!("{}", out.json),
    }
    ExitCode::from(out.code as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    let exec = if cli.parallel { Exec::Rayon } else { Exec::Sequential };
    match cli.command {
        Command::Analyze {
            datum,
            chi,
            rbar,
            out,
            convention,
        } => {
            let args = AnalyzeArgs {
                datum,
                chi,
                rbar,
                convention: convention.map(|c| match c {
                    ConventionArg::Standard => Convention::Standard,
                    ConventionArg::FlipInertia => Convention::FlipInertia,
                }),
                exec,
            };
            let report = run_analyze(&args);
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
            let code = report.exit_code;
            emit(
                Output {
                    json: report.to_json(),
                    code,
                },
                out.as_ref(),
            )
        }
        Command::Catalog {
            family: CatalogFamily::G { m, p, r },
        } => emit(run_catalog(m, p, r), None),
        Command::Carousel { n, e, sgn, twist } => match parse_twist(&twist) {
            Ok(t) => emit(run_carousel(n, e, sgn, t), None),
            Err(msg) => {
                eprintln!("{msg}");
                ExitCode::from(EXIT_USAGE as u8)
            }
        },
        Command::Selftest { scope } => emit(run_selftest(&scope, exec), None),
    }
}
