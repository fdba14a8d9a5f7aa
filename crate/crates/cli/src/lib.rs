//! Command-line front end: parses matrix documents and runs the dimension,
//! piecewise, verification and self-test modes.

pub mod doc;
pub mod report;

use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use heckedim::kernel::{dim_ker_hecke, dim_piecewise};
use heckedim::rational::parse_q;
use heckedim::selftest::{run_all, DEFAULT_SEED};
use heckedim::spectral::{square_grid, verify_grid};
use heckedim::{Basis, Params};

use crate::doc::parse_matrix;
use crate::report::{digest, Report};

#[derive(Debug, Parser)]
#[command(name = "heckedim", version, about = "Von Neumann dimensions of kernels over the infinite dihedral Hecke algebra")]
pub struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for the random checks and evaluation points.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[command(subcommand)]
    pub mode: Mode,
}

#[derive(Debug, Subcommand)]
pub enum Mode {
    /// Kernel dimension at fixed parameters.
    Dim {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        qs: String,
        #[arg(long, allow_hyphen_values = true)]
        qt: String,
    },
    /// Closed form on every stratum of the parameter plane (group basis only).
    Piecewise {
        #[command(flatten)]
        input: Input,
    },
    /// Truncation checks of the st-eigenvectors and recurrences.
    Verify {
        #[arg(long, default_value_t = 12)]
        depth: u64,
        /// Comma-separated `qs:qt` pairs, e.g. `1/4:4/9,9/4:4`.
        #[arg(long)]
        grid: Option<String>,
    },
    /// Runs the acceptance suite.
    Selftest,
}

#[derive(Debug, Args)]
pub struct Input {
    /// Matrix document; reads standard input when absent or `-`.
    pub file: Option<PathBuf>,
    /// Matrix document given inline.
    #[arg(long, conflicts_with = "file")]
    pub matrix: Option<String>,
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, stderr: String::new(), code: 0 }
    }

    fn checks(stdout: String, passed: bool) -> Self {
        Outcome { stdout, stderr: String::new(), code: if passed { 0 } else { 1 } }
    }

    fn input_error(msg: impl std::fmt::Display) -> Self {
        Outcome { stdout: String::new(), stderr: format!("error: {msg}\n"), code: 2 }
    }

    fn check_error(msg: impl std::fmt::Display) -> Self {
        Outcome { stdout: String::new(), stderr: format!("error: {msg}\n"), code: 1 }
    }
}

fn read_input(input: &Input, stdin: &mut dyn Read) -> Result<String, String> {
    if let Some(text) = &input.matrix {
        return Ok(text.clone());
    }
    match &input.file {
        Some(path) if path.as_os_str() != "-" => {
            std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
        }
        _ => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(|e| format!("stdin: {e}"))?;
            Ok(s)
        }
    }
}

fn parse_params(qs: &str, qt: &str) -> Result<Params, heckedim::Error> {
    Params::new(parse_q(qs)?, parse_q(qt)?)
}

pub fn parse_grid(text: &str) -> Result<Vec<Params>, String> {
    text.split(',')
        .map(|pair| {
            let (a, b) = pair
                .trim()
                .split_once(':')
                .ok_or_else(|| format!("grid entry {pair:?} is not of the form qs:qt"))?;
            parse_params(a.trim(), b.trim()).map_err(|e| e.to_string())
        })
        .collect()
}

pub fn execute(cli: &Cli, stdin: &mut dyn Read) -> Outcome {
    let render = |r: Report| if cli.json { r.to_json() } else { r.to_text() };
    match &cli.mode {
        Mode::Dim { input, qs, qt } => {
            let p = match parse_params(qs, qt) {
                Ok(p) => p,
                Err(e) => return Outcome::input_error(e),
            };
            let text = match read_input(input, stdin) {
                Ok(t) => t,
                Err(e) => return Outcome::input_error(e),
            };
            let m = match parse_matrix(&text).map_err(|e| e.to_string()).and_then(|d| {
                d.to_matrix(&p).map_err(|e| e.to_string())
            }) {
                Ok(m) => m,
                Err(e) => return Outcome::input_error(e),
            };
            match dim_ker_hecke(&m, &p) {
                Ok(r) => Outcome::ok(render(Report::dim(digest(&text), &p, &r))),
                Err(e) => Outcome::check_error(e),
            }
        }
        Mode::Piecewise { input } => {
            let text = match read_input(input, stdin) {
                Ok(t) => t,
                Err(e) => return Outcome::input_error(e),
            };
            let doc = match parse_matrix(&text) {
                Ok(d) => d,
                Err(e) => return Outcome::input_error(e),
            };
            if doc.basis != Basis::Group {
                return Outcome::input_error(heckedim::Error::PiecewiseNeedsGroupBasis);
            }
            let m = match doc.to_matrix(&Params::trivial()) {
                Ok(m) => m,
                Err(e) => return Outcome::input_error(e),
            };
            match dim_piecewise(&m) {
                Ok(pw) => Outcome::ok(render(Report::piecewise(digest(&text), &pw))),
                Err(e) => Outcome::check_error(e),
            }
        }
        Mode::Verify { depth, grid } => {
            let points = match grid {
                Some(g) => match parse_grid(g) {
                    Ok(p) => p,
                    Err(e) => return Outcome::input_error(e),
                },
                None => square_grid(),
            };
            let canon: Vec<String> = points.iter().map(|p| format!("{}:{}", heckedim::rational::fmt_q(&p.q_s), heckedim::rational::fmt_q(&p.q_t))).collect();
            let checks = verify_grid(&points, *depth);
            let passed = checks.iter().all(|c| c.passed);
            let d = digest(&format!("verify depth={depth} grid={}", canon.join(",")));
            Outcome::checks(render(Report::verify(d, &checks)), passed)
        }
        Mode::Selftest => {
            let results = run_all(cli.seed);
            let passed = results.iter().all(|c| c.passed);
            let d = digest(&format!("selftest seed={}", cli.seed));
            Outcome::checks(render(Report::selftest(d, &results)), passed)
        }
    }
}
