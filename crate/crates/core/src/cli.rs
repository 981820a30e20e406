//! The `dphase` command line.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 bad input
//! (flags, non-symplectic matrix, parity mismatch, unnormalized state),
//! 3 decomposition failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::metaplectic::Metaplectic;
use crate::modring::to_symmetric;
use crate::qops::{DeltaFamily, Lattice, Parity};
use crate::symplectic::{decompose_traced, decompose_with, GenPower, Method, SympMat};
use crate::verify::{self, Suite};
use crate::wigner::{wigner_of, QuantumState, NORM_TOLERANCE};
use crate::CMatrix;

#[derive(Debug, Parser)]
#[command(name = "dphase", version, about = "Discrete phase space: symplectic words, metaplectic unitaries, Wigner tables")]
pub struct Cli {
    /// Override every verification tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Index display: canonical 0..M-1, or symmetric -(M-1)/2..(M-1)/2 (odd lattices).
    #[arg(long, global = true, value_enum, default_value_t = IndexStyle::Canonical)]
    pub index_style: IndexStyle,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IndexStyle {
    Canonical,
    Symmetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Euclid,
    Bfs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Factor a symplectic matrix into generator powers.
    Decompose {
        #[arg(long)]
        modulus: u64,
        /// Entries a,b,c,d of [[a,b],[c,d]].
        #[arg(long, value_parser = parse_matrix, allow_hyphen_values = true)]
        matrix: [i64; 4],
        #[arg(long, value_enum, default_value_t = MethodArg::Euclid)]
        method: MethodArg,
    },
    /// Print the unitary representing a symplectic matrix.
    Rep {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        parity: Parity,
        #[arg(long, value_parser = parse_matrix, allow_hyphen_values = true)]
        matrix: [i64; 4],
    },
    /// Wigner table of a state as CSV.
    Wigner {
        /// JSON file {"dim": N, "amplitudes": [[re, im], ...]}.
        #[arg(long)]
        state: PathBuf,
        #[arg(long)]
        parity: Parity,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        parity: Parity,
        #[arg(long, default_value = "all")]
        suite: Suite,
    },
}

fn parse_matrix(s: &str) -> Result<[i64; 4], String> {
    let parts = s
        .split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|e| format!("{x:?}: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    parts.try_into().map_err(|v: Vec<i64>| format!("expected 4 entries, got {}", v.len()))
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn fail(code: i32, msg: impl std::fmt::Display) -> Self {
        Outcome { code, stdout: String::new(), stderr: format!("error: {msg}\n") }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            }
        }
    }
}

pub fn execute(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Decompose { modulus, matrix, method } => decompose_cmd(*modulus, *matrix, *method, cli.index_style),
        Command::Rep { dim, parity, matrix } => rep_cmd(*dim, *parity, *matrix, cli.index_style),
        Command::Wigner { state, parity } => wigner_cmd(state, *parity, cli.index_style),
        Command::Verify { dim, parity, suite } => verify_cmd(*dim, *parity, *suite, cli.tol),
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("report types serialize");
    s.push('\n');
    s
}

fn shown_entries(s: &SympMat, style: IndexStyle) -> [i64; 4] {
    s.entries().map(|x| match style {
        IndexStyle::Canonical => x as i64,
        IndexStyle::Symmetric => to_symmetric(x, s.modulus()),
    })
}

/// Canonical indices listed in display order.
fn display_order(modulus: u64, style: IndexStyle) -> Result<Vec<usize>, Error> {
    match style {
        IndexStyle::Canonical => Ok((0..modulus as usize).collect()),
        IndexStyle::Symmetric if modulus % 2 == 1 => {
            let h = (modulus as i64 - 1) / 2;
            Ok((-h..=h).map(|v| v.rem_euclid(modulus as i64) as usize).collect())
        }
        IndexStyle::Symmetric => Err(Error::ParityError("symmetric indices need an odd modulus".into())),
    }
}

#[derive(Serialize)]
struct DecomposeOut {
    modulus: u64,
    matrix: [i64; 4],
    word: Vec<GenPower>,
    verified: bool,
    method: Method,
}

fn decompose_cmd(modulus: u64, m: [i64; 4], method: MethodArg, style: IndexStyle) -> Outcome {
    let s = match SympMat::new(m[0], m[1], m[2], m[3], modulus) {
        Ok(s) => s,
        Err(e) => return Outcome::fail(2, e),
    };
    let found = match method {
        MethodArg::Euclid => decompose_traced(&s),
        MethodArg::Bfs => decompose_with(&s, Method::Bfs).map(|w| (w, Method::Bfs)),
    };
    let (word, used) = match found {
        Ok(x) => x,
        Err(e) => return Outcome::fail(3, e),
    };
    let verified = word.evaluate() == s;
    let out = DecomposeOut {
        modulus,
        matrix: shown_entries(&s, style),
        word: word.factors().to_vec(),
        verified,
        method: used,
    };
    if verified {
        Outcome::ok(json(&out))
    } else {
        Outcome { code: 3, stdout: json(&out), stderr: "error: word does not evaluate to the input\n".into() }
    }
}

#[derive(Serialize)]
struct RepOut {
    dim: usize,
    parity: Parity,
    modulus: u64,
    matrix: [i64; 4],
    word: Vec<GenPower>,
    unitary: Vec<Vec<[f64; 2]>>,
    covariance_residual: f64,
}

fn rep_cmd(dim: usize, parity: Parity, m: [i64; 4], style: IndexStyle) -> Outcome {
    let lattice = match Lattice::new(dim, parity) {
        Ok(l) => l,
        Err(e) => return Outcome::fail(2, e),
    };
    let order = match display_order(dim as u64, style) {
        Ok(o) => o,
        Err(e) => return Outcome::fail(2, e),
    };
    let s = match SympMat::new(m[0], m[1], m[2], m[3], lattice.modulus()) {
        Ok(s) => s,
        Err(e) => return Outcome::fail(2, e),
    };
    let word = match decompose_traced(&s) {
        Ok((w, _)) => w,
        Err(e) => return Outcome::fail(3, e),
    };
    let u = Metaplectic::<f64>::new(lattice).unitary(&word);
    let residual = match DeltaFamily::<f64>::new(&lattice).covariance_residual(u.matrix(), &s) {
        Ok(r) => r,
        Err(e) => return Outcome::fail(2, e),
    };
    let shown: CMatrix<f64> = u.matrix().permuted(&order);
    let out = RepOut {
        dim,
        parity,
        modulus: lattice.modulus(),
        matrix: shown_entries(&s, style),
        word: word.factors().to_vec(),
        unitary: shown.rows().map(|r| r.iter().map(|z| [z.re, z.im]).collect()).collect(),
        covariance_residual: residual,
    };
    Outcome::ok(json(&out))
}

#[derive(Deserialize)]
struct StateFile {
    dim: usize,
    amplitudes: Vec<[f64; 2]>,
}

fn wigner_cmd(path: &PathBuf, parity: Parity, style: IndexStyle) -> Outcome {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return Outcome::fail(2, format!("{}: {e}", path.display())),
    };
    let file: StateFile = match serde_json::from_str(&text) {
        Ok(f) => f,
        Err(e) => return Outcome::fail(2, format!("{}: {e}", path.display())),
    };
    if file.amplitudes.len() != file.dim {
        return Outcome::fail(2, Error::DimensionMismatch { expected: file.dim, actual: file.amplitudes.len() });
    }
    let amps = file.amplitudes.iter().map(|&[re, im]| Complex::new(re, im)).collect();
    let state = match QuantumState::new(amps, NORM_TOLERANCE) {
        Ok(s) => s,
        Err(e) => return Outcome::fail(2, e),
    };
    let lattice = match Lattice::new(file.dim, parity) {
        Ok(l) => l,
        Err(e) => return Outcome::fail(2, e),
    };
    let order = match display_order(lattice.modulus(), style) {
        Ok(o) => o,
        Err(e) => return Outcome::fail(2, e),
    };
    let table = match wigner_of(&state, &lattice) {
        Ok(t) => t,
        Err(e) => return Outcome::fail(2, e),
    };
    let mut out = String::new();
    writeln!(out, "# parity={}, modulus={}", parity, lattice.modulus()).unwrap();
    for &m in &order {
        let row: Vec<String> = order.iter().map(|&n| format!("{:?}", table.get(m, n))).collect();
        writeln!(out, "{}", row.join(",")).unwrap();
    }
    writeln!(out, "# sum={:?}", table.sum()).unwrap();
    Outcome::ok(out)
}

fn verify_cmd(dim: usize, parity: Parity, suite: Suite, tol: Option<f64>) -> Outcome {
    let lattice = match Lattice::new(dim, parity) {
        Ok(l) => l,
        Err(e) => return Outcome::fail(2, e),
    };
    match verify::run(suite, &lattice, tol) {
        Ok(report) => {
            let code = if report.pass { 0 } else { 1 };
            Outcome { code, stdout: json(&report), stderr: String::new() }
        }
        Err(e @ Error::ParityError(_)) => Outcome::fail(2, e),
        Err(e) => Outcome::fail(3, e),
    }
}
