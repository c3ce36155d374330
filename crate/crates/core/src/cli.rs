//! Command-line front end.
//!
//! Exit codes: 0 every claim verified (or the diagnostic/search completed),
//! 1 some claim refuted or errored, 2 numeric non-convergence, 64 usage,
//! 65 malformed input, 70 internal error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::detkit::DetAlgo;
use crate::error::{Error, Result};
use crate::identity::{DEFAULT_MAX_SYMBOLIC_N, NUMERIC_TOL};
use crate::matrix::json::AnyMatrix;
use crate::matrix::Matrix;
use crate::numaccretive::{
    complex_witness, remark45_matrix, remark45_repro, search_complex_violation_from, AccretiveWitness,
    INEQUALITY_TOL,
};
use crate::report::{text_summary, CertificateReport};
use crate::sample::{self, claim_rng, DEFAULT_SEED};
use crate::suite;

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_NUMERIC: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_INPUT: i32 = 65;
pub const EXIT_INTERNAL: i32 = 70;

#[derive(Parser, Debug)]
#[command(name = "minorcert", version, about = "Certificates for contiguous-minor identities of Toeplitz and accretive matrices")]
pub struct RunConfig {
    /// Master seed; every random family draws from its own stream of it.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run a verification suite.
    #[command(subcommand)]
    Verify(Verify),
    /// Reproduce a documented diagnostic.
    #[command(subcommand)]
    Repro(Repro),
    /// Randomized counterexample search.
    #[command(subcommand)]
    Search(Search),
    /// Determinant timings.
    #[command(subcommand)]
    Bench(Bench),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Symbolic,
    Numeric,
}

#[derive(Subcommand, Debug)]
pub enum Verify {
    /// The Toeplitz identity 2 det A(1,1) = det A(1,2) + det A(2,1) for A + A^T = 2J.
    Johnson {
        /// Single order; all of 2..=max-n (symbolic) or 2..=12 (numeric) when omitted.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, default_value_t = Mode::Symbolic)]
        mode: Mode,
        /// Random instances per order (numeric mode).
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_SYMBOLIC_N)]
        max_n: usize,
        #[arg(long, default_value_t = NUMERIC_TOL)]
        tol: f64,
    },
    /// Reduced-case identities, skew adjugate parity, rank-one expansion, equivalence chain.
    Lemmas {
        #[arg(long, default_value_t = DEFAULT_MAX_SYMBOLIC_N)]
        n: usize,
    },
    /// Equality of the geometric and arithmetic minor means for rank-one symmetric part.
    Bt {
        #[arg(long, default_value_t = 10)]
        dim: usize,
        /// Floating instances (the exact rational batch is fixed at 50).
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Exact values of K and C at b1 = 1, b_k = 0.
    Specialization {
        #[arg(long, default_value_t = 7)]
        m: usize,
    },
    /// Determinant sign, adjugate accretivity and the minor inequality for real accretive matrices.
    Accretive {
        #[arg(long, default_value_t = 8)]
        dim: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = INEQUALITY_TOL)]
        tol: f64,
        /// Check one matrix from a JSON file instead of random instances.
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Cross-check the three determinant algorithms on random integer matrices.
    Oracles {
        #[arg(long, default_value_t = suite::ORACLE_INSTANCES)]
        count: usize,
    },
}

#[derive(Subcommand, Debug)]
pub enum Repro {
    /// The 4x4 complex matrix whose Hermitian part is PSD but violates the minor inequality.
    Remark45,
}

#[derive(Subcommand, Debug)]
pub enum Search {
    /// Hill-climb toward complex violations of the minor inequality.
    Complex {
        #[arg(long, default_value_t = 4)]
        dim: usize,
        #[arg(long, default_value_t = 100_000)]
        iters: usize,
        /// Start the first episode at the documented 4x4 counterexample.
        #[arg(long, conflicts_with = "from")]
        from_remark45: bool,
        /// Start the first episode at a complex matrix read from a JSON file.
        #[arg(long)]
        from: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BenchScalar {
    Int,
    Poly,
}

#[derive(Subcommand, Debug)]
pub enum Bench {
    /// Time determinant algorithms on random matrices.
    Det {
        /// Algorithm; all three when omitted.
        #[arg(long)]
        algo: Option<DetAlgo>,
        #[arg(long, default_value_t = 6)]
        order: usize,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, value_enum, default_value_t = BenchScalar::Int)]
        scalar: BenchScalar,
    },
}

/// Rendered result of one invocation.
pub struct Outcome {
    pub document: Value,
    pub text: String,
    pub exit: i32,
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Usage(_) => EXIT_USAGE,
        Error::Input { .. } => EXIT_INPUT,
        Error::Numeric(_) => EXIT_NUMERIC,
        Error::Internal(_) => EXIT_INTERNAL,
    }
}

pub fn load_matrix(path: &Path) -> Result<AnyMatrix> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input { field: "path".into(), message: format!("{}: {e}", path.display()) })?;
    AnyMatrix::parse(&text)
}

pub fn save_matrix(m: &AnyMatrix, path: &Path) -> Result<()> {
    let text = serde_json::to_string_pretty(&m.to_json()).expect("matrix serializes");
    write_file(path, &text)
}

pub fn save_report(reports: &[CertificateReport], path: &Path) -> Result<()> {
    let text = serde_json::to_string_pretty(reports).expect("reports serialize");
    write_file(path, &text)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, format!("{text}\n"))
        .map_err(|e| Error::Input { field: "out".into(), message: format!("{}: {e}", path.display()) })
}

fn verify_outcome(command: &str, seed: u64, mut reports: Vec<CertificateReport>) -> Outcome {
    for r in &mut reports {
        r.seed = Some(seed);
    }
    let verified = reports.iter().filter(|r| r.is_verified()).count();
    let total = reports.len();
    let text = format!("{}{verified}/{total} verified\n", text_summary(&reports));
    Outcome {
        document: json!({
            "command": command,
            "seed": seed,
            "verified": verified,
            "total": total,
            "reports": reports,
        }),
        text,
        exit: if verified == total { EXIT_OK } else { EXIT_REFUTED },
    }
}

fn witness_text(w: &AccretiveWitness) -> String {
    format!(
        "lhs {:.6}  rhs {:.6}  margin {:.6e}  sym-part eig [{:.6e}, {:.6e}]\n",
        w.lhs, w.rhs, w.margin, w.sym_part_min_eig, w.sym_part_max_eig
    )
}

fn real_view(m: &AnyMatrix) -> Result<Matrix<f64>> {
    let to_f64 = |x: Option<f64>| x.ok_or_else(|| Error::input("data", "entry does not fit an f64"));
    match m {
        AnyMatrix::Real(a) => Ok(a.clone()),
        AnyMatrix::Int(a) => a.try_map(|x| to_f64(x.to_f64())),
        AnyMatrix::Rat(a) => a.try_map(|x| to_f64(x.to_f64())),
        AnyMatrix::Poly(_) | AnyMatrix::Complex(_) => Err(Error::usage("expected a real matrix")),
    }
}

fn complex_view(m: &AnyMatrix) -> Result<Matrix<Complex64>> {
    match m {
        AnyMatrix::Complex(a) => Ok(a.clone()),
        other => Ok(real_view(other)?.map(|&x| Complex64::new(x, 0.0))),
    }
}

fn run_verify(v: &Verify, seed: u64) -> Result<Outcome> {
    Ok(match v {
        Verify::Johnson { n, mode, trials, max_n, tol } => {
            let reports = match mode {
                Mode::Symbolic => match n {
                    Some(n) => suite::johnson_symbolic([*n], *max_n)?,
                    None => suite::johnson_symbolic(2..=*max_n, *max_n)?,
                },
                Mode::Numeric => {
                    let orders: Vec<usize> = match n {
                        Some(n) => vec![*n],
                        None => (2..=12).collect(),
                    };
                    let mut out = Vec::new();
                    for k in orders {
                        out.extend(suite::johnson_numeric(k, *trials, seed, *tol)?);
                    }
                    out
                }
            };
            verify_outcome("verify johnson", seed, reports)
        }
        Verify::Lemmas { n } => verify_outcome("verify lemmas", seed, suite::lemmas(*n, seed)?),
        Verify::Bt { dim, trials, tol } => verify_outcome("verify bt", seed, suite::bt(*dim, *trials, seed, *tol)?),
        Verify::Specialization { m } => verify_outcome("verify specialization", seed, suite::specialization(*m)?),
        Verify::Accretive { dim, trials, tol, file } => {
            let reports = match file {
                None => suite::accretive(*dim, *trials, seed, *tol)?,
                Some(path) => match load_matrix(path)? {
                    AnyMatrix::Complex(a) => {
                        let w = complex_witness(&a)?;
                        vec![w.to_report(format!("complex_minor_inequality_n{}", a.rows()), *tol)]
                    }
                    other => suite::accretive_checks(&real_view(&other)?, *tol)?,
                },
            };
            verify_outcome("verify accretive", seed, reports)
        }
        Verify::Oracles { count } => verify_outcome("verify oracles", seed, suite::oracles(*count, seed)?),
    })
}

fn run_repro() -> Outcome {
    let w = remark45_repro();
    let psd = w.sym_part_min_eig >= -1e-6 * w.sym_part_max_eig;
    let text = format!(
        "4x4 complex matrix, Hermitian part {} (λ_min {:.3e})\n{}minor inequality {}\n",
        if psd { "PSD" } else { "NOT PSD" },
        w.sym_part_min_eig,
        witness_text(&w),
        if w.margin < 0.0 { "violated" } else { "holds" },
    );
    Outcome {
        document: json!({
            "command": "repro remark45",
            "hermitian_part_psd": psd,
            "violated": w.margin < 0.0,
            "witness": w.to_json(),
        }),
        text,
        exit: EXIT_OK,
    }
}

fn run_search(s: &Search, seed: u64) -> Result<Outcome> {
    let Search::Complex { dim, iters, from_remark45, from } = s;
    let start = if *from_remark45 {
        Some(remark45_matrix())
    } else if let Some(path) = from {
        Some(complex_view(&load_matrix(path)?)?)
    } else {
        None
    };
    let found = search_complex_violation_from(start.as_ref(), *dim, *iters, seed)?;
    let mut text = format!("{} violation(s) at dim {dim} after {iters} iterations\n", found.len());
    for w in &found {
        text.push_str(&witness_text(w));
    }
    Ok(Outcome {
        document: json!({
            "command": "search complex",
            "dim": dim,
            "iters": iters,
            "seed": seed,
            "witnesses": found.iter().map(AccretiveWitness::to_json).collect::<Vec<_>>(),
        }),
        text,
        exit: EXIT_OK,
    })
}

fn det_hash(x: &impl std::fmt::Display) -> String {
    hex::encode(Sha256::digest(x.to_string().as_bytes()))[..16].to_string()
}

fn run_bench(b: &Bench, seed: u64) -> Result<Outcome> {
    let Bench::Det { algo, order, trials, scalar } = b;
    let algos: Vec<DetAlgo> = algo.map_or_else(|| DetAlgo::ALL.to_vec(), |a| vec![a]);
    let mut rng = claim_rng(seed, 0);
    let mut rows = Vec::new();
    let mut text = String::new();
    for trial in 0..*trials {
        enum Input {
            Int(Matrix<num_bigint::BigInt>),
            Poly(Matrix<crate::ring::MultiPoly>),
        }
        let input = match scalar {
            BenchScalar::Int => Input::Int(sample::int_matrix(&mut rng, *order, *order, -9, 9)),
            BenchScalar::Poly => Input::Poly(Matrix::from_fn(*order, *order, |_, _| sample::poly(&mut rng, 2, 3))),
        };
        for &a in &algos {
            let t0 = Instant::now();
            let hash = match &input {
                Input::Int(m) => det_hash(&a.det(m)?),
                Input::Poly(m) => det_hash(&a.det(m)?),
            };
            let nanos = t0.elapsed().as_nanos() as u64;
            text.push_str(&format!("{a:<13} order {order:>3}  trial {trial:>3}  {nanos:>12} ns  {hash}\n"));
            rows.push(json!({ "algo": a, "order": order, "trial": trial, "nanos": nanos, "det_hash": hash }));
        }
    }
    Ok(Outcome {
        document: json!({ "command": "bench det", "scalar": format!("{scalar:?}").to_lowercase(), "seed": seed, "rows": rows }),
        text,
        exit: EXIT_OK,
    })
}

pub fn execute(cfg: &RunConfig) -> Result<Outcome> {
    match &cfg.command {
        Command::Verify(v) => run_verify(v, cfg.seed),
        Command::Repro(Repro::Remark45) => Ok(run_repro()),
        Command::Search(s) => run_search(s, cfg.seed),
        Command::Bench(b) => run_bench(b, cfg.seed),
    }
}

fn emit(cfg: &RunConfig, outcome: &Outcome, stdout: &mut dyn Write) -> Result<()> {
    let body = match cfg.format {
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&outcome.document).expect("serializable")),
        Format::Text => outcome.text.clone(),
    };
    match &cfg.out {
        Some(path) => std::fs::write(path, body)
            .map_err(|e| Error::Input { field: "out".into(), message: format!("{}: {e}", path.display()) }),
        None => stdout
            .write_all(body.as_bytes())
            .map_err(|e| Error::Internal(format!("writing stdout: {e}"))),
    }
}

/// Parse `args`, run, print, and return the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { stderr.write_all(rendered.as_bytes()) } else { stdout.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let result = execute(&cfg).and_then(|o| emit(&cfg, &o, stdout).map(|_| o.exit));
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "minorcert: {e}");
            exit_code(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["minorcert"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn johnson_symbolic_single() {
        let (code, out, _) = run_args(&["verify", "johnson", "--n", "4", "--mode", "symbolic"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["total"], 1);
        assert_eq!(v["reports"][0]["status"], "verified");
    }

    #[test]
    fn johnson_n1_is_usage_error() {
        let (code, _, err) = run_args(&["verify", "johnson", "--n", "1"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("usage error"));
    }

    #[test]
    fn bad_flag_is_usage_error() {
        let (code, _, err) = run_args(&["verify", "johnson", "--bogus"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("Usage"));
    }

    #[test]
    fn repro_text() {
        let (code, out, _) = run_args(&["repro", "remark45", "--format", "text"]);
        assert_eq!(code, 0);
        assert!(out.contains("violated"));
    }

    #[test]
    fn bench_rows() {
        let (code, out, _) = run_args(&["bench", "det", "--order", "4", "--trials", "2"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        let rows = v["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 6);
        // the three algorithms agree on each trial
        assert_eq!(rows[0]["det_hash"], rows[1]["det_hash"]);
        assert_eq!(rows[0]["det_hash"], rows[2]["det_hash"]);
    }
}
