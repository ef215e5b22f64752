//! The `fockpair` command line: matrix files in, one JSON report out.
//!
//! Exit codes: 0 converged or succeeded, 1 malformed input, 2 divergence
//! verdict, 3 undecided, 4 domain violation, 5 failed verification.

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::antilinear::{siegel_membership, takagi, AntilinearSymmetricMap, SiegelMembership};
use crate::detsqrt::{det_sqrt, det_sqrt_by_continuation, hermitian_part_min_eigenvalue, GvMatrix};
use crate::error::{Error, Result};
use crate::gaussian::{gaussian_series, norm_sq_closed, pair_closed, GaussianSeed};
use crate::pairing::{
    abel_pairing, divergence_demo, pairing_1, pairing_t, sequence_noninvariance_demo,
    Acceleration, PairingReport, RegularizationConfig, Verdict,
};
use crate::verify::{run_suite, Suite, SuiteReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_DIVERGENT: i32 = 2;
pub const EXIT_UNDECIDED: i32 = 3;
pub const EXIT_DOMAIN: i32 = 4;
pub const EXIT_VERIFY_FAILED: i32 = 5;

/// Symmetry tolerance applied to `antilinear_symmetric` files at load.
pub const FILE_SYMMETRY_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixRole {
    AntilinearSymmetric,
    General,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub dim: usize,
    pub role: MatrixRole,
    pub entries: Vec<Vec<Entry>>,
}

impl MatrixFile {
    pub fn from_matrix(matrix: &DMatrix<Complex64>, role: MatrixRole) -> Self {
        Self {
            dim: matrix.nrows(),
            role,
            entries: matrix
                .row_iter()
                .map(|row| row.iter().map(|z| Entry { re: z.re, im: z.im }).collect())
                .collect(),
        }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Ok(serde_json::from_str(&text)?)
    }

    /// The entries as a matrix, after shape and finiteness checks.
    pub fn matrix(&self) -> Result<DMatrix<Complex64>> {
        if self.dim == 0 {
            return Err(Error::InvalidInput("dim must be positive".into()));
        }
        if self.entries.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: self.entries.len(),
            });
        }
        for row in &self.entries {
            if row.len() != self.dim {
                return Err(Error::DimensionMismatch {
                    expected: self.dim,
                    found: row.len(),
                });
            }
            if row.iter().any(|e| !e.re.is_finite() || !e.im.is_finite()) {
                return Err(Error::InvalidInput("entries must be finite".into()));
            }
        }
        Ok(DMatrix::from_fn(self.dim, self.dim, |i, j| {
            let e = self.entries[i][j];
            Complex64::new(e.re, e.im)
        }))
    }

    pub fn antilinear_map(&self) -> Result<AntilinearSymmetricMap> {
        if self.role != MatrixRole::AntilinearSymmetric {
            return Err(Error::InvalidInput(
                "expected a matrix file with role antilinear_symmetric".into(),
            ));
        }
        AntilinearSymmetricMap::with_tolerance(self.matrix()?, FILE_SYMMETRY_TOL)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum PairMethod {
    Series,
    Closed,
    Abel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum NormMethod {
    Closed,
    Series,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum DemoKind {
    SequenceNoninvariance,
    Divergence,
}

#[derive(Clone, Debug, Parser)]
#[command(name = "fockpair", version, about = "Bosonic pairings of Gaussians and formal series")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Debug, clap::Args)]
pub struct Tuning {
    /// Convergence tolerance, relative to max(1, |value|).
    #[arg(long)]
    pub tol: Option<f64>,
    /// Highest degree of the series used.
    #[arg(long)]
    pub max_degree: Option<usize>,
    /// Disable epsilon-algorithm acceleration.
    #[arg(long)]
    pub no_acceleration: bool,
}

impl Tuning {
    fn config(&self) -> RegularizationConfig {
        let mut cfg = RegularizationConfig::default();
        if let Some(tol) = self.tol {
            cfg.tolerance = tol;
        }
        if let Some(max) = self.max_degree {
            cfg.max_degree = max;
        }
        if self.no_acceleration {
            cfg.acceleration = Acceleration::None;
        }
        cfg
    }
}

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Pair the Gaussians of two symmetric antilinear maps.
    Pair {
        #[arg(long)]
        x: PathBuf,
        #[arg(long)]
        y: PathBuf,
        #[arg(long, value_enum)]
        method: PairMethod,
        /// Regularization parameter: series uses the scaled pairing when t < 1,
        /// closed evaluates at t (default 1); ignored by abel.
        #[arg(long)]
        t: Option<f64>,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Squared norm of a Gaussian.
    Norm {
        #[arg(long)]
        z: PathBuf,
        #[arg(long, value_enum)]
        method: NormMethod,
        #[command(flatten)]
        tuning: Tuning,
    },
    /// Run a seeded verification suite.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Takagi factorization of a symmetric matrix.
    Takagi {
        #[arg(long)]
        z: PathBuf,
    },
    /// Holomorphic square root of the determinant on G(V).
    Detsqrt {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Reproduce a counterexample.
    Demo {
        #[arg(value_enum)]
        which: DemoKind,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[command(flatten)]
        tuning: Tuning,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Outcome {
    Pairing {
        report: PairingReport,
    },
    ClosedForm {
        value: Complex64,
        t: f64,
    },
    Norm {
        method: NormMethod,
        value: Option<f64>,
        series: Option<PairingReport>,
    },
    Verification {
        report: SuiteReport,
    },
    Takagi {
        values: Vec<f64>,
        unitary: Vec<Vec<Complex64>>,
        membership: SiegelMembership,
        reconstruction_residual: f64,
        unitarity_residual: f64,
    },
    DetSqrt {
        value: Complex64,
        hermitian_part_min_eigenvalue: f64,
        square_residual: f64,
        continuation_residual: f64,
    },
    SequenceDemo {
        plain: PairingReport,
        swapped: PairingReport,
    },
    DivergenceDemo {
        dim: usize,
        ratios: Vec<f64>,
        expected: Vec<f64>,
        max_relative_deviation: f64,
    },
    Failure {
        error: String,
        message: String,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub config: Option<RegularizationConfig>,
    pub seed: Option<u64>,
    pub outcome: Outcome,
    pub exit_code: i32,
    pub wall_time_seconds: f64,
    pub version: String,
}

fn exit_for_verdict(verdict: Verdict) -> i32 {
    match verdict {
        Verdict::Converged => EXIT_OK,
        Verdict::Divergent => EXIT_DIVERGENT,
        Verdict::Undecided => EXIT_UNDECIDED,
    }
}

fn exit_for_error(e: &Error) -> i32 {
    match e {
        Error::DomainViolation(_) => EXIT_DOMAIN,
        _ => EXIT_INPUT,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::DimensionMismatch { .. } => "dimension_mismatch",
        Error::NotSymmetric { .. } => "not_symmetric",
        Error::NotSquare { .. } => "not_square",
        Error::GuardExceeded { .. } => "guard_exceeded",
        Error::InsufficientHorizon { .. } => "insufficient_horizon",
        Error::Overflow(_) => "overflow",
        Error::DomainViolation(_) => "domain_violation",
        Error::BudgetExceeded { .. } => "budget_exceeded",
        Error::NotUnitary { .. } => "not_unitary",
        Error::InvalidInput(_) => "invalid_input",
        Error::Io(_) => "io",
        Error::Json(_) => "json",
    }
}

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn execute(command: &Command) -> Result<(Outcome, i32)> {
    match command {
        Command::Pair {
            x,
            y,
            method,
            t,
            tuning,
        } => {
            let cfg = tuning.config();
            cfg.validate()?;
            let xs = GaussianSeed::new(MatrixFile::load(x)?.antilinear_map()?);
            let ys = GaussianSeed::new(MatrixFile::load(y)?.antilinear_map()?);
            if xs.dim() != ys.dim() {
                return Err(Error::DimensionMismatch {
                    expected: xs.dim(),
                    found: ys.dim(),
                });
            }
            if *method == PairMethod::Closed {
                let t = t.unwrap_or(1.0);
                let value = pair_closed(&xs, &ys, t)?;
                return Ok((Outcome::ClosedForm { value, t }, EXIT_OK));
            }
            let gx = gaussian_series(&xs, cfg.max_degree)?;
            let gy = gaussian_series(&ys, cfg.max_degree)?;
            let report = match (method, t) {
                (PairMethod::Abel, _) => abel_pairing(&gx, &gy, &cfg)?,
                (_, Some(t)) if *t < 1.0 => pairing_t(&gx, &gy, *t, &cfg)?,
                (_, Some(t)) if *t > 1.0 || !t.is_finite() => {
                    return Err(Error::InvalidInput(format!("t must lie in (0, 1], got {t}")))
                }
                _ => pairing_1(&gx, &gy, &cfg)?,
            };
            let code = exit_for_verdict(report.verdict);
            Ok((Outcome::Pairing { report }, code))
        }
        Command::Norm { z, method, tuning } => {
            let cfg = tuning.config();
            cfg.validate()?;
            let seed = GaussianSeed::new(MatrixFile::load(z)?.antilinear_map()?);
            match method {
                NormMethod::Closed => Ok((
                    Outcome::Norm {
                        method: *method,
                        value: Some(norm_sq_closed(&seed)?),
                        series: None,
                    },
                    EXIT_OK,
                )),
                NormMethod::Series => {
                    let g = gaussian_series(&seed, cfg.max_degree)?;
                    let report = pairing_1(&g, &g, &cfg)?;
                    let code = exit_for_verdict(report.verdict);
                    Ok((
                        Outcome::Norm {
                            method: *method,
                            value: report.value.map(|v| v.re),
                            series: Some(report),
                        },
                        code,
                    ))
                }
            }
        }
        Command::Verify { suite, seed } => {
            let report = run_suite(*suite, *seed)?;
            let code = if report.passed { EXIT_OK } else { EXIT_VERIFY_FAILED };
            Ok((Outcome::Verification { report }, code))
        }
        Command::Takagi { z } => {
            let map = MatrixFile::load(z)?.antilinear_map()?;
            let f = takagi(&map);
            let m = map.dim();
            Ok((
                Outcome::Takagi {
                    values: f.values.clone(),
                    unitary: f
                        .unitary
                        .row_iter()
                        .map(|r| r.iter().copied().collect())
                        .collect(),
                    membership: siegel_membership(&map),
                    reconstruction_residual: max_abs(&(f.reconstruct() - map.matrix())),
                    unitarity_residual: max_abs(
                        &(f.unitary.adjoint() * &f.unitary - DMatrix::identity(m, m)),
                    ),
                },
                EXIT_OK,
            ))
        }
        Command::Detsqrt { matrix } => {
            let t = MatrixFile::load(matrix)?.matrix()?;
            let lowest = hermitian_part_min_eigenvalue(&t)?;
            let g = GvMatrix::new(t.clone())?;
            let value = det_sqrt(&g);
            let det = t.clone().lu().determinant();
            let tracked = *det_sqrt_by_continuation(&t, 512)?
                .last()
                .expect("continuation returns its endpoint");
            Ok((
                Outcome::DetSqrt {
                    value,
                    hermitian_part_min_eigenvalue: lowest,
                    square_residual: (value * value - det).norm(),
                    continuation_residual: (value - tracked).norm(),
                },
                EXIT_OK,
            ))
        }
        Command::Demo { which, dim, tuning } => match which {
            DemoKind::SequenceNoninvariance => {
                let cfg = tuning.config();
                cfg.validate()?;
                let demo = sequence_noninvariance_demo(&cfg)?;
                let code = if demo.plain.converged && demo.swapped.converged {
                    EXIT_OK
                } else {
                    exit_for_verdict(if demo.plain.converged {
                        demo.swapped.verdict
                    } else {
                        demo.plain.verdict
                    })
                };
                Ok((
                    Outcome::SequenceDemo {
                        plain: demo.plain,
                        swapped: demo.swapped,
                    },
                    code,
                ))
            }
            DemoKind::Divergence => {
                let ratios = divergence_demo(*dim)?;
                let m = *dim as f64;
                let expected: Vec<f64> = (0..ratios.len())
                    .map(|d| (d as f64 + m / 2.0) / (d as f64 + 1.0))
                    .collect();
                let max_relative_deviation = ratios
                    .iter()
                    .zip(&expected)
                    .map(|(r, e)| (r - e).abs() / e)
                    .fold(0.0, f64::max);
                Ok((
                    Outcome::DivergenceDemo {
                        dim: *dim,
                        ratios,
                        expected,
                        max_relative_deviation,
                    },
                    EXIT_OK,
                ))
            }
        },
    }
}

fn resolved_config(command: &Command) -> (Option<RegularizationConfig>, Option<u64>) {
    match command {
        Command::Pair { tuning, .. } | Command::Norm { tuning, .. } | Command::Demo { tuning, .. } => {
            (Some(tuning.config()), None)
        }
        Command::Verify { seed, .. } => (None, Some(*seed)),
        Command::Takagi { .. } | Command::Detsqrt { .. } => (None, None),
    }
}

/// Runs a parsed command to a report; failures become a `failure` outcome.
pub fn run(cli: &Cli, argv: Vec<String>) -> RunReport {
    let start = Instant::now();
    let (outcome, exit_code) = match execute(&cli.command) {
        Ok(done) => done,
        Err(e) => (
            Outcome::Failure {
                error: error_kind(&e).into(),
                message: e.to_string(),
            },
            exit_for_error(&e),
        ),
    };
    let (config, seed) = resolved_config(&cli.command);
    RunReport {
        command: argv,
        config,
        seed,
        outcome,
        exit_code,
        wall_time_seconds: start.elapsed().as_secs_f64(),
        version: env!("CARGO_PKG_VERSION").into(),
    }
}

/// Parses arguments, runs, prints the report to stdout and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let argv = args.iter().map(|a| a.to_string_lossy().into_owned()).collect();
    let report = run(&cli, argv);
    if let Outcome::Failure { message, .. } = &report.outcome {
        eprintln!("fockpair: {message}");
    }
    match serde_json::to_string_pretty(&report) {
        Ok(json) => println!("{json}"),
        Err(e) => {
            eprintln!("fockpair: could not serialize report: {e}");
            return EXIT_INPUT;
        }
    }
    report.exit_code
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_file_validation() {
        let good = MatrixFile::from_matrix(&DMatrix::identity(2, 2), MatrixRole::AntilinearSymmetric);
        assert!(good.antilinear_map().is_ok());
        let mut ragged = good.clone();
        ragged.entries[1].pop();
        assert!(ragged.matrix().is_err());
        let mut asym = good.clone();
        asym.entries[0][1] = Entry { re: 1e-6, im: 0.0 };
        assert!(matches!(asym.antilinear_map(), Err(Error::NotSymmetric { .. })));
        let general = MatrixFile { role: MatrixRole::General, ..good };
        assert!(general.antilinear_map().is_err());
        assert!(general.matrix().is_ok());
    }

    #[test]
    fn parse_matrix_json() {
        let text = r#"{"dim": 1, "role": "general", "entries": [[{"re": 2.0, "im": -1.0}]]}"#;
        let f: MatrixFile = serde_json::from_str(text).unwrap();
        assert_eq!(f.matrix().unwrap()[(0, 0)], Complex64::new(2.0, -1.0));
        assert!(serde_json::from_str::<MatrixFile>(r#"{"dim": 1, "role": "other", "entries": []}"#).is_err());
    }

    #[test]
    fn report_round_trip() {
        let cli = Cli::try_parse_from(["fockpair", "demo", "divergence", "--dim", "2"]).unwrap();
        let report = run(&cli, vec!["demo".into()]);
        assert_eq!(report.exit_code, EXIT_OK);
        let json = serde_json::to_string(&report).unwrap();
        assert_eq!(serde_json::from_str::<RunReport>(&json).unwrap(), report);
    }

    #[test]
    fn bad_arguments_exit_one() {
        assert_eq!(main_with_args(["fockpair", "pair", "--method", "nope"]), EXIT_INPUT);
    }
}
