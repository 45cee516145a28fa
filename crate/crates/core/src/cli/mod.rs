//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error,
//! 3 numerical degeneracy.

mod corpus;
pub mod io;
pub mod matrix;
pub mod verify;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::angles::{angle_report, AngleReport, AngleRoute};
use crate::error::Error;
use crate::metrics::SymmetrizeMode;
use crate::numerics::Tolerance;

pub use corpus::builtin_groups;
pub use io::{Scalar, SubspaceEntry, SubspaceFile};
pub use matrix::{distance_matrix, DistanceMatrixOutput, MatrixMetric, DIRECTION_CONVENTION};
pub use verify::{Checker, Group};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("cannot access {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("invalid subspace file: {0}")]
    Parse(String),

    #[error("unknown subspace id {id:?}; the file defines {known}")]
    MissingId { id: String, known: String },

    #[error("verification failed: {0}")]
    Verification(String),

    #[error(transparent)]
    Library(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Library(Error::Numerical(_) | Error::DegenerateBasis(_)) => 3,
            _ => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "subspace-angles",
    version,
    about = "Angles and asymmetric distances between subspaces of different dimensions"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, Args)]
struct TolFlags {
    /// Singular values below rank_tol * σ_max count as zero.
    #[arg(long, default_value_t = 1e-10)]
    rank_tol: f64,
    /// Angles below this (radians) count as zero.
    #[arg(long, default_value_t = 1e-9)]
    angle_tol: f64,
}

impl TolFlags {
    fn tolerance(self, match_tol: f64) -> Result<Tolerance, CliError> {
        let tol = Tolerance {
            rank_tol: self.rank_tol,
            angle_tol: self.angle_tol,
            match_tol,
        };
        tol.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(tol)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AnglesFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MatrixFormat {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Θ both ways, Υ, Ψ and the principal angles of one ordered pair.
    Angles {
        file: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        #[arg(long, default_value = "principal", value_parser = ["principal", "gram", "exterior"])]
        route: String,
        #[arg(long, value_enum, default_value_t = AnglesFormat::Text)]
        format: AnglesFormat,
        #[command(flatten)]
        tol: TolFlags,
    },
    /// Pairwise distances, entry (i, j) from subspace i to subspace j.
    Matrix {
        file: PathBuf,
        #[arg(long)]
        metric: String,
        #[arg(long, default_value = "none", value_parser = ["none", "max", "mean"])]
        symmetrize: String,
        #[arg(long, value_enum, default_value_t = MatrixFormat::Json)]
        format: MatrixFormat,
        #[arg(long)]
        output: Option<PathBuf>,
        #[command(flatten)]
        tol: TolFlags,
    },
    /// Identity suites on a file, or on the built-in worked examples.
    Verify {
        #[arg(required_unless_present = "builtin", conflicts_with = "builtin")]
        file: Option<PathBuf>,
        #[arg(long)]
        builtin: bool,
        /// Seed for the randomized route-agreement suite.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random pairs in that suite.
        #[arg(long, default_value_t = 100)]
        random_pairs: usize,
        /// Tolerance for every comparison.
        #[arg(long, default_value_t = 1e-9)]
        match_tol: f64,
        #[command(flatten)]
        tol: TolFlags,
    },
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            if code == 0 {
                let _ = write!(out, "{e}");
            } else {
                let _ = write!(err, "{e}");
            }
            return code as u8;
        }
    };
    match execute(cli.command, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Angles {
            file,
            from,
            to,
            route,
            format,
            tol,
        } => {
            let tol = tol.tolerance(Tolerance::default().match_tol)?;
            let route: AngleRoute = route.parse()?;
            let data = SubspaceFile::read(&file)?;
            let v = data.subspace(&from, &tol)?;
            let w = data.subspace(&to, &tol)?;
            let report = angle_report(&v, &w, route, &tol)?;
            let text = match format {
                AnglesFormat::Text => render_angles(&from, &to, &report),
                AnglesFormat::Json => {
                    let doc = AnglesOutput {
                        from: &from,
                        to: &to,
                        report: &report,
                    };
                    serde_json::to_string_pretty(&doc).expect("reports always serialize") + "\n"
                }
            };
            write_out(out, &text)
        }
        Command::Matrix {
            file,
            metric,
            symmetrize,
            format,
            output,
            tol,
        } => {
            let tol = tol.tolerance(Tolerance::default().match_tol)?;
            let metric: MatrixMetric = metric.parse()?;
            let mode = match symmetrize.as_str() {
                "none" => None,
                other => Some(other.parse::<SymmetrizeMode>()?),
            };
            let data = SubspaceFile::read(&file)?;
            let subspaces = data.all_subspaces(&tol)?;
            let result = distance_matrix(&data.ids(), &subspaces, metric, mode, &tol)?;
            let text = match format {
                MatrixFormat::Json => result.to_json() + "\n",
                MatrixFormat::Csv => result.to_csv(),
            };
            match output {
                Some(path) => std::fs::write(&path, text).map_err(|e| CliError::Io {
                    path: path.display().to_string(),
                    source: e,
                }),
                None => write_out(out, &text),
            }
        }
        Command::Verify {
            file,
            builtin,
            seed,
            random_pairs,
            match_tol,
            tol,
        } => {
            let tol = tol.tolerance(match_tol)?;
            let mut ck = Checker::new(tol);
            let groups = if builtin {
                let groups = builtin_groups(&tol)?;
                corpus::golden_checks(&groups, &mut ck, &tol);
                groups
            } else {
                let path = file.expect("clap requires a file without --builtin");
                let data = SubspaceFile::read(&path)?;
                let subspaces = data.all_subspaces(&tol)?;
                let members = data
                    .ids()
                    .into_iter()
                    .map(String::from)
                    .zip(subspaces)
                    .collect();
                vec![Group::new(&path.display().to_string(), members)]
            };
            for g in &groups {
                verify::identity_suites(&mut ck, g, &tol);
            }
            verify::random_route_suite(&mut ck, seed, random_pairs, &tol);
            write_out(out, &ck.render())?;
            match ck.first_failure() {
                None => write_out(out, &format!("all {} checks passed\n", ck.outcomes.len())),
                Some(first) => {
                    let failed = ck.outcomes.iter().filter(|c| !c.passed()).count();
                    let _ = writeln!(err, "{failed} of {} checks failed", ck.outcomes.len());
                    Err(CliError::Verification(format!(
                        "first failing identity: {}: {}",
                        first.suite, first.label
                    )))
                }
            }
        }
    }
}

fn write_out(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(|e| CliError::Io {
        path: "<stdout>".into(),
        source: e,
    })
}

#[derive(Serialize)]
struct AnglesOutput<'a> {
    from: &'a str,
    to: &'a str,
    report: &'a AngleReport,
}

fn angle_line(name: &str, radians: f64) -> String {
    format!(
        "{name:<18} {:>12.6}°  {radians:?} rad\n",
        radians.to_degrees()
    )
}

/// Degrees to six places next to full-precision radians.
pub fn render_angles(from: &str, to: &str, r: &AngleReport) -> String {
    let (p, q, n) = r.dims;
    let mut s = format!(
        "{from} -> {to}  route {}  dim {from} = {p}, dim {to} = {q}, ambient {n}\n",
        r.route
    );
    s += &angle_line(&format!("Θ({from},{to})"), r.theta_vw);
    s += &angle_line(&format!("Θ({to},{from})"), r.theta_wv);
    s += &angle_line(&format!("Υ({from},{to})"), r.upsilon);
    s += &angle_line(&format!("Ψ({from},{to})"), r.psi);
    if r.psi_ill_conditioned {
        s += "  note: Ψ is near the threshold where the sum fills the space\n";
    }
    s += "principal angles\n";
    if r.principal_angles.is_empty() {
        s += "  (none)\n";
    }
    for (i, &t) in r.principal_angles.iter().enumerate() {
        s += &angle_line(&format!("  θ{}", i + 1), t);
    }
    s += &format!("projection factor  {:?}\n", r.projection_factor);
    s
}
