//! `l1sig`: command-line front end for the l1sig-core toolkit.
//!
//! Every subcommand writes its result file to stdout and a one-line status to
//! stderr. Input paths may be `-` for stdin.
//!
//! Exit status: 0 yes/success, 1 verified negative, 2 promise violated or
//! structural rejection, 3 usage or format error, 4 resource limit.

use std::fmt::Display;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use l1sig_core::cutcone::DEFAULT_MAX_N;
use l1sig_core::realizer::DEFAULT_REALIZER_MAX_N;
use l1sig_core::{
    cutcone_membership_with, embed_from_decomposition, reduce_a_to_b,
    reduce_b_to_a, realize_l1_sig, sig_from_metric, sig_from_points, solve_problem_b_with,
    validate, verify_decomposition, verify_farkas, CutDecomposition, Error, FarkasCertificate,
    FiniteMetric, LabeledGraph, Limits, Membership, Mode, Norm, PointConfig, ProblemBAnswer,
    ProblemBInstance, RealizeOutcome, SearchOptions,
};

#[derive(Parser)]
#[command(name = "l1sig", version, about = "Exact l1-embeddability and sphere-of-influence graph tools")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the metric (or semimetric) axioms
    Validate {
        metric: PathBuf,
        #[arg(long, default_value = "metric")]
        mode: Mode,
    },
    /// Sphere-of-influence graph of a point set
    SigPoints {
        points: PathBuf,
        #[arg(long, default_value = "1")]
        p: Norm,
    },
    /// Sphere-of-influence graph of a metric
    SigMetric { metric: PathBuf },
    /// Decide cut-cone membership; emits a decomposition or a Farkas certificate
    CutconeCheck {
        metric: PathBuf,
        #[command(flatten)]
        opts: LpOpts,
    },
    /// Exact l1 embedding of a metric
    Embed {
        metric: PathBuf,
        #[command(flatten)]
        opts: LpOpts,
    },
    /// Map a metric to a promise instance (graph and metric)
    ReduceAb { metric: PathBuf },
    /// Map a promise instance back to its metric
    ReduceBa { instance: PathBuf },
    /// Decide a promise instance
    SolveB {
        instance: PathBuf,
        #[command(flatten)]
        opts: LpOpts,
    },
    /// Search for an l1 metric whose sphere-of-influence graph is the given graph
    Realize {
        graph: PathBuf,
        /// Maximum number of nearest-neighbor maps to try
        #[arg(long, default_value_t = SearchOptions::default().budget)]
        budget: u64,
        #[arg(long, default_value_t = DEFAULT_REALIZER_MAX_N)]
        max_n: usize,
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Check a cut decomposition against a metric
    VerifyDecomposition { metric: PathBuf, decomposition: PathBuf },
    /// Check a Farkas certificate against a metric
    VerifyFarkas { metric: PathBuf, certificate: PathBuf },
}

#[derive(Args)]
struct LpOpts {
    /// Largest accepted vertex count
    #[arg(long, default_value_t = DEFAULT_MAX_N)]
    max_n: usize,
    /// Also write the certificate to this file
    #[arg(long)]
    certificate: Option<PathBuf>,
}

impl LpOpts {
    fn limits(&self) -> Limits {
        Limits { max_n: self.max_n }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Yes = 0,
    No = 1,
    Rejected = 2,
    Usage = 3,
    Resource = 4,
}

struct Failure {
    status: Status,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::ResourceLimit { .. } => Status::Resource,
            Error::DuplicatePoints(..) | Error::InvalidMetric { .. } | Error::IsolatedVertex(_) => {
                Status::Rejected
            }
            _ => Status::Usage,
        };
        Failure {
            status,
            message: e.to_string(),
        }
    }
}

fn io_failure(path: &Path, e: io::Error) -> Failure {
    Failure {
        status: Status::Usage,
        message: format!("{}: {e}", path.display()),
    }
}

type Outcome = Result<Status, Failure>;

fn read_text(path: &Path) -> Result<String, Failure> {
    let mut text = String::new();
    if path == Path::new("-") {
        io::stdin().read_to_string(&mut text).map_err(|e| io_failure(path, e))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    }
    Ok(text)
}

fn load<T: FromStr<Err = Error>>(path: &Path) -> Result<T, Failure> {
    read_text(path)?.parse().map_err(|e: Error| Failure {
        status: Status::Usage,
        message: format!("{}: {e}", path.display()),
    })
}

fn emit(value: &impl Display) -> Result<(), Failure> {
    let mut out = io::stdout().lock();
    write!(out, "{value}")
        .and_then(|_| out.flush())
        .map_err(|e| io_failure(Path::new("<stdout>"), e))
}

fn save(path: Option<&Path>, value: &impl Display) -> Result<(), Failure> {
    if let Some(path) = path {
        std::fs::write(path, value.to_string()).map_err(|e| io_failure(path, e))?;
    }
    Ok(())
}

fn note(msg: impl Display) {
    eprintln!("{msg}");
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Validate { metric, mode } => {
            let d: FiniteMetric = load(&metric)?;
            let report = validate(&d, mode);
            emit(&format_args!("{report}\n"))?;
            Ok(if report.is_valid() { Status::Yes } else { Status::No })
        }
        Command::SigPoints { points, p } => {
            let x: PointConfig = load(&points)?;
            emit(&sig_from_points(&x, p)?)?;
            Ok(Status::Yes)
        }
        Command::SigMetric { metric } => {
            let d: FiniteMetric = load(&metric)?;
            emit(&sig_from_metric(&d)?)?;
            Ok(Status::Yes)
        }
        Command::CutconeCheck { metric, opts } => {
            let d: FiniteMetric = load(&metric)?;
            Ok(match cutcone_membership_with(&d, opts.limits())? {
                Membership::Feasible(dec) => {
                    note("in the cut cone");
                    certify(&dec, opts.certificate.as_deref())?;
                    Status::Yes
                }
                Membership::Infeasible(y) => {
                    note("not in the cut cone");
                    certify(&y, opts.certificate.as_deref())?;
                    Status::No
                }
            })
        }
        Command::Embed { metric, opts } => {
            let d: FiniteMetric = load(&metric)?;
            Ok(match cutcone_membership_with(&d, opts.limits())? {
                Membership::Feasible(dec) => {
                    let x = embed_from_decomposition(&dec);
                    note(format_args!("embedded in dimension {}", x.dim()));
                    save(opts.certificate.as_deref(), &dec)?;
                    emit(&x)?;
                    Status::Yes
                }
                Membership::Infeasible(y) => {
                    note("not l1-embeddable");
                    certify(&y, opts.certificate.as_deref())?;
                    Status::No
                }
            })
        }
        Command::ReduceAb { metric } => {
            let d: FiniteMetric = load(&metric)?;
            emit(&reduce_a_to_b(&d)?)?;
            Ok(Status::Yes)
        }
        Command::ReduceBa { instance } => {
            let inst: ProblemBInstance = load(&instance)?;
            emit(&reduce_b_to_a(inst))?;
            Ok(Status::Yes)
        }
        Command::SolveB { instance, opts } => {
            let inst: ProblemBInstance = load(&instance)?;
            Ok(match solve_problem_b_with(&inst, opts.limits())? {
                ProblemBAnswer::Yes(dec) => {
                    note("yes");
                    certify(&dec, opts.certificate.as_deref())?;
                    Status::Yes
                }
                ProblemBAnswer::No(y) => {
                    note("no");
                    certify(&y, opts.certificate.as_deref())?;
                    Status::No
                }
                ProblemBAnswer::PromiseViolated => {
                    note("promise violated: the graph is not the sphere-of-influence graph of the metric");
                    Status::Rejected
                }
            })
        }
        Command::Realize {
            graph,
            budget,
            max_n,
            certificate,
        } => {
            let g: LabeledGraph = load(&graph)?;
            Ok(match realize_l1_sig(&g, SearchOptions { budget, max_n })? {
                RealizeOutcome::Realized(r) => {
                    note(format_args!("realized with margin {}", r.margin));
                    certify(&r, certificate.as_deref())?;
                    Status::Yes
                }
                RealizeOutcome::NotRealizableStructural { vertex } => {
                    note(format_args!("not realizable: vertex {vertex} is isolated"));
                    Status::Rejected
                }
                RealizeOutcome::Exhausted { maps_tried, complete: true } => {
                    note(format_args!("no realization for any of {maps_tried} nearest-neighbor maps"));
                    Status::No
                }
                RealizeOutcome::Exhausted { maps_tried, complete: false } => {
                    note(format_args!("budget exhausted after {maps_tried} nearest-neighbor maps"));
                    Status::Resource
                }
            })
        }
        Command::VerifyDecomposition { metric, decomposition } => {
            let d: FiniteMetric = load(&metric)?;
            let dec: CutDecomposition = load(&decomposition)?;
            verdict(verify_decomposition(&d, &dec))
        }
        Command::VerifyFarkas { metric, certificate } => {
            let d: FiniteMetric = load(&metric)?;
            let y: FarkasCertificate = load(&certificate)?;
            verdict(verify_farkas(&d, &y))
        }
    }
}

fn certify(value: &impl Display, path: Option<&Path>) -> Result<(), Failure> {
    save(path, value)?;
    emit(value)
}

fn verdict(ok: bool) -> Outcome {
    emit(&if ok { "verified\n" } else { "rejected\n" })?;
    Ok(if ok { Status::Yes } else { Status::No })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Status::Usage as u8 } else { 0 });
        }
    };
    let status = run(cli.command).unwrap_or_else(|f| {
        note(format_args!("error: {}", f.message));
        f.status
    });
    ExitCode::from(status as u8)
}
