use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use hitlab::cache::Cache;
use hitlab::group_action::{check_local_action, invariants, invariants_local};
use hitlab::kameko::{KamekoContext, KamekoMap};
use hitlab::monomial::{binomial_count, parse_omega};
use hitlab::{Error, GroupKind, MAX_K};

mod report;
mod session;
mod verify;

use report::{emit, Format, Report};
use session::Session;

/// Degrees above this need `--force`.
const FORCE_DEGREE: u32 = 120;
/// Default degree budget for `verify`.
const VERIFY_MAX_DEGREE: u32 = 40;

#[derive(Parser, Debug)]
#[command(
    name = "hitlab",
    version,
    about = "Hit problem computations for the mod-2 Steenrod algebra"
)]
struct Cli {
    /// Print one JSON object per result
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Print CSV, one row per result
    #[arg(long, global = true)]
    csv: bool,
    /// Directory for cached hit spaces
    #[arg(long, global = true, env = "HITCACHE_DIR")]
    cache_dir: Option<PathBuf>,
    /// Largest degree to compute (verify skips claims above it; default 40 there)
    #[arg(long, global = true)]
    max_degree: Option<u32>,
    /// Worker threads (default: available parallelism)
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Allow degrees above 120
    #[arg(long, global = true)]
    force: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Group {
    Sigma,
    Gl,
}

impl From<Group> for GroupKind {
    fn from(g: Group) -> Self {
        match g {
            Group::Sigma => GroupKind::Sigma,
            Group::Gl => GroupKind::GL,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimension of (QP_k)_n
    Dim { k: usize, n: u32 },
    /// Admissible monomials of degree n
    Basis { k: usize, n: u32 },
    /// Dimension and basis of QP_k(ω), e.g. "(3)^2|(2)"
    Omega { k: usize, omega: String },
    /// Invariants of (QP_k)_n, or of QP_k(ω) when given a weight vector
    Invariants {
        k: usize,
        /// A degree or a weight vector
        target: String,
        #[arg(long, value_enum, default_value = "gl")]
        group: Group,
    },
    /// Kernel of Kameko's map out of the given source degree
    Kameko {
        k: usize,
        source: u32,
        /// Report the invariants of the kernel instead of the kernel itself
        #[arg(long, value_enum)]
        group: Option<Group>,
    },
    /// Check the built-in reference tables: all | d S T | n S T | omega SPEC
    Verify {
        #[arg(num_args = 0..=3)]
        selector: Vec<String>,
    },
}

#[derive(Debug)]
pub enum Failure {
    Validation(String),
    Invariant(String),
    Mismatch(usize),
    Other(anyhow::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(msg) => Failure::Invariant(msg),
            Error::InvalidArgument(_) | Error::Monomial(_) => Failure::Validation(e.to_string()),
            other => Failure::Other(other.into()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Other(e.into())
    }
}

pub struct Budget {
    pub max_degree: Option<u32>,
    pub force: bool,
}

impl Budget {
    /// Rejects degrees over the explicit maximum, and large degrees without `--force`.
    pub fn check(&self, k: usize, n: u32) -> Result<(), Failure> {
        if let Some(max) = self.max_degree {
            if n > max {
                return Err(Failure::Validation(format!("degree {n} exceeds --max-degree {max}")));
            }
        }
        if n > FORCE_DEGREE && !self.force {
            let cols = binomial_count(k, n);
            let mib = cols.saturating_mul(cols) / 8 / (1 << 20);
            eprintln!("degree {n} in {k} variables: {cols} monomials, up to about {mib} MiB for elimination");
            return Err(Failure::Validation(format!(
                "degree {n} exceeds {FORCE_DEGREE}; pass --force to run it anyway"
            )));
        }
        Ok(())
    }
}

fn check_k(k: usize) -> Result<(), Failure> {
    if (1..=MAX_K).contains(&k) {
        Ok(())
    } else {
        Err(Failure::Validation(format!("k must be between 1 and {MAX_K}, got {k}")))
    }
}

fn parse_weight(spec: &str) -> Result<hitlab::WeightVector, Failure> {
    parse_omega(spec).map_err(|e| Failure::Validation(format!("bad weight vector '{spec}': {e}")))
}

fn weight_degree(omega: &hitlab::WeightVector) -> Result<u32, Failure> {
    u32::try_from(omega.degree())
        .ok()
        .filter(|&n| n <= hitlab::monomial::MAX_DEGREE)
        .ok_or_else(|| Failure::Validation(format!("weight vector {omega} has too large a degree")))
}

fn run(cli: &Cli) -> Result<Vec<Report>, Failure> {
    let session = Session::new(cli.cache_dir.as_ref().map(Cache::new));
    let budget = Budget {
        max_degree: cli.max_degree,
        force: cli.force,
    };
    let start = Instant::now();
    let mut reports = match &cli.command {
        Command::Dim { k, n } => {
            check_k(*k)?;
            budget.check(*k, *n)?;
            let (h, cached) = session.hit_space(*k, *n)?;
            let mut r = Report::new(format!("dim (QP_{k})_{n}"), *k, *n, h.dim());
            r.cache_hit = cached;
            vec![r]
        }
        Command::Basis { k, n } => {
            check_k(*k)?;
            budget.check(*k, *n)?;
            let (h, cached) = session.hit_space(*k, *n)?;
            let mut r = Report::new(
                format!("admissible monomials of degree {n} in {k} variables"),
                *k,
                *n,
                h.dim(),
            )
            .basis(&h.admissible_monomials());
            r.cache_hit = cached;
            vec![r]
        }
        Command::Omega { k, omega } => {
            check_k(*k)?;
            let omega = parse_weight(omega)?;
            let n = weight_degree(&omega)?;
            budget.check(*k, n)?;
            let (q, cached) = session.weight_quotient(*k, &omega)?;
            let mut r = Report::new(format!("dim QP_{k}{omega}"), *k, n, q.dim())
                .omega(&omega)
                .basis(&q.basis_monomials());
            r.cache_hit = cached;
            vec![r]
        }
        Command::Invariants { k, target, group } => {
            check_k(*k)?;
            let kind = GroupKind::from(*group);
            if let Ok(n) = target.trim().parse::<u32>() {
                budget.check(*k, n)?;
                let (h, cached) = session.hit_space(*k, n)?;
                let inv = invariants(&h, kind)?;
                let mut r = Report::new(format!("dim (QP_{k})_{n}^{}", kind_label(kind, *k)), *k, n, inv.dim())
                    .group(kind.name())
                    .representatives(&inv.basis);
                r.cache_hit = cached;
                vec![r]
            } else {
                let omega = parse_weight(target)?;
                let n = weight_degree(&omega)?;
                budget.check(*k, n)?;
                let (q, cached) = session.weight_quotient(*k, &omega)?;
                check_local_action(&q, kind)?;
                let inv = invariants_local(&q, kind)?;
                let mut r = Report::new(format!("dim QP_{k}{omega}^{}", kind_label(kind, *k)), *k, n, inv.dim())
                    .omega(&omega)
                    .group(kind.name())
                    .representatives(&inv.basis);
                r.cache_hit = cached;
                vec![r]
            }
        }
        Command::Kameko { k, source, group } => {
            check_k(*k)?;
            budget.check(*k, *source)?;
            let ctx = KamekoContext::new(*k, *source)?;
            let (src, c1) = session.hit_space(*k, ctx.source)?;
            let (tgt, c2) = session.hit_space(*k, ctx.target)?;
            let map = KamekoMap::new(&src, &tgt)?;
            let mut r = match group {
                None => {
                    let basis = map.kernel_basis()?;
                    Report::new(
                        format!("dim Ker (QP_{k})_{} -> (QP_{k})_{}", ctx.source, ctx.target),
                        *k,
                        ctx.source,
                        basis.len(),
                    )
                    .representatives(&basis)
                }
                Some(g) => {
                    let kind = GroupKind::from(*g);
                    let inv = map.kernel_invariants(kind)?;
                    Report::new(
                        format!(
                            "dim Ker((QP_{k})_{} -> (QP_{k})_{})^{}",
                            ctx.source,
                            ctx.target,
                            kind_label(kind, *k)
                        ),
                        *k,
                        ctx.source,
                        inv.dim(),
                    )
                    .group(kind.name())
                    .representatives(&inv.basis)
                }
            };
            r.cache_hit = c1 && c2;
            vec![r]
        }
        Command::Verify { selector } => {
            let budget = Budget {
                max_degree: Some(cli.max_degree.unwrap_or(VERIFY_MAX_DEGREE)),
                force: cli.force,
            };
            return verify::run(&session, &budget, selector);
        }
    };
    let elapsed = start.elapsed().as_millis() as u64;
    for r in &mut reports {
        r.elapsed_ms = elapsed;
    }
    Ok(reports)
}

pub fn kind_label(kind: GroupKind, k: usize) -> String {
    match kind {
        GroupKind::Sigma => format!("Sigma_{k}"),
        GroupKind::GL => format!("GL_{k}"),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let format = if cli.json {
        Format::Json
    } else if cli.csv {
        Format::Csv
    } else {
        Format::Text
    };
    let result = run(&cli).and_then(|reports| {
        emit(&reports, format, std::io::stdout().lock())?;
        let mismatches = reports.iter().filter(|r| r.matches == Some(false)).count();
        if mismatches > 0 {
            Err(Failure::Mismatch(mismatches))
        } else {
            Ok(())
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Mismatch(n)) => {
            eprintln!("{n} result(s) did not match the expected value");
            ExitCode::from(1)
        }
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Invariant(msg)) => {
            eprintln!("internal check failed: {msg}");
            ExitCode::from(3)
        }
        Err(Failure::Other(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
