//! Subcommands. Machine output goes to `out` as JSON, human logs to `log`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use atam::document::{self, certificate_name, gap_json, min_result_json, report_json, to_json, verdict_json};
use atam::explore::judge;
use atam::{
    complexity_gap, explore_with, is_directed, min_tile_set, parse_shape, render_svg,
    sample_sequence, serialize_system, Answer, ExploreOptions, ExploreStatus, MinStatus, Policy,
    RenderOptions, SearchBudget, SearchMode, SearchOrder, Shape, ShapeForm, TileSystem,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::bound::BoundSpec;

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 1;
    pub const PARSE: i32 = 2;
    pub const BUDGET: i32 = 3;
    pub const INTERNAL: i32 = 4;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Parse(_) => exit::PARSE,
            CliError::Internal(_) => exit::INTERNAL,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "atam", version, about = "Temperature-2 abstract tile assembly: simulate, verify, minimize")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Grow one assembly sequence from the seed.
    Sim(SimArgs),
    /// Check directedness or strict self-assembly.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Enumerate producible assemblies inside a bound.
    Explore(ExploreArgs),
    /// Search for the fewest tile types that strictly self-assemble a shape.
    Minimize(MinimizeArgs),
    /// Minimize in both modes and report the difference.
    Gap(GapArgs),
    /// Run the interactive session server.
    Serve(ServeArgs),
}

#[derive(Debug, Args)]
pub struct SimArgs {
    #[arg(long)]
    pub system: PathBuf,
    #[arg(long, default_value_t = 1000)]
    pub steps: usize,
    #[arg(long, default_value_t = 0)]
    pub rng_seed: u64,
    #[arg(long, value_enum, default_value_t = PolicyArg::Uniform)]
    pub policy: PolicyArg,
    /// Write `step-NNNN.svg` for the seed and every step into this directory.
    #[arg(long)]
    pub svg_out: Option<PathBuf>,
    /// Outline frontier points in the SVGs.
    #[arg(long)]
    pub frontier: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum PolicyArg {
    Uniform,
    Fair,
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Bounded check that no two producible assemblies disagree.
    Directed {
        #[arg(long)]
        system: PathBuf,
        /// WxH+X+Y: width, height and lower-left corner.
        #[arg(long)]
        bound: BoundSpec,
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
    },
    /// Check that every terminal assembly has the given shape.
    Strict {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        shape: PathBuf,
        #[arg(long, default_value_t = 1_000_000)]
        budget: usize,
    },
}

#[derive(Debug, Args)]
pub struct ExploreArgs {
    #[arg(long)]
    pub system: PathBuf,
    #[arg(long)]
    pub bound: BoundSpec,
    #[arg(long, default_value_t = 1_000_000)]
    pub budget: usize,
    #[arg(long, value_enum, default_value_t = OrderArg::Bfs)]
    pub order: OrderArg,
    /// Seed for `--order random`.
    #[arg(long, default_value_t = 0)]
    pub rng_seed: u64,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum OrderArg {
    Bfs,
    Dfs,
    Random,
    Parallel,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub shape: PathBuf,
    #[arg(long, default_value_t = 4)]
    pub kmax: usize,
    /// Assemblies each candidate's exploration may enumerate.
    #[arg(long, default_value_t = 100_000)]
    pub budget: usize,
    /// Stop after this many candidates.
    #[arg(long)]
    pub max_systems: Option<u64>,
    /// Wall-clock limit in seconds. Required for shapes of more than 3 cells.
    #[arg(long)]
    pub timeout: Option<f64>,
}

#[derive(Debug, Args)]
pub struct MinimizeArgs {
    #[command(flatten)]
    pub search: SearchArgs,
    #[arg(long, value_enum, default_value_t = ModeArg::General)]
    pub mode: ModeArg,
    /// Also write the certificate system document here.
    #[arg(long)]
    pub certificate_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GapArgs {
    #[command(flatten)]
    pub search: SearchArgs,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    General,
    Directed,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, default_value_t = 8080)]
    pub port: u16,
    #[arg(long, default_value = "127.0.0.1")]
    pub host: String,
    /// Directory with the web explorer bundle, served at `/`.
    #[arg(long = "static")]
    pub static_dir: Option<PathBuf>,
    /// Idle time in seconds after which a session is dropped.
    #[arg(long, default_value_t = 3600)]
    pub ttl: u64,
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, log: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(log, "{}", e.render());
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    exit::OK
                }
                _ => exit::USAGE,
            };
        }
    };
    match execute(cli.command, out, log) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(log, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(command: Command, out: &mut dyn Write, log: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Sim(a) => sim(a, out, log),
        Command::Verify(VerifyCommand::Directed {
            system,
            bound,
            budget,
        }) => {
            let sys = load_system(&system, log)?;
            let v = is_directed(&sys, &bound.bound(), budget).map_err(|e| CliError::Usage(e.to_string()))?;
            emit(out, &verdict_json(&sys, &v))?;
            Ok(verdict_exit(v.answer, v.status))
        }
        Command::Verify(VerifyCommand::Strict {
            system,
            shape,
            budget,
        }) => {
            let sys = load_system(&system, log)?;
            let shape = load_shape(&shape)?;
            let j = judge(&sys, &shape, budget).map_err(|e| CliError::Usage(e.to_string()))?;
            emit(out, &verdict_json(&sys, &j.strict))?;
            Ok(verdict_exit(j.strict.answer, j.strict.status))
        }
        Command::Explore(a) => {
            let sys = load_system(&a.system, log)?;
            let order = match a.order {
                OrderArg::Bfs => SearchOrder::BreadthFirst,
                OrderArg::Dfs => SearchOrder::DepthFirst,
                OrderArg::Random => SearchOrder::Random(a.rng_seed),
                OrderArg::Parallel => SearchOrder::ParallelBreadthFirst,
            };
            let ex = explore_with(&sys, &a.bound.bound(), &ExploreOptions::new(a.budget).order(order))
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let json = report_json(&sys, &ex.report);
            match &a.out {
                Some(path) => write_file(path, &json)?,
                None => emit(out, &json)?,
            }
            let _ = writeln!(
                log,
                "{} producible, {} terminal, status {:?}",
                ex.report.producible_count,
                ex.report.terminals.len(),
                ex.report.status
            );
            Ok(if ex.report.status == ExploreStatus::BudgetExceeded {
                exit::BUDGET
            } else {
                exit::OK
            })
        }
        Command::Minimize(a) => {
            let (shape, budget) = search_setup(&a.search)?;
            let mode = match a.mode {
                ModeArg::General => SearchMode::General,
                ModeArg::Directed => SearchMode::Directed,
            };
            let r = min_tile_set(&shape, mode, a.search.kmax, budget);
            emit(out, &min_result_json(&r))?;
            if let (Some(path), Some(cert)) = (&a.certificate_out, &r.certificate) {
                write_file(path, &serialize_system(&certificate_name(&r), cert))?;
            }
            let _ = writeln!(log, "{} candidates tested, status {:?}", r.systems_tested, r.status);
            Ok(min_exit(r.status))
        }
        Command::Gap(a) => {
            let (shape, budget) = search_setup(&a.search)?;
            let g = complexity_gap(&shape, a.search.kmax, budget);
            emit(out, &gap_json(&g))?;
            let code = min_exit(g.general.status).max(min_exit(g.directed.status));
            Ok(code)
        }
        Command::Serve(a) => {
            crate::server::serve(a, log).map_err(|e| CliError::Internal(e.to_string()))?;
            Ok(exit::OK)
        }
    }
}

fn verdict_exit(answer: Answer, status: ExploreStatus) -> i32 {
    if answer == Answer::Inconclusive && status == ExploreStatus::BudgetExceeded {
        exit::BUDGET
    } else {
        exit::OK
    }
}

fn min_exit(status: MinStatus) -> i32 {
    match status {
        MinStatus::BudgetExceeded => exit::BUDGET,
        _ => exit::OK,
    }
}

fn search_setup(a: &SearchArgs) -> Result<(Shape, SearchBudget), CliError> {
    let shape = load_shape(&a.shape)?;
    if a.kmax == 0 {
        return Err(CliError::Usage("--kmax must be at least 1".into()));
    }
    if shape.len() > 3 && a.timeout.is_none() {
        return Err(CliError::Usage(format!(
            "shape has {} cells: --timeout SECONDS is required beyond 3 cells",
            shape.len()
        )));
    }
    let time_limit = match a.timeout {
        Some(t) if t.is_finite() && t > 0.0 => Some(Duration::from_secs_f64(t)),
        Some(_) => return Err(CliError::Usage("--timeout must be a positive number of seconds".into())),
        None => None,
    };
    Ok((
        shape,
        SearchBudget {
            max_systems: a.max_systems,
            time_limit,
            per_candidate: a.budget,
        },
    ))
}

#[derive(Serialize)]
struct SimStep {
    step: usize,
    point: atam::Point,
    tile: String,
}

#[derive(Serialize)]
struct SimDocument {
    rng_seed: u64,
    policy: Policy,
    terminal: bool,
    steps: Vec<SimStep>,
    assembly: Vec<document::PlacementDocument>,
}

fn sim(a: SimArgs, out: &mut dyn Write, log: &mut dyn Write) -> Result<i32, CliError> {
    let sys = load_system(&a.system, log)?;
    let policy = match a.policy {
        PolicyArg::Uniform => Policy::Uniform,
        PolicyArg::Fair => Policy::Fair,
    };
    let seq = sample_sequence(&sys, a.rng_seed, policy, a.steps);
    let assemblies = seq.assemblies(&sys);
    if let Some(dir) = &a.svg_out {
        fs::create_dir_all(dir).map_err(|e| CliError::Internal(format!("{}: {e}", dir.display())))?;
        let options = RenderOptions { frontier: a.frontier };
        for (i, asm) in assemblies.iter().enumerate() {
            write_file(&dir.join(format!("step-{i:04}.svg")), &render_svg(&sys, asm, options))?;
        }
    }
    for (i, s) in seq.steps.iter().enumerate() {
        let _ = writeln!(log, "step {}: {} at {}", i + 1, sys.name(s.tile), s.point);
    }
    let doc = SimDocument {
        rng_seed: a.rng_seed,
        policy,
        terminal: seq.terminal,
        steps: seq
            .steps
            .iter()
            .enumerate()
            .map(|(i, s)| SimStep {
                step: i + 1,
                point: s.point,
                tile: sys.name(s.tile).to_string(),
            })
            .collect(),
        assembly: document::placements(&sys, assemblies.last().unwrap()),
    };
    emit(out, &to_json(&doc))?;
    Ok(exit::OK)
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

pub fn load_system(path: &Path, log: &mut dyn Write) -> Result<TileSystem, CliError> {
    let parsed = document::parse_system(&read(path)?)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    for w in &parsed.warnings {
        let _ = writeln!(log, "warning: {}: {w}", path.display());
    }
    Ok(parsed.system)
}

pub fn load_shape(path: &Path) -> Result<Shape, CliError> {
    parse_shape(&read(path)?, ShapeForm::Auto).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::Internal(format!("writing output: {e}")))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Internal(format!("{}: {e}", path.display())))
}
