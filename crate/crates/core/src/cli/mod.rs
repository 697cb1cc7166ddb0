//! Command-line front end.
//!
//! Every subcommand reads its settings from flags, then from an optional
//! `--config` file, then from built-in defaults, in that order. Exit codes:
//! 0 success, 1 I/O or data error, 2 usage or configuration error.

mod config;

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

pub use config::{ConfigFile, KEYS};

use crate::domain::RunHistory;
use crate::embedding::{embed_history, Space, DEFAULT_MAX_POINTS};
use crate::emit::{self, FigureOptions};
use crate::error::Error;
use crate::metrics::{exploration_profile, hypervolume_trace, ReferencePolicy};
use crate::optimizer::{self, default_population_size, Algorithm, OperatorConfig, RunConfig};
use crate::problems::{Problem, ProblemSpec};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Lib(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Lib(Error::Config(_)) => 2,
            CliError::Lib(_) => 1,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "evohist", version, about = "Evolutionary search history: optimise, embed, measure, render")]
pub struct Cli {
    /// Configuration file of `key = value` lines; flags take precedence.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Optimise a benchmark problem and write the full history.
    Run {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Embed a history in two dimensions and score every point.
    Embed {
        #[arg(long)]
        history: PathBuf,
        #[command(flatten)]
        embed: EmbedArgs,
        /// Space embedded: search or objective.
        #[arg(long)]
        space: Option<Space>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Hypervolume of every generation's non-dominated set.
    Hv {
        #[arg(long)]
        history: PathBuf,
        /// `auto` or comma-separated reals.
        #[arg(long = "ref")]
        reference: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Draw SVG figures from an embedding CSV and/or a hypervolume CSV.
    Render {
        #[arg(long)]
        embedding: Option<PathBuf>,
        #[arg(long)]
        hv_trace: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// run, embed (both spaces), hv and render into one directory.
    Pipeline {
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        embed: EmbedArgs,
        #[arg(long = "ref")]
        reference: Option<String>,
        #[arg(long)]
        out_dir: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub problem: Option<Problem>,
    #[arg(long)]
    pub objectives: Option<usize>,
    /// Distance-function variables (default depends on the problem).
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub algorithm: Option<Algorithm>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Evaluation budget.
    #[arg(long)]
    pub evaluations: Option<usize>,
    /// Population size.
    #[arg(long)]
    pub pop: Option<usize>,
    /// Reference-direction partitions (nsga3).
    #[arg(long)]
    pub partitions: Option<usize>,
    #[arg(long)]
    pub crossover_probability: Option<f64>,
    #[arg(long)]
    pub mutation_probability: Option<f64>,
    #[arg(long)]
    pub sbx_eta: Option<f64>,
    #[arg(long)]
    pub pm_eta: Option<f64>,
}

#[derive(Debug, Args)]
pub struct EmbedArgs {
    #[arg(long)]
    pub max_points: Option<usize>,
    /// Space whose nearest-neighbour distances give the exploration score.
    #[arg(long)]
    pub metric_space: Option<Space>,
}

fn pick<T: std::str::FromStr>(flag: Option<T>, file: &ConfigFile, key: &str) -> CliResult<Option<T>>
where
    T::Err: std::fmt::Display,
{
    match flag {
        Some(v) => Ok(Some(v)),
        None => file.get(key),
    }
}

/// Fully resolved settings for one optimisation run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSettings {
    pub spec: ProblemSpec,
    pub config: RunConfig,
    pub operators: OperatorConfig,
}

pub fn resolve_run(args: &RunArgs, file: &ConfigFile) -> CliResult<RunSettings> {
    let problem = pick(args.problem, file, "problem")?
        .ok_or_else(|| CliError::Usage("--problem is required (flag or config key 'problem')".into()))?;
    let m = pick(args.objectives, file, "objectives")?.unwrap_or(3);
    let spec = match pick(args.k, file, "k")? {
        Some(k) => ProblemSpec::new(problem, m, k)?,
        None => ProblemSpec::with_default_k(problem, m)?,
    };
    let defaults = OperatorConfig::default();
    let operators = OperatorConfig {
        crossover_probability: pick(args.crossover_probability, file, "crossover_probability")?
            .unwrap_or(defaults.crossover_probability),
        mutation_probability: pick(args.mutation_probability, file, "mutation_probability")?
            .unwrap_or(defaults.mutation_probability),
        sbx_eta: pick(args.sbx_eta, file, "sbx_eta")?.unwrap_or(defaults.sbx_eta),
        pm_eta: pick(args.pm_eta, file, "pm_eta")?.unwrap_or(defaults.pm_eta),
    };
    let config = RunConfig {
        population_size: pick(args.pop, file, "pop")?.unwrap_or_else(|| default_population_size(m)),
        evaluation_budget: pick(args.evaluations, file, "evaluations")?
            .unwrap_or(if m <= 3 { 100_000 } else { 200_000 }),
        seed: pick(args.seed, file, "seed")?.unwrap_or(0),
        algorithm: pick(args.algorithm, file, "algorithm")?.unwrap_or_else(|| Algorithm::default_for(m)),
        partitions: pick(args.partitions, file, "partitions")?,
    };
    Ok(RunSettings { spec, config, operators })
}

fn resolve_reference(flag: Option<&str>, file: &ConfigFile) -> CliResult<ReferencePolicy> {
    let raw = flag.or_else(|| file.raw("ref")).unwrap_or("auto").trim();
    parse_reference(raw)
}

/// Parses `auto` or comma-separated finite reals.
pub fn parse_reference(raw: &str) -> CliResult<ReferencePolicy> {
    if raw.eq_ignore_ascii_case("auto") {
        return Ok(ReferencePolicy::Auto);
    }
    raw.split(',')
        .map(|s| match s.trim().parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => Err(CliError::Usage(format!("malformed --ref '{raw}': expected 'auto' or comma-separated reals"))),
        })
        .collect::<CliResult<Vec<_>>>()
        .map(ReferencePolicy::Fixed)
}

fn do_run(settings: &RunSettings, out: &Path) -> CliResult<(RunHistory, String)> {
    let start = Instant::now();
    let history = optimizer::run(&settings.spec, &settings.config, &settings.operators)?;
    emit::write_history(&history, out)?;
    let summary = format!(
        "{} M={} {} generations={} wall={:.3}s -> {}",
        history.problem_name,
        history.num_objectives,
        history.algorithm,
        history.num_generations(),
        start.elapsed().as_secs_f64(),
        out.display()
    );
    Ok((history, summary))
}

fn do_embed(
    history: &RunHistory,
    space: Space,
    embed: &EmbedArgs,
    file: &ConfigFile,
    out: &Path,
) -> CliResult<String> {
    let max_points = pick(embed.max_points, file, "max_points")?.unwrap_or(DEFAULT_MAX_POINTS);
    let metric_space = pick(embed.metric_space, file, "metric_space")?.unwrap_or(Space::Search);
    let embedding = embed_history(history, space, max_points)?;
    let profile = exploration_profile(history, metric_space)?;
    emit::write_embedding(&embedding, &profile, out)?;
    Ok(format!(
        "{} embedding: {} points, stride {} -> {}",
        space,
        embedding.points.len(),
        embedding.stride,
        out.display()
    ))
}

fn do_hv(history: &RunHistory, policy: &ReferencePolicy, out: &Path) -> CliResult<String> {
    let trace = hypervolume_trace(history, policy)?;
    emit::write_hv_trace(&trace, out)?;
    Ok(format!("hypervolume: {} generations -> {}", trace.values.len(), out.display()))
}

fn write_text(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| Error::io(path, e).into())
}

fn render_embedding_file(input: &Path, out: &Path) -> CliResult<()> {
    let rows = emit::read_embedding(input)?;
    write_text(out, &emit::render_history_rows(&rows, &FigureOptions::default())?)
}

fn render_hv_file(input: &Path, out: &Path) -> CliResult<()> {
    let trace = emit::read_hv_trace(input)?;
    write_text(out, &emit::render_hv_figure(&trace, &FigureOptions::default())?)
}

/// `base.svg` -> `base.<suffix>`; other names get the suffix appended.
fn suffixed(out: &Path, suffix: &str) -> PathBuf {
    let stem = match out.extension() {
        Some(ext) if ext == "svg" => out.with_extension(""),
        _ => out.to_path_buf(),
    };
    let mut name = stem.into_os_string();
    name.push(".");
    name.push(suffix);
    PathBuf::from(name)
}

/// Executes a parsed command line, returning the lines to print.
pub fn execute(cli: Cli) -> CliResult<Vec<String>> {
    let file = match &cli.config {
        Some(path) => ConfigFile::load(path)?,
        None => ConfigFile::default(),
    };
    match cli.command {
        Command::Run { run, out } => {
            let settings = resolve_run(&run, &file)?;
            Ok(vec![do_run(&settings, &out)?.1])
        }
        Command::Embed { history, embed, space, out } => {
            let space = pick(space, &file, "space")?.unwrap_or(Space::Search);
            let history = emit::read_history(&history)?;
            Ok(vec![do_embed(&history, space, &embed, &file, &out)?])
        }
        Command::Hv { history, reference, out } => {
            let policy = resolve_reference(reference.as_deref(), &file)?;
            let history = emit::read_history(&history)?;
            Ok(vec![do_hv(&history, &policy, &out)?])
        }
        Command::Render { embedding, hv_trace, out } => match (embedding, hv_trace) {
            (None, None) => Err(CliError::Usage("render needs --embedding and/or --hv-trace".into())),
            (Some(e), None) => render_embedding_file(&e, &out).map(|_| vec![format!("-> {}", out.display())]),
            (None, Some(h)) => render_hv_file(&h, &out).map(|_| vec![format!("-> {}", out.display())]),
            (Some(e), Some(h)) => {
                let (a, b) = (suffixed(&out, "history.svg"), suffixed(&out, "hv.svg"));
                render_embedding_file(&e, &a)?;
                render_hv_file(&h, &b)?;
                Ok(vec![format!("-> {}", a.display()), format!("-> {}", b.display())])
            }
        },
        Command::Pipeline { run, embed, reference, out_dir } => {
            let settings = resolve_run(&run, &file)?;
            let policy = resolve_reference(reference.as_deref(), &file)?;
            std::fs::create_dir_all(&out_dir).map_err(|e| Error::io(&out_dir, e))?;
            let path = |name: &str| out_dir.join(name);
            let (history, summary) = do_run(&settings, &path("history.jsonl"))?;
            let mut lines = vec![summary];
            for space in [Space::Search, Space::Objective] {
                let csv = path(&format!("{space}.csv"));
                lines.push(do_embed(&history, space, &embed, &file, &csv)?);
                render_embedding_file(&csv, &path(&format!("{space}.svg")))?;
            }
            lines.push(do_hv(&history, &policy, &path("hv.csv"))?);
            render_hv_file(&path("hv.csv"), &path("hv.svg"))?;
            lines.push(format!("figures -> {}", out_dir.display()));
            Ok(lines)
        }
    }
}

/// Parses arguments, runs the command, prints its output and returns the
/// process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(lines) => {
            for line in lines {
                println!("{line}");
            }
            0
        }
        Err(e) => {
            eprintln!("evohist: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(problem: Option<Problem>, seed: Option<u64>) -> RunArgs {
        RunArgs {
            problem,
            objectives: None,
            k: None,
            algorithm: None,
            seed,
            evaluations: None,
            pop: None,
            partitions: None,
            crossover_probability: None,
            mutation_probability: None,
            sbx_eta: None,
            pm_eta: None,
        }
    }

    #[test]
    fn defaults_by_objective_count() {
        let s = resolve_run(&run_args(Some(Problem::Dtlz2), None), &ConfigFile::default()).unwrap();
        assert_eq!(s.config.evaluation_budget, 100_000);
        assert_eq!(s.config.algorithm, Algorithm::Nsga2);
        assert_eq!(s.config.population_size, 92);
        let file = ConfigFile::parse("objectives = 5").unwrap();
        let s = resolve_run(&run_args(Some(Problem::Dtlz2), None), &file).unwrap();
        assert_eq!(s.config.evaluation_budget, 200_000);
        assert_eq!(s.config.algorithm, Algorithm::Nsga3);
        assert_eq!(s.config.population_size, 212);
    }

    #[test]
    fn flags_override_file() {
        let file = ConfigFile::parse("problem = dtlz1\nseed = 3\nsbx_eta = 20").unwrap();
        let s = resolve_run(&run_args(Some(Problem::Dtlz7), Some(9)), &file).unwrap();
        assert_eq!(s.spec.problem, Problem::Dtlz7);
        assert_eq!(s.config.seed, 9);
        assert_eq!(s.operators.sbx_eta, 20.0);
        let s = resolve_run(&run_args(None, None), &file).unwrap();
        assert_eq!(s.spec.problem, Problem::Dtlz1);
        assert_eq!(s.config.seed, 3);
    }

    #[test]
    fn missing_problem_is_usage_error() {
        let err = resolve_run(&run_args(None, None), &ConfigFile::default()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn reference_parsing() {
        assert_eq!(parse_reference("auto").unwrap(), ReferencePolicy::Auto);
        assert_eq!(parse_reference("1, 2.5,3").unwrap(), ReferencePolicy::Fixed(vec![1.0, 2.5, 3.0]));
        for bad in ["", "1,,2", "a,b", "1,inf"] {
            assert_eq!(parse_reference(bad).unwrap_err().exit_code(), 2);
        }
    }

    #[test]
    fn suffixes() {
        assert_eq!(suffixed(Path::new("fig.svg"), "hv.svg"), PathBuf::from("fig.hv.svg"));
        assert_eq!(suffixed(Path::new("out/fig"), "history.svg"), PathBuf::from("out/fig.history.svg"));
    }
}
