//! `lambda3`: command-line front end for the certification and search toolkit.

mod input;
mod record;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lambda3_core::certify::{graph_checks, graph_spectrum, lemma_grid, verify_weighted_theorem, BoundReport};
use lambda3_core::explore::{
    default_workers, exhaustive_sweep, frame_fuzz, max_lambda3_search, polytope_descent, random_graph_stress, FuzzMode,
    SweepOptions,
};
use lambda3_core::graphs::{graph6_write, Graph};
use lambda3_core::symspec::{EntryClass, SymMatrix};
use lambda3_core::{SLACK_TOL, TIGHT_TOL};
use serde_json::Value;

use record::{num, nums, Format, Record, RecordWriter};

/// Overrides the default worker count when `--workers` is not given.
const WORKERS_ENV: &str = "LAMBDA3_WORKERS";

/// Graph checks emitted by `check-graph`, in column order.
const GRAPH_CHECKS: [&str; 5] = ["lambda3_upper", "lambda3_floor", "corollary_lower", "hong_lambda2", "weyl_chain"];

/// Largest allowed rounding deficit in the lemma grid.
const LEMMA_TOL: f64 = 1e-12;

#[derive(Parser)]
#[command(name = "lambda3", version, about = "Check and search the bound λ₃(G) ≤ n/3 − 1")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Base seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads [default: $LAMBDA3_WORKERS or available parallelism].
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write records here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Spectrum and every bound for a graph (graph6 string, graph6 file, or edge-list file).
    CheckGraph { input: String },
    /// The weighted pair-sum bound for a matrix text file.
    CheckMatrix { path: PathBuf },
    /// Maximum λ₃ over all labeled graphs on n vertices.
    Sweep {
        n: usize,
        /// Permit n = 8 (2^28 graphs).
        #[arg(long)]
        allow_n8: bool,
        /// Resume from and periodically save to this file.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Every graph bound on random G(n, p) samples.
    Stress {
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 3)]
        n_min: usize,
        #[arg(long, default_value_t = 20)]
        n_max: usize,
    },
    /// Projected subgradient descent on λ_{n−1} over [0,1] matrices.
    Descent {
        n: usize,
        #[arg(long, default_value_t = 32)]
        restarts: u64,
        #[arg(long, default_value_t = 5000)]
        steps: u64,
    },
    /// Edge-flip hill climbing for large λ₃.
    Search3 {
        n: usize,
        #[arg(long, default_value_t = 256)]
        restarts: u64,
        #[arg(long, default_value_t = 400)]
        steps: u64,
    },
    /// Evaluate every proof step on random matrix/frame pairs.
    Fuzz {
        #[arg(long, default_value_t = 100_000)]
        trials: u64,
        #[arg(long, default_value_t = 2)]
        n_min: usize,
        #[arg(long, default_value_t = 16)]
        n_max: usize,
        #[arg(long, value_enum, default_value_t = Mode::Random)]
        mode: Mode,
        /// Row jitter for the three-cluster mode.
        #[arg(long, default_value_t = 1e-4)]
        jitter: f64,
    },
    /// Minimum of the trigonometric majorant gap on a grid over [−2π, 2π].
    LemmaGrid {
        #[arg(long, default_value_t = 1_000_000)]
        points: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Random,
    ThreeCluster,
}

/// Why a run did not confirm every claim.
enum Failure {
    Violation,
    Input(String),
}

impl From<lambda3_core::Error> for Failure {
    fn from(e: lambda3_core::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<String> for Failure {
    fn from(msg: String) -> Self {
        Failure::Input(msg)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn workers(flag: Option<usize>) -> Result<usize, Failure> {
    let w = match flag {
        Some(w) => w,
        None => match std::env::var(WORKERS_ENV) {
            Ok(s) => s.trim().parse().map_err(|_| Failure::Input(format!("{WORKERS_ENV}={s:?} is not a count")))?,
            Err(_) => default_workers(),
        },
    };
    if w == 0 {
        return Err(Failure::Input("workers must be positive".into()));
    }
    Ok(w)
}

fn run(cli: Cli) -> Result<(), Failure> {
    let Common { seed, workers: w, format, out } = cli.common;
    let workers = workers(w)?;
    // Compute first so a failed input leaves no half-written output file.
    let (records, ok) = match cli.command {
        Command::CheckGraph { input } => check_graph(&input)?,
        Command::CheckMatrix { path } => check_matrix(&path)?,
        Command::Sweep { n, allow_n8, checkpoint } => sweep(n, allow_n8, checkpoint, workers)?,
        Command::Stress { trials, n_min, n_max } => stress(trials, n_min, n_max, seed, workers)?,
        Command::Descent { n, restarts, steps } => descent(n, restarts, steps, seed, workers)?,
        Command::Search3 { n, restarts, steps } => search3(n, restarts, steps, seed, workers)?,
        Command::Fuzz { trials, n_min, n_max, mode, jitter } => fuzz(trials, n_min, n_max, mode, jitter, seed, workers)?,
        Command::LemmaGrid { points } => lemma(points)?,
    };
    let sink: Box<dyn Write> = match &out {
        Some(p) => Box::new(File::create(p).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?),
        None => Box::new(io::stdout().lock()),
    };
    let mut writer = RecordWriter::new(BufWriter::new(sink), format);
    for r in &records {
        writer.write(r)?;
    }
    writer.finish()?;
    if ok {
        Ok(())
    } else {
        Err(Failure::Violation)
    }
}

type Outcome = Result<(Vec<Record>, bool), Failure>;

fn push_report(r: &mut Record, prefix: &str, rep: Option<&BoundReport>) {
    r.push(format!("{prefix}_quantity"), rep.map_or(Value::Null, |b| num(b.quantity)));
    r.push(format!("{prefix}_bound"), rep.map_or(Value::Null, |b| num(b.bound)));
    r.push(format!("{prefix}_slack"), rep.map_or(Value::Null, |b| num(b.slack)));
    r.push(format!("{prefix}_tight"), rep.map_or(Value::Null, |b| Value::Bool(b.tight)));
}

fn check_graph(input: &str) -> Outcome {
    let graphs = input::read_graphs(input)?;
    let mut ok = true;
    let mut records = Vec::with_capacity(graphs.len());
    for g in &graphs {
        let reports = graph_checks(g)?;
        let spectrum = graph_spectrum(g);
        let holds = reports.iter().all(BoundReport::holds);
        ok &= holds;
        let mut r = Record::new("check-graph")
            .with("graph6", graph6_write(g))
            .with("n", g.n())
            .with("edges", g.edge_count())
            .with("spectrum", nums(spectrum.values()));
        for name in GRAPH_CHECKS {
            push_report(&mut r, name, reports.iter().find(|b| b.check == name));
        }
        records.push(r.with("ok", holds));
    }
    Ok((records, ok))
}

fn check_matrix(path: &std::path::Path) -> Outcome {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let loaded = SymMatrix::parse_text(&text)?;
    let a = &loaded.matrix;
    let bad = a.violations(EntryClass::Theorem);
    if !bad.is_empty() {
        let list: Vec<String> = bad.iter().map(|v| format!("({}, {}) = {}", v.row, v.col, v.value)).collect();
        return Err(Failure::Input(format!(
            "matrix is outside the {} class at {}",
            EntryClass::Theorem.name(),
            list.join(", ")
        )));
    }
    let rep = verify_weighted_theorem(a)?;
    let holds = rep.pair_sum.holds() && rep.second_smallest.holds();
    let mut r = Record::new("check-matrix")
        .with("path", path.display().to_string())
        .with("n", a.n())
        .with("max_asymmetry", num(loaded.max_asymmetry));
    push_report(&mut r, "pair_sum", Some(&rep.pair_sum));
    push_report(&mut r, "second_smallest", Some(&rep.second_smallest));
    Ok((vec![r.with("ok", holds)], holds))
}

fn sweep(n: usize, allow_n8: bool, checkpoint: Option<PathBuf>, workers: usize) -> Outcome {
    let opts = SweepOptions { workers, allow_n8, checkpoint: checkpoint.clone(), ..SweepOptions::default() };
    let progress = |done: u64, total: u64| eprintln!("sweep n={n}: {done}/{total}");
    let res = exhaustive_sweep(n, &opts, Some(&progress))?;
    let witness = Graph::from_mask(n, res.argmax_mask)?;
    let slack = res.bound - res.max_lambda3;
    let ok = res.violations == 0 && slack >= -SLACK_TOL;
    let r = Record::new("sweep")
        .with("n", n)
        .with("allow_n8", allow_n8)
        .with("checkpoint", checkpoint.map_or(Value::Null, |p| p.display().to_string().into()))
        .with("graphs_checked", res.graphs_checked)
        .with("max_lambda3", num(res.max_lambda3))
        .with("argmax_mask", res.argmax_mask)
        .with("argmax_graph6", graph6_write(&witness))
        .with("bound", num(res.bound))
        .with("slack", num(slack))
        .with("tight", slack.abs() <= TIGHT_TOL)
        .with("violations", res.violations)
        .with("ok", ok);
    Ok((vec![r], ok))
}

fn stress(trials: u64, n_min: usize, n_max: usize, seed: u64, workers: usize) -> Outcome {
    eprintln!("stress: {trials} graphs, n in {n_min}..={n_max}");
    let res = random_graph_stress(n_min..=n_max, trials, seed, workers)?;
    let ok = res.violations == 0;
    let mut r = Record::new("stress")
        .with("seed", seed)
        .with("trials", trials)
        .with("n_min", n_min)
        .with("n_max", n_max)
        .with("violations", res.violations);
    for name in GRAPH_CHECKS {
        r.push(format!("min_slack_{name}"), res.min_slack.get(name).map_or(Value::Null, |&s| num(s)));
    }
    Ok((vec![r.with("ok", ok)], ok))
}

fn descent(n: usize, restarts: u64, steps: u64, seed: u64, workers: usize) -> Outcome {
    eprintln!("descent: n={n}, {restarts} restarts x {steps} steps");
    let rec = polytope_descent(n, restarts, steps, seed, workers)?;
    let floor = -(n as f64) / 3.0;
    let slack = rec.best_lambda - floor;
    let ok = slack >= -SLACK_TOL;
    let rows: Vec<Value> = (0..n).map(|i| nums(rec.best_matrix.row(i))).collect();
    let r = Record::new("descent")
        .with("seed", seed)
        .with("n", n)
        .with("restarts", restarts)
        .with("steps", steps)
        .with("best_lambda", num(rec.best_lambda))
        .with("floor", num(floor))
        .with("slack", num(slack))
        .with("best_restart", rec.best_restart)
        .with("iterations", rec.iterations)
        .with("best_matrix", Value::Array(rows))
        .with("ok", ok);
    Ok((vec![r], ok))
}

fn search3(n: usize, restarts: u64, steps: u64, seed: u64, workers: usize) -> Outcome {
    eprintln!("search3: n={n}, {restarts} restarts x {steps} steps");
    let rec = max_lambda3_search(n, restarts, steps, seed, workers)?;
    let bound = n as f64 / 3.0 - 1.0;
    let slack = bound - rec.lambda3;
    let ok = slack >= -SLACK_TOL;
    let r = Record::new("search3")
        .with("seed", seed)
        .with("n", n)
        .with("restarts", restarts)
        .with("steps", steps)
        .with("lambda3", num(rec.lambda3))
        .with("bound", num(bound))
        .with("slack", num(slack))
        .with("tight", slack.abs() <= TIGHT_TOL)
        .with("best_restart", rec.best_restart)
        .with("graph6", graph6_write(&rec.graph))
        .with("ok", ok);
    Ok((vec![r], ok))
}

fn fuzz(trials: u64, n_min: usize, n_max: usize, mode: Mode, jitter: f64, seed: u64, workers: usize) -> Outcome {
    let (name, mode) = match mode {
        Mode::Random => ("random", FuzzMode::Random),
        Mode::ThreeCluster => ("three-cluster", FuzzMode::ThreeCluster { jitter }),
    };
    eprintln!("fuzz: {trials} trials, mode {name}, n in {n_min}..={n_max}");
    let res = frame_fuzz(trials, n_min..=n_max, mode, seed, workers)?;
    let ok = res.violations == 0;
    let mut r = Record::new("fuzz")
        .with("seed", seed)
        .with("trials", trials)
        .with("n_min", n_min)
        .with("n_max", n_max)
        .with("mode", name)
        .with("jitter", matches!(mode, FuzzMode::ThreeCluster { .. }).then(|| num(jitter)).unwrap_or(Value::Null))
        .with("violations", res.violations);
    for (step, slack) in res.min_step_slacks {
        r.push(format!("min_slack_{}", step.name()), num(slack));
    }
    r.push("min_final_slack", num(res.min_final_slack));
    Ok((vec![r.with("ok", ok)], ok))
}

fn lemma(points: usize) -> Outcome {
    if points < 2 {
        return Err(Failure::Input("--points must be at least 2".into()));
    }
    let grid = lemma_grid(points);
    let ok = grid.min_gap >= -LEMMA_TOL;
    let r = Record::new("lemma-grid")
        .with("points", points)
        .with("min_gap", num(grid.min_gap))
        .with("argmin", num(grid.argmin))
        .with("max_factorization_error", num(grid.max_factorization_error))
        .with("root_gaps", nums(&grid.root_gaps))
        .with("ok", ok);
    Ok((vec![r], ok))
}
