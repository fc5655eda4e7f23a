//! `stdsub`: run verification suites and emit a JSON report.
//!
//! Exit status is 0 when every check passes, 1 when a check fails and 2 on a
//! configuration or I/O error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use standard_subspaces::affine::curve_csv;
use standard_subspaces::jordan::JordanKind;
use standard_subspaces::suites::{self, Command, RunConfig, Tolerances};

#[derive(Parser, Debug)]
#[command(name = "stdsub", version, about = "Numerical verification suites for standard subspaces")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Seed of all random streams.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Tolerance override `name=value` (repeatable).
    #[arg(long = "tol", global = true, value_name = "NAME=VALUE")]
    tol: Vec<String>,

    /// Main sample count of each suite.
    #[arg(long, global = true)]
    trials: Option<usize>,

    /// Dimension cap for random finite-dimensional models.
    #[arg(long = "n", global = true, default_value_t = 8)]
    n: usize,

    /// Grid size of the affine model (power of two).
    #[arg(long = "N", global = true, default_value_t = 4096)]
    grid_n: usize,

    /// Half-width of the affine log-frequency grid.
    #[arg(long = "L", global = true, default_value_t = 20.0)]
    grid_l: f64,

    /// Jordan algebra `sym`, `herm` or `spin`, optionally `kind:n` (repeatable; default all three).
    #[arg(long, global = true)]
    algebra: Vec<String>,

    /// Write the JSON report to this path instead of stdout.
    #[arg(long, global = true)]
    json: Option<PathBuf>,

    /// Write the checks as CSV to this path.
    #[arg(long, global = true)]
    csv: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone)]
enum Cmd {
    /// Reflection and dilation space laws of every instance.
    Axioms,
    /// Model round trips, bullet intertwining and the worked example.
    Modular,
    /// Geodesics of standard subspaces and dilation representations.
    Geodesic,
    /// Jordan identities, gradings and Lie structure.
    Jordan,
    /// Compression semigroup and its order.
    Semigroup,
    /// The map from graded homomorphisms to standard subspaces.
    Bgl,
    /// Grid model of the positive energy representation of Aff(R).
    Affine {
        /// Also dump the distance curve over b in [-1, 1] as CSV.
        #[arg(long)]
        curve: Option<PathBuf>,
    },
    /// Every suite.
    All,
}

impl Cmd {
    fn command(&self) -> Command {
        match self {
            Cmd::Axioms => Command::Axioms,
            Cmd::Modular => Command::Modular,
            Cmd::Geodesic => Command::Geodesic,
            Cmd::Jordan => Command::Jordan,
            Cmd::Semigroup => Command::Semigroup,
            Cmd::Bgl => Command::Bgl,
            Cmd::Affine { .. } => Command::Affine,
            Cmd::All => Command::All,
        }
    }
}

fn parse_algebra(s: &str) -> Result<JordanKind, String> {
    let (kind, n) = match s.split_once(':') {
        Some((k, n)) => (k, Some(n.parse::<usize>().map_err(|e| format!("bad size in {s:?}: {e}"))?)),
        None => (s, None),
    };
    match kind {
        "sym" => Ok(JordanKind::Sym(n.unwrap_or(3))),
        "herm" => Ok(JordanKind::Herm(n.unwrap_or(2))),
        "spin" => Ok(JordanKind::Spin(n.unwrap_or(4))),
        _ => Err(format!("unknown algebra {s:?}; expected sym, herm or spin")),
    }
}

fn config(cli: &Cli) -> Result<RunConfig, String> {
    let mut tol = Tolerances::default();
    for t in &cli.tol {
        let (name, value) = t.split_once('=').ok_or_else(|| format!("tolerance override {t:?} is not NAME=VALUE"))?;
        let value: f64 = value.parse().map_err(|e| format!("bad tolerance value in {t:?}: {e}"))?;
        tol.set(name, value).map_err(|e| e.to_string())?;
    }
    let mut cfg = RunConfig { seed: cli.seed, tol, trials: cli.trials, max_dim: cli.n, grid_n: cli.grid_n, grid_l: cli.grid_l, ..RunConfig::default() };
    if !cli.algebra.is_empty() {
        cfg.algebras = cli.algebra.iter().map(|a| parse_algebra(a)).collect::<Result<_, _>>()?;
    }
    cfg.validate().map_err(|e| e.to_string())?;
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = match config(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("stdsub: {e}");
            return ExitCode::from(2);
        }
    };
    let report = suites::run(cli.command.command(), &cfg);
    let write = |path: &PathBuf, body: String| std::fs::write(path, body).map_err(|e| format!("cannot write {}: {e}", path.display()));
    let mut outputs = Vec::new();
    match &cli.json {
        Some(path) => {
            outputs.push(write(path, report.to_json()));
            print!("{}", report.to_table());
        }
        None => print!("{}", report.to_json()),
    }
    if let Some(path) = &cli.csv {
        outputs.push(write(path, report.to_csv()));
    }
    if let Cmd::Affine { curve: Some(path) } = &cli.command {
        outputs.push(suites::affine_curve(&cfg, -1.0, 1.0, 40).map_err(|e| e.to_string()).and_then(|rows| write(path, curve_csv(&rows))));
    }
    if let Some(Err(e)) = outputs.into_iter().find(Result::is_err) {
        eprintln!("stdsub: {e}");
        return ExitCode::from(2);
    }
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
