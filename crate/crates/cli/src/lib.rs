//! Front end for the modular subset sum solver.
//!
//! Instances are read as one entry per line, either `x` or `x count`, with
//! blank lines and `#` comments ignored. Values are reduced modulo
//! `--modulus` and repeated values accumulate.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use shift_tree::{solve, Backend, Instance, Solution};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Attainable residues, ascending, one per line.
    List,
    /// Number of attainable residues.
    Count,
    /// Residue list plus work counters on standard error.
    Stats,
}

/// Solve a modular subset sum instance, or benchmark the solver.
#[derive(Debug, Clone, Parser)]
#[command(name = "shiftsum", version)]
pub struct RunConfig {
    /// Modulus m; required unless --bench is given.
    #[arg(long)]
    pub modulus: Option<usize>,

    /// Instance file; standard input when omitted.
    #[arg(long)]
    pub input: Option<PathBuf>,

    #[arg(long, default_value = "tagged", value_parser = parse_backend)]
    pub backend: Backend,

    /// Seed for the hash evaluation point (hashed backend) and for
    /// generated benchmark instances.
    #[arg(long, env = "SHIFTSUM_SEED")]
    pub seed: Option<u64>,

    #[arg(long, value_enum, default_value = "list")]
    pub mode: Mode,

    /// Comma-separated moduli to benchmark; prints CSV instead of solving.
    #[arg(long, value_delimiter = ',')]
    pub bench: Option<Vec<usize>>,
}

fn parse_backend(s: &str) -> Result<Backend, String> {
    s.parse()
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("cannot read input: {0}")]
    Io(#[from] io::Error),

    #[error(transparent)]
    Solver(shift_tree::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse { .. } => 2,
            CliError::Solver(shift_tree::Error::HashCollision { .. }) => 3,
            CliError::Io(_) | CliError::Solver(_) => 1,
        }
    }
}

impl From<shift_tree::Error> for CliError {
    fn from(e: shift_tree::Error) -> Self {
        match e {
            shift_tree::Error::ZeroModulus => CliError::Usage(e.to_string()),
            other => CliError::Solver(other),
        }
    }
}

/// Parses the line-oriented instance format.
pub fn parse_instance(text: &str, modulus: usize) -> Result<Instance, CliError> {
    let mut inst = Instance::empty(modulus)?;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let err = |message: String| CliError::Parse { line, message };
        let mut tokens = content.split_whitespace();
        let value_tok = tokens.next().unwrap_or_default();
        let value: i128 = value_tok
            .parse()
            .map_err(|_| err(format!("`{value_tok}` is not an integer")))?;
        let count = match tokens.next() {
            None => 1,
            Some(tok) => match tok.parse::<i128>() {
                Ok(c) if c < 0 => return Err(err(format!("negative multiplicity {c}"))),
                Ok(c) => {
                    u64::try_from(c).map_err(|_| err(format!("multiplicity {c} is too large")))?
                }
                Err(_) => return Err(err(format!("`{tok}` is not an integer"))),
            },
        };
        if let Some(extra) = tokens.next() {
            return Err(err(format!("unexpected token `{extra}`")));
        }
        inst.add(value.rem_euclid(modulus as i128) as u64, count);
    }
    Ok(inst)
}

fn read_input(cfg: &RunConfig) -> Result<String, CliError> {
    match &cfg.input {
        Some(path) => Ok(fs::read_to_string(path)?),
        None => {
            let mut text = String::new();
            io::stdin().read_to_string(&mut text)?;
            Ok(text)
        }
    }
}

fn effective_seed(cfg: &RunConfig, err: &mut impl Write) -> io::Result<u64> {
    if cfg.backend != Backend::Hashed {
        if cfg.seed.is_some() {
            writeln!(
                err,
                "warning: --seed is ignored by the {} backend",
                cfg.backend
            )?;
        }
        return Ok(0);
    }
    Ok(cfg.seed.unwrap_or_else(rand::random))
}

/// Runs the configured command, reading the instance from `--input` or stdin.
pub fn run(cfg: &RunConfig, out: &mut impl Write, err: &mut impl Write) -> Result<(), CliError> {
    if let Some(sizes) = &cfg.bench {
        return bench(cfg, sizes, out);
    }
    let modulus = cfg
        .modulus
        .ok_or_else(|| CliError::Usage("--modulus is required".into()))?;
    let text = read_input(cfg)?;
    solve_text(cfg, modulus, &text, out, err)
}

/// Solves an instance given as text and writes the result.
pub fn solve_text(
    cfg: &RunConfig,
    modulus: usize,
    text: &str,
    out: &mut impl Write,
    err: &mut impl Write,
) -> Result<(), CliError> {
    if modulus == 0 {
        return Err(CliError::Usage("--modulus must be at least 1".into()));
    }
    let inst = parse_instance(text, modulus)?;
    let seed = effective_seed(cfg, err)?;
    let solution = solve(&inst, cfg.backend, seed)?;
    match cfg.mode {
        Mode::Count => writeln!(out, "{}", solution.sums.len())?,
        Mode::List | Mode::Stats => {
            for x in solution.sums.to_sorted_vec() {
                writeln!(out, "{x}")?;
            }
        }
    }
    if cfg.mode == Mode::Stats {
        write_stats(&solution, err)?;
    }
    Ok(())
}

fn write_stats(solution: &Solution, err: &mut impl Write) -> io::Result<()> {
    let s = &solution.stats;
    writeln!(err, "sums={}", solution.sums.len())?;
    writeln!(err, "updates={}", s.updates)?;
    writeln!(err, "diff_visits={}", s.diff_visits)?;
    writeln!(err, "store_ops={}", s.store_ops)?;
    writeln!(err, "bellman_iterations={}", s.bellman_iterations)?;
    writeln!(err, "reported_differences={}", s.reported_differences)
}

pub const BENCH_HEADER: &str = "m,backend,wall_ns,updates,diff_visits,store_ops";

/// One CSV row per size: a dense random instance (`m` uniform draws) solved
/// with the configured backend.
pub fn bench(cfg: &RunConfig, sizes: &[usize], out: &mut impl Write) -> Result<(), CliError> {
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(CliError::Usage("--bench needs positive sizes".into()));
    }
    let seed = cfg.seed.unwrap_or(0);
    writeln!(out, "{BENCH_HEADER}")?;
    for &m in sizes {
        let inst = Instance::random(m, m, seed)?;
        let start = Instant::now();
        let solution = solve(&inst, cfg.backend, seed)?;
        let wall = start.elapsed().as_nanos();
        let s = solution.stats;
        writeln!(
            out,
            "{m},{},{wall},{},{},{}",
            cfg.backend, s.updates, s.diff_visits, s.store_ops
        )?;
    }
    Ok(())
}
