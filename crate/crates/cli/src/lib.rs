//! Argument parsing, rendering and dispatch for the `tubefrieze` binary.
//!
//! Exit codes: 0 on success, 1 when a verification fails or a frieze turns
//! out invalid, 2 on usage errors and unreadable input.

use std::fmt;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;
use tubefrieze::fence::{band_count, delta, nabla, CyclicWord, FenceWord};
use tubefrieze::frieze::{chebyshev_growth, generate, growth, polygon_quiddity, Frieze, FriezeStatus, Quiddity};
use tubefrieze::surface::{random_triangulation, GenCase, GenParams};
use tubefrieze::tubes::tube_report;
use tubefrieze::DiskTriangulation;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const MAX_ROWS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Frieze { quiddity: Quiddity, rows: usize, show_zeros: bool },
    Growth { quiddity: Quiddity, k: Option<usize> },
    Fence { word: FenceWord },
    Band { word: FenceWord },
    Polygon { n: usize, diagonals: Vec<(usize, usize)> },
    DiskAnalyze { input: PathBuf, format: OutputFormat },
    DiskGen { seed: u64, params: GenParams, out: Option<PathBuf> },
    DiskVerify { random: usize, seed: u64, b: Option<usize>, pmax: usize, qmax: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Machine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CaseArg {
    I,
    Ii,
    Iii,
}

#[derive(Parser)]
#[command(name = "tubefrieze", version, about = "Infinite friezes, fence posets and tube growth coefficients")]
struct Cli {
    #[command(subcommand)]
    command: Top,
}

#[derive(Subcommand)]
enum Top {
    /// Print the rows of the frieze with the given quiddity.
    Frieze {
        #[arg(long, value_parser = parse_quiddity)]
        quiddity: Quiddity,
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..=MAX_ROWS as u64))]
        rows: u64,
        #[arg(long)]
        show_zeros: bool,
    },
    /// Print the growth coefficient s, and s_k for k up to K.
    Growth {
        #[arg(long, value_parser = parse_quiddity)]
        quiddity: Quiddity,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Ideal count and rank matrices of a fence word.
    Fence {
        #[arg(long, value_parser = parse_word)]
        word: FenceWord,
    },
    /// Closed-subset count of the cyclic word, by trace.
    Band {
        #[arg(long, value_parser = parse_word)]
        word: FenceWord,
    },
    /// Quiddity of a triangulated polygon.
    Polygon {
        #[arg(long, value_parser = clap::value_parser!(u64).range(3..))]
        n: u64,
        /// Diagonals as `i-j` pairs separated by commas.
        #[arg(long, value_parser = parse_diagonals, default_value = "")]
        diagonals: Diagonals,
    },
    /// Triangulations of the twice-punctured disk.
    Disk {
        #[command(subcommand)]
        command: DiskTop,
    },
}

#[derive(Subcommand)]
enum DiskTop {
    /// Tube report for a triangulation file.
    Analyze {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Write a random triangulation.
    Gen(GenArgs),
    /// Check the growth coefficients agree on generated case I instances.
    Verify {
        #[arg(long)]
        random: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        b: Option<u64>,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
        pmax: u64,
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
        qmax: u64,
    },
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    b: usize,
    #[arg(long)]
    p: usize,
    #[arg(long)]
    q: usize,
    #[arg(long, value_enum, default_value_t = CaseArg::I)]
    case: CaseArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Diagonals(Vec<(usize, usize)>);

fn parse_quiddity(s: &str) -> Result<Quiddity, String> {
    Quiddity::from_str(s).map_err(|e| e.to_string())
}

fn parse_word(s: &str) -> Result<FenceWord, String> {
    FenceWord::from_str(s).map_err(|e| e.to_string())
}

fn parse_diagonals(s: &str) -> Result<Diagonals, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (i, j) = part.split_once('-').ok_or_else(|| format!("diagonal {part:?} is not of the form i-j"))?;
        let parse = |x: &str| x.trim().parse::<usize>().map_err(|_| format!("bad vertex {x:?} in {part:?}"));
        out.push((parse(i)?, parse(j)?));
    }
    Ok(Diagonals(out))
}

/// Parses `argv`, including the program name in position 0.
///
/// On failure the returned error carries clap's rendering; help and version
/// requests come back as errors with exit code 0.
pub fn parse_args<I, T>(argv: I) -> Result<Command, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    Ok(match cli.command {
        Top::Frieze { quiddity, rows, show_zeros } => Command::Frieze { quiddity, rows: rows as usize, show_zeros },
        Top::Growth { quiddity, k } => Command::Growth { quiddity, k },
        Top::Fence { word } => Command::Fence { word },
        Top::Band { word } => Command::Band { word },
        Top::Polygon { n, diagonals } => Command::Polygon { n: n as usize, diagonals: diagonals.0 },
        Top::Disk { command } => match command {
            DiskTop::Analyze { input, format } => Command::DiskAnalyze { input, format },
            DiskTop::Gen(g) => {
                let case = match g.case {
                    CaseArg::I => GenCase::I,
                    CaseArg::Ii => GenCase::II,
                    CaseArg::Iii => GenCase::III,
                };
                Command::DiskGen { seed: g.seed, params: GenParams { case, b: g.b, p: g.p, q: g.q }, out: g.out }
            }
            DiskTop::Verify { random, seed, b, pmax, qmax } => Command::DiskVerify {
                random,
                seed,
                b: b.map(|b| b as usize),
                pmax: pmax as usize,
                qmax: qmax as usize,
            },
        },
    })
}

#[derive(Debug, Error)]
enum RunError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failure(String),
    #[error("write failed: {0}")]
    Io(#[from] std::io::Error),
}

impl RunError {
    fn code(&self) -> i32 {
        match self {
            RunError::Usage(_) => EXIT_USAGE,
            RunError::Failure(_) | RunError::Io(_) => EXIT_FAILURE,
        }
    }
}

/// Text lines of a frieze, each row shifted half a cell right of the one
/// above it so that every entry sits below the gap between its two parents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderedFrieze {
    pub lines: Vec<String>,
}

impl RenderedFrieze {
    /// The numbers on each line, in order, with the row label removed.
    pub fn numbers(&self) -> Vec<Vec<BigInt>> {
        self.lines
            .iter()
            .map(|line| {
                let body = line.split_once(':').map_or("", |(_, b)| b);
                body.split_whitespace().filter_map(|x| x.parse().ok()).collect()
            })
            .collect()
    }
}

impl fmt::Display for RenderedFrieze {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in &self.lines {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// Renders rows `0..=rows` of `f` (fewer if it stopped early). The row of 0s
/// below row 0, and the one after a closing row, appear only with `show_zeros`.
pub fn render_frieze(f: &Frieze, rows: usize, show_zeros: bool) -> RenderedFrieze {
    let closed = match f.status() {
        FriezeStatus::ClosedAtRow(r) => Some(r as isize),
        _ => None,
    };
    let top = f.last_row().min(rows as isize);
    let shown: Vec<isize> = (-1..=f.last_row())
        .filter(|&r| r <= top || (show_zeros && closed.is_some_and(|c| r == c + 1)))
        .filter(|&r| show_zeros || !is_zero_row(f, r))
        .collect();

    let digits = shown.iter().flat_map(|&r| f.row(r).unwrap()).map(|x| x.to_string().len()).max().unwrap_or(1);
    let cell = (digits + 2) & !1;
    let half = cell / 2;
    let label = |r: isize| format!("Row {r}:");
    let label_width = shown.iter().map(|&r| label(r).len()).max().unwrap_or(0);

    let lines = shown
        .iter()
        .map(|&r| {
            let mut line = format!("{:<label_width$}", label(r));
            line.push_str(&" ".repeat(half * (r + 1) as usize));
            for x in f.row(r).unwrap() {
                line.push_str(&format!("{:>cell$}", x.to_string()));
            }
            if closed == Some(r) {
                line.push_str("   <- closing row of 1s");
            }
            line
        })
        .collect();
    RenderedFrieze { lines }
}

fn is_zero_row(f: &Frieze, r: isize) -> bool {
    f.row(r).is_some_and(|row| row.iter().all(|x| x.sign() == num_bigint::Sign::NoSign))
}

/// Runs `cmd` against the process's standard streams.
pub fn run(cmd: Command) -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(cmd, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(cmd, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code()
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, RunError> {
    match cmd {
        Command::Frieze { quiddity, rows, show_zeros } => {
            let f = generate(&quiddity, rows).map_err(|e| RunError::Failure(e.to_string()))?;
            write!(out, "{}", render_frieze(&f, rows, show_zeros))?;
            match f.status() {
                FriezeStatus::Invalid { .. } => {
                    writeln!(err, "frieze {}", f.status())?;
                    Ok(EXIT_FAILURE)
                }
                status => {
                    writeln!(out, "status: {status}")?;
                    Ok(EXIT_OK)
                }
            }
        }
        Command::Growth { quiddity, k } => {
            let s = growth(&quiddity).map_err(|e| RunError::Failure(e.to_string()))?;
            writeln!(out, "s = {s}")?;
            if let Some(k) = k {
                for j in 0..=k {
                    writeln!(out, "s_{j} = {}", chebyshev_growth(&s, j))?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Fence { word } => {
            let n = nabla(&word);
            writeln!(out, "ideal count  {}", n.submodule_count())?;
            writeln!(out, "nabla        {}", n.entries())?;
            writeln!(out, "delta        {}", delta(&word).entries())?;
            Ok(EXIT_OK)
        }
        Command::Band { word } => {
            let c = band_count(&CyclicWord::new(word));
            writeln!(out, "count       {}", c.count)?;
            writeln!(out, "degenerate  {}", if c.degenerate { "yes" } else { "no" })?;
            Ok(EXIT_OK)
        }
        Command::Polygon { n, diagonals } => {
            let q = polygon_quiddity(n, &diagonals).map_err(|e| RunError::Usage(e.to_string()))?;
            writeln!(out, "{q}")?;
            Ok(EXIT_OK)
        }
        Command::DiskAnalyze { input, format } => {
            let text = std::fs::read_to_string(&input)
                .map_err(|e| RunError::Usage(format!("cannot read {}: {e}", input.display())))?;
            let t = DiskTriangulation::from_json(&text)
                .map_err(|e| RunError::Usage(format!("{}: {e}", input.display())))?;
            let report = tube_report(&t).map_err(|e| RunError::Failure(e.to_string()))?;
            match format {
                OutputFormat::Text => write!(out, "{report}")?,
                OutputFormat::Machine => {
                    writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("report serializes"))?
                }
            }
            Ok(if report.all_equal { EXIT_OK } else { EXIT_FAILURE })
        }
        Command::DiskGen { seed, params, out: path } => {
            let t = random_triangulation(seed, params).map_err(|e| RunError::Usage(e.to_string()))?;
            let json = t.to_json();
            match path {
                Some(path) => {
                    std::fs::write(&path, json + "\n")
                        .map_err(|e| RunError::Usage(format!("cannot write {}: {e}", path.display())))?;
                    writeln!(out, "wrote {}", path.display())?;
                }
                None => writeln!(out, "{json}")?,
            }
            Ok(EXIT_OK)
        }
        Command::DiskVerify { random, seed, b, pmax, qmax } => verify(random, seed, b, pmax, qmax, out),
    }
}

/// Parameters of instance `k` of a verification run, drawn from one stream so
/// that they do not depend on scheduling.
fn verify_instances(random: usize, seed: u64, b: Option<usize>, pmax: usize, qmax: usize) -> Vec<(u64, GenParams)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..random)
        .map(|_| {
            let instance_seed: u64 = rng.gen();
            let params = match b {
                Some(b) => {
                    let p = rng.gen_range(1..=pmax.min(b + 1));
                    let q = rng.gen_range(1..=qmax.min(b + 2 - p));
                    GenParams::case_i(b, p, q)
                }
                None => {
                    let p = rng.gen_range(1..=pmax);
                    let q = rng.gen_range(1..=qmax);
                    let lo = (p + q).saturating_sub(2).max(1);
                    GenParams::case_i(rng.gen_range(lo..=lo + 5), p, q)
                }
            };
            (instance_seed, params)
        })
        .collect()
}

fn verify(random: usize, seed: u64, b: Option<usize>, pmax: usize, qmax: usize, out: &mut dyn Write) -> Result<i32, RunError> {
    let instances = verify_instances(random, seed, b, pmax, qmax);
    let lines: Vec<(bool, String)> = instances
        .par_iter()
        .map(|&(s, params)| {
            let head = format!("seed {s:>20}  b={} p={} q={}", params.b, params.p, params.q);
            match random_triangulation(s, params).map_err(|e| e.to_string()).and_then(|t| tube_report(&t).map_err(|e| e.to_string())) {
                Ok(r) => {
                    let fields: Vec<String> = r.growth_fields().iter().map(|(_, g)| g.to_string()).collect();
                    let verdict = if r.all_equal { "ok" } else { "MISMATCH" };
                    (r.all_equal, format!("{head}  a={} s={} [{}]  {verdict}", r.a, r.growth_formula, fields.join(",")))
                }
                Err(e) => (false, format!("{head}  error: {e}")),
            }
        })
        .collect();
    let passed = lines.iter().filter(|(ok, _)| *ok).count();
    for (_, line) in &lines {
        writeln!(out, "{line}")?;
    }
    writeln!(out, "{passed}/{} instances with all growth coefficients equal", lines.len())?;
    Ok(if passed == lines.len() { EXIT_OK } else { EXIT_FAILURE })
}
