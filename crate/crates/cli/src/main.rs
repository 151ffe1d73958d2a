//! `mmp` — command-line driver for the MMP diagram library.
//!
//! Every subcommand reads diagrams one per line (from a file or standard
//! input), writes one result line per input line in the same order, and
//! composes in pipelines:
//!
//! ```text
//! mmp generate --blocks 5 --block-size 3 --max-vertices 7 \
//!     --filter non-01-colorable | mmp realize --dim 5 --seed 1
//! ```
//!
//! Exit codes: 0 on success, 1 when `--assert` is set and some verdict was
//! negative (or a `--budget` ran out), 2 on usage or parse errors, 3 on
//! I/O errors.

use std::fs::{self, File};
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use mmp_core::generate::{DiagramFilter, GenerateError};
use mmp_core::lattice::{
    admits_quantum_states_on_lattice, build_lattice, check_minimal_length, check_orthomodular,
    check_superposition, holds_in_with, EvalBudget, OmlLattice,
};
use mmp_core::states::{
    admits_01_state, admits_quantum_states, admits_state, classify_state_space,
    enumerate_01_states,
};
use mmp_core::vectors::{
    parse_vectors, realize, serialize_vectors, verify_realization, RealizeError, RealizeOptions,
};
use mmp_core::{canonical_form, parse_statement, GenerationParams, LatticeStatement, MmpDiagram};

/// Input lines buffered per batch; bounds memory when streaming and sets
/// the grain for `--parallel`.
const CHUNK: usize = 1024;

#[derive(Parser)]
#[command(
    name = "mmp",
    version = concat!(env!("CARGO_PKG_VERSION"), " (MMP text dialect 1)"),
    about = "Generate, analyze and realize MMP diagrams \
             (hypergraphs of mutually orthogonal atoms)",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Process input lines on W worker threads; output order still matches
    /// input order. Applies to line-streamed subcommands and to generation
    /// filters.
    #[arg(long, global = true, value_name = "W",
          value_parser = clap::value_parser!(u64).range(1..))]
    parallel: Option<u64>,

    /// Search-node budget for generate and assignment budget for
    /// statement evaluation; exceeding it stops the run with exit code 1.
    #[arg(long, global = true, value_name = "N")]
    budget: Option<u64>,

    /// Diagram output format: character labels (mmp) or 1-based numbers
    /// (numeric). Character output falls back to numeric past 62 vertices.
    #[arg(long, global = true, value_enum, default_value_t = Format::Mmp)]
    format: Format,

    /// Exit 1 when any verdict is negative: COLORABLE for color (searches
    /// want noncolorable diagrams), NONE/NONQUANTUM for states, any failed
    /// law or statement for lattice, EXHAUSTED/IMPOSSIBLE for realize,
    /// INVALID for verify, an empty catalogue for generate.
    #[arg(long, global = true)]
    assert: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate diagrams, one per isomorphism class
    Generate(GenerateArgs),
    /// Decide 0-1 colorability of each diagram
    Color(ColorArgs),
    /// Decide state admissibility of each diagram
    States(StatesArgs),
    /// Paste each diagram's blocks into a lattice and check its laws
    Lattice(LatticeArgs),
    /// Search for an exact orthogonal vector realization of one diagram
    Realize(RealizeArgs),
    /// Check a vector set against each diagram
    Verify(VerifyArgs),
    /// Rewrite each diagram in canonical form
    Canon(CanonArgs),
}

#[derive(Args)]
struct GenerateArgs {
    /// Number of blocks per diagram
    #[arg(long, value_name = "B",
          value_parser = clap::value_parser!(u64).range(1..))]
    blocks: u64,

    /// Block size K, or inclusive range K..K2
    #[arg(long, value_name = "K[..K2]", value_parser = parse_size_range)]
    block_size: SizeRange,

    /// Largest vertex count to search; defaults to B times the largest
    /// block size
    #[arg(long, value_name = "N")]
    max_vertices: Option<usize>,

    /// Emit connected diagrams only (the default)
    #[arg(long, overrides_with = "no_connected")]
    connected: bool,

    /// Emit disconnected diagrams too
    #[arg(long, overrides_with = "connected")]
    no_connected: bool,

    /// Keep only diagrams passing this test; repeatable, conjunctive
    #[arg(long, value_enum, value_name = "PRED")]
    filter: Vec<FilterArg>,

    /// Write diagrams to FILE instead of standard output
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ColorArgs {
    /// Diagram file, one per line; - for standard input
    #[arg(value_name = "FILE", default_value = "-")]
    file: String,

    /// Count distinct 0-1 states instead of only deciding existence
    #[arg(long)]
    enumerate: bool,

    /// Stop counting after N states; a truncated count is printed as N+
    #[arg(long, value_name = "N", requires = "enumerate",
          value_parser = clap::value_parser!(u64).range(1..))]
    limit: Option<u64>,
}

#[derive(Args)]
struct StatesArgs {
    /// Diagram file, one per line; - for standard input
    #[arg(value_name = "FILE", default_value = "-")]
    file: String,

    /// Question to answer per diagram
    #[arg(long, value_enum, value_name = "MODE")]
    mode: StateMode,
}

#[derive(Args)]
struct LatticeArgs {
    /// Diagram file, one per line; - for standard input
    #[arg(value_name = "FILE", default_value = "-")]
    file: String,

    /// Structural law to check; repeatable
    #[arg(long, value_enum, value_name = "LAW")]
    check: Vec<LatticeCheck>,

    /// File of lattice statements to evaluate exhaustively, one per line
    /// (grammar: ^ meet, v join, ' complement, 0, 1, = or =<; # comments)
    #[arg(long, value_name = "FILE")]
    eval: Option<PathBuf>,
}

#[derive(Args)]
struct RealizeArgs {
    /// File holding exactly one diagram line; - for standard input
    #[arg(value_name = "FILE", default_value = "-")]
    file: String,

    /// Vector space dimension
    #[arg(long, value_name = "D",
          value_parser = clap::value_parser!(u64).range(1..))]
    dim: u64,

    /// Random seed; identical inputs and seed give identical output
    #[arg(long, value_name = "S")]
    seed: u64,

    /// Randomized assignment passes before giving up
    #[arg(long, value_name = "N", default_value_t = 100)]
    retries: u64,
}

#[derive(Args)]
struct VerifyArgs {
    /// Diagram file, one per line; - for standard input
    #[arg(value_name = "DIAGRAM_FILE")]
    diagram_file: String,

    /// Vector file: one `label: c1 c2 ... cd` line per vertex
    #[arg(value_name = "VECTORS_FILE")]
    vectors_file: PathBuf,
}

#[derive(Args)]
struct CanonArgs {
    /// Diagram file, one per line; - for standard input
    #[arg(value_name = "FILE", default_value = "-")]
    file: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Character labels, numeric automatically past 62 vertices
    Mmp,
    /// 1-based numeric labels
    Numeric,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FilterArg {
    /// No classical 0-1 state
    #[value(name = "non-01-colorable")]
    Non01Colorable,
    /// No probabilistic state at all
    Stateless,
}

impl FilterArg {
    fn to_core(self) -> DiagramFilter {
        match self {
            FilterArg::Non01Colorable => DiagramFilter::Non01Colorable,
            FilterArg::Stateless => DiagramFilter::Stateless,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StateMode {
    /// Does any probabilistic state exist? Prints a witness
    Exists,
    /// Does the state set satisfy the quantum separation condition?
    Quantum,
    /// All admissibility verdicts at once
    Classify,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LatticeCheck {
    /// x below y implies y = x join (x' meet y)
    Orthomodular,
    /// Every two atoms have a third atom below their join
    Superposition,
    /// A chain 0 < a < b < c < 1 exists
    Minlength,
    /// Quantum separation condition on lattice elements
    Quantum,
}

/// Block-size argument: a single size or an inclusive range.
#[derive(Clone, Copy)]
struct SizeRange {
    min: usize,
    max: usize,
}

fn parse_size_range(s: &str) -> Result<SizeRange, String> {
    let one = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("invalid block size `{}`", t.trim()))
    };
    let (min, max) = match s.split_once("..") {
        Some((a, b)) => (one(a)?, one(b)?),
        None => {
            let k = one(s)?;
            (k, k)
        }
    };
    if min < 1 || min > max {
        return Err(format!("block size range {min}..{max} is empty or starts below 1"));
    }
    Ok(SizeRange { min, max })
}

/// Terminal failures and their exit codes: `Budget` → 1, `Usage` → 2,
/// `Io` → 3. `Pipe` is a silent success for when standard output closes
/// early under a pipeline.
enum Failure {
    Budget(String),
    Usage(String),
    Io(String),
    Pipe,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let assert = cli.assert;
    match run(cli) {
        Ok(any_negative) => {
            if assert && any_negative {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Failure::Pipe) => ExitCode::SUCCESS,
        Err(Failure::Budget(msg)) => {
            eprintln!("mmp: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("mmp: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("mmp: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: Cli) -> Result<bool, Failure> {
    let pool = match cli.parallel {
        None => None,
        Some(w) => Some(
            rayon::ThreadPoolBuilder::new()
                .num_threads(w as usize)
                .build()
                .map_err(|e| Failure::Usage(format!("--parallel {w}: {e}")))?,
        ),
    };
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let negative = match &cli.command {
        Command::Generate(a) => cmd_generate(&cli, a, pool.as_ref(), &mut out)?,
        Command::Color(a) => cmd_color(a, pool.as_ref(), &mut out)?,
        Command::States(a) => cmd_states(a, pool.as_ref(), &mut out)?,
        Command::Lattice(a) => cmd_lattice(&cli, a, pool.as_ref(), &mut out)?,
        Command::Realize(a) => cmd_realize(a, &mut out)?,
        Command::Verify(a) => cmd_verify(a, pool.as_ref(), &mut out)?,
        Command::Canon(a) => cmd_canon(&cli, a, pool.as_ref(), &mut out)?,
    };
    out.flush().map_err(write_failure)?;
    Ok(negative)
}

// ---------------------------------------------------------------------------
// line streaming

/// One processed input line: its output text and whether the verdict
/// counts as negative for `--assert`.
struct LineOut {
    text: String,
    negative: bool,
}

fn input_name(path: &str) -> &str {
    if path == "-" {
        "stdin"
    } else {
        path
    }
}

fn open_input(path: &str) -> Result<Box<dyn BufRead>, Failure> {
    if path == "-" {
        Ok(Box::new(BufReader::new(io::stdin())))
    } else {
        let f = File::open(path).map_err(|e| Failure::Io(format!("{path}: {e}")))?;
        Ok(Box::new(BufReader::new(f)))
    }
}

fn write_failure(e: io::Error) -> Failure {
    if e.kind() == io::ErrorKind::BrokenPipe {
        Failure::Pipe
    } else {
        Failure::Io(format!("write: {e}"))
    }
}

fn parse_diagram(name: &str, line_no: usize, text: &str) -> Result<MmpDiagram, Failure> {
    MmpDiagram::parse(text).map_err(|e| Failure::Usage(format!("{name}:{line_no}: {e}")))
}

/// Feeds every non-blank, non-comment input line through `per_line` in
/// batches of [`CHUNK`], in parallel when a pool is given, and writes the
/// results in input order. Returns whether any verdict was negative.
fn stream_lines<F>(
    path: &str,
    pool: Option<&rayon::ThreadPool>,
    out: &mut dyn Write,
    per_line: F,
) -> Result<bool, Failure>
where
    F: Fn(usize, &str) -> Result<LineOut, Failure> + Sync,
{
    let reader = open_input(path)?;
    let name = input_name(path).to_string();
    let mut pending: Vec<(usize, String)> = Vec::with_capacity(CHUNK);
    let mut any_negative = false;
    for (idx, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Failure::Io(format!("{name}: {e}")))?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        pending.push((idx + 1, text.to_string()));
        if pending.len() == CHUNK {
            any_negative |= drain_batch(&pending, pool, out, &per_line)?;
            pending.clear();
        }
    }
    any_negative |= drain_batch(&pending, pool, out, &per_line)?;
    Ok(any_negative)
}

fn drain_batch<F>(
    batch: &[(usize, String)],
    pool: Option<&rayon::ThreadPool>,
    out: &mut dyn Write,
    per_line: &F,
) -> Result<bool, Failure>
where
    F: Fn(usize, &str) -> Result<LineOut, Failure> + Sync,
{
    let results: Vec<Result<LineOut, Failure>> = match pool {
        Some(p) => p.install(|| batch.par_iter().map(|(n, l)| per_line(*n, l)).collect()),
        None => batch.iter().map(|(n, l)| per_line(*n, l)).collect(),
    };
    let mut any_negative = false;
    for r in results {
        let lo = r?;
        any_negative |= lo.negative;
        writeln!(out, "{}", lo.text).map_err(write_failure)?;
    }
    Ok(any_negative)
}

// ---------------------------------------------------------------------------
// subcommands

fn format_diagram(d: &MmpDiagram, f: Format) -> String {
    match f {
        Format::Mmp => d.to_line(),
        Format::Numeric => d.to_numeric_line(),
    }
}

fn cmd_generate(
    cli: &Cli,
    a: &GenerateArgs,
    pool: Option<&rayon::ThreadPool>,
    stdout_out: &mut dyn Write,
) -> Result<bool, Failure> {
    let mut file_out;
    let out: &mut dyn Write = match &a.out {
        Some(p) => {
            let f = File::create(p)
                .map_err(|e| Failure::Io(format!("{}: {e}", p.display())))?;
            file_out = io::BufWriter::new(f);
            &mut file_out
        }
        None => stdout_out,
    };
    let blocks = a.blocks as usize;
    let params = GenerationParams {
        target_blocks: blocks,
        block_size_min: a.block_size.min,
        block_size_max: a.block_size.max,
        max_vertices: a.max_vertices.unwrap_or(blocks * a.block_size.max),
        require_connected: !a.no_connected,
        // Filters run over batches below so --parallel can spread them;
        // the scan itself stays sequential and deterministic.
        filters: Vec::new(),
        max_nodes: cli.budget,
    };
    let filters: Vec<DiagramFilter> = a.filter.iter().map(|f| f.to_core()).collect();
    let format = cli.format;
    let mut emitted: u64 = 0;
    let mut batch: Vec<MmpDiagram> = Vec::with_capacity(CHUNK);
    let mut failure: Option<Failure> = None;
    let scan_result = mmp_core::scan(&MmpDiagram::empty(), &params, &mut |d| {
        batch.push(d.clone());
        if batch.len() < CHUNK {
            return true;
        }
        match flush_generated(&mut batch, &filters, pool, format, out) {
            Ok(n) => {
                emitted += n;
                true
            }
            Err(e) => {
                failure = Some(e);
                false
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    emitted += flush_generated(&mut batch, &filters, pool, format, out)?;
    out.flush().map_err(write_failure)?;
    match scan_result {
        Ok(_) => Ok(emitted == 0),
        Err(GenerateError::BudgetExhausted { nodes }) => Err(Failure::Budget(format!(
            "generation budget exhausted after {nodes} search nodes; output is incomplete"
        ))),
        Err(e @ GenerateError::BadBlockSizeRange { .. }) => {
            Err(Failure::Usage(e.to_string()))
        }
    }
}

/// Applies the emission filters to a batch and writes the survivors in
/// order; returns how many were written.
fn flush_generated(
    batch: &mut Vec<MmpDiagram>,
    filters: &[DiagramFilter],
    pool: Option<&rayon::ThreadPool>,
    format: Format,
    out: &mut dyn Write,
) -> Result<u64, Failure> {
    let accepts = |d: &MmpDiagram| filters.iter().all(|f| f.accepts(d));
    let keep: Vec<bool> = match pool {
        Some(p) if !filters.is_empty() => p.install(|| batch.par_iter().map(&accepts).collect()),
        _ => batch.iter().map(&accepts).collect(),
    };
    let mut written = 0;
    for (d, keep) in batch.iter().zip(keep) {
        if keep {
            writeln!(out, "{}", format_diagram(d, format)).map_err(write_failure)?;
            written += 1;
        }
    }
    batch.clear();
    Ok(written)
}

fn cmd_color(
    a: &ColorArgs,
    pool: Option<&rayon::ThreadPool>,
    out: &mut dyn Write,
) -> Result<bool, Failure> {
    let name = input_name(&a.file).to_string();
    let limit = a.limit.map(|n| n as usize).unwrap_or(usize::MAX);
    stream_lines(&a.file, pool, out, |n, line| {
        let d = parse_diagram(&name, n, line)?;
        Ok(if a.enumerate {
            let e = enumerate_01_states(&d, limit);
            if e.states.is_empty() && !e.truncated {
                LineOut { text: "NONCOLORABLE".into(), negative: false }
            } else {
                let more = if e.truncated { "+" } else { "" };
                LineOut {
                    text: format!("COLORABLE {}{}", e.states.len(), more),
                    negative: true,
                }
            }
        } else if admits_01_state(&d).is_some() {
            LineOut { text: "COLORABLE".into(), negative: true }
        } else {
            LineOut { text: "NONCOLORABLE".into(), negative: false }
        })
    })
}

fn labels(d: &MmpDiagram, vs: &[usize]) -> String {
    vs.iter().map(|&v| d.vertex_label(v)).collect::<Vec<_>>().join(",")
}

fn cmd_states(
    a: &StatesArgs,
    pool: Option<&rayon::ThreadPool>,
    out: &mut dyn Write,
) -> Result<bool, Failure> {
    let name = input_name(&a.file).to_string();
    let mode = a.mode;
    stream_lines(&a.file, pool, out, |n, line| {
        let d = parse_diagram(&name, n, line)?;
        Ok(match mode {
            StateMode::Exists => match admits_state(&d) {
                Some(s) => {
                    let list = (0..d.vertex_count())
                        .map(|v| format!("{}:{}", d.vertex_label(v), s.value(v)))
                        .collect::<Vec<_>>()
                        .join(" ");
                    LineOut { text: format!("STATE {list}"), negative: false }
                }
                None => LineOut { text: "NONE".into(), negative: true },
            },
            StateMode::Quantum => {
                let v = admits_quantum_states(&d);
                let mut text =
                    if v.admits { "QUANTUM".to_string() } else { "NONQUANTUM".to_string() };
                if let Some((x, y)) = v.failing_pair {
                    text.push_str(&format!(
                        " pair=({},{})",
                        d.vertex_label(x),
                        d.vertex_label(y)
                    ));
                }
                if !v.unreachable_atoms.is_empty() {
                    text.push_str(&format!(
                        " unreachable={}",
                        labels(&d, &v.unreachable_atoms)
                    ));
                }
                LineOut { text, negative: !v.admits }
            }
            StateMode::Classify => {
                let c = classify_state_space(&d);
                let yn = |b: bool| if b { "yes" } else { "no" };
                LineOut {
                    text: format!(
                        "any={} zero-one={} quantum={} unreachable={}",
                        yn(c.admits_any_state),
                        yn(c.admits_01_state),
                        yn(c.admits_quantum_states),
                        yn(c.has_unreachable_atoms)
                    ),
                    negative: !c.admits_any_state,
                }
            }
        })
    })
}

fn parse_statement_file(path: &Path) -> Result<Vec<LatticeStatement>, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let s = parse_statement(line)
            .map_err(|e| Failure::Usage(format!("{}:{}: {e}", path.display(), idx + 1)))?;
        out.push(s);
    }
    Ok(out)
}

fn assignment_list(l: &OmlLattice, witness: &[(String, usize)]) -> String {
    witness
        .iter()
        .map(|(var, e)| format!("{var}={}", l.element_name(*e)))
        .collect::<Vec<_>>()
        .join(",")
}

fn cmd_lattice(
    cli: &Cli,
    a: &LatticeArgs,
    pool: Option<&rayon::ThreadPool>,
    out: &mut dyn Write,
) -> Result<bool, Failure> {
    let name = input_name(&a.file).to_string();
    let statements = match &a.eval {
        Some(p) => parse_statement_file(p)?,
        None => Vec::new(),
    };
    let budget = EvalBudget {
        max_assignments: cli
            .budget
            .map_or(EvalBudget::default().max_assignments, u128::from),
        ..EvalBudget::default()
    };
    let checks = a.check.clone();
    stream_lines(&a.file, pool, out, |n, line| {
        let d = parse_diagram(&name, n, line)?;
        let l = match build_lattice(&d) {
            Ok(l) => l,
            Err(diag) => {
                return Ok(LineOut {
                    text: format!("NOT A LATTICE ({diag})"),
                    negative: true,
                })
            }
        };
        let mut text =
            format!("LATTICE elements={} atoms={}", l.element_count(), l.atoms().len());
        let mut negative = false;
        for check in &checks {
            match check {
                LatticeCheck::Orthomodular => match check_orthomodular(&l) {
                    None => text.push_str(" orthomodular=yes"),
                    Some((x, y)) => {
                        negative = true;
                        text.push_str(&format!(
                            " orthomodular=no({},{})",
                            l.element_name(x),
                            l.element_name(y)
                        ));
                    }
                },
                LatticeCheck::Superposition => {
                    let r = check_superposition(&l);
                    if r.holds() {
                        text.push_str(" superposition=yes");
                    } else {
                        negative = true;
                        if let Some((x, y)) = r.missing_superposition {
                            text.push_str(&format!(
                                " superposition=no(missing:{},{})",
                                l.element_name(x),
                                l.element_name(y)
                            ));
                        } else if let Some((x, y, z)) = r.exchange_failure {
                            text.push_str(&format!(
                                " superposition=no(exchange:{},{},{})",
                                l.element_name(x),
                                l.element_name(y),
                                l.element_name(z)
                            ));
                        }
                    }
                }
                LatticeCheck::Minlength => {
                    let ok = check_minimal_length(&l);
                    negative |= !ok;
                    text.push_str(if ok { " minlength=yes" } else { " minlength=no" });
                }
                LatticeCheck::Quantum => {
                    let v = admits_quantum_states_on_lattice(&d, &l);
                    if v.admits {
                        text.push_str(" quantum=yes");
                    } else {
                        negative = true;
                        match v.failing_pair {
                            Some((x, y)) => text.push_str(&format!(
                                " quantum=no({},{})",
                                l.element_name(x),
                                l.element_name(y)
                            )),
                            None => text.push_str(" quantum=no(stateless)"),
                        }
                    }
                }
            }
        }
        for (i, s) in statements.iter().enumerate() {
            match holds_in_with(&l, s, &budget) {
                Ok(o) if o.holds => text.push_str(&format!(" [{}]=holds", i + 1)),
                Ok(o) => {
                    negative = true;
                    let witness = o
                        .counterexample
                        .as_deref()
                        .map(|w| assignment_list(&l, w))
                        .unwrap_or_default();
                    text.push_str(&format!(" [{}]=fails({witness})", i + 1));
                }
                Err(e) => {
                    negative = true;
                    text.push_str(&format!(" [{}]=error({e})", i + 1));
                }
            }
        }
        Ok(LineOut { text, negative })
    })
}

fn cmd_realize(a: &RealizeArgs, out: &mut dyn Write) -> Result<bool, Failure> {
    let name = input_name(&a.file).to_string();
    let reader = open_input(&a.file)?;
    let mut lines: Vec<(usize, String)> = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Failure::Io(format!("{name}: {e}")))?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        lines.push((idx + 1, text.to_string()));
    }
    if lines.len() != 1 {
        return Err(Failure::Usage(format!(
            "{name}: realize expects exactly one diagram line, found {}",
            lines.len()
        )));
    }
    let (line_no, text) = &lines[0];
    let d = parse_diagram(&name, *line_no, text)?;
    let opts = RealizeOptions { retries: a.retries };
    match realize(&d, a.dim as usize, a.seed, &opts) {
        Ok(v) => {
            out.write_all(serialize_vectors(&v).as_bytes()).map_err(write_failure)?;
            Ok(false)
        }
        Err(e @ RealizeError::DimensionTooSmall { .. }) => {
            writeln!(out, "IMPOSSIBLE {e}").map_err(write_failure)?;
            Ok(true)
        }
        Err(e @ RealizeError::BudgetExhausted { .. }) => {
            writeln!(out, "EXHAUSTED {e}").map_err(write_failure)?;
            Ok(true)
        }
        Err(e @ RealizeError::ZeroDimension) => Err(Failure::Usage(e.to_string())),
    }
}

fn cmd_verify(
    a: &VerifyArgs,
    pool: Option<&rayon::ThreadPool>,
    out: &mut dyn Write,
) -> Result<bool, Failure> {
    let name = input_name(&a.diagram_file).to_string();
    let text = fs::read_to_string(&a.vectors_file)
        .map_err(|e| Failure::Io(format!("{}: {e}", a.vectors_file.display())))?;
    let vectors = parse_vectors(&text)
        .map_err(|e| Failure::Usage(format!("{}: {e}", a.vectors_file.display())))?;
    stream_lines(&a.diagram_file, pool, out, |n, line| {
        let d = parse_diagram(&name, n, line)?;
        Ok(match verify_realization(&d, &vectors) {
            Ok(r) if r.valid() => LineOut { text: "VALID".into(), negative: false },
            Ok(r) => {
                let v = &r.violations()[0];
                let (x, y) = v.vertices;
                LineOut {
                    text: format!(
                        "INVALID violations={} first=({},{})={}",
                        r.violations().len(),
                        d.vertex_label(x),
                        d.vertex_label(y),
                        v.inner_product
                    ),
                    negative: true,
                }
            }
            Err(e) => LineOut { text: format!("ERROR {e}"), negative: true },
        })
    })
}

fn cmd_canon(
    cli: &Cli,
    a: &CanonArgs,
    pool: Option<&rayon::ThreadPool>,
    out: &mut dyn Write,
) -> Result<bool, Failure> {
    let name = input_name(&a.file).to_string();
    let format = cli.format;
    stream_lines(&a.file, pool, out, |n, line| {
        let d = parse_diagram(&name, n, line)?;
        Ok(LineOut {
            text: format_diagram(&canonical_form(&d).diagram(), format),
            negative: false,
        })
    })
}
