//! The `hypergram` command line. JSON goes to stdout, human summaries to stderr.
//!
//! Exit codes: 0 success, 1 domain failure (invalid hypergram, not assignable,
//! threshold exceeded, ...), 2 usage or parse error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::assign::{
    pauli_assignment_checked, pauli_assignment_from_anticommutations, sign_function, transfer_classical,
    unsatisfied_set, verify_assignment_report, PauliAssignment, SignVector,
};
use crate::degree::{
    degree_bruteforce, degree_exact_with_threshold, degree_heuristic, noncontextual_bound, DegreeResult,
    HeuristicParams, DEFAULT_EXHAUSTIVE_THRESHOLD,
};
use crate::geometry;
use crate::hypergram::{Hypergram, RawHypergram};
use crate::io::{self, IoError};

pub const THREADS_ENV: &str = "HYPERGRAM_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "hypergram",
    version,
    about = "Hypergrams, Pauli assignments and contextuality degrees"
)]
pub struct Cli {
    /// Worker threads for the heuristic (default: available parallelism; HYPERGRAM_THREADS overrides)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a hypergram file and print its validation report
    Validate { path: PathBuf },
    /// Decide whether H x G = 0
    Assignable { path: PathBuf },
    /// Build a Pauli assignment from the anticommutation graph
    Assign {
        path: PathBuf,
        /// Assert the loop invariant at every iteration
        #[arg(long)]
        checked: bool,
    },
    /// Quantum sign of every hyperedge under an assignment
    Signs {
        path: PathBuf,
        #[command(flatten)]
        source: SignSource,
    },
    /// Contextuality degree
    Degree(DegreeArgs),
    /// Noncontextual bound |C| - 2d
    Bound(DegreeArgs),
    /// Transfer a classical assignment from one Pauli assignment to another
    Transfer {
        hypergram: PathBuf,
        alpha1: PathBuf,
        alpha2: PathBuf,
        a1: PathBuf,
    },
    /// Write a built-in fixture or the lines of W(2n-1, 2)
    Generate {
        kind: Kind,
        /// Qubit count for `lines`
        #[arg(long)]
        n: Option<usize>,
        /// Write the hypergram here instead of stdout
        #[arg(long, short)]
        output: Option<PathBuf>,
        /// Also write the fixture's Pauli assignment here
        #[arg(long)]
        assignment_out: Option<PathBuf>,
    },
    /// Size, ranks and assignability of a hypergram
    Info { path: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    Doily,
    TwoSpread,
    TwoSpreadVariant,
    Nonassignable,
    Lines,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Exact,
    Bruteforce,
    Heuristic,
    Auto,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct SignSource {
    /// Sign vector file `{"signs": [...]}`
    #[arg(long)]
    signs: Option<PathBuf>,
    /// Pauli assignment file; signs are its sign function
    #[arg(long)]
    assignment: Option<PathBuf>,
    /// Use the assignment built from the anticommutation graph
    #[arg(long)]
    auto_assign: bool,
}

#[derive(Debug, Args)]
pub struct DegreeArgs {
    path: PathBuf,
    #[command(flatten)]
    source: SignSource,
    #[arg(long, value_enum, default_value = "auto")]
    method: MethodArg,
    /// Largest rank of C(H) the exact solver accepts
    #[arg(long, default_value_t = DEFAULT_EXHAUSTIVE_THRESHOLD)]
    threshold: usize,
    #[arg(long, default_value_t = HeuristicParams::default().seed)]
    seed: u64,
    #[arg(long, default_value_t = HeuristicParams::default().restarts)]
    restarts: usize,
    #[arg(long, default_value_t = HeuristicParams::default().max_flips)]
    max_flips: usize,
    #[arg(long, default_value_t = HeuristicParams::default().tabu_tenure)]
    tabu_tenure: usize,
}

enum Failure {
    /// exit 1
    Domain(String),
    /// exit 2
    Usage(String),
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        if e.is_parse_error() {
            Failure::Usage(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

fn domain(e: impl std::fmt::Display) -> Failure {
    Failure::Domain(e.to_string())
}

struct Output<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    threads: Option<usize>,
}

impl Output<'_> {
    fn json(&mut self, value: &Value) {
        let _ = writeln!(
            self.out,
            "{}",
            serde_json::to_string_pretty(value).expect("serializable")
        );
    }

    fn note(&mut self, msg: impl std::fmt::Display) {
        let _ = writeln!(self.err, "{msg}");
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_hypergram(path: &Path) -> Result<Hypergram, Failure> {
    Ok(io::parse_hypergram(&read(path)?)?)
}

fn load_assignment(path: &Path) -> Result<PauliAssignment, Failure> {
    Ok(io::parse_assignment(&read(path)?)?)
}

fn auto_assign(hg: &Hypergram) -> Result<PauliAssignment, Failure> {
    pauli_assignment_from_anticommutations(hg).map_err(domain)
}

fn checked_signs(alpha: &PauliAssignment, hg: &Hypergram) -> Result<SignVector, Failure> {
    let failures = verify_assignment_report(alpha, hg);
    if let Some(first) = failures.first() {
        return Err(Failure::Domain(format!(
            "not a Pauli assignment of this hypergram: {first:?}"
        )));
    }
    sign_function(alpha, hg).map_err(domain)
}

fn resolve_signs(hg: &Hypergram, source: &SignSource) -> Result<SignVector, Failure> {
    if let Some(path) = &source.signs {
        return Ok(io::parse_signs(&read(path)?)?);
    }
    let alpha = match &source.assignment {
        Some(path) => load_assignment(path)?,
        None => auto_assign(hg)?,
    };
    checked_signs(&alpha, hg)
}

fn threads_from(flag: Option<usize>) -> Result<Option<usize>, Failure> {
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map(Some)
            .map_err(|_| Failure::Usage(format!("{THREADS_ENV}={v:?} is not a thread count"))),
        Err(_) => Ok(flag),
    }
}

fn heuristic_in_pool(
    hg: &Hypergram,
    signs: &SignVector,
    params: &HeuristicParams,
    threads: Option<usize>,
) -> Result<DegreeResult, Failure> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| Failure::Usage(e.to_string()))?;
    pool.install(|| degree_heuristic(hg, signs, params)).map_err(domain)
}

fn compute_degree(hg: &Hypergram, args: &DegreeArgs, threads: Option<usize>) -> Result<DegreeResult, Failure> {
    let signs = resolve_signs(hg, &args.source)?;
    let params = HeuristicParams {
        restarts: args.restarts,
        max_flips: args.max_flips,
        seed: args.seed,
        tabu_tenure: args.tabu_tenure,
    };
    if params.restarts == 0 || params.max_flips == 0 {
        return Err(Failure::Usage("--restarts and --max-flips must be positive".into()));
    }
    match args.method {
        MethodArg::Exact => degree_exact_with_threshold(hg, &signs, args.threshold).map_err(domain),
        MethodArg::Bruteforce => degree_bruteforce(hg, &signs).map_err(domain),
        MethodArg::Heuristic => heuristic_in_pool(hg, &signs, &params, threads),
        MethodArg::Auto => {
            if hg.context_matrix().rank() <= args.threshold {
                degree_exact_with_threshold(hg, &signs, args.threshold).map_err(domain)
            } else {
                heuristic_in_pool(hg, &signs, &params, threads)
            }
        }
    }
}

fn cmd_validate(o: &mut Output, path: &Path) -> Result<(), Failure> {
    let raw = io::parse_raw_hypergram(&read(path)?)?;
    let report = raw.validate();
    o.json(&serde_json::to_value(&report).expect("serializable"));
    if report.ok {
        o.note("valid hypergram");
        Ok(())
    } else {
        Err(Failure::Domain(format!("{} violation(s)", report.violations.len())))
    }
}

fn product_ones(raw: &RawHypergram) -> Option<Vec<(usize, usize)>> {
    let m = raw.assignability_product()?;
    Some(
        (0..m.rows())
            .flat_map(|k| m.row(k).iter_ones().map(move |v| (k + 1, v + 1)))
            .collect(),
    )
}

fn cmd_assignable(o: &mut Output, path: &Path) -> Result<(), Failure> {
    let raw = io::parse_raw_hypergram(&read(path)?)?;
    let report = raw.validate();
    let ones = product_ones(&raw);
    let assignable = ones.as_ref().map(|v| v.is_empty());
    o.json(&json!({
        "assignable": assignable,
        "valid": report.ok,
        "nonzero": ones,
        "violations": report.violations,
    }));
    match (report.ok, assignable) {
        (true, Some(true)) => {
            o.note("assignable: H x G = 0");
            Ok(())
        }
        (_, Some(false)) => Err(Failure::Domain(format!(
            "not assignable: H x G has {} nonzero entr(y/ies)",
            ones.map_or(0, |v| v.len())
        ))),
        (_, Some(true)) => Err(Failure::Domain(format!(
            "H x G = 0, but the input is not a hypergram: {report}"
        ))),
        (_, None) => Err(Failure::Domain(format!("H x G undefined: {report}"))),
    }
}

fn cmd_assign(o: &mut Output, path: &Path, checked: bool) -> Result<(), Failure> {
    let hg = load_hypergram(path)?;
    let alpha = if checked {
        pauli_assignment_checked(&hg).map_err(domain)?.0
    } else {
        auto_assign(&hg)?
    };
    o.json(&io::assignment_to_json(&alpha));
    o.note(format!("n = {} qubits", alpha.qubits()));
    Ok(())
}

fn cmd_signs(o: &mut Output, path: &Path, source: &SignSource) -> Result<(), Failure> {
    let hg = load_hypergram(path)?;
    let signs = resolve_signs(&hg, source)?;
    o.json(&io::signs_to_json(&signs));
    o.note(format!(
        "{} of {} contexts negative",
        signs.negative_count(),
        signs.len()
    ));
    Ok(())
}

fn cmd_degree(o: &mut Output, args: &DegreeArgs) -> Result<(), Failure> {
    let hg = load_hypergram(&args.path)?;
    let result = compute_degree(&hg, args, o.threads)?;
    o.json(&io::degree_result_to_json(&result));
    o.note(format!(
        "degree {} {} ({})",
        if result.exact { "=" } else { "<=" },
        result.value,
        result.method.as_str()
    ));
    Ok(())
}

fn cmd_bound(o: &mut Output, args: &DegreeArgs) -> Result<(), Failure> {
    let hg = load_hypergram(&args.path)?;
    let result = compute_degree(&hg, args, o.threads)?;
    let b = noncontextual_bound(hg.hyperedge_count(), result.value).map_err(domain)?;
    o.json(&json!({
        "bound": b,
        "contexts": hg.hyperedge_count(),
        "degree": result.value,
        "exact": result.exact,
        "method": result.method.as_str(),
    }));
    o.note(format!("b {} {}", if result.exact { "=" } else { ">=" }, b));
    Ok(())
}

fn cmd_transfer(o: &mut Output, hg: &Path, alpha1: &Path, alpha2: &Path, a1: &Path) -> Result<(), Failure> {
    let hg = load_hypergram(hg)?;
    let alpha1 = load_assignment(alpha1)?;
    let alpha2 = load_assignment(alpha2)?;
    let a1 = io::parse_classical(&read(a1)?)?;
    for alpha in [&alpha1, &alpha2] {
        checked_signs(alpha, &hg)?;
    }
    let a2 = transfer_classical(&alpha1, &alpha2, &a1, &hg).map_err(domain)?;
    let before = unsatisfied_set(&alpha1, &a1, &hg).map_err(domain)?;
    let after = unsatisfied_set(&alpha2, &a2, &hg).map_err(domain)?;
    let mut value = io::classical_to_json(&a2);
    value["unsatisfied"] = io::index_set_to_json(&after);
    o.json(&value);
    if before != after {
        return Err(Failure::Domain("transfer changed the unsatisfied set".into()));
    }
    o.note(format!("unsatisfied set preserved ({} hyperedges)", after.len()));
    Ok(())
}

fn write_or_print(o: &mut Output, path: Option<&Path>, value: &Value) -> Result<(), Failure> {
    match path {
        Some(p) => {
            let text = serde_json::to_string_pretty(value).expect("serializable");
            fs::write(p, text + "\n").map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
        }
        None => {
            o.json(value);
            Ok(())
        }
    }
}

fn cmd_generate(
    o: &mut Output,
    kind: Kind,
    n: Option<usize>,
    output: Option<&Path>,
    assignment_out: Option<&Path>,
) -> Result<(), Failure> {
    if n.is_some() && kind != Kind::Lines {
        return Err(Failure::Usage("--n only applies to `lines`".into()));
    }
    let (value, alpha) = match kind {
        Kind::Doily => fixture_json(geometry::doily()),
        Kind::TwoSpread => fixture_json(geometry::two_spread()),
        Kind::TwoSpreadVariant => fixture_json(geometry::two_spread_variant()),
        Kind::Nonassignable => (io::raw_hypergram_to_json(&geometry::nonassignable_example()), None),
        Kind::Lines => {
            let n = n.ok_or_else(|| Failure::Usage("`lines` needs --n".into()))?;
            if !(2..=geometry::MAX_QUBITS).contains(&n) {
                return Err(Failure::Usage(format!("--n must be in 2..={}", geometry::MAX_QUBITS)));
            }
            let config = geometry::wn_lines(n);
            o.note(format!(
                "{} contexts, {} negative",
                config.line_count(),
                config.negative_count()
            ));
            let (hg, alpha) = config.to_hypergram().map_err(domain)?;
            (io::line_configuration_to_json(&config, &hg), Some(alpha))
        }
    };
    write_or_print(o, output, &value)?;
    match (assignment_out, alpha) {
        (Some(p), Some(alpha)) => write_or_print(o, Some(p), &io::assignment_to_json(&alpha)),
        (Some(_), None) => Err(Failure::Usage("this fixture has no assignment".into())),
        (None, _) => Ok(()),
    }
}

fn fixture_json((hg, alpha): (Hypergram, PauliAssignment)) -> (Value, Option<PauliAssignment>) {
    (io::hypergram_to_json(&hg), Some(alpha))
}

fn cmd_info(o: &mut Output, path: &Path) -> Result<(), Failure> {
    let hg = load_hypergram(path)?;
    let rank_g = hg.anticommutation_matrix().rank();
    let assignable = hg.is_assignable();
    o.json(&json!({
        "vertices": hg.vertex_count(),
        "hyperedges": hg.hyperedge_count(),
        "anticommutations": hg.anticommutations().len(),
        "rank_context": hg.context_matrix().rank(),
        "rank_anticommutation": rank_g,
        "assignable": assignable,
        "qubits": if assignable { Some(rank_g / 2) } else { None },
    }));
    Ok(())
}

fn dispatch(o: &mut Output, command: &Command) -> Result<(), Failure> {
    match command {
        Command::Validate { path } => cmd_validate(o, path),
        Command::Assignable { path } => cmd_assignable(o, path),
        Command::Assign { path, checked } => cmd_assign(o, path, *checked),
        Command::Signs { path, source } => cmd_signs(o, path, source),
        Command::Degree(args) => cmd_degree(o, args),
        Command::Bound(args) => cmd_bound(o, args),
        Command::Transfer {
            hypergram,
            alpha1,
            alpha2,
            a1,
        } => cmd_transfer(o, hypergram, alpha1, alpha2, a1),
        Command::Generate {
            kind,
            n,
            output,
            assignment_out,
        } => cmd_generate(o, *kind, *n, output.as_deref(), assignment_out.as_deref()),
        Command::Info { path } => cmd_info(o, path),
    }
}

/// Runs one invocation and returns its exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let mut o = Output {
        out,
        err,
        threads: None,
    };
    let result = threads_from(cli.threads).and_then(|threads| {
        o.threads = threads;
        dispatch(&mut o, &cli.command)
    });
    match result {
        Ok(()) => 0,
        Err(Failure::Domain(msg)) => {
            o.note(format!("error: {msg}"));
            1
        }
        Err(Failure::Usage(msg)) => {
            o.note(format!("error: {msg}"));
            2
        }
    }
}
