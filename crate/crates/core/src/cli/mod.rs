//! The `suffix-nsc` command-line tool.
//!
//! Exit codes: 0 success, 1 negative verdict, 2 parse, usage or I/O error,
//! 3 violated precondition or exceeded budget, 4 a table row that should be
//! tight is not.

mod table;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::automata::json::{self, JsonError};
use crate::automata::{dot, enumerate_words, Alphabet, Nfa, Word};
use crate::bounds::{
    certify_with, check_fooling_set, nsc_exhaustive_with, BoundsError, ExhaustiveOptions,
    FoolingSet, Operation,
};
use crate::constructions::{ConstructionError, Constructor};
use crate::suffix_free::{is_non_returning, is_suffix_free};
use crate::witnesses::{build, Family, Witness, WitnessError, WitnessSpec};

pub use table::{Range, TableFormat, TableRow, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_TABLE: i32 = 4;

/// Environment variable overriding the worker-thread count.
pub const THREADS_ENV: &str = "SUFFIX_NSC_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "suffix-nsc",
    version,
    about = "NFA constructions and state complexity certificates for suffix-free languages"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OpName {
    Union,
    Concat,
    Intersect,
    Star,
    Reverse,
    Complement,
}

impl OpName {
    fn arity(self) -> usize {
        match self {
            OpName::Union | OpName::Concat | OpName::Intersect => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide suffix-freeness and report whether the start state is non-returning.
    Check {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Apply an operation to automaton files.
    Op {
        #[arg(value_enum)]
        op: OpName,
        /// One file per operand, or one file holding a JSON array of operands.
        #[arg(required = true, num_args = 1..=2)]
        inputs: Vec<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
        /// Also require the operands to be suffix-free.
        #[arg(long)]
        strict: bool,
    },
    /// Generate a witness automaton (or pair of automata).
    Witness {
        family: String,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Check a pairs file `[["x","w"], ...]` as a fooling set.
    VerifyFoolingSet { automaton: PathBuf, pairs: PathBuf },
    /// Exact NSC by exhaustive search over small NFAs.
    Nsc {
        file: PathBuf,
        #[arg(long)]
        max_states: usize,
        /// Raise the state ceiling above the alphabet-dependent default.
        #[arg(long)]
        ceiling: Option<usize>,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u128,
    },
    /// Certify the state complexity of an operation on its witnesses.
    Certify {
        op: String,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        json: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Certify every operation over ranges of m and n.
    Table {
        #[arg(long, default_value = "2..4")]
        m: Range,
        #[arg(long, default_value = "2..4")]
        n: Range,
        #[arg(long, value_enum, default_value_t = TableFormat::Text)]
        format: TableFormat,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// List accepted words up to a length, in length-lexicographic order.
    Enumerate {
        file: PathBuf,
        #[arg(long)]
        max_len: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn precondition(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_PRECONDITION,
            message: message.into(),
        }
    }
}

impl From<ConstructionError> for CliError {
    fn from(e: ConstructionError) -> Self {
        CliError::precondition(e.to_string())
    }
}

impl From<WitnessError> for CliError {
    fn from(e: WitnessError) -> Self {
        match e {
            WitnessError::UnknownFamily(_) => CliError::usage(e.to_string()),
            _ => CliError::precondition(e.to_string()),
        }
    }
}

impl From<BoundsError> for CliError {
    fn from(e: BoundsError) -> Self {
        CliError::precondition(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::usage(e.to_string())
    }
}

type CliResult = Result<i32, CliError>;

/// Entry point for the binary: parses `std::env::args` and returns the
/// exit code.
pub fn main() -> i32 {
    if let Ok(threads) = std::env::var(THREADS_ENV) {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global();
        }
    }
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message);
            e.code
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> CliResult {
    match command {
        Command::Check { file, json } => cmd_check(&file, json, out),
        Command::Op {
            op,
            inputs,
            output,
            dot,
            strict,
        } => cmd_op(op, &inputs, output.as_deref(), dot.as_deref(), strict, out),
        Command::Witness {
            family,
            m,
            n,
            output,
            dot,
        } => cmd_witness(&family, m, n, output.as_deref(), dot.as_deref(), out),
        Command::VerifyFoolingSet { automaton, pairs } => {
            cmd_verify_fooling_set(&automaton, &pairs, out)
        }
        Command::Nsc {
            file,
            max_states,
            ceiling,
            budget,
        } => cmd_nsc(
            &file,
            max_states,
            ExhaustiveOptions { ceiling, budget },
            out,
        ),
        Command::Certify {
            op,
            m,
            n,
            json,
            seed,
        } => cmd_certify(&op, m, n, json, seed, out),
        Command::Table { m, n, format, seed } => table::cmd_table(m, n, format, seed, out),
        Command::Enumerate {
            file,
            max_len,
            json,
        } => cmd_enumerate(&file, max_len, json, out),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

fn parse_error(path: &Path, e: JsonError) -> CliError {
    CliError::usage(format!("{}: {e}", path.display()))
}

fn load(path: &Path) -> Result<Nfa, CliError> {
    json::from_json(&read(path)?).map_err(|e| parse_error(path, e))
}

fn load_many(path: &Path) -> Result<Vec<Nfa>, CliError> {
    json::many_from_json(&read(path)?).map_err(|e| parse_error(path, e))
}

/// Writes through a temporary file in the target directory, so a failed
/// command never leaves a partial file behind.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn show(alphabet: &Alphabet, w: &Word) -> String {
    if w.is_empty() {
        "λ".to_string()
    } else {
        alphabet.render(w)
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cmd_check(file: &Path, as_json: bool, out: &mut dyn Write) -> CliResult {
    let a = load(file)?;
    let verdict = is_suffix_free(&a);
    let non_returning = is_non_returning(&a);
    let alphabet = a.alphabet();
    if as_json {
        let witness = verdict
            .witness()
            .map(|(s, l)| [alphabet.render(s), alphabet.render(l)]);
        let doc = serde_json::json!({
            "suffix_free": verdict.is_suffix_free(),
            "non_returning": non_returning,
            "witness": witness,
        });
        writeln!(out, "{doc}")?;
    } else {
        writeln!(
            out,
            "suffix-free: {}; non-returning: {}",
            yes_no(verdict.is_suffix_free()),
            yes_no(non_returning)
        )?;
        if let Some((s, l)) = verdict.witness() {
            writeln!(
                out,
                "witness: ({}, {}): both accepted, the first a proper suffix of the second",
                show(alphabet, s),
                show(alphabet, l)
            )?;
        }
    }
    Ok(if verdict.is_suffix_free() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    })
}

fn emit(
    automata: &[&Nfa],
    output: Option<&Path>,
    dot_path: Option<&Path>,
    out: &mut dyn Write,
) -> CliResult {
    let text = if automata.len() == 1 {
        json::to_json(automata[0])
    } else {
        json::many_to_json(automata)
    };
    let dot_text: Option<String> =
        dot_path.map(|_| automata.iter().map(|a| dot::to_dot(a)).collect());
    match output {
        Some(path) => write_atomic(path, &format!("{text}\n"))?,
        None => writeln!(out, "{text}")?,
    }
    if let (Some(path), Some(d)) = (dot_path, dot_text) {
        write_atomic(path, &d)?;
    }
    Ok(EXIT_OK)
}

fn cmd_op(
    op: OpName,
    inputs: &[PathBuf],
    output: Option<&Path>,
    dot_path: Option<&Path>,
    strict: bool,
    out: &mut dyn Write,
) -> CliResult {
    let mut operands = Vec::new();
    for path in inputs {
        operands.extend(load_many(path)?);
    }
    if operands.len() != op.arity() {
        return Err(CliError::usage(format!(
            "{op:?} takes {} operand(s), got {}",
            op.arity(),
            operands.len()
        )));
    }
    let c = Constructor { strict };
    let result = match op {
        OpName::Union => c.union(&operands[0], &operands[1])?,
        OpName::Concat => c.concat(&operands[0], &operands[1])?,
        OpName::Intersect => c.intersect(&operands[0], &operands[1])?,
        OpName::Star => c.star(&operands[0])?,
        OpName::Reverse => c.reverse(&operands[0])?,
        OpName::Complement => c.complement(&operands[0])?.to_nfa(),
    };
    emit(&[&result], output, dot_path, out)
}

fn cmd_witness(
    family: &str,
    m: usize,
    n: Option<usize>,
    output: Option<&Path>,
    dot_path: Option<&Path>,
    out: &mut dyn Write,
) -> CliResult {
    let family: Family = family.parse()?;
    let witness = build(&WitnessSpec { family, m, n })?;
    match &witness {
        Witness::Single(a) => emit(&[a], output, dot_path, out),
        Witness::Pair(a, b) => emit(&[a, b], output, dot_path, out),
    }
}

fn cmd_verify_fooling_set(automaton: &Path, pairs: &Path, out: &mut dyn Write) -> CliResult {
    let a = load(automaton)?;
    let p =
        FoolingSet::from_json(a.alphabet(), &read(pairs)?).map_err(|e| parse_error(pairs, e))?;
    match check_fooling_set(&a, &p) {
        None => {
            writeln!(
                out,
                "valid fooling set of size {}: every NFA for this language has at least {} states",
                p.len(),
                p.len()
            )?;
            Ok(EXIT_OK)
        }
        Some(v) => {
            writeln!(out, "not a fooling set: {v}")?;
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn cmd_nsc(
    file: &Path,
    max_states: usize,
    opts: ExhaustiveOptions,
    out: &mut dyn Write,
) -> CliResult {
    let a = load(file)?;
    match nsc_exhaustive_with(&a, max_states, &opts)? {
        Some(k) => {
            writeln!(out, "nsc = {k}")?;
            Ok(EXIT_OK)
        }
        None => {
            writeln!(out, "nsc > {max_states}")?;
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn cmd_certify(
    op: &str,
    m: usize,
    n: Option<usize>,
    as_json: bool,
    seed: u64,
    out: &mut dyn Write,
) -> CliResult {
    let op: Operation = op.parse().map_err(CliError::usage)?;
    if !op.is_binary() && n.is_some() {
        return Err(CliError::usage(format!("{op} takes a single parameter m")));
    }
    let report = certify_with(op, m, n, seed)?;
    if as_json {
        let text = serde_json::to_string_pretty(&report).expect("report serializes");
        writeln!(out, "{text}")?;
    } else {
        let params = match n {
            Some(n) => format!("m={m}, n={n}"),
            None => format!("m={m}"),
        };
        writeln!(out, "{op} ({params})")?;
        writeln!(out, "  constructed: {}", report.constructed_size)?;
        writeln!(
            out,
            "  lower bound: {} ({:?})",
            report.lower_bound, report.lower_bound_kind
        )?;
        writeln!(
            out,
            "  formula:     {} = {}",
            report.formula, report.formula_value
        )?;
        writeln!(out, "  tight:       {}", yes_no(report.tight))?;
        if let Some(note) = &report.note {
            writeln!(out, "  note:        {note}")?;
        }
    }
    Ok(if op.expects_tight() && !report.tight {
        EXIT_NEGATIVE
    } else {
        EXIT_OK
    })
}

fn cmd_enumerate(file: &Path, max_len: usize, as_json: bool, out: &mut dyn Write) -> CliResult {
    let a = load(file)?;
    let words = enumerate_words(&a, max_len);
    let alphabet = a.alphabet();
    if as_json {
        let list: Vec<String> = words.iter().map(|w| alphabet.render(w)).collect();
        writeln!(
            out,
            "{}",
            serde_json::to_string(&list).expect("strings serialize")
        )?;
    } else {
        for w in &words {
            writeln!(out, "{}", show(alphabet, w))?;
        }
    }
    Ok(EXIT_OK)
}
