//! `chrobak`: convert unary NFAs to arithmetic progressions and Chrobak
//! normal form, compare languages, and inspect automata.
//!
//! Exit codes: 0 success or affirmative verdict, 1 negative verdict, 2 usage
//! or parse error, 3 resource limit.

mod dot;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use chrobak::chrobak::{cnf_to_nfa, convert, read_cnf, ConvertError};
use chrobak::cycle_gcd;
use chrobak::fixtures;
use chrobak::generate::fuzz_instance;
use chrobak::nfa::{ParseError, UnaryNfa};
use chrobak::oracle::{self, OracleError};
use chrobak::scc::decompose;
use chrobak::semilinear::{
    EventuallyPeriodicSet, ProgressionParseError, ProgressionSet, SemilinearError,
};
use chrobak::verify::{self, Verdict, VerifyError};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use thiserror::Error;

/// Write to stdout; a closed pipe ends the process quietly.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        if let Err(e) = write!(std::io::stdout(), $($arg)*) {
            stdout_failed(e);
        }
    }};
}

macro_rules! outln {
    ($($arg:tt)*) => {{
        use std::io::Write;
        if let Err(e) = writeln!(std::io::stdout(), $($arg)*) {
            stdout_failed(e);
        }
    }};
}

fn stdout_failed(e: std::io::Error) -> ! {
    if e.kind() == std::io::ErrorKind::BrokenPipe {
        std::process::exit(0);
    }
    eprintln!("error: writing to stdout: {e}");
    std::process::exit(2);
}

/// Enough for every named fixture; the library default is 20.
const DEFAULT_LIMIT: usize = 24;

#[derive(Parser, Debug)]
#[command(
    name = "chrobak",
    version,
    about = "Unary NFAs, arithmetic progressions and Chrobak normal form"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Convert an NFA into a union of arithmetic progressions / Chrobak normal form.
    Convert {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Progressions)]
        format: Format,
        /// Also write a Graphviz rendering of the normal-form automaton.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
    },
    /// Test whether a word of the given length is accepted.
    Member {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        length: u64,
    },
    /// Compare the languages of two NFA (.nfa) or progression-set (.aps) files.
    Equal {
        lhs: PathBuf,
        rhs: PathBuf,
        #[arg(long, value_enum)]
        lhs_kind: Option<Kind>,
        #[arg(long, value_enum)]
        rhs_kind: Option<Kind>,
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        det_limit: usize,
    },
    /// Print each nontrivial component's size and cycle-length gcd.
    Gcds {
        #[command(flatten)]
        input: Input,
    },
    /// Print the strongly connected components and the condensation.
    Sccs {
        #[command(flatten)]
        input: Input,
    },
    /// Print the exact language as a canonical eventually periodic set.
    Oracle {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        det_limit: usize,
    },
    /// Exit 0 iff the automaton is in Chrobak normal form.
    CheckCnf {
        #[command(flatten)]
        input: Input,
    },
    /// Compare conversion against determinization on random automata.
    Fuzz {
        #[arg(long, default_value_t = 500)]
        count: u64,
        #[arg(long, default_value_t = 10)]
        max_states: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Check the naive Diophantine over-approximation instead.
        #[arg(long)]
        naive: bool,
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        det_limit: usize,
        /// State budget for the naive method's cycle and path enumeration.
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        brute_limit: usize,
    },
}

#[derive(Args, Debug)]
struct Input {
    /// NFA file.
    #[arg(required_unless_present = "fixture", conflicts_with = "fixture")]
    file: Option<PathBuf>,
    /// Use a built-in automaton instead of a file.
    #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(fixtures::NAMES))]
    fixture: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Progressions,
    Cnf,
    Json,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Nfa,
    Aps,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Nfa { path: PathBuf, source: ParseError },
    #[error("{path}: {source}")]
    Aps {
        path: PathBuf,
        source: ProgressionParseError,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Convert(#[from] ConvertError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Semilinear(#[from] SemilinearError),
}

impl From<VerifyError> for CliError {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Convert(e) => e.into(),
            VerifyError::Oracle(e) => e.into(),
            VerifyError::Semilinear(e) => e.into(),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. }
            | CliError::Nfa { .. }
            | CliError::Aps { .. }
            | CliError::Usage(_) => 2,
            CliError::Convert(_) | CliError::Oracle(_) | CliError::Semilinear(_) => 3,
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_nfa(path: &Path) -> Result<UnaryNfa, CliError> {
    read(path)?.parse().map_err(|source| CliError::Nfa {
        path: path.to_path_buf(),
        source,
    })
}

fn load_aps(path: &Path) -> Result<ProgressionSet, CliError> {
    read(path)?.parse().map_err(|source| CliError::Aps {
        path: path.to_path_buf(),
        source,
    })
}

impl Input {
    fn load(&self) -> Result<UnaryNfa, CliError> {
        match (&self.file, &self.fixture) {
            (_, Some(name)) => fixtures::by_name(name)
                .ok_or_else(|| CliError::Usage(format!("unknown fixture `{name}`"))),
            (Some(path), None) => load_nfa(path),
            (None, None) => Err(CliError::Usage("no input given".into())),
        }
    }
}

/// The exact language of an NFA: subset construction when small enough,
/// the polynomial conversion otherwise.
fn language_of_nfa(nfa: &UnaryNfa, det_limit: usize) -> Result<EventuallyPeriodicSet, CliError> {
    if nfa.state_count() <= det_limit {
        Ok(oracle::determinize_with_limit(nfa, det_limit)?)
    } else {
        Ok(EventuallyPeriodicSet::from_progressions(
            &convert(nfa)?.progressions,
        )?)
    }
}

fn infer_kind(path: &Path, explicit: Option<Kind>) -> Kind {
    explicit.unwrap_or_else(|| match path.extension().and_then(|e| e.to_str()) {
        Some("aps") => Kind::Aps,
        _ => Kind::Nfa,
    })
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Convert { input, format, dot } => {
            let nfa = input.load()?;
            let conversion = convert(&nfa)?;
            if conversion.progressions.is_empty() {
                eprintln!("note: the language is empty");
            }
            match format {
                Format::Progressions => out!("{}", conversion.progressions),
                Format::Cnf => out!("{}", cnf_to_nfa(&conversion.cnf)),
                Format::Json => {
                    let components: Vec<_> = conversion
                        .components
                        .iter()
                        .map(|p| {
                            json!({
                                "states": p.states,
                                "size": p.component_size(),
                                "gcd": p.gcd,
                                "witness_lengths": p.witness_lengths,
                            })
                        })
                        .collect();
                    let record = json!({
                        "schema": 1,
                        "n_prime": conversion.bounds.n_prime,
                        "zero_accepted": conversion.zero_accepted,
                        "bounds": {
                            "singleton_max": conversion.bounds.singleton_max,
                            "offset_limit": conversion.bounds.offset_limit,
                        },
                        "components": components,
                        "progressions": conversion.progressions,
                        "cnf": conversion.cnf,
                    });
                    outln!(
                        "{}",
                        serde_json::to_string_pretty(&record).expect("serializable")
                    );
                }
            }
            if let Some(path) = dot {
                fs::write(&path, dot::render(&conversion.cnf))
                    .map_err(|source| CliError::Io { path, source })?;
            }
            Ok(0)
        }
        Command::Member { input, length } => {
            let accepted = input.load()?.member(length);
            outln!("{accepted}");
            Ok(if accepted { 0 } else { 1 })
        }
        Command::Equal {
            lhs,
            rhs,
            lhs_kind,
            rhs_kind,
            det_limit,
        } => {
            let side = |path: &Path,
                        kind: Option<Kind>|
             -> Result<EventuallyPeriodicSet, CliError> {
                match infer_kind(path, kind) {
                    Kind::Nfa => language_of_nfa(&load_nfa(path)?, det_limit),
                    Kind::Aps => Ok(EventuallyPeriodicSet::from_progressions(&load_aps(path)?)?),
                }
            };
            let (left, right) = (side(&lhs, lhs_kind)?, side(&rhs, rhs_kind)?);
            match left.first_difference(&right) {
                None => {
                    outln!("equal");
                    Ok(0)
                }
                Some(x) => {
                    outln!("not equal");
                    outln!("witness {x}");
                    Ok(1)
                }
            }
        }
        Command::Gcds { input } => {
            let nfa = input.load()?;
            let dec = decompose(&nfa);
            for p in cycle_gcd::profiles(&nfa, &dec) {
                let states: Vec<String> = p.states.iter().map(|q| q.to_string()).collect();
                let lengths: Vec<String> =
                    p.witness_lengths.iter().map(|j| j.to_string()).collect();
                outln!(
                    "component {} size {} gcd {} lengths {} states {}",
                    p.component,
                    p.component_size(),
                    p.gcd,
                    lengths.join(","),
                    states.join(",")
                );
            }
            Ok(0)
        }
        Command::Sccs { input } => {
            let nfa = input.load()?;
            let dec = decompose(&nfa);
            for (id, members) in dec.components().iter().enumerate() {
                let kind = if dec.is_nontrivial(id) {
                    "nontrivial"
                } else {
                    "trivial"
                };
                let states: Vec<String> = members.iter().map(|q| q.to_string()).collect();
                outln!("component {id} {kind} {}", states.join(" "));
            }
            for (c, d) in dec.condensation_edges() {
                outln!("edge {c} {d}");
            }
            Ok(0)
        }
        Command::Oracle { input, det_limit } => {
            let nfa = input.load()?;
            out!("{}", oracle::determinize_with_limit(&nfa, det_limit)?);
            Ok(0)
        }
        Command::CheckCnf { input } => match read_cnf(&input.load()?) {
            Some(cnf) => {
                let periods: Vec<String> =
                    cnf.cycles.iter().map(|c| c.period.to_string()).collect();
                outln!("cnf tail {} cycles {}", cnf.tail_length, periods.join(","));
                Ok(0)
            }
            None => {
                outln!("not cnf");
                Ok(1)
            }
        },
        Command::Fuzz {
            count,
            max_states,
            seed,
            naive,
            det_limit,
            brute_limit,
        } => {
            if max_states == 0 || max_states > det_limit {
                return Err(CliError::Usage(format!(
                    "--max-states must be in 1..={det_limit} (the determinization limit)"
                )));
            }
            let check = |nfa: &UnaryNfa| -> Result<Verdict, CliError> {
                Ok(if naive {
                    verify::check_overapprox(nfa, det_limit, brute_limit)?
                } else {
                    verify::check_conversion(nfa, det_limit)?
                })
            };
            let mut cases: Vec<(String, UnaryNfa)> = (0..count)
                .map(|i| (format!("instance {i}"), fuzz_instance(seed, i, max_states)))
                .collect();
            cases.extend(
                fixtures::all()
                    .into_iter()
                    .map(|(name, nfa)| (format!("fixture {name}"), nfa)),
            );
            let mut failures = 0;
            for (label, nfa) in &cases {
                if let Verdict::Differs(x) = check(nfa)? {
                    failures += 1;
                    outln!("FAIL {label}: languages differ at length {x}");
                    for line in nfa.to_string().lines() {
                        outln!("  {line}");
                    }
                }
            }
            let method = if naive {
                "naive over-approximation"
            } else {
                "conversion"
            };
            outln!(
                "{method}: {} automata ({count} random, seed {seed}, max states {max_states}, plus {} fixtures), {failures} failures",
                cases.len(),
                cases.len() as u64 - count
            );
            Ok(if failures == 0 { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
