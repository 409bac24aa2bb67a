//! The `poset-automata` command line. Exit codes: 0 success, 1 negative
//! answer, 2 input error, 3 resource cap.

use std::ffi::OsString;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::caps::Caps;
use crate::classify::{classify, ClassLabel};
use crate::error::{Error, Result};
use crate::hardness::{build_aknn, dag_gadget, trim_aknn, w_word, Dag};
use crate::nfa::Alphabet;
use crate::selftest::{run_selftest, SelftestConfig};
use crate::text::{parse_nfa, print_nfa};
use crate::tm::{reduce_with, verify_reduction, Dtm, ReductionOptions};
use crate::universality::{universal_with, MethodChoice};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_RESOURCE: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "poset-automata",
    version,
    about = "Partially ordered NFAs: classes, universality, hard instances"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report every structural predicate and the class label.
    Classify {
        /// Automaton file, `-` for stdin.
        file: PathBuf,
        /// Exit 1 unless the label is this one.
        #[arg(long)]
        expect: Option<ClassLabel>,
    },
    /// Decide universality.
    Universal {
        file: PathBuf,
        /// auto, sponfa, unary, antichain, subset or brute.
        #[arg(long, default_value = "auto")]
        method: MethodChoice,
        /// Length bound for brute force.
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Print `W(k,n)`.
    GenWord {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    /// Print `A(k,n)`, or its trimmed variant.
    GenAknn {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        trim: bool,
    },
    /// Print the trimmed `A(k,n)`.
    GenTrim {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        n: usize,
    },
    /// Print the unary reachability gadget of a DAG file.
    GenDag { file: PathBuf },
    /// Reduce a space-bounded DTM run to ptNFA universality.
    Reduce {
        #[arg(long)]
        tm: PathBuf,
        /// Input word over the machine's input alphabet.
        #[arg(long, allow_hyphen_values = true)]
        input: String,
        /// Space bound in cells.
        #[arg(long)]
        space: usize,
        /// Share one gadget copy among all backbone hosts.
        #[arg(long)]
        share_gadgets: bool,
        /// Print a verification report instead of the automaton.
        #[arg(long)]
        verify: bool,
        /// Random words drawn when verification falls back to sampling.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
    },
    /// Run the oracle agreement suites.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

fn read_source(path: &PathBuf) -> Result<String> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Error::input(format!("stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path)
            .map_err(|e| Error::input(format!("{}: {e}", path.display())))?;
    }
    Ok(text)
}

/// Runs one command, returning its report and exit code.
pub fn execute(command: &Command, caps: &Caps) -> Result<(String, u8)> {
    match command {
        Command::Classify { file, expect } => {
            let a = parse_nfa(&read_source(file)?)?;
            let report = classify(&a);
            let code = match expect {
                Some(l) if *l != report.label => EXIT_NEGATIVE,
                _ => EXIT_OK,
            };
            Ok((report.render(&a), code))
        }
        Command::Universal {
            file,
            method,
            max_len,
        } => {
            let a = parse_nfa(&read_source(file)?)?;
            let r = universal_with(&a, *method, *max_len, caps)?;
            let code = if r.universal { EXIT_OK } else { EXIT_NEGATIVE };
            Ok((r.render(a.alphabet()), code))
        }
        Command::GenWord { k, n } => {
            let w = w_word(*k, *n, caps)?;
            Ok((format!("{}\n", Alphabet::indexed(*n).render(&w)), EXIT_OK))
        }
        Command::GenAknn { k, n, trim: false } => {
            Ok((print_nfa(&build_aknn(*k, *n, caps)?), EXIT_OK))
        }
        Command::GenAknn { k, n, trim: true } | Command::GenTrim { k, n } => {
            let a = build_aknn(*k, *n, caps)?;
            Ok((print_nfa(&trim_aknn(&a, *k, *n)?), EXIT_OK))
        }
        Command::GenDag { file } => {
            let g = Dag::parse(&read_source(file)?)?;
            Ok((print_nfa(&dag_gadget(&g)?), EXIT_OK))
        }
        Command::Reduce {
            tm,
            input,
            space,
            share_gadgets,
            verify,
            samples,
        } => {
            let m = Dtm::parse(&read_source(tm)?)?;
            let x = m.parse_input(input)?;
            let options = ReductionOptions {
                share_gadgets: *share_gadgets,
            };
            let art = reduce_with(&m, &x, *space, caps, options)?;
            if *verify {
                let v = verify_reduction(&art, &m, &x, *samples, 0, caps)?;
                let code = if v.consistent() {
                    EXIT_OK
                } else {
                    EXIT_NEGATIVE
                };
                return Ok((format!("{}{}", art.provenance(), v.render()), code));
            }
            Ok((art.to_string(), EXIT_OK))
        }
        Command::Selftest { seed, samples } => {
            let report = run_selftest(
                &SelftestConfig {
                    seed: *seed,
                    samples: *samples,
                },
                caps,
            )?;
            let code = if report.all_passed() {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            };
            Ok((report.to_string(), code))
        }
    }
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Resource { .. } => EXIT_RESOURCE,
        _ => EXIT_INPUT,
    }
}

/// Parses `args` (program name first), runs the command and writes its
/// report to stdout or its error to stderr.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let outcome = Caps::from_env().and_then(|caps| execute(&cli.command, &caps));
    match outcome {
        Ok((report, code)) => {
            let mut out = io::stdout().lock();
            if out
                .write_all(report.as_bytes())
                .and_then(|_| out.flush())
                .is_err()
            {
                return EXIT_INPUT;
            }
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
