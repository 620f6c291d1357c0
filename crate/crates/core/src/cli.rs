//! Command-line front end. [`run`] does all the work so it can be tested
//! without spawning a process; the `rotcode` binary only forwards to it.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::atlas::atlas_bruteforce;
use crate::automaton::{letters_from_columns, recode, ExportFormat, UniversalAutomaton};
use crate::exact::{parse_list, Scalar, TorusPoint};
use crate::system::{factor_complexity, format_rows, parse_rows, CodedWord, RotationSystem};
use crate::verify::{golden_example, verify_seeds, Backend, GeneratorConfig};

#[derive(Debug, Parser)]
#[command(name = "rotcode", version, about = "Exact codings of circle rotations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct SystemArgs {
    /// Rotation angle, e.g. 3/10 or surd(3/2,-1/2,5).
    #[arg(long, allow_hyphen_values = true)]
    alpha: String,
    /// Comma-separated interior breakpoints; may be empty.
    #[arg(long, default_value = "", allow_hyphen_values = true)]
    betas: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Coding of the orbit of x by the partition [beta_k, beta_{k+1}[.
    Code {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, default_value = "0")]
        x: String,
        #[arg(long)]
        n: usize,
    },
    /// Window codings [beta_ell, beta_ell + alpha[; all m+1 rows without --ell.
    Sturmian {
        #[arg(long)]
        ell: Option<usize>,
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, default_value = "0")]
        x: String,
        #[arg(long)]
        n: usize,
    },
    /// Cells X_K, one line per key.
    Atlas {
        #[command(flatten)]
        system: SystemArgs,
    },
    /// Serialized universal automaton.
    Automaton {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Recodes m+1 binary rows (one per line) into the rotation coding.
    Recode {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        words: PathBuf,
        #[arg(long, required_unless_present = "x", conflicts_with = "x")]
        q0: Option<usize>,
        /// Start point; the start state is the cell containing it.
        #[arg(long, requires = "alpha")]
        x: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long, default_value = "", allow_hyphen_values = true)]
        betas: String,
    },
    /// Random cross-checks; exits 1 if any instance fails.
    Verify {
        #[arg(long, default_value_t = 100)]
        seeds: u64,
        #[arg(long, default_value_t = 5)]
        m_max: usize,
        #[arg(long, default_value_t = 64)]
        denominator_bound: u32,
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long, default_value = "rational")]
        backend: String,
    },
    /// Factor complexity p(1) … p(max-n) of the word in a file.
    Complexity {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        max_n: usize,
    },
}

/// Usage or input problem: exit status 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

/// Parses `args` (including the program name), writes results to `out` and
/// diagnostics to `err`, and returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return 0;
            }
            let rendered = e.to_string();
            let line = rendered.lines().next().unwrap_or("invalid arguments");
            let _ = writeln!(err, "{line}");
            return 2;
        }
    };
    match execute(cli.command, out, err) {
        Ok(status) => status,
        Err(UsageError(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn system(args: &SystemArgs, err: &mut dyn Write) -> Result<RotationSystem, UsageError> {
    let alpha: Scalar = args.alpha.parse()?;
    let sys = RotationSystem::new(alpha, parse_list(&args.betas)?)?;
    if !sys.general_position() {
        writeln!(
            err,
            "warning: breakpoints beta_k and beta_k+alpha are not pairwise distinct"
        )?;
    }
    Ok(sys)
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, UsageError> {
    match command {
        Command::Code { system: s, x, n } => {
            let sys = system(&s, err)?;
            let x: TorusPoint = x.parse()?;
            writeln!(out, "{}", sys.rotation_word(&x, n)?)?;
        }
        Command::Sturmian {
            ell,
            system: s,
            x,
            n,
        } => {
            let sys = system(&s, err)?;
            let x: TorusPoint = x.parse()?;
            match ell {
                Some(ell) => writeln!(out, "{}", sys.sturmian_word(ell, &x, n)?)?,
                None => write!(out, "{}", format_rows(&sys.sturmian_words(&x, n)?))?,
            }
        }
        Command::Atlas { system: s } => {
            let sys = system(&s, err)?;
            write!(out, "{}", atlas_bruteforce(&sys)?)?;
        }
        Command::Automaton { m, format } => {
            let format: ExportFormat = format.parse()?;
            write!(out, "{}", UniversalAutomaton::new(m).export(format))?;
        }
        Command::Recode {
            m,
            words,
            q0,
            x,
            alpha,
            betas,
        } => {
            let rows = parse_rows(&std::fs::read_to_string(&words)?)?;
            if rows.len() != m + 1 {
                return Err(UsageError(format!(
                    "{} rows in {}, expected m+1 = {}",
                    rows.len(),
                    words.display(),
                    m + 1
                )));
            }
            let q0 = match (q0, x, alpha) {
                (Some(q), _, _) => q,
                (None, Some(x), Some(alpha)) => {
                    let sys = system(&SystemArgs { alpha, betas }, err)?;
                    if sys.m() != m {
                        return Err(UsageError(format!(
                            "--betas gives m = {}, --m is {m}",
                            sys.m()
                        )));
                    }
                    sys.initial_state(&x.parse()?)
                }
                _ => {
                    return Err(UsageError(
                        "give --q0, or --x with --alpha and --betas".into(),
                    ))
                }
            };
            let letters = letters_from_columns(&rows)?;
            writeln!(
                out,
                "{}",
                recode(&UniversalAutomaton::new(m), &letters, q0)?
            )?;
        }
        Command::Verify {
            seeds,
            m_max,
            denominator_bound,
            n,
            backend,
        } => {
            let config = GeneratorConfig {
                backend: backend.parse::<Backend>()?,
                m_max,
                denominator_bound,
                word_len: n,
            };
            let mut failed = 0;
            let golden = golden_example();
            if !golden.passed() {
                failed += 1;
                write!(out, "{golden}")?;
            }
            let reports = verify_seeds(&config, 0..seeds)?;
            for r in reports.iter().filter(|r| !r.passed()) {
                failed += 1;
                write!(out, "{r}")?;
            }
            writeln!(
                out,
                "golden example: {}",
                if golden.passed() { "pass" } else { "FAIL" }
            )?;
            writeln!(
                out,
                "{} of {} {backend} instances passed (m <= {m_max}, denominators <= {denominator_bound}, n = {n})",
                reports.iter().filter(|r| r.passed()).count(),
                reports.len()
            )?;
            return Ok(if failed == 0 { 0 } else { 1 });
        }
        Command::Complexity { input, max_n } => {
            let text = std::fs::read_to_string(&input)?;
            let word: String = text.split_whitespace().collect();
            let word: CodedWord = word.parse()?;
            if word.len() < 100 * max_n {
                writeln!(
                    err,
                    "warning: prefix of length {} is short for max-n {max_n}; counts may be low",
                    word.len()
                )?;
            }
            let counts = factor_complexity(word.letters(), max_n)?;
            let counts: Vec<String> = counts.iter().map(|c| c.to_string()).collect();
            writeln!(out, "{}", counts.join(" "))?;
        }
    }
    Ok(0)
}
