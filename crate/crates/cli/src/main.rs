//! `szq`: command-line front end for words, stuffle products, q-series,
//! marked partitions and the gluing map.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error, 3 a reported
//! invariant violation (theorem counterexample or disagreeing counts).

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use szq_core::duality::tau;
use szq_core::exec::Exec;
use szq_core::partitions::{enumerate_marked, read_lines, type_word, validate};
use szq_core::phi::{mp_multiplicity, phi, split_lower, split_rest, verify_theorem, VerifyOptions};
use szq_core::qseries::{psi, sz};
use szq_core::relations::{compare, discover, order_is_thin, ORDER_MARGIN};
use szq_core::stuffle::{shared, MultiplicityQuery, StuffleImpl};
use szq_core::word::parse_word;
use szq_core::{Error, MarkedPartition, Word};

#[derive(Parser)]
#[command(
    name = "szq",
    version,
    about = "Multiple q-zeta values and marked partitions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Stuffle product of two words
    Stuffle {
        w1: String,
        w2: String,
        #[arg(long = "impl", value_enum, default_value_t = Impl::Front)]
        imp: Impl,
    },
    /// Dual word
    Dual { w: String },
    /// q-expansion through q^Q
    Sz {
        w: String,
        #[arg(long)]
        order: usize,
    },
    /// N-th coefficient of the q-expansion
    Psi { w: String, n: usize },
    /// Marked partition tools
    #[command(subcommand)]
    Mp(MpCommand),
    /// Glue the marked partitions of two files, line by line
    Phi { a: PathBuf, b: PathBuf },
    /// Multiplicity of W in W1 * W2
    Mult {
        w1: String,
        w2: String,
        w: String,
        /// Use the recursion on final blocks instead of expanding the product
        #[arg(long)]
        recursive: bool,
    },
    /// Exhaustively compare gluing counts with stuffle multiplicities
    VerifyTheorem(VerifyArgs),
    /// Linear relations among truncated q-expansions
    Relations {
        #[arg(long)]
        max_len: usize,
        #[arg(long)]
        max_index: u64,
        #[arg(long)]
        order: usize,
        /// Compare against the duality and stuffle relations
        #[arg(long)]
        compare: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Impl {
    Front,
    Back,
    Block,
}

impl From<Impl> for StuffleImpl {
    fn from(imp: Impl) -> Self {
        match imp {
            Impl::Front => StuffleImpl::Front,
            Impl::Back => StuffleImpl::Back,
            Impl::Block => StuffleImpl::Block,
        }
    }
}

#[derive(Subcommand)]
enum MpCommand {
    /// All marked partitions of N of type W
    Enumerate { w: String, n: usize },
    /// Check the distinct row and column markings
    Validate { file: PathBuf },
    /// Type word of each marked partition
    Type { file: PathBuf },
    /// Split off the lowest block of each marked partition
    Split { file: PathBuf },
    /// Gluing preimages in MP_W1 x MP_W2 of each marked partition
    Preimages {
        w1: String,
        w2: String,
        file: PathBuf,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    max_len: usize,
    #[arg(long)]
    max_index: u64,
    #[arg(long = "max-N")]
    max_n: usize,
    /// Worker threads
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, hide = true)]
    inject_fault: bool,
}

enum Outcome {
    Ok(String),
    Violation(String),
}

fn word(text: &str) -> Result<Word, Error> {
    parse_word(text)
}

fn read_file(path: &Path) -> Result<Vec<MarkedPartition>, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Domain(format!("cannot read `{}`: {e}", path.display())))?;
    read_lines(&text)
}

fn read_valid(path: &Path) -> Result<Vec<MarkedPartition>, Error> {
    let mps = read_file(path)?;
    for (i, mp) in mps.iter().enumerate() {
        if let Err(v) = validate(mp) {
            return Err(Error::Domain(format!(
                "{} line {}: not a marked partition: {v}",
                path.display(),
                i + 1
            )));
        }
    }
    Ok(mps)
}

fn run(command: Command) -> Result<Outcome, Error> {
    let mut out = String::new();
    match command {
        Command::Stuffle { w1, w2, imp } => {
            let p = shared().product(imp.into(), &word(&w1)?, &word(&w2)?);
            write!(out, "{p}").unwrap();
        }
        Command::Dual { w } => writeln!(out, "{}", tau(&word(&w)?)?).unwrap(),
        Command::Sz { w, order } => write!(out, "{}", sz(&word(&w)?, order)?).unwrap(),
        Command::Psi { w, n } => writeln!(out, "{}", psi(&word(&w)?, n)?).unwrap(),
        Command::Mp(mp) => return run_mp(mp),
        Command::Phi { a, b } => {
            let left = read_valid(&a)?;
            let right = read_valid(&b)?;
            if left.len() != right.len() {
                return Err(Error::Domain(format!(
                    "files hold {} and {} marked partitions; they must match",
                    left.len(),
                    right.len()
                )));
            }
            for (x, y) in left.iter().zip(&right) {
                writeln!(out, "{}", phi(x, y)).unwrap();
            }
        }
        Command::Mult {
            w1,
            w2,
            w,
            recursive,
        } => {
            let q = MultiplicityQuery::new(word(&w1)?, word(&w2)?, word(&w)?)?;
            let m = if recursive {
                shared().multiplicity_recursive(&q)
            } else {
                shared().multiplicity(&q)
            };
            writeln!(out, "{m}").unwrap();
        }
        Command::VerifyTheorem(args) => {
            let options = VerifyOptions {
                exec: Exec::with_jobs(args.jobs),
                inject_fault: args.inject_fault,
            };
            let summary = verify_theorem(args.max_len, args.max_index, args.max_n, &options);
            let text = summary.to_string();
            return Ok(if summary.holds() {
                Outcome::Ok(text)
            } else {
                Outcome::Violation(text)
            });
        }
        Command::Relations {
            max_len,
            max_index,
            order,
            compare: with_known,
        } => {
            if order_is_thin(max_len, order) {
                eprintln!(
                    "warning: order {order} is below {ORDER_MARGIN} x max-len; expect spurious relations"
                );
            }
            let exec = Exec::Sequential;
            if with_known {
                let report = compare(max_len, max_index, order, exec);
                write!(out, "{report}").unwrap();
                for r in &report.kernel {
                    writeln!(out, "{r}").unwrap();
                }
                if !report.containment {
                    return Ok(Outcome::Violation(out));
                }
            } else {
                writeln!(
                    out,
                    "grading=box max_len={max_len} max_index={max_index} through=q^{order}"
                )
                .unwrap();
                for r in discover(max_len, max_index, order, exec) {
                    writeln!(out, "{r}").unwrap();
                }
            }
        }
    }
    Ok(Outcome::Ok(out))
}

fn run_mp(command: MpCommand) -> Result<Outcome, Error> {
    let mut out = String::new();
    match command {
        MpCommand::Enumerate { w, n } => {
            for mp in enumerate_marked(&word(&w)?, n)? {
                writeln!(out, "{mp}").unwrap();
            }
        }
        MpCommand::Validate { file } => {
            let mut bad = false;
            for mp in read_file(&file)? {
                match validate(&mp) {
                    Ok(()) => writeln!(out, "valid").unwrap(),
                    Err(v) => {
                        bad = true;
                        writeln!(out, "invalid: {v}").unwrap();
                    }
                }
            }
            if bad {
                print!("{out}");
                return Err(Error::Domain("input contains invalid markings".into()));
            }
        }
        MpCommand::Type { file } => {
            for mp in read_file(&file)? {
                writeln!(out, "{}", type_word(&mp)?).unwrap();
            }
        }
        MpCommand::Split { file } => {
            for (i, mp) in read_valid(&file)?.iter().enumerate() {
                writeln!(out, "split {}:", i + 1).unwrap();
                writeln!(out, "{}", split_rest(mp)?).unwrap();
                writeln!(out, "{}", split_lower(mp)?).unwrap();
            }
        }
        MpCommand::Preimages { w1, w2, file } => {
            let (w1, w2) = (word(&w1)?, word(&w2)?);
            let mut agrees = true;
            for target in read_valid(&file)? {
                let report = mp_multiplicity(&w1, &w2, &target)?;
                agrees &= report.agrees;
                write!(out, "{report}").unwrap();
            }
            if !agrees {
                return Ok(Outcome::Violation(out));
            }
        }
    }
    Ok(Outcome::Ok(out))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Outcome::Ok(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok(Outcome::Violation(text)) => {
            print!("{text}");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
