//! Command-line surface: construct partitions from tournament files, verify
//! partitions against tournaments, stratify, apply or replay switch logs,
//! print the rotational-game partitions and the named examples, and run batch
//! enumerations.
//!
//! Exit codes: 0 verified success, 1 verification failure, 2 input or usage
//! error.

use std::io::Read as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use intransitive_dice::catalog;
use intransitive_dice::construct::{
    construct_model, construct_model_with_block_size, group_game_partition, ConstructionPlan,
};
use intransitive_dice::partition::{format_partition, parse_partition, RegularPartition};
use intransitive_dice::sweep::{exhaustive_sweep, random_sweep, SweepReport};
use intransitive_dice::switch::{
    apply_simple_switch, format_switch_log, parse_switch_log, replay, stratify,
};
use intransitive_dice::tournament::{format_tournament, parse_tournament, Tournament};
use intransitive_dice::verify::verify_model;
use intransitive_dice::Error;

#[derive(Parser)]
#[command(
    name = "dice",
    version,
    about = "Build and verify integer partitions whose dominance digraph is a prescribed tournament"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Args)]
struct OutputArg {
    /// Write the resulting partition here instead of stdout.
    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build a partition modeling the tournament in FILE ("-" for stdin).
    Construct {
        /// Tournament file.
        file: PathBuf,
        /// Vertex insertion order as 1-based comma-separated indices.
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<usize>>,
        /// Build strong components separately and recombine.
        #[arg(long)]
        strong_decomposition: bool,
        /// Exact block size to produce (odd >= the default, or even >= twice it).
        #[arg(long, value_name = "N")]
        target_n: Option<usize>,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Check that a partition models a tournament; exit 0 iff it does.
    Verify {
        partition: PathBuf,
        tournament: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
    /// Rewrite a 3-per-block partition into stratified form by switches.
    Stratify {
        partition: PathBuf,
        /// Write the switch log here.
        #[arg(long, value_name = "FILE")]
        log: Option<PathBuf>,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Apply switches at the given ground values, or replay a recorded log.
    Switch {
        partition: PathBuf,
        /// Ground values k; each swaps k and k+1.
        #[arg(value_name = "K", required_unless_present = "replay")]
        ks: Vec<u64>,
        /// Replay this switch log instead of applying fresh switches.
        #[arg(long, value_name = "FILE", conflicts_with = "ks")]
        replay: Option<PathBuf>,
        /// Write the applied switch log here.
        #[arg(long, value_name = "FILE")]
        log: Option<PathBuf>,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Print the proper stratified partition of the (2n+1)-vertex rotation game.
    GroupGame {
        n: usize,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Print a named built-in example (partition, or its tournament).
    Example {
        /// Entry name; omit with --list.
        name: Option<String>,
        /// List available entries.
        #[arg(long)]
        list: bool,
        /// Print the modeled tournament instead of the partition.
        #[arg(long)]
        tournament: bool,
        #[command(flatten)]
        out: OutputArg,
    },
    /// Construct-and-verify every labeled tournament on n vertices.
    Enumerate {
        n: usize,
        /// Sample this many random tournaments instead of exhausting.
        #[arg(long, value_name = "COUNT")]
        random: Option<u64>,
        /// Seed for --random.
        #[arg(long, default_value = "0")]
        seed: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: ReportFormat,
    },
}

fn read_input(path: &Path) -> Result<String, Error> {
    if path == Path::new("-") {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf)?;
        Ok(buf)
    } else {
        Ok(std::fs::read_to_string(path)?)
    }
}

fn load_tournament(path: &Path) -> Result<Tournament, Error> {
    parse_tournament(&read_input(path)?)
}

fn load_partition(path: &Path) -> Result<RegularPartition, Error> {
    parse_partition(&read_input(path)?)
}

fn emit(out: &OutputArg, text: &str) -> Result<(), Error> {
    match &out.output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn write_opt(path: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    if let Some(path) = path {
        std::fs::write(path, text)?;
    }
    Ok(())
}

/// Verification failed: the partition does not model the tournament.
const EXIT_MISMATCH: u8 = 1;
/// Unusable input: parse failures, missing files, invalid arguments.
const EXIT_USAGE: u8 = 2;

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Construct {
            file,
            order,
            strong_decomposition,
            target_n,
            out,
        } => {
            let t = load_tournament(&file)?;
            let order = order
                .map(|o| {
                    o.iter()
                        .map(|&i| {
                            i.checked_sub(1).ok_or_else(|| {
                                Error::InvalidInput("order indices are 1-based".into())
                            })
                        })
                        .collect::<Result<Vec<usize>, Error>>()
                })
                .transpose()?;
            let p = match target_n {
                Some(n) => {
                    if order.is_some() || strong_decomposition {
                        return Err(Error::InvalidInput(
                            "--target-n uses the default plan; drop --order/--strong-decomposition"
                                .into(),
                        ));
                    }
                    construct_model_with_block_size(&t, n)?
                }
                None => construct_model(
                    &t,
                    &ConstructionPlan {
                        order,
                        strong_decomposition,
                    },
                )?,
            };
            // construction already oracle-checks itself; surface the verdict
            let report = verify_model(&p, &t)?;
            emit(&out, &format_partition(&p))?;
            eprintln!(
                "ground set [{}], {} blocks of {}; verified: {}",
                p.ground_size(),
                p.n(),
                p.block_size(),
                report.matches
            );
            Ok(if report.matches { 0 } else { EXIT_MISMATCH })
        }
        Command::Verify {
            partition,
            tournament,
            format,
        } => {
            let p = load_partition(&partition)?;
            let t = load_tournament(&tournament)?;
            let report = verify_model(&p, &t)?;
            match format {
                ReportFormat::Text => print!("{report}"),
                ReportFormat::Json => println!("{}", report.to_json()),
            }
            Ok(if report.matches { 0 } else { EXIT_MISMATCH })
        }
        Command::Stratify {
            partition,
            log,
            out,
        } => {
            let p = load_partition(&partition)?;
            let (s, records) = stratify(&p)?;
            write_opt(&log, &format_switch_log(&records))?;
            emit(&out, &format_partition(&s))?;
            eprintln!("{} switches applied", records.len());
            Ok(0)
        }
        Command::Switch {
            partition,
            ks,
            replay: replay_path,
            log,
            out,
        } => {
            let p = load_partition(&partition)?;
            let (result, records) = match replay_path {
                Some(path) => {
                    let records = parse_switch_log(&read_input(&path)?)?;
                    (replay(&p, &records)?, records)
                }
                None => {
                    let mut cur = p;
                    let mut records = Vec::with_capacity(ks.len());
                    for k in ks {
                        let (next, rec) = apply_simple_switch(&cur, k)?;
                        cur = next;
                        records.push(rec);
                    }
                    (cur, records)
                }
            };
            write_opt(&log, &format_switch_log(&records))?;
            emit(&out, &format_partition(&result))?;
            Ok(0)
        }
        Command::GroupGame { n, out } => {
            let p = group_game_partition(n)?;
            emit(&out, &format_partition(&p))?;
            Ok(0)
        }
        Command::Example {
            name,
            list,
            tournament,
            out,
        } => {
            if list {
                for e in catalog::entries() {
                    println!("{:8}  {}", e.name, e.description);
                }
                return Ok(0);
            }
            let name =
                name.ok_or_else(|| Error::InvalidInput("give an example name or --list".into()))?;
            let e = catalog::entry(&name)?;
            if tournament {
                emit(&out, &format_tournament(&e.tournament()))?;
            } else {
                emit(&out, &format_partition(&e.partition()))?;
            }
            Ok(0)
        }
        Command::Enumerate {
            n,
            random,
            seed,
            format,
        } => {
            let report: SweepReport = match random {
                Some(count) => random_sweep(n, count, seed)?,
                None => exhaustive_sweep(n)?,
            };
            match format {
                ReportFormat::Text => {
                    println!("vertices   {}", report.n);
                    println!("attempted  {}", report.total);
                    println!("verified   {}", report.verified);
                    println!("failed     {}", report.total - report.verified);
                    for bits in &report.failures {
                        println!("failure bitmask {bits:#x}");
                    }
                }
                ReportFormat::Json => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&report).expect("serializes")
                    )
                }
            }
            Ok(if report.all_passed() {
                0
            } else {
                EXIT_MISMATCH
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e @ Error::ConstructionInvariant(_)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_MISMATCH)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
