//! `fixpoint`: fixed-point analysis of finite posets from the command
//! line.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fixpoint_core::Limits;
use serde_json::Value;

use fixpoint_cli::cache::resolve_cache_dir;
use fixpoint_cli::commands;
use fixpoint_cli::format::{load_poset, parse_rat, parse_rat_tuple, CliError};
use fixpoint_cli::scan::{run_scan, ScanOptions};

#[derive(Parser)]
#[command(
    name = "fixpoint",
    version,
    about = "Fixed point properties of finite posets: decision procedures, selectors, cores, and exact interval demos"
)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct LimitArgs {
    /// Largest mapping space enumerated in full.
    #[arg(long)]
    max_maps: Option<usize>,
    /// Largest mapping space for count-only enumeration.
    #[arg(long)]
    max_map_count: Option<usize>,
    /// Largest mapping space with a materialised order matrix.
    #[arg(long)]
    max_order_matrix: Option<usize>,
}

impl LimitArgs {
    fn apply(&self, mut limits: Limits) -> Limits {
        if let Some(v) = self.max_maps {
            limits.max_maps = v;
        }
        if let Some(v) = self.max_map_count {
            limits.max_map_count = v;
        }
        if let Some(v) = self.max_order_matrix {
            limits.max_order_matrix = v;
        }
        limits
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide the fixed point property and the universal one.
    Check {
        file: PathBuf,
        /// Exit with status 2 when the property fails.
        #[arg(long)]
        strict: bool,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Search for a monotone fixed-point selector on C(X, X).
    Selection {
        file: PathBuf,
        #[arg(long)]
        strict: bool,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Remove beat points down to the core.
    Core {
        file: PathBuf,
        #[arg(long)]
        strict: bool,
    },
    /// Count (or list) the monotone self-maps.
    Maps {
        file: PathBuf,
        /// Print the count only (the default).
        #[arg(long)]
        count_only: bool,
        /// Also list every image table.
        #[arg(long, conflicts_with = "count_only")]
        tables: bool,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Classify every isomorphism class of posets up to a size.
    Scan {
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
        /// Cache directory (also via FIXPOINT_CACHE).
        #[arg(long)]
        cache: Option<PathBuf>,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Search for a section/retraction pair X -> Y -> X.
    Retract {
        yfile: PathBuf,
        xfile: PathBuf,
        #[arg(long)]
        strict: bool,
    },
    /// Exact rational demonstrations on intervals.
    Demo {
        #[command(subcommand)]
        demo: DemoCommand,
    },
}

#[derive(Subcommand)]
enum DemoCommand {
    /// Fixed points of the sliding-band family at parameter t.
    Interval {
        /// Parameter in [0, 2], as numer/denom.
        #[arg(long)]
        t: String,
        /// Also print the fixed-point jump certificate.
        #[arg(long)]
        certificate: bool,
    },
    /// Radial retraction of a point onto the unit disk.
    Retraction {
        /// Coordinates, e.g. 3/2,0 or 1/2,1/3,1/4 (up to three).
        #[arg(long)]
        x: String,
        /// Treat the point as lying outside the chart.
        #[arg(long)]
        outside: bool,
    },
    /// Contraction stability bound on a tight affine pair.
    Banach {
        /// Contraction constant in [0, 1), as numer/denom.
        #[arg(long)]
        k: String,
    },
}

fn main() -> ExitCode {
    // Die quietly on a closed pipe (`fixpoint ... | head`) instead of
    // panicking in the printer.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap's own help/version output must stay on the happy path
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(64);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn emit(json_flag: bool, json: Value, human: String) {
    if json_flag {
        println!("{}", serde_json::to_string_pretty(&json).expect("valid json"));
    } else {
        println!("{human}");
    }
}

fn strict_code(strict: bool, ok: bool) -> ExitCode {
    if strict && !ok {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let defaults = Limits::default();
    match cli.command {
        Command::Check {
            file,
            strict,
            limits,
        } => {
            let named = load_poset(&file)?;
            let report = commands::run_check(&named.poset, &limits.apply(defaults))?;
            emit(cli.json, report.json(), report.human());
            Ok(strict_code(strict, report.fpp))
        }
        Command::Selection {
            file,
            strict,
            limits,
        } => {
            let named = load_poset(&file)?;
            let report = commands::run_selection(&named.poset, &limits.apply(defaults))?;
            emit(cli.json, report.json(), report.human());
            Ok(strict_code(strict, report.sat))
        }
        Command::Core { file, strict } => {
            let named = load_poset(&file)?;
            let report = commands::run_core(&named.poset);
            emit(cli.json, report.json(), report.human());
            Ok(strict_code(strict, report.dismantlable))
        }
        Command::Maps {
            file,
            count_only: _,
            tables,
            limits,
        } => {
            let named = load_poset(&file)?;
            let report = commands::run_maps(&named.poset, &limits.apply(defaults), tables)?;
            emit(cli.json, report.json(), report.human());
            Ok(ExitCode::SUCCESS)
        }
        Command::Scan {
            max_n,
            jobs,
            cache,
            limits,
        } => {
            let opts = ScanOptions {
                max_n,
                jobs,
                cache_dir: resolve_cache_dir(cache),
            };
            let outcome = run_scan(&opts, &limits.apply(defaults))?;
            if cli.json {
                let v = serde_json::json!({
                    "records": outcome.records,
                    "summary": outcome.summary
                        .iter()
                        .map(|&(n, c)| serde_json::json!({"n": n, "classes": c}))
                        .collect::<Vec<_>>(),
                });
                println!("{}", serde_json::to_string_pretty(&v).expect("valid json"));
            } else {
                for r in &outcome.records {
                    println!(
                        "n={} connected={} fpp={} dismantlable={} selection={} maps={} key={}",
                        r.n, r.connected, r.fpp, r.dismantlable, r.selection, r.map_count,
                        r.canonical
                    );
                }
                for (n, classes) in &outcome.summary {
                    println!("n={n}: {classes} classes");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Retract {
            yfile,
            xfile,
            strict,
        } => {
            let y = load_poset(&yfile)?;
            let x = load_poset(&xfile)?;
            let report = commands::run_retract(&y.poset, &x.poset, &defaults)?;
            emit(cli.json, report.json(), report.human());
            Ok(strict_code(strict, report.found))
        }
        Command::Demo { demo } => match demo {
            DemoCommand::Interval { t, certificate } => {
                let report = commands::run_demo_interval(parse_rat(&t)?, certificate)?;
                emit(cli.json, report.json(), report.human());
                Ok(ExitCode::SUCCESS)
            }
            DemoCommand::Retraction { x, outside } => {
                let report = commands::run_demo_retraction(parse_rat_tuple(&x)?, outside)?;
                emit(cli.json, report.json(), report.human());
                Ok(ExitCode::SUCCESS)
            }
            DemoCommand::Banach { k } => {
                let report = commands::run_demo_banach(parse_rat(&k)?)?;
                emit(cli.json, report.json(), report.human());
                Ok(ExitCode::SUCCESS)
            }
        },
    }
}
