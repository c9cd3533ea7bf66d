//! `gfl`: build, verify, decompose, and search edge-colorings of
//! complete graphs.
//!
//! Every run prints one JSON report on stdout (except `table --format
//! text`). Exit codes: 0 = clean/exhausted, 2 = witness or violation
//! found, 3 = budget exceeded, 1 = usage, format, or I/O error.

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use gfl_cli::commands::{
    cmd_check_claim, cmd_construct, cmd_partition, cmd_search_ramsey, cmd_table, cmd_verify,
    ClaimName, EdgeOrderArg, Family, TableFamily, TableFormat,
};

#[derive(Parser)]
#[command(
    name = "gfl",
    version,
    about = "Edge-colorings of complete graphs: constructions, fan and rainbow detection, \
             Gallai partitions, and exhaustive 2-color fan searches",
    after_help = "Exit codes: 0 clean/exhausted, 2 witness/violation, 3 budget exceeded, 1 error."
)]
struct Cli {
    /// Force single-threaded runs and omit timing from reports, making
    /// output byte-identical across runs.
    #[arg(long, global = true)]
    deterministic: bool,

    /// Worker threads for searches. Default: GFL_THREADS, else the
    /// machine's available parallelism.
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build an extremal coloring and write it as a .gcg file.
    Construct {
        /// Which construction family to build.
        #[arg(long, value_enum)]
        family: Family,
        /// Palette size (for f2-useful: the useful color count).
        #[arg(long)]
        k: u32,
        /// Fan order for the fn family.
        #[arg(long)]
        n: Option<u32>,
        /// Re-check the result for rainbow triangles and forbidden fans.
        #[arg(long)]
        verify: bool,
        /// Output path for the .gcg file.
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Scan a .gcg file for monochromatic fans (and rainbow triangles).
    Verify {
        /// Input .gcg file.
        input: PathBuf,
        /// Fan order m to search for, in every color.
        #[arg(long)]
        fan: usize,
        /// Also flag rainbow triangles.
        #[arg(long)]
        rainbow: bool,
    },
    /// Find a Gallai partition and its quotient coloring.
    Partition {
        /// Input .gcg file.
        input: PathBuf,
    },
    /// Print closed-form bound tables.
    Table {
        /// Which family's table.
        #[arg(long, value_enum)]
        family: TableFamily,
        /// Fan order for the fn family.
        #[arg(long)]
        n: Option<u32>,
        /// Largest palette size k to tabulate.
        #[arg(long = "k-max", default_value_t = 10)]
        k_max: u32,
        /// Output format. JSON is the stable machine format.
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
    },
    /// Exhaustive pruned searches.
    #[command(subcommand)]
    Search(SearchCmd),
    /// Re-verify a named finite claim.
    #[command(subcommand)]
    Check(CheckCmd),
}

#[derive(Subcommand)]
enum SearchCmd {
    /// Decide whether every 2-coloring of K_order has a mono fan F_fan.
    Ramsey {
        /// Fan order m of the forbidden monochromatic fan.
        #[arg(long)]
        fan: u32,
        /// Number of vertices of the complete graph (2..=16).
        #[arg(long)]
        order: usize,
        /// Stop after this many expanded nodes.
        #[arg(long)]
        budget_nodes: Option<u64>,
        /// Stop after this many seconds.
        #[arg(long)]
        timeout_secs: Option<u64>,
        /// Edge assignment order.
        #[arg(long, value_enum, default_value_t = EdgeOrderArg::Lex)]
        edge_order: EdgeOrderArg,
    },
}

#[derive(Subcommand)]
enum CheckCmd {
    /// Named claim checks; r-f3 defaults to a 60-second timeout.
    Claim {
        /// Which claim to check.
        #[arg(long, value_enum)]
        name: ClaimName,
        /// Stop after this many expanded nodes.
        #[arg(long)]
        budget_nodes: Option<u64>,
        /// Stop after this many seconds.
        #[arg(long)]
        timeout_secs: Option<u64>,
    },
}

fn resolve_threads(flag: Option<usize>, deterministic: bool) -> usize {
    if deterministic {
        return 1;
    }
    flag.filter(|&t| t >= 1)
        .or_else(|| std::env::var("GFL_THREADS").ok().and_then(|s| s.parse().ok()))
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |p| p.get()))
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => match e.kind() {
            // Help and version are not errors; tolerate a closed pipe.
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                let _ = write!(io::stdout(), "{e}");
                return ExitCode::SUCCESS;
            }
            _ => {
                eprint!("{e}");
                return ExitCode::from(1);
            }
        },
    };
    let deterministic = cli.deterministic;
    let threads = resolve_threads(cli.threads, deterministic);

    let result = match cli.cmd {
        Cmd::Construct { family, k, n, verify, out } => {
            cmd_construct(argv, family, k, n, verify, &out, deterministic)
        }
        Cmd::Verify { input, fan, rainbow } => {
            cmd_verify(argv, &input, fan, rainbow, deterministic)
        }
        Cmd::Partition { input } => cmd_partition(argv, &input, deterministic),
        Cmd::Table { family, n, k_max, format } => {
            cmd_table(argv, family, n, k_max, format, deterministic)
        }
        Cmd::Search(SearchCmd::Ramsey { fan, order, budget_nodes, timeout_secs, edge_order }) => {
            cmd_search_ramsey(
                argv,
                fan,
                order,
                budget_nodes,
                timeout_secs,
                edge_order,
                threads,
                deterministic,
            )
        }
        Cmd::Check(CheckCmd::Claim { name, budget_nodes, timeout_secs }) => {
            cmd_check_claim(argv, name, budget_nodes, timeout_secs, threads, deterministic)
        }
    };

    match result {
        Ok((stdout, code)) => {
            // Tolerate a closed pipe (`gfl ... | head`) instead of panicking.
            let mut out = io::stdout();
            let _ = writeln!(out, "{stdout}");
            let _ = out.flush();
            ExitCode::from(code as u8)
        }
        Err(err) => {
            eprintln!("gfl: {err}");
            ExitCode::from(1)
        }
    }
}
