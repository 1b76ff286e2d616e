//! `topoqd`: quantum double data for a finite group from the command line.

mod commands;
mod render;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use topoqd_core::chartable::DEFAULT_SEED;
use topoqd_core::group::{FiniteGroup, DEFAULT_ELEMENT_CAP};
use topoqd_core::pairing::Manifold;
use topoqd_core::sectors::{EnumOptions, Strategy, DEFAULT_ENUM_CAP};
use topoqd_core::{Error, QuantumDouble};

use render::{Document, Format};

const EXIT_VERIFY: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_CAP: u8 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "topoqd",
    version,
    about = "Exact topological data of finite-group quantum double models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,

    /// Cap on |G|^g for graph-sector enumeration.
    #[arg(long, global = true, env = "TOPOQD_ENUM_CAP", default_value_t = DEFAULT_ENUM_CAP as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    enum_cap: u64,

    /// Cap on the number of group elements generated by permutation closure.
    #[arg(long, global = true, env = "TOPOQD_ELEM_CAP", default_value_t = DEFAULT_ELEMENT_CAP as u64,
          value_parser = clap::value_parser!(u64).range(1..))]
    elem_cap: u64,

    /// Seed for the character table construction.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    /// Worker threads for enumeration [default: available parallelism].
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,

    /// Cross-check with the brute-force oracles.
    #[arg(long, global = true, hide = true)]
    oracle: bool,
}

#[derive(Args, Debug)]
struct GroupArg {
    /// Builtin name (S3, Z4, A5, ...) or path to a group file.
    #[arg(long)]
    group: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Group-level summaries.
    #[command(subcommand)]
    Group(GroupCommand),
    /// Genus-g graph sectors.
    Sectors {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        genus: usize,
        /// List every sector, not only the count.
        #[arg(long)]
        enumerate: bool,
    },
    /// Fusion of point particles or flux loops.
    #[command(subcommand)]
    Fuse(FuseCommand),
    /// Type-I pairing matrix.
    Pairing {
        #[command(flatten)]
        group: GroupArg,
        /// s2xs1 or t2.
        #[arg(long)]
        manifold: Manifold,
    },
    /// Run every consistency relation.
    Verify {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
        max_genus: u64,
    },
    /// Character table with values as [re, im].
    DumpChartable {
        #[command(flatten)]
        group: GroupArg,
    },
    /// Verify, sectors and pairing bundled into one document.
    Report {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
        max_genus: u64,
    },
}

#[derive(Subcommand, Debug)]
enum GroupCommand {
    /// Order, classes, sectors and capacities.
    Info {
        #[command(flatten)]
        group: GroupArg,
    },
}

#[derive(Subcommand, Debug)]
enum FuseCommand {
    /// N_ab^c for irreps given as chi<i> or an index; all c when omitted.
    Points {
        #[command(flatten)]
        group: GroupArg,
        a: String,
        b: String,
        c: Option<String>,
    },
    /// Fusion outcome table of two pure fluxes.
    Loops {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        nu: String,
        /// Only the distribution over the commutator class.
        #[arg(long)]
        borromean: bool,
    },
}

fn exit_code(e: &Error) -> u8 {
    if e.is_cap_exceeded() {
        return EXIT_CAP;
    }
    match e {
        Error::DegenerateSpectrum { .. }
        | Error::NonIntegerMultiplicity { .. }
        | Error::NonIntegerResult { .. }
        | Error::UnitarityViolation { .. } => EXIT_VERIFY,
        _ => EXIT_INPUT,
    }
}

fn load(cli: &Cli, spec: &str) -> topoqd_core::Result<QuantumDouble> {
    let group = FiniteGroup::load(spec, cli.elem_cap as usize)?;
    QuantumDouble::with_seed(group, cli.seed)
}

fn run(cli: &Cli) -> topoqd_core::Result<(Document, bool)> {
    let threads = cli
        .threads
        .map(|t| t as usize)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1));
    let opts = EnumOptions {
        cap: cli.enum_cap as u128,
        strategy: Strategy::Auto,
        threads,
    };
    Ok(match &cli.command {
        Command::Group(GroupCommand::Info { group }) => (commands::group_info(&load(cli, &group.group)?)?, true),
        Command::Sectors {
            group,
            genus,
            enumerate,
        } => {
            let qd = load(cli, &group.group)?;
            (commands::sectors(&qd, *genus, *enumerate, &opts, cli.oracle)?, true)
        }
        Command::Fuse(FuseCommand::Points { group, a, b, c }) => {
            let qd = load(cli, &group.group)?;
            (commands::fuse_points(&qd, a, b, c.as_deref(), cli.oracle)?, true)
        }
        Command::Fuse(FuseCommand::Loops {
            group,
            mu,
            nu,
            borromean,
        }) => {
            let qd = load(cli, &group.group)?;
            (commands::fuse_loops(&qd, mu, nu, *borromean)?, true)
        }
        Command::Pairing { group, manifold } => (commands::pairing(&load(cli, &group.group)?, *manifold)?, true),
        Command::Verify { group, max_genus } => {
            commands::verify(&load(cli, &group.group)?, *max_genus as usize, &opts)?
        }
        Command::DumpChartable { group } => (commands::dump_chartable(&load(cli, &group.group)?)?, true),
        Command::Report { group, max_genus } => {
            commands::report(&load(cli, &group.group)?, *max_genus as usize, &opts)?
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((doc, pass)) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(doc.render(cli.format).as_bytes()).is_err() {
                return ExitCode::from(EXIT_INPUT);
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_VERIFY)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
