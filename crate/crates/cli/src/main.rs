//! `ohmgraph`: command-line front end for the exact network algebra in
//! `ohmgraph-core`.
//!
//! Exit codes: 0 success, 1 the tested property fails (a JSON witness is
//! written to stdout), 2 input or format error, 3 a configured cap was
//! exceeded.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{Config, Format};

#[derive(Parser)]
#[command(
    name = "ohmgraph",
    version,
    about = "Exact algebra of circular planar electrical networks"
)]
struct Cli {
    /// TOML file with plucker_n_cap, order_search_cap, spanning_tree_edge_cap, format.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output format; overrides the config file.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug)]
pub struct NetworkArg {
    /// Network JSON file (`-` for stdin).
    #[arg(long)]
    pub network: PathBuf,
}

#[derive(Args, Clone, Debug)]
pub struct MetricArgs {
    /// Distance matrix CSV file (`-` for stdin).
    #[arg(long)]
    pub metric: PathBuf,
    /// Circular order as comma-separated 1-based ids; defaults to 1,2,...,n.
    #[arg(long)]
    pub order: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Response matrix of a network.
    Response(NetworkArg),
    /// Effective resistance matrix of a network.
    Resistance(NetworkArg),
    /// Resistances by spanning-tree enumeration.
    OracleResistance {
        #[command(flatten)]
        net: NetworkArg,
        /// Single pair `i,j` of boundary positions; all pairs when omitted.
        #[arg(long)]
        pair: Option<String>,
    },
    /// Tests the Kalmanson inequalities in a circular order.
    Kalmanson(MetricArgs),
    /// Searches for a circular order in which the metric is Kalmanson.
    FindOrder {
        #[arg(long)]
        metric: PathBuf,
    },
    /// Decomposes a Kalmanson metric into weighted circular splits.
    SplitDecompose(MetricArgs),
    /// Metric of a weighted split system.
    SplitsToMetric {
        /// Split system JSON file.
        #[arg(long)]
        splits: PathBuf,
    },
    /// Gromov product (Farris transform) at a base node.
    Gromov {
        #[arg(long)]
        metric: PathBuf,
        /// 1-based base node; defaults to the last node.
        #[arg(long)]
        base: Option<usize>,
    },
    /// Dual response candidate M(D).
    MOfD(MetricArgs),
    /// The Omega matrix of a metric (resistance form) or a response matrix.
    Omega(PointArgs),
    /// Plücker coordinates and sign certificate.
    Plucker(PointArgs),
    /// Decides whether a metric is the resistance matrix of a circular planar network.
    IsElectrical {
        #[command(flatten)]
        metric: MetricArgs,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Resistance matrix read off a dual response matrix.
    DualResponse {
        /// Response matrix CSV of the dual network.
        #[arg(long)]
        response: PathBuf,
        #[arg(long)]
        order: Option<String>,
    },
    /// Dual network of an embedded network.
    Dualize(NetworkArg),
    /// Strand permutation of a metric or of an embedded network.
    Strands(SourceArgs),
    /// Reconstructs a minimal network from a resistance matrix.
    Reconstruct {
        #[command(flatten)]
        metric: MetricArgs,
        /// Emit the medial graph instead of the network when `--format dot`.
        #[arg(long)]
        medial: bool,
    },
    /// Recovers tree conductances from a metric.
    FitTree {
        #[command(flatten)]
        metric: MetricArgs,
        /// Tree topology; reconstructed from the metric when omitted.
        #[arg(long)]
        tree: Option<PathBuf>,
    },
    /// Applies one electrical transformation, or all series/parallel style reductions.
    Reduce {
        #[command(flatten)]
        net: NetworkArg,
        /// remove_loop, remove_pendant, series, parallel, star_to_triangle or triangle_to_star.
        #[arg(long, requires = "site")]
        r#move: Option<String>,
        /// Comma-separated site: 1-based vertex id, or 0-based edge indices.
        #[arg(long)]
        site: Option<String>,
        /// Replace triangles by stars after reducing.
        #[arg(long, conflicts_with = "move")]
        stars: bool,
    },
    /// Checks that reconstruction reproduces the strand permutation.
    Verify(MetricArgs),
}

#[derive(Args, Clone, Debug)]
pub struct PointArgs {
    #[arg(long, conflicts_with = "response", required_unless_present = "response")]
    pub metric: Option<PathBuf>,
    #[arg(long)]
    pub order: Option<String>,
    /// Response matrix CSV.
    #[arg(long)]
    pub response: Option<PathBuf>,
}

#[derive(Args, Clone, Debug)]
pub struct SourceArgs {
    #[arg(long, conflicts_with = "network", required_unless_present = "network")]
    pub metric: Option<PathBuf>,
    #[arg(long)]
    pub order: Option<String>,
    #[arg(long)]
    pub network: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Method {
    Grassmann,
    Dual,
    Both,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut config = match &cli.config {
        Some(path) => match Config::load(path) {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
        },
        None => Config::default(),
    };
    if let Some(f) = cli.format {
        config.format = f;
    }
    let outcome = commands::run(&cli.command, &config);
    match outcome {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code)
        }
        Err(e) => {
            let code = commands::exit_code(&e);
            if code == 1 {
                println!("{}", commands::error_json(&e));
            }
            eprintln!("error: {e:#}");
            ExitCode::from(code)
        }
    }
}
