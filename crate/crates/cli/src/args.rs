use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "reduct-forge", version)]
#[command(about = "Rough-set attribute reduction and rule-driven circuit minimization")]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Print timing information to stderr.
    #[arg(long, global = true)]
    pub verbose: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Approximations of every decision class and the quality of classification.
    Analyze {
        #[arg(long)]
        table: PathBuf,
        /// Comma-separated condition attributes (default: all).
        #[arg(long, value_delimiter = ',')]
        attrs: Option<Vec<String>>,
    },
    /// All decision-relative reducts.
    Reducts {
        #[arg(long)]
        table: PathBuf,
        /// Keep only reducts that induce a single rule covering this class.
        #[arg(long, value_name = "CLASS")]
        full_coverage: Option<u32>,
        /// Also report the core (intersection of all reducts).
        #[arg(long)]
        core: bool,
    },
    /// Decision rules induced by an attribute set for one decision class.
    Rules {
        #[arg(long)]
        table: PathBuf,
        /// Comma-separated attributes, e.g. `w8,w9`.
        #[arg(value_delimiter = ',', required = true, num_args = 1)]
        attrs: Vec<String>,
        #[arg(long)]
        class: u32,
    },
    /// Evaluate every wire of a netlist under one input assignment.
    Simulate {
        #[arg(long)]
        net: PathBuf,
        /// Input bits in declaration order (`010`) or `name=bit` pairs (`a=0,b=1,c=0`).
        #[arg(long)]
        assign: String,
    },
    /// Emit the exhaustive truth table of a netlist as decision-table CSV.
    Table {
        #[arg(long)]
        net: PathBuf,
    },
    /// Replace the logic behind a full-coverage rule's wires with a small combiner.
    Minimize {
        #[arg(long)]
        net: PathBuf,
        /// Rule such as `w8=1&w9=0=>1`.
        #[arg(long)]
        rule: String,
        /// Also write the minimized netlist to this file.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Exhaustively check two netlists for equivalence.
    Verify {
        #[arg(long)]
        net_a: PathBuf,
        #[arg(long)]
        net_b: PathBuf,
    },
}
