use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "ccrecon", version, about = "Reconstruct hidden graphs from connected-components queries")]
pub struct Cli {
    /// Base seed for generators and randomized algorithms.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Cap on oracle queries.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// TOML file of defaults; command-line flags win.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a generated graph file.
    Gen(GenArgs),
    /// Run an experiment sweep and emit one record per trial.
    Run(RunArgs),
    /// Race the default contenders on one graph.
    Race(RaceArgs),
    /// Check the oracle simulations on one graph against brute force.
    Bridge(BridgeArgs),
    /// Build or verify query schemes.
    #[command(subcommand)]
    Scheme(SchemeCommand),
    /// Exhaustive small-n checks of oracles, bridges, schemes and reconstruction.
    Validate(ValidateArgs),
}

/// Family name and its parameters; unset parameters take the family's defaults.
#[derive(Args, Debug, Default, Clone)]
pub struct FamilyArgs {
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub rows: Option<usize>,
    #[arg(long)]
    pub cols: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub leaves: Option<usize>,
    #[arg(long)]
    pub max_degree: Option<usize>,
    #[arg(long)]
    pub attempts: Option<usize>,
    #[arg(long)]
    pub delete_prob: Option<f64>,
    #[arg(long)]
    pub eta: Option<usize>,
    #[arg(long)]
    pub cross_prob: Option<f64>,
    /// Block size of the block-chain family.
    #[arg(long = "block")]
    pub p: Option<usize>,
    #[arg(long)]
    pub keep_prob: Option<f64>,
}

impl FamilyArgs {
    pub fn params(&self) -> BTreeMap<String, String> {
        let mut out = BTreeMap::new();
        let mut put = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                out.insert(k.to_string(), v);
            }
        };
        put("n", self.n.map(|x| x.to_string()));
        put("rows", self.rows.map(|x| x.to_string()));
        put("cols", self.cols.map(|x| x.to_string()));
        put("m", self.m.map(|x| x.to_string()));
        put("k", self.k.map(|x| x.to_string()));
        put("leaves", self.leaves.map(|x| x.to_string()));
        put("max_degree", self.max_degree.map(|x| x.to_string()));
        put("attempts", self.attempts.map(|x| x.to_string()));
        put("delete_prob", self.delete_prob.map(|x| x.to_string()));
        put("eta", self.eta.map(|x| x.to_string()));
        put("cross_prob", self.cross_prob.map(|x| x.to_string()));
        put("p", self.p.map(|x| x.to_string()));
        put("keep_prob", self.keep_prob.map(|x| x.to_string()));
        out
    }
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
}

#[derive(Args, Debug)]
pub struct RunArgs {
    /// One of maxdeg, maxdeg-unknown, connectivity, treewidth, treewidth-unknown,
    /// degeneracy, degeneracy-unknown, edges, race.
    #[arg(long)]
    pub algorithm: Option<String>,
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Vertex counts to sweep (side lengths for grids).
    #[arg(long, value_delimiter = ',')]
    pub sizes: Vec<usize>,
    /// Parameter values handed to known-parameter algorithms; defaults to the true value.
    #[arg(long, value_delimiter = ',')]
    pub params: Vec<usize>,
    #[arg(long)]
    pub trials: Option<usize>,
    /// randomized or deterministic.
    #[arg(long)]
    pub mode: Option<String>,
    /// Record wall-clock times (makes output nondeterministic).
    #[arg(long)]
    pub timing: bool,
    /// Also print a scaling fit along this axis to standard error.
    #[arg(long, value_parser = ["parameter", "log-n"])]
    pub fit: Option<String>,
}

#[derive(Args, Debug)]
pub struct RaceArgs {
    /// Graph file to race on instead of a generated family.
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[command(flatten)]
    pub family: FamilyArgs,
}

#[derive(Args, Debug)]
pub struct BridgeArgs {
    #[arg(long)]
    pub graph: Option<PathBuf>,
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Query set; all vertices when absent.
    #[arg(long, value_delimiter = ',')]
    pub set: Option<Vec<usize>>,
}

#[derive(Subcommand, Debug)]
pub enum SchemeCommand {
    /// Write a p-query-scheme in the text dump format.
    Build {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        #[arg(long, value_parser = ["splitter", "random"], default_value = "splitter")]
        kind: String,
    },
    /// Check a dumped scheme for coverage.
    Verify {
        #[arg(long)]
        input: PathBuf,
        /// Check this many random witnesses instead of all of them.
        #[arg(long)]
        samples: Option<u64>,
    },
}

#[derive(Args, Debug)]
pub struct ValidateArgs {
    #[arg(long, default_value_t = 6)]
    pub max_n: usize,
}
