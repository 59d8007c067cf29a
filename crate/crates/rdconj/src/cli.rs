//! Command-line surface.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rdconj_core::conjugacy::Solver;

use crate::config::{Format, NumericMode};

#[derive(Debug, Parser)]
#[command(name = "rdconj", version, about = "Conjugator length bounds, rapid-decay seminorms and group homology")]
pub struct Cli {
    /// JSON run configuration.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Add wall time and cache activity to the report.
    #[arg(long, global = true)]
    pub timing: bool,
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true, value_enum)]
    pub numeric: Option<NumericMode>,
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    pub ball_cap: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GroupArg {
    /// Builtin name (Z2, S3, F2, Z^2, H3, Z2*Z3), group file, or inline JSON.
    #[arg(long)]
    pub group: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate a ball.
    Ball {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        radius: u32,
        /// Include every element with its length.
        #[arg(long)]
        list: bool,
    },
    /// Cayley graph of a ball: JSON summary or edge-list CSV.
    Graph {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        radius: u32,
        /// Also write the edge list here.
        #[arg(long)]
        edges: Option<PathBuf>,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
    },
    /// Four-point hyperbolicity of a ball's Cayley graph.
    Delta {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        radius: u32,
        /// Sample this many quadruples instead of the automatic choice.
        #[arg(long, conflicts_with = "exhaustive")]
        samples: Option<u64>,
        #[arg(long)]
        exhaustive: bool,
    },
    /// Coned-off Cayley graph of a ball.
    Coned {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        radius: u32,
        /// `factor:<i>` or `cyclic:<element>`; repeatable.
        #[arg(long = "subgroup", required = true)]
        subgroups: Vec<String>,
        #[arg(long, requires = "to")]
        from: Option<String>,
        #[arg(long, requires = "from")]
        to: Option<String>,
    },
    #[command(subcommand)]
    Bounds(BoundsCommand),
    #[command(subcommand)]
    Conj(ConjCommand),
    /// Same as `conj profile`.
    Profile(ProfileArgs),
    #[command(subcommand)]
    Rd(RdCommand),
    /// Hochschild and cyclic homology of a finite group.
    Homology {
        #[command(flatten)]
        group: GroupArg,
        /// Highest degree reported; defaults by group order.
        #[arg(long)]
        nmax: Option<usize>,
        /// Split by conjugacy class.
        #[arg(long)]
        split: bool,
        /// Check the class-wise simplicial isomorphism in degrees ≤ 2.
        #[arg(long)]
        simplicial: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum BoundsCommand {
    /// The neighborhood and penetration constant chain.
    Eval {
        #[arg(long)]
        k: f64,
        /// Overrides the configured δ.
        #[arg(long)]
        delta: Option<f64>,
        /// Neighborhood radius `R`.
        #[arg(long, default_value_t = 0.0)]
        r: f64,
    },
    /// Conjugator length bound for `L = lu + lv`.
    Theorem {
        #[arg(long)]
        lu: f64,
        #[arg(long)]
        lv: f64,
        /// Penetration function `c(k)`.
        #[arg(long, default_value = "x")]
        c: String,
        /// Conjugacy bound of a peripheral subgroup; repeatable.
        #[arg(long = "q")]
        q: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum ConjCommand {
    /// Decide whether `u` and `v` are conjugate.
    Solve {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long, value_enum, default_value = "auto")]
        solver: SolverArg,
        /// Brute-force search radius; defaults to `L(u) + L(v)`.
        #[arg(long)]
        radius: Option<u32>,
        /// Search radius `f(L(u) + L(v))` instead of a solver.
        #[arg(long, conflicts_with_all = ["solver", "radius"])]
        bound: Option<String>,
    },
    /// Shortest conjugators over a ball and a fitted polynomial bound.
    Profile(ProfileArgs),
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    #[command(flatten)]
    pub group: GroupArg,
    #[arg(long)]
    pub radius: u32,
    #[arg(long, default_value_t = 2)]
    pub slack: u32,
    /// Largest acceptable multiplier, as `p/q`.
    #[arg(long, default_value = "1")]
    pub a_cap: String,
    #[arg(long, default_value_t = 6)]
    pub max_degree: u32,
    #[arg(long, value_enum, default_value = "auto")]
    pub solver: SolverArg,
    /// Write the records as CSV here.
    #[arg(long)]
    pub csv: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum RdCommand {
    /// Product estimate on seeded random pairs supported on a ball.
    Check {
        #[command(flatten)]
        group: GroupArg,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Bounding function; repeatable.
        #[arg(long = "f", required = true)]
        f: Vec<String>,
        #[arg(long, default_value_t = 3)]
        radius: u32,
        /// Largest support size of a random vector.
        #[arg(long, default_value_t = 4)]
        support: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolverArg {
    Auto,
    Brute,
    Nilpotent,
    Free,
}

impl From<SolverArg> for Solver {
    fn from(s: SolverArg) -> Self {
        match s {
            SolverArg::Auto => Solver::Auto,
            SolverArg::Brute => Solver::Brute,
            SolverArg::Nilpotent => Solver::Nilpotent,
            SolverArg::Free => Solver::Free,
        }
    }
}
