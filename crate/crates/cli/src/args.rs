use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "flagmorse", version, about = "Root-system combinatorics and index bounds for flag manifolds G/P")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// A root system and a painting of its Dynkin diagram.
#[derive(Debug, Clone, Args)]
pub struct SplitArgs {
    /// Family letter: A, B, C, D or E.
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub rank: usize,
    /// Comma-separated 1-based painted nodes (the Levi part); empty for the Borel case.
    #[arg(long, default_value = "")]
    pub painted: String,
}

#[derive(Debug, Clone, Args)]
pub struct SystemArgs {
    #[arg(long)]
    pub family: String,
    #[arg(long)]
    pub rank: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the roots of a system.
    Roots {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        json: bool,
    },
    /// Structure constants of the unit-pairing Chevalley basis.
    Chevalley {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        #[arg(long)]
        csv: bool,
    },
    /// The split of the roots into Levi part and positive complement.
    Parabolic {
        #[command(flatten)]
        split: SplitArgs,
        #[arg(long)]
        json: bool,
    },
    /// S and T sets, ell and the two conditions for one root.
    Ell {
        #[command(flatten)]
        split: SplitArgs,
        /// Support of the velocity, `root:a,b;root:a,b` with roots as simple coordinates (e.g. `011`).
        #[arg(long)]
        gamma: Option<String>,
        /// `auto` (superminimal root of gamma) or a root in simple coordinates.
        #[arg(long, default_value = "auto")]
        delta: String,
        #[arg(long)]
        json: bool,
    },
    /// The tabulated values of ell with the values computed at the Borel split.
    EllTable {
        /// Append the two documented improvements to 2r - 1.
        #[arg(long)]
        improved: bool,
        #[arg(long)]
        json: bool,
    },
    /// Index lower bound for a geodesic between submanifolds of dimensions m and n.
    IndexBound {
        #[arg(long)]
        m: i64,
        #[arg(long)]
        n: i64,
        #[command(flatten)]
        split: SplitArgs,
        /// Use the improved ell when the painting is one of the special cases.
        #[arg(long)]
        special: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run a numeric identity suite and report residuals.
    Check {
        /// integrability, mel, onemel, twomel, curvature, ceh-chain, transport or all.
        #[arg(long, default_value = "all")]
        suite: String,
        #[command(flatten)]
        split: SplitArgs,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        json: bool,
        /// Report elapsed_ms as 0 so output is byte-reproducible.
        #[arg(long)]
        no_timing: bool,
    },
    /// Hessian of the energy along a geodesic for a hat-parallel field.
    Hessian {
        #[command(flatten)]
        split: SplitArgs,
        /// Velocity, `root:a,b;...`.
        #[arg(long)]
        gamma: String,
        /// Initial field, `root:a,b;...`.
        #[arg(long)]
        field: String,
        #[arg(long)]
        json: bool,
    },
}
