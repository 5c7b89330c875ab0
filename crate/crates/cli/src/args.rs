use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "twistkit", version, about = "Twisted Alexander polynomials, torsion growth and Mahler measures")]
#[command(args_override_self = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Emit JSON instead of human-readable text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Cap on worker threads.
    #[arg(long, global = true, env = "TWISTKIT_THREADS")]
    pub threads: Option<usize>,

    /// File of `key = value` lines, one per long option.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a diagram and print its Wirtinger presentation.
    Parse(InputArgs),
    /// Coloring polynomial, Wada invariant, H₀ order and Δ.
    Invariants {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        rep: RepArgs,
    },
    /// Riley polynomial of a 2-bridge knot or link.
    Riley {
        /// `α/β`.
        #[arg(long)]
        two_bridge: Option<String>,
        #[arg(long)]
        example: Option<String>,
        /// Also run the torus-knot recursion up to this index.
        #[arg(long)]
        recursion: Option<usize>,
    },
    /// Torsion number of the cover indexed by a lattice.
    Torsion {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        rep: RepArgs,
        /// `r` for `diag(r, …, r)`, or basis rows `a,b;c,d`.
        #[arg(long, default_value = "2")]
        lattice: String,
        /// Extra primes to strip, comma separated.
        #[arg(long, value_delimiter = ',')]
        strip: Vec<u64>,
    },
    /// Torsion numbers for `r = 1..=rmax` and the extrapolated growth rate.
    Growth {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        rep: RepArgs,
        #[arg(long, default_value_t = 14)]
        rmax: u64,
        #[arg(long, value_delimiter = ',')]
        strip: Vec<u64>,
    },
    /// Mahler measure of a polynomial, or of Δ when no polynomial is given.
    Mahler {
        #[arg(long)]
        poly: Option<String>,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        rep: RepArgs,
    },
    /// Fox colorings modulo `p`.
    Colorings {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        prime: u64,
    },
    /// Run the built-in corpus of reference checks.
    VerifyPaper,
}

#[derive(Debug, Clone, Default, Args)]
pub struct InputArgs {
    /// PD code text, or a path to a file holding one.
    #[arg(long)]
    pub diagram: Option<String>,
    /// Braid word such as `s1 s1 S2`.
    #[arg(long)]
    pub braid: Option<String>,
    #[arg(long, requires = "braid")]
    pub strands: Option<usize>,
    /// Built-in example name.
    #[arg(long)]
    pub example: Option<String>,
    /// `α/β`; alone it selects the 2-bridge word presentation.
    #[arg(long)]
    pub two_bridge: Option<String>,
    /// Arc to use as the base generator.
    #[arg(long)]
    pub base_arc: Option<usize>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct RepArgs {
    /// Monic `φ(w)` for a total representation, or `auto` for the Riley polynomial.
    #[arg(long)]
    pub parabolic: Option<String>,
    /// Permutation images such as `x0:(1 2),x1:(2 3)`.
    #[arg(long)]
    pub perm: Option<String>,
    /// JSON file with a representation.
    #[arg(long)]
    pub rep: Option<PathBuf>,
    /// Trivial one-dimensional representation.
    #[arg(long)]
    pub untwisted: bool,
    /// `riley[:w]` or `square[:u,v]`.
    #[arg(long)]
    pub preset: Option<String>,
}
