use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "ses",
    version,
    about = "Pfaffians, orbits and class counts for semi-extraspecial p-groups"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads; output does not depend on it.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Reject coefficient literals that are not canonical residues.
    #[arg(long, global = true)]
    pub strict: bool,
    /// Enumeration cap; overrides SES_MAX_ENUM.
    #[arg(long, global = true)]
    pub max_enum: Option<u64>,
    /// Seed for the randomized checks in `verify`.
    #[arg(long, global = true, default_value_t = 0x5e5)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the monic irreducible polynomials of degree n over F_(p^k).
    Irreducibles {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long)]
        n: usize,
    },
    /// Orbits of GL(2,q) or GammaL(2,q) on ideals of binary forms of degree n.
    Orbits {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = FamilyArg::Irreducible)]
        family: FamilyArg,
        #[arg(long, value_enum, default_value_t = GroupArg::Gl)]
        group: GroupArg,
    },
    /// Stabilizer in GL(2,q) of the ideal of a homogenized polynomial.
    Stabilizer {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long)]
        poly: String,
    },
    /// Pfaffian, ses verdicts, centroid and genus of a pencil file.
    Pfaffian {
        file: PathBuf,
        /// Also count totally isotropic subspaces of this dimension.
        #[arg(long)]
        isotropic: Option<usize>,
    },
    /// Build a pencil file.
    Construct {
        #[command(subcommand)]
        kind: ConstructKind,
    },
    /// Class counts: closed form against brute force, with strata.
    Census {
        #[arg(long, value_delimiter = ',', required = true)]
        p: Vec<u64>,
        #[arg(long, value_delimiter = ',', default_value = "6,8,10,12")]
        exp: Vec<u32>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Restrict the lemma checks to this prime.
        #[arg(long)]
        p: Option<u64>,
        /// Largest prime for the formula checks.
        #[arg(long, default_value_t = 13)]
        max_p: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum ConstructKind {
    /// Heisenberg pencil over K[x]/(a^c).
    Heisenberg {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = 1)]
        c: u32,
    },
    /// Heisenberg pencil over K[x]/(a^c) modulo a subspace, given as
    /// polynomials separated by ';'.
    Quotient {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        c: u32,
        #[arg(long, default_value = "")]
        subspace: String,
    },
    /// The degenerate genus-2 family with V of odd dimension 2m+1.
    Hflat {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        m: usize,
    },
    /// Companion pencil of a^c.
    Companion {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = 1)]
        c: u32,
    },
    /// Doubled dot product on F_q^n, viewed over F_p.
    Genus1 {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Irreducible,
    Primary,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GroupArg {
    Gl,
    Gammal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Formulas,
    Examples,
    Lemmas,
}
