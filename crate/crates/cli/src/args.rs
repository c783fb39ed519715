use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "soergel", version, about = "Exact Hecke algebra and Soergel bimodule computations", arg_required_else_help = true)]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Seed for every random choice (generic points, separating elements).
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Args, Clone)]
pub struct GroupArgs {
    /// Built-in Coxeter type: A1, A2, A3, B2, H2, I2(m), I2(inf).
    #[arg(long = "type", default_value = "A2")]
    pub ty: String,
    /// Coxeter matrix file; overrides `--type`.
    #[arg(long)]
    pub coxeter: Option<PathBuf>,
    /// Length bound for the enumeration; infinite groups default to 10.
    #[arg(long)]
    pub max_length: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Coxeter groups: enumeration and Bruhat order.
    #[command(subcommand)]
    Coxeter(CoxeterCmd),
    /// Hecke algebra arithmetic and the Kazhdan–Lusztig basis.
    #[command(subcommand)]
    Hecke(HeckeCmd),
    /// Decategorified predictions read off the Hecke algebra.
    #[command(subcommand)]
    Decat(DecatCmd),
    /// Checks on reflection representations.
    #[command(subcommand)]
    Reps(RepsCmd),
    /// Bott–Samelson bimodule computations.
    #[command(subcommand)]
    Bimod(BimodCmd),
    /// Runs every verification for a type and a pair.
    VerifyAll {
        #[command(flatten)]
        group: GroupArgs,
        /// `builtin:geom`, `builtin:geom-plus-trivial`, or a representation file with a subspace.
        #[arg(long, default_value = "builtin:geom-plus-trivial")]
        pair: String,
        /// Longest word in the decategorified battery.
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum CoxeterCmd {
    /// Enumerates the group.
    Build {
        #[arg(long = "type", default_value = "A2")]
        ty: String,
        /// Coxeter matrix file; overrides `--type`.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        max_length: Option<usize>,
    },
    /// Decides `x ≤ w` in the Bruhat order.
    Bruhat {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        x: String,
        #[arg(long)]
        w: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum HeckeCmd {
    /// `T_x T_y` in the standard basis.
    Mul {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// `τ((1 + T_{s_1}) ... (1 + T_{s_k}))`.
    Tau {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        word: String,
    },
    /// The Kazhdan–Lusztig basis in the standard basis.
    Kl {
        #[command(flatten)]
        group: GroupArgs,
    },
}

#[derive(Debug, Subcommand)]
pub enum DecatCmd {
    /// Graded shifts of `Hom(BS(word), BS(target))`, target defaulting to `R`.
    HomRank {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        word: String,
        #[arg(long, default_value = "")]
        target: String,
    },
    /// Standard multiplicities `n_w`.
    Nw {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        word: String,
    },
    /// Expansion of a Bott–Samelson product in the KL basis.
    KlExpand {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        word: String,
    },
    /// Checks the multiplicity identities and positivity for all words up to a length.
    Verify {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum RepsCmd {
    /// Reflection-faithfulness and good-pair checks.
    Check {
        #[command(flatten)]
        group: GroupArgs,
        /// Representation file; defaults to the pair given by `--pair`.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long, default_value = "builtin:geom")]
        pair: String,
        /// Comma-separated subset of `rf,rvf,goodpair`.
        #[arg(long, default_value = "rf,rvf,goodpair", value_delimiter = ',')]
        checks: Vec<String>,
    },
}

#[derive(Debug, Args, Clone)]
pub struct RepArgs {
    /// Representation file; the geometric representation by default.
    #[arg(long)]
    pub rep: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum BimodCmd {
    /// Hom dimensions degree by degree and detected generator degrees.
    HomRank {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        rep: RepArgs,
        #[arg(long)]
        word: String,
        #[arg(long, default_value = "")]
        target: String,
        #[arg(long, default_value_t = 8)]
        max_degree: i32,
    },
    /// Decomposes a Bott–Samelson bimodule by idempotents of `End_0`.
    Decompose {
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        rep: RepArgs,
        #[arg(long)]
        word: String,
    },
    /// Compares Hom spaces (1) or degree-zero endomorphisms (2) across a pair.
    Verify {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        theorem: u8,
        #[arg(long, default_value = "builtin:geom-plus-trivial")]
        pair: String,
        #[arg(long)]
        word: String,
        /// Target word for theorem 1.
        #[arg(long, default_value = "")]
        target: String,
        /// Degree cap for theorem 1; defaults to two above the top predicted generator.
        #[arg(long)]
        max_degree: Option<i32>,
    },
}
