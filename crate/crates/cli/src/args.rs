use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "heisweil", version, about = "Heisenberg groups, Weil representations and root-datum checks over finite fields")]
pub struct Cli {
    /// Seed for randomized searches.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the JSON document here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Print the JSON schema of the subcommand's output and exit.
    #[arg(long, global = true)]
    pub schema: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Heisenberg groups.
    #[command(subcommand)]
    Heis(HeisCmd),
    /// Heisenberg representations.
    #[command(subcommand)]
    Rep(RepCmd),
    /// Automorphisms acting trivially on the center.
    #[command(subcommand)]
    Autz(AutzCmd),
    /// Weil representations and their linearizations.
    #[command(subcommand)]
    Weil(WeilCmd),
    /// Quadratic forms.
    #[command(subcommand)]
    Forms(FormsCmd),
    /// Root systems, Weyl groups and small matrix groups.
    #[command(subcommand)]
    Rootdata(RootdataCmd),
    /// Acceptance checks.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

/// A standard model: `p`, `n` and, for `p = 2`, the type.
#[derive(Args, Debug, Clone)]
pub struct Model {
    #[arg(long)]
    pub p: u32,
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    /// positive | negative (p = 2) or odd; defaults by p.
    #[arg(long = "type")]
    pub kind: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum HeisCmd {
    Build(Model),
    Classify {
        #[command(flatten)]
        model: ClassifyInput,
    },
    CentralProduct {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n1: usize,
        #[arg(long)]
        type1: Option<String>,
        #[arg(long)]
        n2: usize,
        #[arg(long)]
        type2: Option<String>,
    },
}

#[derive(Args, Debug, Clone)]
pub struct ClassifyInput {
    #[arg(long)]
    pub p: u32,
    /// Gram matrix of the defining bilinear form as JSON rows.
    #[arg(long, conflicts_with_all = ["n", "kind"])]
    pub gram: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long = "type")]
    pub kind: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum RepCmd {
    Heisenberg {
        #[command(flatten)]
        model: Model,
        #[arg(long, default_value_t = 1)]
        psi: u32,
        /// Include the matrices of every group element.
        #[arg(long)]
        matrices: bool,
    },
    Fs {
        #[command(flatten)]
        model: Model,
        #[arg(long, default_value_t = 1)]
        psi: u32,
    },
    Svn(Model),
}

#[derive(Subcommand, Debug)]
pub enum AutzCmd {
    Report(Model),
    Splits(Model),
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubgroupChoice {
    /// Inner automorphisms.
    Inner,
    /// Lifts of the symplectic group through the canonical section (odd p).
    Section,
    /// All of Aut_Z.
    Full,
    /// Stabilizer of a Lagrangian lift.
    Stabilizer,
    /// A Sylow 2-subgroup of that stabilizer.
    StabilizerSylow2,
}

#[derive(Subcommand, Debug)]
pub enum WeilCmd {
    Linearize {
        #[command(flatten)]
        model: Model,
        #[arg(long, default_value_t = 1)]
        psi: u32,
        #[arg(long, value_enum, default_value_t = SubgroupChoice::Inner)]
        subgroup: SubgroupChoice,
        /// Include the matrices of a generating set.
        #[arg(long)]
        matrices: bool,
    },
    RLinearize {
        #[command(flatten)]
        model: Model,
        #[arg(long, value_enum, default_value_t = SubgroupChoice::StabilizerSylow2)]
        subgroup: SubgroupChoice,
    },
    Gerardin {
        #[arg(long)]
        p: u32,
        #[arg(long, default_value_t = 1)]
        psi: u32,
    },
    Count {
        #[command(flatten)]
        model: Model,
        #[arg(long, default_value_t = 1)]
        psi: u32,
        #[arg(long, value_enum, default_value_t = SubgroupChoice::Section)]
        subgroup: SubgroupChoice,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormModel {
    Split,
    Nonsplit,
    Norm,
    NormTrace,
}

#[derive(Args, Debug, Clone)]
pub struct FormArgs {
    #[arg(long, value_enum)]
    pub model: FormModel,
    /// Prime for split, nonsplit and norm models.
    #[arg(long)]
    pub p: Option<u32>,
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    /// Field size for the norm-trace model.
    #[arg(long)]
    pub q: Option<u32>,
}

#[derive(Subcommand, Debug)]
pub enum FormsCmd {
    Classify(FormArgs),
    CountZeros(FormArgs),
}

#[derive(Subcommand, Debug)]
pub enum RootdataCmd {
    Torsion {
        /// Irreducible components, e.g. `A3` or `E8,G2`.
        #[arg(long = "type", value_delimiter = ',', required = true)]
        types: Vec<String>,
        /// Order of the torsion of the fundamental group.
        #[arg(long, default_value_t = 1)]
        pi1: u64,
    },
    Centralizer {
        #[arg(long = "type")]
        kind: String,
        #[arg(long)]
        p: u32,
        /// Weights in standard coordinates as JSON rows, one per formal symbol.
        #[arg(long)]
        weights: String,
        /// Roots of the Levi subsystem, as JSON rows in standard coordinates.
        #[arg(long, default_value = "[]")]
        levi: String,
    },
    AppendixD,
    CommutatorCheck {
        #[arg(long)]
        group: String,
        #[arg(long)]
        q: u32,
        /// Also compute the abelianization of the whole group.
        #[arg(long)]
        abelianization: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum VerifyCmd {
    All {
        /// Run a single criterion.
        #[arg(long)]
        criterion: Option<u8>,
    },
}
