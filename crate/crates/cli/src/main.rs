mod commands;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "aniso", version, about = "Face rings of simplicial spheres: canonical functions, anisotropy and Lefschetz checks")]
pub struct Cli {
    #[command(flatten)]
    pub cfg: RunConfig,
    #[command(subcommand)]
    pub cmd: Command,
}

#[derive(Args, Debug, Clone)]
pub struct RunConfig {
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Coefficient characteristic: 0, 2, 3, 101 or 65521.
    #[arg(long = "char", global = true, default_value_t = 2)]
    pub characteristic: u64,
    /// Extension degree k of the witness field F_{2^k}.
    #[arg(long, global = true, default_value_t = 20)]
    pub field_bits: u32,
    #[arg(long, global = true, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, global = true, default_value_t = 1000)]
    pub budget: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Faces forced into a basis, e.g. "1,2;3,4".
    #[arg(long, global = true)]
    pub must_include: Option<String>,
    /// Read the complex from this file instead of standard input.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum LsopChoice {
    Generic,
    Normalized,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModeArg {
    Sphere,
    Ball,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a complex and print its JSON.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Vertex count, dimension, f- and h-vectors.
    Inspect,
    /// Reduced Betti numbers and sphere/ball recognition.
    Homology,
    Moves {
        #[command(subcommand)]
        action: MovesAction,
    },
    /// Ψ of one monomial, e.g. `--monomial 1^2,3`.
    Psi {
        #[arg(long)]
        monomial: String,
        #[arg(long, value_enum, default_value_t = LsopChoice::Normalized)]
        lsop: LsopChoice,
        #[arg(long, value_enum, default_value_t = ModeArg::Sphere)]
        mode: ModeArg,
    },
    /// Exact pairing matrix between bases of degrees i and d - i.
    Pairing {
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value_t = LsopChoice::Normalized)]
        lsop: LsopChoice,
    },
    /// Face-monomial basis of one degree with its witness minor.
    Basis {
        #[arg(long)]
        degree: usize,
        #[arg(long, value_enum, default_value_t = LsopChoice::Generic)]
        lsop: LsopChoice,
    },
    Aniso {
        #[command(subcommand)]
        action: AnisoAction,
    },
    /// Hard Lefschetz ranks at a random specialization.
    Lefschetz,
    /// Replay one of the built-in experiment suites.
    Reproduce {
        #[arg(long, value_enum, default_value_t = Suite::Identities)]
        suite: Suite,
    },
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum GenKind {
    BoundarySimplex { d: usize },
    CrossPolytope { n: usize },
    Octahedron,
    Cyclic { d: usize, m: usize },
    Stacked { d: usize, k: usize, #[arg(default_value_t = 0)] seed: u64 },
    Rp2,
}

#[derive(Subcommand, Debug)]
pub enum MovesAction {
    /// All valid bistellar moves.
    List,
    /// Random walk; prints the move log and the final complex.
    Walk {
        #[arg(long, default_value_t = 5)]
        steps: usize,
        #[arg(long)]
        vertex_cap: Option<usize>,
    },
    /// Search for a move sequence down to the boundary of a simplex.
    Reduce,
}

#[derive(Subcommand, Debug)]
pub enum AnisoAction {
    /// Exact characteristic-2 certificate.
    Cert,
    /// Re-verify a stored certificate against the complex.
    Verify {
        #[arg(long)]
        cert: PathBuf,
    },
    /// Randomized search for isotropic elements.
    Probe,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Diffop,
    Degree,
    Suspension,
}

#[derive(Subcommand, Debug)]
pub enum CorpusAction {
    /// Runs every acceptance criterion and prints a summary.
    Run,
    /// Lists the corpus complexes.
    List,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
