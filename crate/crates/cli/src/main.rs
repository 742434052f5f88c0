//! `raag-hhg`: command-line front end for the raag-hhg library.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use raag_hhg::raag::DEFAULT_ENUMERATION_CAP;
use raag_hhg::Rational;

#[derive(Debug, Parser)]
#[command(name = "raag-hhg", version, about = "Short HHG coordinate data for right-angled Artin groups")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Defining graph as JSON: {"vertices": [...], "edges": [[u, v], ...]}.
    #[arg(long, global = true)]
    pub graph: Option<PathBuf>,
    /// Output file; standard output when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for every sampled statistic.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Maximum number of group elements any enumeration may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_CAP)]
    pub cap: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that the graph defines a valid experiment (no triangles or squares, connected).
    ValidateGraph,
    /// Canonical normal form of a word.
    NormalForm {
        #[arg(long)]
        word: String,
    },
    /// Size of the Cayley-graph ball B_r, sphere by sphere.
    Ball {
        #[arg(long)]
        r: usize,
        /// Also list the elements.
        #[arg(long)]
        list: bool,
    },
    /// The extension-graph ball around a support vertex.
    ExtBall {
        #[arg(long)]
        center: String,
        #[arg(long, default_value_t = 1)]
        conj_radius: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Evaluate a quasimorphism on words.
    QmEval {
        /// Quasimorphism, e.g. `exp:b`, `brooks:ac`, `lam:3:exp:b:brooks:ac`.
        #[arg(long)]
        chart: String,
        #[arg(long = "word", required = true)]
        words: Vec<String>,
    },
    /// τ-word length bounds (and the exact value by search) in a quasiline chart.
    QuasilineDist {
        #[arg(long)]
        vertex: String,
        /// Chart quasimorphism; defaults to the exponent sum of the vertex.
        #[arg(long)]
        chart: Option<String>,
        /// Cutoff C; defaults to 2D + 2|m(z)| + 1.
        #[arg(long)]
        cutoff: Option<Rational>,
        #[arg(long = "word", required = true)]
        words: Vec<String>,
        /// Radius of the finite τ alphabet used by the exact search.
        #[arg(long, default_value_t = 2)]
        letter_radius: usize,
        /// Longest τ-word the exact search tries.
        #[arg(long, default_value_t = 6)]
        search_cap: usize,
    },
    /// The blowup of an extension ball with exponent charts.
    BlowupExport {
        #[command(flatten)]
        blowup: BlowupArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Sampled checks of links, saturations, realisations, δ, strong BGI and consistency.
    AxiomCheck {
        #[command(flatten)]
        blowup: BlowupArgs,
        /// Radius of the group ball in which realisations are searched.
        #[arg(long, default_value_t = 6)]
        radius: usize,
        /// Elements of B_5 sampled for the consistency statistic.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Coordinatewise median of three elements under φ^λ charts.
    Median {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 1)]
        conj_radius: usize,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        #[arg(long)]
        z: String,
    },
    /// Median divergence of (1, z^k, g^l) between two φ^λ charts, as CSV.
    DivergeScan {
        #[command(flatten)]
        family: FamilyArgs,
        /// Nontrivial power of the vertex generator.
        #[arg(long, default_value = "b")]
        z: String,
        /// Element of the vertex centralizer on which psi does not vanish.
        #[arg(long, default_value = "a c")]
        g: String,
        /// Values of l: `a..b` (inclusive) or a comma list.
        #[arg(long, default_value = "1..50", value_parser = parse_range)]
        l: IntList,
        /// Explicit values of k; otherwise k = k-factor · l.
        #[arg(long, value_parser = parse_range)]
        k: Option<IntList>,
        #[arg(long, default_value_t = 2)]
        k_factor: i64,
    },
}

#[derive(Debug, Args)]
pub struct BlowupArgs {
    #[arg(long)]
    pub center: String,
    #[arg(long, default_value_t = 1)]
    pub conj_radius: usize,
    /// Squid points c·z^k with |coordinate| at most this.
    #[arg(long, default_value = "1")]
    pub window: Rational,
    /// Exponent-chart cutoff C.
    #[arg(long)]
    pub cutoff: Option<Rational>,
    /// Coarse level-set radius R.
    #[arg(long = "R", default_value_t = raag_hhg::blowup::DEFAULT_LEVEL_RADIUS)]
    pub level_radius: u64,
    /// Staple threshold T.
    #[arg(long = "T", default_value_t = raag_hhg::blowup::DEFAULT_STAPLE_THRESHOLD)]
    pub staple_threshold: u64,
}

/// The family φ^λ = φ_v + λ·ψ∘𝔭_v.
#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long, default_value = "b")]
    pub vertex: String,
    #[arg(long, default_value = "brooks:ac")]
    pub psi: String,
    #[arg(long, value_delimiter = ',', default_value = "1,3")]
    pub lambda: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntList(pub Vec<i64>);

/// `a..b` or `a..=b` (both inclusive), or a comma-separated list.
fn parse_range(text: &str) -> Result<IntList, String> {
    let int = |s: &str| s.trim().parse::<i64>().map_err(|e| format!("`{s}`: {e}"));
    if let Some((a, b)) = text.split_once("..") {
        let (a, b) = (int(a)?, int(b.trim_start_matches('='))?);
        if a > b {
            return Err(format!("empty range {text}"));
        }
        return Ok(IntList((a..=b).collect()));
    }
    text.split(',').map(int).collect::<Result<_, _>>().map(IntList)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
