//! `ultralogic-lab`: every library operation behind one binary.
//!
//! Exit status is 0 on success, 1 on a domain error, 2 on a usage error.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::RunConfig;

#[derive(Debug, Parser)]
#[command(name = "ultralogic-lab", version, about = "Finitary deduction, orthomodular checks, infinitesimal gluing and subparticle encoding")]
pub struct Cli {
    /// TOML run configuration; overrides ULTRALOGIC_CONFIG.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// One JSON record per line instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for the property suites.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Decimal precision for π-bearing coefficients.
    #[arg(long, global = true)]
    pub precision: Option<u32>,
    /// Truncation window K.
    #[arg(long, global = true)]
    pub truncation: Option<u32>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Word codes, frozen segments, paradigms, templates, choice sets.
    #[command(subcommand)]
    Encode(EncodeCmd),
    /// Closure, membership and consequence-operator checks.
    #[command(subcommand)]
    Deduce(DeduceCmd),
    /// Q and d′ for the ultraword over the given atoms.
    Characterize(CharacterizeArgs),
    /// Orthomodularity and schema validity under the Mittelstaedt conditional.
    Omcheck(OmcheckArgs),
    /// Series arithmetic, standard parts, lifting, hypersums.
    #[command(subcommand)]
    Hyper(HyperCmd),
    /// Glued step functions.
    #[command(subcommand)]
    Glue(GlueCmd),
    /// `f/m` with `0 <= r − f/m < 1/m`.
    Approx(ApproxArgs),
    /// Subparticle representations and identifiers.
    #[command(subcommand)]
    Subp(SubpCmd),
    /// Doubling-map coin flips.
    Coin(CoinArgs),
    /// Acceptance criteria.
    Suite(SuiteArgs),
}

#[derive(Debug, Subcommand)]
pub enum EncodeCmd {
    /// Symbol codes of a word.
    Word { text: String },
    /// Text of a code sequence; codes outside the alphabet render as □.
    Decode { codes: Vec<u64> },
    /// Frozen segment `body + W_i`.
    Segment {
        #[arg(long)]
        body: String,
        #[arg(long)]
        index: u64,
        /// Report membership in the totality of this index.
        #[arg(long)]
        totality: Option<u64>,
    },
    /// Developmental paradigm from a JSON object `{index: body}`.
    Paradigm {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
    },
    /// Fill a template's `{n}` / `{i}` slots with a natural or a series.
    Instantiate {
        /// Template text, or `kinetic` / `total`.
        #[arg(long)]
        template: String,
        #[arg(long, allow_hyphen_values = true)]
        value: String,
    },
    /// Choice sets over comma-separated samples.
    Choices {
        samples: Vec<String>,
        /// Exactly this many from a single sample.
        #[arg(long)]
        k: Option<usize>,
    },
}

#[derive(Debug, Subcommand)]
pub enum DeduceCmd {
    /// S-closure of the hypotheses.
    Closure { gamma: Vec<String> },
    /// Whether `query ∈ S(Γ)`.
    Member {
        #[arg(long)]
        query: String,
        gamma: Vec<String>,
    },
    /// Extensive, idempotent, monotone, finitary over all subsets of the universe.
    Axioms { universe: Vec<String> },
    /// Monotone-image check over all subsets of the universe.
    Continuity { universe: Vec<String> },
    /// Soundness against truth tables and a witness outside S(Γ).
    Classical { gamma: Vec<String> },
    /// Proof of every atom from an ultraword, in order.
    Unfold { formula: String },
    /// Ultraword joining the given witness sentences.
    Witness { witnesses: Vec<String> },
}

#[derive(Debug, Args)]
pub struct CharacterizeArgs {
    #[arg(required = true)]
    pub atoms: Vec<String>,
    /// Also print the unfolding proof.
    #[arg(long)]
    pub trace: bool,
}

#[derive(Debug, Args)]
pub struct OmcheckArgs {
    /// Built-in lattice: mo2, boolean2, boolean4, boolean8.
    #[arg(long, conflicts_with = "file")]
    pub lattice: Option<String>,
    /// Lattice tables as JSON.
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Schemata to check (default all).
    #[arg(long)]
    pub schema: Vec<u8>,
    /// Print `i₁(a, b)`.
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    pub conditional: Option<Vec<String>>,
}

#[derive(Debug, Subcommand)]
pub enum HyperCmd {
    /// Normal form, class and standard part.
    Show {
        #[arg(allow_hyphen_values = true)]
        x: String,
    },
    /// `x op y` for op in + - * / cmp monad.
    Calc {
        #[arg(allow_hyphen_values = true)]
        x: String,
        op: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// `x^n`.
    Pow {
        #[arg(allow_hyphen_values = true)]
        x: String,
        n: u32,
    },
    /// Lift sin, cos or exp to a limited argument.
    Lift {
        func: String,
        #[arg(allow_hyphen_values = true)]
        x: String,
        /// Read x as a multiple of π/2.
        #[arg(long)]
        half_pi: bool,
    },
    Approx(ApproxArgs),
    /// `λ_r = r·Ω`.
    Hypernat {
        #[arg(long)]
        r: String,
    },
    /// Constant-summand hypersum `Σ_{n=1}^{count} summand`.
    Hypersum {
        #[arg(long, allow_hyphen_values = true)]
        count: String,
        #[arg(long, allow_hyphen_values = true)]
        summand: String,
    },
}

#[derive(Debug, Args)]
pub struct ApproxArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub r: String,
    #[arg(long)]
    pub m: String,
}

#[derive(Debug, Args)]
pub struct GlueSource {
    /// JSON `{partition, values, delta}`; the neutron step with δ = ε if absent.
    #[arg(long)]
    pub spec: Option<PathBuf>,
    /// Overrides the file's δ: a rational or a series such as `e`.
    #[arg(long)]
    pub delta: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum GlueCmd {
    /// `G(x)`.
    Eval {
        #[command(flatten)]
        src: GlueSource,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// `G⁽ᵐ⁾(x)`.
    Deriv {
        #[command(flatten)]
        src: GlueSource,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// `st G(x)` at a standard point.
    St {
        #[command(flatten)]
        src: GlueSource,
        #[arg(long, allow_hyphen_values = true)]
        x: String,
    },
    /// Range `[c, d]` with the transition certificate.
    Range {
        #[command(flatten)]
        src: GlueSource,
    },
    /// `(x, G, G′)` on a uniform grid.
    Sample {
        #[command(flatten)]
        src: GlueSource,
        #[arg(long, default_value_t = 20)]
        points: u32,
        #[arg(long)]
        emit_csv: bool,
    },
    /// Increments over a special partition refined to avoid given points.
    Telescope {
        #[command(flatten)]
        src: GlueSource,
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
        #[arg(long)]
        mesh: String,
        /// Comma-separated points the selection must avoid.
        #[arg(long, value_delimiter = ',')]
        avoid: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum SubpCmd {
    /// Ultrasubparticle named by one prime.
    New {
        #[arg(long)]
        name: u64,
        #[arg(long)]
        dims: usize,
    },
    /// Combined intermediates described by an entity file.
    Build { file: PathBuf },
    /// Coordinatewise sum of several entity files.
    Combine {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Standard coordinates, optionally after infinitesimal perturbations.
    Project {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        perturb: Vec<String>,
        #[arg(long, default_value_t = 3)]
        coord: usize,
    },
    /// Scale coordinates `k` by `λ_k` given as `k=series`.
    Diagonal {
        file: PathBuf,
        #[arg(long, required = true)]
        lambda: Vec<String>,
    },
    /// Factor a toy identifier.
    Decode { value: String },
    /// `½·m·v²`.
    Ke {
        #[arg(long, allow_hyphen_values = true)]
        m: String,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
    },
    Coin(CoinArgs),
}

#[derive(Debug, Args)]
pub struct CoinArgs {
    #[arg(long)]
    pub x: String,
    #[arg(long, default_value_t = 16)]
    pub count: usize,
    /// Frequency and runs statistics instead of the flips.
    #[arg(long)]
    pub stats: bool,
}

#[derive(Debug, Args)]
pub struct SuiteArgs {
    /// Run every criterion (the default).
    #[arg(long)]
    pub all: bool,
    /// Run only these criteria.
    #[arg(long)]
    pub criterion: Vec<u8>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let mut cfg = match RunConfig::resolve(cli.config.as_deref()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(p) = cli.precision {
        cfg.precision = p;
    }
    if let Some(k) = cli.truncation {
        cfg.truncation = k;
    }
    if let Err(e) = cfg.validate() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match commands::dispatch(&cli.command, &cfg) {
        Ok(out) => {
            for r in &out.records {
                if cli.json {
                    println!("{}", r.json);
                } else {
                    println!("{}", r.text);
                }
            }
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
