//! `pwgl`: validate, compose and analyse piecewise-integer-linear torus
//! homeomorphisms, toral automorphisms and piecewise-Möbius circle maps.
//!
//! Exit codes: 0 success or valid, 1 validation failure (report printed),
//! 2 usage or structural error.

mod commands;
mod load;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(name = "pwgl", version, about = "Exact tools for piecewise-integer-linear torus homeomorphisms")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Seed for randomized corpus generation.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check cover, continuity, orientation and image tiling of a map.
    Validate { map: String },
    /// Write the composition f ∘ g.
    Compose {
        f: String,
        g: String,
        #[arg(short, long)]
        output: String,
    },
    /// Write the inverse map.
    Invert {
        f: String,
        #[arg(short, long)]
        output: String,
    },
    /// Evaluate a map at a point, e.g. `--point 3/4,0`.
    Apply {
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Induced action on first homology.
    Homology { f: String },
    /// Permutation of the q-torsion points.
    TorsionPerm {
        f: String,
        #[arg(short)]
        q: u64,
    },
    /// Whether two maps agree everywhere on the torus.
    Equals { f: String, g: String },
    /// Fixed set of a toral element (matrix literal or element file).
    FixedSet { element: String },
    /// Dynamical type and fixed-set summary of a toral element.
    Classify { element: String },
    /// Small-fixed-set and hyperbolicity checks on a word ball.
    Certificate {
        #[arg(required = true)]
        gens: Vec<String>,
        #[arg(short = 'L', default_value_t = 3)]
        radius: usize,
    },
    /// The set where a map agrees with a given toral element.
    Tgamma { f: String, gamma: String },
    /// Express every piece map as a short word in the generators.
    InnerCert {
        f: String,
        #[arg(required = true)]
        gens: Vec<String>,
        #[arg(short = 'L', default_value_t = 4)]
        radius: usize,
    },
    /// Germ (tangent-cone sectors) of a map at a point.
    Germ {
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Enumerate the word ball of piecewise generators.
    Ball {
        #[arg(required = true)]
        gens: Vec<String>,
        #[arg(short = 'L', default_value_t = 2)]
        radius: usize,
        /// Maximum pieces per element.
        #[arg(long, default_value_t = 10_000)]
        piece_budget: usize,
    },
    /// Coincidences between words of bounded length.
    Relations {
        #[arg(required = true)]
        gens: Vec<String>,
        #[arg(short = 'L', default_value_t = 2)]
        radius: usize,
    },
    /// Validate a piecewise-Möbius circle map.
    CircleValidate { map: String },
    /// Order of contact of the two arcs meeting at a breakpoint.
    CircleSmoothness {
        map: String,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    /// Write the Adams, identity and circle fixtures.
    Fixtures {
        #[arg(long, default_value = ".")]
        dir: String,
        /// Also write this many random SL(2,Z) elements, drawn with `--seed`.
        #[arg(long, default_value_t = 0)]
        random: usize,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&out.json).expect("serializable")),
                Format::Text => println!("{}", out.text.trim_end()),
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
