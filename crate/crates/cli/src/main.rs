//! `ising-lab`: exact partition functions, Fisher-zero scans, block paths,
//! block polynomials and certified approximations from the command line.
//!
//! Exit status is 0 on success, 1 when a verification fails and 2 on bad
//! input or any other error.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use ising_lab::{Error, Limits};

/// Environment variable that replaces every enumeration cap.
pub const CAP_OVERRIDE_VAR: &str = "ISING_LAB_CAP_OVERRIDE";

#[derive(Parser)]
#[command(name = "ising-lab", version, about = "Ising partition functions, Fisher zeros and zero-free regions")]
struct Cli {
    /// Worker threads for parallel scans (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Output style for single reports
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Args, Clone, Debug)]
pub struct GraphArg {
    /// Graph file: edge list ("n" then "u v" lines) or graph6
    #[arg(long, short = 'g', conflicts_with = "g6")]
    pub graph: Option<PathBuf>,

    /// Inline graph6 string
    #[arg(long)]
    pub g6: Option<String>,
}

#[derive(Args, Clone, Debug)]
pub struct FamilyArgs {
    /// Family: all-connected, cycles, complete, random-regular, theta, or a
    /// full descriptor such as "cycles:n=12"
    #[arg(long)]
    pub family: String,

    /// Largest vertex count for bare family names
    #[arg(long)]
    pub n_max: Option<usize>,

    /// Degree bound (all-connected) or degree (random-regular)
    #[arg(long)]
    pub delta: Option<usize>,

    /// Seed for random families
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Number of random graphs
    #[arg(long, default_value_t = 1)]
    pub count: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Z_Ising(G; b) as an exact polynomial, optionally evaluated at --b
    Exact {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        b: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Z_even(G; x), or the conditional version with --given
    Even {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        x: Option<String>,
        /// Terminal vertices, comma separated
        #[arg(long)]
        given: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Checks Z_even(x) = (1-x)^|E| 2^-|V| Z_Ising((1+x)/(1-x))
    VerifyVdw {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        x: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Blocks, cut vertices and the block-cutpoint forest
    Blocks {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Block paths from --v to the terminal set --u
    BlockPaths {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        v: usize,
        /// Terminal vertices, comma separated
        #[arg(long)]
        u: String,
        /// Keep only even block paths
        #[arg(long)]
        even: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Both sides of the block-path decomposition of Z_even(G | U)
    VerifyDecomposition {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        v: usize,
        #[arg(long)]
        u: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Closed trails from --v, with the optional walk bound and double count
    Walks {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        v: usize,
        #[arg(long)]
        max_len: Option<usize>,
        /// Evaluate the bound at c/(Δ-1)
        #[arg(long, requires = "delta")]
        c: Option<f64>,
        #[arg(long)]
        delta: Option<usize>,
        /// Girth lower bound for the walk bound (default: the graph's girth)
        #[arg(long)]
        girth: Option<usize>,
        /// Terminal set for the even-block-path double count
        #[arg(long)]
        u: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Zero-free radii and disks for a degree bound
    Region {
        #[arg(long)]
        delta: usize,
        #[arg(long)]
        girth: Option<usize>,
        /// Report the girth threshold for this ε
        #[arg(long)]
        eps: Option<f64>,
        /// Check (1 - 1/sqrt(2(Δ-1)))^5 <= (Δ-1)/Δ for 2 <= Δ <= this value
        #[arg(long)]
        inequality_max: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fisher zeros of one graph or a scanned family
    Zeros {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long)]
        family: Option<String>,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        delta: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: usize,
        /// Disk radius in the x-plane (default n_Δ)
        #[arg(long)]
        radius: Option<f64>,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
        /// JSON lines, one record per graph
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Certified approximation of Z_even at --x or Z_Ising at --b
    Fptas {
        #[command(flatten)]
        graph: GraphArg,
        #[arg(long, conflicts_with = "x", required_unless_present = "x")]
        b: Option<String>,
        #[arg(long)]
        x: Option<String>,
        #[arg(long, default_value_t = 1e-6)]
        eps: f64,
        /// Zero-free radius: "auto" or a number
        #[arg(long, default_value = "auto")]
        radius: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Block polynomial of a 1-multiplicative invariant and its certificates
    BlockPoly {
        #[command(flatten)]
        graph: GraphArg,
        /// even:x=..., tutte:x=...,y=..., or hom:target=FILE
        #[arg(long)]
        invariant: String,
        /// Check the block-path certificate with this a ("0.5" or "a=0.5")
        #[arg(long)]
        certify: Option<String>,
        /// Also compute the connected-subgraph certificate
        #[arg(long, requires = "certify")]
        gk: bool,
        /// Random gluings for the 1-multiplicativity gate
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Writes a family as edge-list files plus manifest.json
    Corpus {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        out: PathBuf,
    },
}

fn limits_from_env() -> Result<Limits, Error> {
    match std::env::var(CAP_OVERRIDE_VAR) {
        Ok(text) => {
            let cap: usize = text
                .trim()
                .parse()
                .map_err(|_| Error::Argument(format!("{CAP_OVERRIDE_VAR} must be a positive integer, got {text:?}")))?;
            if cap == 0 {
                return Err(Error::Argument(format!("{CAP_OVERRIDE_VAR} must be positive")));
            }
            Ok(Limits::uniform(cap))
        }
        Err(_) => Ok(Limits::default()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool, Error> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(Error::Argument("--jobs must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| Error::Argument(e.to_string()))?;
    }
    let limits = limits_from_env()?;
    let fmt = cli.format;
    use commands as c;
    match cli.command {
        Command::Exact { graph, b, out } => c::exact(&graph, b.as_deref(), &limits)?.emit(fmt, out.as_deref()),
        Command::Even { graph, x, given, out } => {
            c::even(&graph, x.as_deref(), given.as_deref(), &limits)?.emit(fmt, out.as_deref())
        }
        Command::VerifyVdw { graph, x, tol, out } => c::verify_vdw(&graph, &x, tol, &limits)?.emit(fmt, out.as_deref()),
        Command::Blocks { graph, out } => c::blocks(&graph)?.emit(fmt, out.as_deref()),
        Command::BlockPaths { graph, v, u, even, out } => {
            c::block_paths(&graph, v, &u, even, &limits)?.emit(fmt, out.as_deref())
        }
        Command::VerifyDecomposition { graph, v, u, out } => {
            c::verify_decomposition(&graph, v, &u, &limits)?.emit(fmt, out.as_deref())
        }
        Command::Walks {
            graph,
            v,
            max_len,
            c: cval,
            delta,
            girth,
            u,
            out,
        } => c::walks(&graph, v, max_len, cval, delta, girth, u.as_deref(), &limits)?.emit(fmt, out.as_deref()),
        Command::Region {
            delta,
            girth,
            eps,
            inequality_max,
            out,
        } => c::region(delta, girth, eps, inequality_max)?.emit(fmt, out.as_deref()),
        Command::Zeros {
            graph,
            family,
            n_max,
            delta,
            seed,
            count,
            radius,
            tol,
            out,
            svg,
        } => {
            let family = family.map(|f| FamilyArgs {
                family: f,
                n_max,
                delta,
                seed,
                count,
            });
            c::zeros(&graph, family.as_ref(), delta, radius, tol, out.as_deref(), svg.as_deref(), &limits, fmt)
        }
        Command::Fptas {
            graph,
            b,
            x,
            eps,
            radius,
            out,
        } => c::fptas(&graph, b.as_deref(), x.as_deref(), eps, &radius, &limits)?.emit(fmt, out.as_deref()),
        Command::BlockPoly {
            graph,
            invariant,
            certify,
            gk,
            trials,
            seed,
            out,
        } => c::block_poly(&graph, &invariant, certify.as_deref(), gk, trials, seed, &limits)?.emit(fmt, out.as_deref()),
        Command::Corpus { family, out } => c::corpus(&family, &out),
    }
}
