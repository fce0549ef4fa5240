//! `spin-wigner`: spherical Wigner functions and negativity from the command line.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::commands::Failure;

#[derive(Parser, Debug)]
#[command(name = "spin-wigner", version, about = "Spherical Wigner functions and Wigner negativity of spin-j states")]
#[command(allow_negative_numbers = true)]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Absolute tolerance on negativities.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,

    /// Worker threads (default: all cores). Never changes output bytes.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    /// Output format (each command has its own default).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write output to PATH instead of stdout.
    #[arg(short = 'o', long = "output", global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Kernel eigenvalues for one spin, as `m,eigenvalue` rows with m ascending.
    KernelSpectrum {
        /// Spin, e.g. `3/2`, `1.5` or `4`.
        j: String,
        /// Comma-separated signs eps_0..eps_2j (eps_0 must be +1).
        #[arg(long)]
        epsilon: Option<String>,
    },
    /// Wigner negativity of a state, e.g. `dicke:6,0`, `ghz:3`, `bloch:0,0,0.5`.
    Negativity {
        /// State spec: dicke:j,m | coherent:j,theta,phi | cat:j,vartheta,varphi |
        /// ghz:j | noon:j,varphi | bloch:rx,ry,rz | mixed:j
        state: String,
    },
    /// Parameter sweeps that produce figure data.
    Sweep {
        #[command(subcommand)]
        kind: SweepKind,
    },
    /// Wigner function sampled on Gauss-Legendre (cos theta) x uniform (phi) nodes.
    Grid {
        state: String,
        #[arg(long, default_value_t = 200)]
        n_theta: usize,
        /// Defaults to max(8j+32, 64).
        #[arg(long)]
        n_phi: Option<usize>,
    },
    /// Distinct real roots in cos(theta) of a Dicke-state Wigner function.
    Roots { j: String, m: String },
    /// Cat-state negativity bound next to the exact value.
    CatBound {
        j: String,
        /// Superposition angle; accepts `pi` multiples such as `0.5pi`.
        #[arg(long, default_value = "0.5pi")]
        vartheta: String,
    },
    /// Negativity of the planar number state |n>.
    PlanarNumber { n: u32 },
    /// Run the acceptance battery and report pass/fail per criterion.
    PaperSuite {
        /// Only these criterion numbers (comma-separated).
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
    },
}

#[derive(Subcommand, Debug)]
enum SweepKind {
    /// `m,delta` for every Dicke state of one spin.
    DickeBasis {
        #[arg(long)]
        j: String,
    },
    /// `j,delta` for |j, j-n> from j = n/2 up to j-max in unit steps, then the planar limit.
    Sequence {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        j_max: String,
    },
    /// `j,delta` for the coherent state |j,j>, j = 1/2 .. j-max.
    CoherentDecay {
        #[arg(long)]
        j_max: String,
    },
    /// `j,bound,exact` for cat states, j = 1/2 .. j-max.
    CatBound {
        #[arg(long)]
        j_max: String,
        #[arg(long, default_value = "0.5pi")]
        vartheta: String,
    },
    /// `j,min,max` kernel bounds, j = 1/2 .. j-max.
    KernelSpectrum {
        #[arg(long)]
        j_max: String,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let g = cli.global;
    if !(g.tol.is_finite() && g.tol >= spin_wigner::negativity::MIN_TOL) {
        return Err(Failure::validation(format!(
            "--tol must be at least {:e}",
            spin_wigner::negativity::MIN_TOL
        )));
    }
    if let Some(n) = g.threads {
        if n == 0 {
            return Err(Failure::validation("--threads must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::validation(format!("cannot configure thread pool: {e}")))?;
    }
    match cli.command {
        Command::KernelSpectrum { j, epsilon } => commands::kernel_spectrum(&g, &j, epsilon.as_deref()),
        Command::Negativity { state } => commands::negativity(&g, &state),
        Command::Sweep { kind } => match kind {
            SweepKind::DickeBasis { j } => commands::sweep_dicke_basis(&g, &j),
            SweepKind::Sequence { n, j_max } => commands::sweep_sequence(&g, n, &j_max),
            SweepKind::CoherentDecay { j_max } => commands::sweep_coherent_decay(&g, &j_max),
            SweepKind::CatBound { j_max, vartheta } => commands::sweep_cat_bound(&g, &j_max, &vartheta),
            SweepKind::KernelSpectrum { j_max } => commands::sweep_kernel_bounds(&g, &j_max),
        },
        Command::Grid { state, n_theta, n_phi } => commands::grid(&g, &state, n_theta, n_phi),
        Command::Roots { j, m } => commands::roots(&g, &j, &m),
        Command::CatBound { j, vartheta } => commands::cat_bound(&g, &j, &vartheta),
        Command::PlanarNumber { n } => commands::planar_number(&g, n),
        Command::PaperSuite { only } => commands::paper_suite(&g, &only),
    }
}
