//! `negdim` command-line front end.

mod commands;
mod error;
mod input;
mod output;

use clap::error::ErrorKind;
use clap::{CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use error::{EXIT_INVALID_INPUT, EXIT_UNKNOWN_COMMAND};
use negdim::{Dimension, ToleranceConfig};
use output::{collect_flags, Sink};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "negdim", version, about = "Analytic continuation in dimension: tables, integrals, propagators, diffusion, cosmology")]
struct Cli {
    /// Write the artifact here (plus `<out>.manifest.json`) instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Relative tolerance.
    #[arg(long, global = true, default_value_t = 1e-11)]
    rel_tol: f64,
    /// Absolute tolerance.
    #[arg(long, global = true, default_value_t = 1e-14)]
    abs_tol: f64,
    #[command(subcommand)]
    command: Command,
}

fn dim(s: &str) -> Result<Dimension, String> {
    input::parse_dimension(s)
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Partial sums of A1(D) against the exact value and the published table.
    Table1 {
        #[arg(long, default_value_t = 2)]
        order: usize,
    },
    /// Scalar and vector one-propagator integrals.
    Tadpole {
        #[arg(long, value_parser = dim)]
        dim: Dimension,
        #[arg(long)]
        n: f64,
        #[arg(long, default_value_t = 1.0)]
        m2: f64,
        #[arg(long, default_value_t = 0.0)]
        q2: f64,
    },
    /// Two-propagator bubble by the NDIM engine and the Feynman-parameter oracle.
    Bubble {
        #[arg(long, value_parser = dim)]
        dim: Dimension,
        #[arg(long, default_value_t = 1.0)]
        v1: f64,
        #[arg(long, default_value_t = 1.0)]
        v2: f64,
        #[arg(long, default_value_t = 1.0)]
        q2: f64,
        #[arg(long = "m1-2", default_value_t = 0.0)]
        m1_2: f64,
        #[arg(long = "m2-2", default_value_t = 0.0)]
        m2_2: f64,
    },
    /// Constraint system and hypergeometric descriptors of a loop integral, as JSON.
    NdimSolve {
        /// JSON file with powers, masses2, scales2, dimension.
        #[arg(long, conflicts_with_all = ["dim", "powers", "masses2", "scales2"])]
        input: Option<PathBuf>,
        #[arg(long, value_parser = dim)]
        dim: Option<Dimension>,
        /// Comma-separated propagator powers.
        #[arg(long)]
        powers: Option<String>,
        /// Comma-separated squared masses.
        #[arg(long, default_value = "")]
        masses2: String,
        /// Comma-separated squared momentum scales.
        #[arg(long, default_value = "")]
        scales2: String,
    },
    /// Position-space propagator on a radial grid.
    Schwinger {
        #[arg(long, value_parser = dim)]
        dim: Dimension,
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
        /// Embedding dimension D_t; requires D_f <= D_t.
        #[arg(long)]
        dt: Option<u32>,
        #[arg(long, default_value_t = 0.1)]
        r_min: f64,
        #[arg(long, default_value_t = 5.0)]
        r_max: f64,
        #[arg(long, default_value_t = 50)]
        points: usize,
        /// Add a column from direct oscillatory quadrature.
        #[arg(long)]
        quadrature: bool,
    },
    /// Multifractal propagators on a radial grid.
    Multifractal {
        #[arg(long)]
        dt: u32,
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 1.0)]
        mass: f64,
        #[arg(long, default_value_t = 0.1)]
        r_min: f64,
        #[arg(long, default_value_t = 5.0)]
        r_max: f64,
        #[arg(long, default_value_t = 50)]
        points: usize,
    },
    /// Spectral dimension D+(s), D-(s) on a logarithmic grid in s.
    SpectralFlow {
        #[arg(long)]
        df: f64,
        #[arg(long)]
        l: f64,
        /// Grid start in units of l^2, as a power of ten.
        #[arg(long, default_value_t = -3)]
        from_decade: i32,
        /// Grid end in units of l^2, as a power of ten.
        #[arg(long, default_value_t = 4)]
        to_decade: i32,
        #[arg(long, default_value_t = 10)]
        per_decade: u32,
    },
    /// Monte Carlo box dimension over the scale ladder.
    Boxdim {
        #[arg(long, default_value_t = 1.0)]
        window: f64,
        #[arg(long, default_value_t = 16.0)]
        scale: f64,
        #[arg(long, default_value_t = 1_000_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// FRW trajectory.
    CosmoRun {
        /// JSON parameter file; omitted fields take the flat dust defaults.
        #[arg(long)]
        params: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = VariantArg::Standard)]
        variant: VariantArg,
        #[arg(long, default_value_t = 1.0)]
        t0: f64,
        #[arg(long, default_value_t = 1.0)]
        a0: f64,
        #[arg(long, default_value_t = 1.0)]
        rho0: f64,
        #[arg(long, default_value_t = 0.0)]
        phi0: f64,
        #[arg(long, default_value_t = 0.0)]
        phi_dot0: f64,
        #[arg(long, default_value_t = 10.0)]
        t_end: f64,
        #[arg(long, default_value_t = 1e-3)]
        dt: f64,
        /// Keep every k-th sample.
        #[arg(long, default_value_t = 1)]
        every: usize,
    },
    /// Closed-form Weyl integrals.
    Weyl {
        #[arg(long, value_enum)]
        kind: WeylArg,
        #[arg(long, value_parser = dim)]
        dim: Dimension,
        #[arg(long, default_value_t = 1.0)]
        n: f64,
        #[arg(long, default_value_t = 1.0)]
        l: f64,
        #[arg(long, default_value_t = 1.0)]
        delta: f64,
        #[arg(long, default_value_t = 0.0)]
        gamma: f64,
    },
    /// Subtracted quadrature of 1/(p^2+1) against the closed-form tadpole.
    GcCheck {
        /// Taylor subtractions l.
        #[arg(long, default_value_t = 0)]
        subtractions: u32,
        #[arg(long, default_value_t = 1.0)]
        split: f64,
        #[arg(long, default_value_t = -1.95)]
        d_min: f64,
        #[arg(long, default_value_t = -0.05)]
        d_max: f64,
        #[arg(long, default_value_t = 10)]
        points: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum VariantArg {
    Standard,
    NegativeFractal,
    FlatNeg,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum WeylArg {
    Power,
    Gauss,
    GaussDrift,
}

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    std::process::exit(run(&argv));
}

fn run(argv: &[String]) -> i32 {
    let parsed = Cli::command()
        .mut_subcommands(|c| c.allow_negative_numbers(true))
        .try_get_matches_from(argv)
        .and_then(|m| Ok((Cli::from_arg_matches(&m)?, m.subcommand_name().unwrap_or_default().to_string())));
    let (cli, name) = match parsed {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                ErrorKind::InvalidSubcommand
                | ErrorKind::MissingSubcommand
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => EXIT_UNKNOWN_COMMAND,
                _ => EXIT_INVALID_INPUT,
            };
            let _ = e.print();
            return code;
        }
    };
    let after = argv.iter().position(|a| *a == name).map(|i| &argv[i + 1..]).unwrap_or(&[]);
    let mut flags = collect_flags(after);
    flags.remove("out");
    let tol = ToleranceConfig { rel_tol: cli.rel_tol, abs_tol: cli.abs_tol, ..ToleranceConfig::default() };
    let seed = match &cli.command {
        Command::Boxdim { seed, .. } => *seed,
        _ => 0,
    };
    let sink = Sink { out: cli.out.clone(), command: name, flags, seed, tol };
    match commands::dispatch(cli.command, &sink) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

impl From<VariantArg> for negdim::cosmo::Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Standard => negdim::cosmo::Variant::Standard,
            VariantArg::NegativeFractal => negdim::cosmo::Variant::NegativeFractal,
            VariantArg::FlatNeg => negdim::cosmo::Variant::FlatNeg,
        }
    }
}
