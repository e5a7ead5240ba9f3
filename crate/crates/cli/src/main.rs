mod cache;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rinf_algebra::lie::HallOrder;
use rinf_algebra::Error;

#[derive(Parser, Debug)]
#[command(name = "rinf", version, about = "Twisted conjugacy in nilpotent quotients of surface groups")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,

    #[command(flatten)]
    run: RunArgs,
}

/// Options shared by every subcommand.
#[derive(Args, Debug, Clone)]
pub struct RunArgs {
    /// Surface genus (orientable S_g or non-orientable N_g).
    #[arg(long, global = true)]
    pub genus: Option<usize>,

    #[arg(long, global = true, conflicts_with = "nonorientable")]
    pub orientable: bool,

    #[arg(long, global = true)]
    pub nonorientable: bool,

    /// Nilpotency class bound.
    #[arg(long, global = true)]
    pub class: Option<usize>,

    /// Number of sampled admissible matrices.
    #[arg(long, global = true, default_value_t = 16)]
    pub samples: usize,

    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Transvections per sampled matrix.
    #[arg(long, global = true, default_value_t = 12)]
    pub length: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[arg(long, global = true, value_enum, default_value_t = Order::Standard)]
    pub hall_order: Order,

    /// Directory for cached structure tables.
    #[arg(long, global = true)]
    pub cache_dir: Option<PathBuf>,

    /// Cap on the witness parameter m.
    #[arg(long, global = true)]
    pub max_m: Option<BigInt>,

    /// Cap on finite group orders enumerated by brute force.
    #[arg(long, global = true, default_value_t = rinf_algebra::oracle::DEFAULT_MAX_ORDER)]
    pub max_order: u64,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Order {
    Standard,
    Reversed,
}

impl From<Order> for HallOrder {
    fn from(o: Order) -> Self {
        match o {
            Order::Standard => HallOrder::Standard,
            Order::Reversed => HallOrder::Reversed,
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    Plus,
    Minus,
    /// Not admissible.
    None,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// R-infinity nilpotency degree of a surface group.
    Degree,
    /// Eigenvalue-one report for one automorphism, or re-verification of a
    /// JSON certificate written by this tool.
    Check {
        /// Matrix file: `rows cols` header and rows, or JSON.
        #[arg(long, required_unless_present = "certificate", conflicts_with = "certificate")]
        matrix: Option<PathBuf>,
        #[arg(long)]
        certificate: Option<PathBuf>,
    },
    /// Witness automorphism for the surface.
    Witness,
    /// Free Lie ring dimensions per degree.
    LieDims {
        #[arg(long)]
        rank: usize,
    },
    /// Solve `x^n y^f = (x z)^n` in the free nilpotent group.
    Padding {
        #[arg(long, default_value_t = 2)]
        rank: usize,
        #[arg(long, default_value_t = 2)]
        n: u32,
    },
    /// Eigenvalue cross-check on random matrices, optionally with
    /// brute-force twisted class counts modulo `--modulus`.
    Crosscheck {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        modulus: Option<u64>,
    },
    /// Random (non-)admissible matrices.
    Sample {
        #[arg(long, value_enum)]
        sign: Option<SignArg>,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ResourceLimit(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli.command, &cli.run) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
