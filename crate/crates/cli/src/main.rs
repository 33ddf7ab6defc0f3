mod class_spec;
mod commands;
mod output;
mod svg;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use commands::{Outcome, UsageError};

#[derive(Parser, Debug)]
#[command(name = "kuwalls", version, about = "Exact wall, lattice and root computations for index-two Fano threefolds")]
struct Cli {
    /// Print the JSON output document instead of the text report.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Euler form on the numerical Kuznetsov lattice, computed two ways.
    Euler {
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
    },
    /// Walls and destabilizing classes along a vertical line.
    Walls(WallsArgs),
    /// Roots and lines on a del Pezzo surface.
    Roots(RootsArgs),
    /// Run every numerical consistency check.
    Check(CheckArgs),
}

#[derive(Args, Debug)]
pub struct WallsArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub degree: i64,
    /// `w`, `v`, `O`, `O(n)`, `ku:a,b`, a catalog name, or `r,c1,c2[,c3]`.
    #[arg(long, allow_hyphen_values = true)]
    pub class: String,
    #[arg(long, default_value = "-1/2", allow_hyphen_values = true)]
    pub beta: String,
    /// Denominators of the twisted Ch1 and Ch2 lattices, as `a,b`.
    /// Defaults to `2,lcm(8,d)`.
    #[arg(long)]
    pub denoms: Option<String>,
    #[arg(long, default_value_t = 5)]
    pub x_bound: i128,
    /// Bound on |z| when x = 0 (defaults to max(x-bound, 1)).
    #[arg(long)]
    pub z_bound: Option<i128>,
    /// Same-sign rule: `auto` applies it to rank-zero targets only.
    #[arg(long, value_parser = ["auto", "on", "off"], default_value = "auto")]
    pub same_sign: String,
    /// Also report quotient classes (drop the Ch0 >= 0 rule).
    #[arg(long)]
    pub allow_quotients: bool,
    /// Keep only candidates with integral untwisted Chern classes.
    #[arg(long)]
    pub integral_chern: bool,
    /// Write a wall diagram to this path.
    #[arg(long)]
    pub svg: Option<std::path::PathBuf>,
}

#[derive(Args, Debug)]
pub struct RootsArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub dp: i64,
    /// List the involution L -> -K - L on lines.
    #[arg(long)]
    pub pairs: bool,
    /// Write every root as a difference of two disjoint lines.
    #[arg(long)]
    pub as_line_diff: bool,
    /// Test D - 2K against the nef cone for every root D (degree 2 only).
    #[arg(long)]
    pub nef_check: bool,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct CheckArgs {
    #[arg(long)]
    pub all: bool,
    #[arg(long, allow_hyphen_values = true)]
    pub degree: Option<i64>,
}

fn configure_threads() -> Result<(), UsageError> {
    let Ok(raw) = std::env::var("KUWALLS_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| UsageError(format!("KUWALLS_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| UsageError(e.to_string()))
}

fn run(cli: &Cli) -> Result<Outcome, UsageError> {
    configure_threads()?;
    match &cli.command {
        Command::Euler { degree } => commands::euler(*degree),
        Command::Walls(args) => commands::walls(args),
        Command::Roots(args) => commands::roots(args),
        Command::Check(args) => commands::check(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            if cli.json {
                print!("{}", outcome.json);
            } else {
                print!("{}", outcome.text);
            }
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {}", e.0);
            ExitCode::from(2)
        }
    }
}
