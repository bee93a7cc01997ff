//! `spinchar`: batch front end for spin character tables, class data,
//! bar cores and quotients, block reports and perfect isometry
//! verification.
//!
//! Every command writes one document to stdout. Exit codes:
//! `0` success, `1` internal error, `2` invalid parameters, `3` a resource
//! cap was exceeded, `4` a verification failed (the report is still
//! printed).

mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

/// Output document format.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Parser)]
#[command(name = "spinchar", version, about = "Spin characters of double covers and perfect isometries")]
pub struct Cli {
    /// Output format (csv is available for `classes` and `chartable`).
    #[arg(long, value_enum, global = true, default_value = "json")]
    pub format: Format,
    /// Refuse groups of larger order.
    #[arg(long, global = true)]
    pub max_order: Option<u128>,
    /// Refuse tables whose values need a larger cyclotomic conductor.
    #[arg(long, global = true)]
    pub max_conductor: Option<u32>,
    /// Add a decimal rendering next to every exact value.
    #[arg(long, global = true)]
    pub decimal: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Conjugacy classes of a covering group.
    Classes {
        #[command(subcommand)]
        group: GroupArg,
    },
    /// Spin character table of a covering group.
    Chartable {
        #[command(subcommand)]
        group: GroupArg,
    },
    /// p-bar core of a strict partition.
    Barcore(PartitionArgs),
    /// p-bar core, quotient, weight and sign of a strict partition.
    Barquot(PartitionArgs),
    /// q-core, quotient, weight and sign of a partition.
    Core {
        #[arg(long)]
        q: usize,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// The p-blocks of spin characters of S̃_n or Ã_n.
    Blocks {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        #[arg(long, default_value = "sym")]
        side: String,
    },
    /// Build the isometry of a block and verify the Broué conditions.
    VerifyIsometry {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        /// The p-bar core, e.g. "" or "2,1".
        #[arg(long, default_value = "")]
        core: String,
        #[arg(long, default_value = "sym")]
        side: String,
        #[arg(long, default_value = "-", allow_hyphen_values = true)]
        cover: String,
        /// Compose with the Brauer correspondent S̃_{n−pw}·Ñ_p^w S̃_w.
        #[arg(long)]
        brauer: bool,
        /// Omit the wall-clock runtime so the output is byte-reproducible.
        #[arg(long)]
        no_timing: bool,
        /// Flip the sign of map entry K before verifying (mutation check).
        #[arg(long, value_name = "K")]
        flip_sign: Option<usize>,
    },
    /// Quick end-to-end consistency checks.
    Selftest,
}

#[derive(Debug, Args)]
pub struct PartitionArgs {
    #[arg(long)]
    pub p: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
}

#[derive(Debug, Subcommand)]
pub enum GroupArg {
    /// S̃_n.
    Sym(SymArgs),
    /// Ã_n.
    Alt(SymArgs),
    /// Ñ_p^t S̃_t (or its even subgroup with --alt).
    Wreath {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value = "-", allow_hyphen_values = true)]
        cover: String,
        /// The even subgroup Ñ_p^t S̃_t ∩ Ã_{pt}.
        #[arg(long)]
        alt: bool,
        /// Also compute the table by explicit matrices and report differences.
        #[arg(long)]
        oracle: bool,
    },
}

#[derive(Debug, Args)]
pub struct SymArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value = "-", allow_hyphen_values = true)]
    pub cover: String,
    /// Annotate each character with its p-block.
    #[arg(long)]
    pub p: Option<usize>,
}

/// Failures, each with its own exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid parameters: {0}")]
    Usage(String),
    #[error("resource cap exceeded: {0}")]
    Capped(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Internal(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Capped(_) => 3,
        }
    }
}

/// A finished command: the document and whether a verification failed.
pub struct Outcome {
    pub text: String,
    pub failed: bool,
}

pub const EXIT_VERIFICATION: u8 = 4;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.failed {
                ExitCode::from(EXIT_VERIFICATION)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("spinchar: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
