use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use divpow_cli::commands::{
    cmd_derive, cmd_generate, cmd_lucas, cmd_modp, cmd_selftest, cmd_verify, exit_status,
};

/// Exact verification of determinantal rational-function identities via
/// divided-power differential operators.
#[derive(Parser)]
#[command(name = "divpow", version, about)]
struct Cli {
    /// Emit a machine-readable JSON report instead of text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the order-k identity by exact denominator clearing
    Verify {
        #[arg(long)]
        k: u32,
        /// Desk-scale ceiling for k
        #[arg(long, default_value_t = 16)]
        k_limit: u32,
    },
    /// Re-derive the order-k identity by applying the divided-power
    /// operator to the base relation, checking against the literal sums
    Derive {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 16)]
        k_limit: u32,
    },
    /// Check that the order-(p^e - 1) identity collapses mod p to the
    /// three-term power relation
    Modp {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        e: u32,
        /// Desk-scale ceiling for p^e
        #[arg(long, default_value_t = 32)]
        power_limit: u64,
    },
    /// Check the binomial vanishing mod p at k = p^e - 1
    Lucas {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        e: u32,
        #[arg(long, default_value_t = 32)]
        power_limit: u64,
    },
    /// Generate identities from a job file (syzygies plus an operator)
    Generate {
        #[arg(long)]
        job: PathBuf,
    },
    /// Run the full verification sweep
    Selftest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Verify { k, k_limit } => cmd_verify(*k, *k_limit),
        Command::Derive { k, k_limit } => cmd_derive(*k, *k_limit),
        Command::Modp { p, e, power_limit } => cmd_modp(*p, *e, *power_limit),
        Command::Lucas { p, e, power_limit } => cmd_lucas(*p, *e, *power_limit),
        Command::Generate { job } => cmd_generate(job),
        Command::Selftest => cmd_selftest(),
    };
    match &result {
        Ok(outcome) => {
            if cli.json {
                println!("{}", outcome.report.to_json());
            } else {
                println!("{}", outcome.human);
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
        }
    }
    ExitCode::from(exit_status(&result))
}
