use std::io::Write;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};

use absorder::cli::{self, DotKind, KSelection, Outcome, EXIT_USAGE, FAULT_ENV, MAX_GROUP_ENV};

/// Absolute orders on A_n, B_n and I_2(m): rank sequences, flag
/// factorizations and strong Sperner certificates.
#[derive(Parser)]
#[command(name = "absorder", version)]
struct Args {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compare the absolute order's rank sequence with the degree polynomial.
    Ranks {
        /// a<n>, b<n> or i2:<m>
        group: String,
    },
    /// Run the factorization, embedding and Sperner checks; JSON report on stdout.
    #[command(group(ArgGroup::new("which").args(["k", "all_k"])))]
    Verify {
        group: String,
        /// Check a single k.
        #[arg(long)]
        k: Option<usize>,
        /// Check every k from 1 to the number of ranks (the default).
        #[arg(long)]
        all_k: bool,
    },
    /// Print the tier factorization r_n ... r_1 of an element.
    Factorize {
        group: String,
        /// Cycle notation, e.g. "(1 3 2)" or "[1]((1,-2))".
        element: String,
    },
    /// Emit a Graphviz diagram of the absolute order or the claw product.
    #[command(group(ArgGroup::new("poset").args(["absolute", "claw_product"]).required(true)))]
    Dot {
        group: String,
        #[arg(long)]
        absolute: bool,
        #[arg(long)]
        claw_product: bool,
    },
}

fn main() -> ExitCode {
    let args = Args::parse();
    let limit = match cli::group_limit(std::env::var(MAX_GROUP_ENV).ok().as_deref()) {
        Ok(limit) => limit,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    let outcome: Outcome = match args.command {
        Command::Ranks { group } => cli::cmd_ranks(&group, limit),
        Command::Verify { group, k, .. } => {
            let ks = k.map_or(KSelection::All, KSelection::One);
            if std::env::var(FAULT_ENV).as_deref() == Ok("certificate") {
                cli::cmd_verify_with_fault(&group, ks, limit)
            } else {
                cli::cmd_verify(&group, ks, limit)
            }
        }
        Command::Factorize { group, element } => cli::cmd_factorize(&group, &element),
        Command::Dot {
            group, absolute, ..
        } => {
            let kind = if absolute {
                DotKind::Absolute
            } else {
                DotKind::ClawProduct
            };
            cli::cmd_dot(&group, kind, limit)
        }
    };
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}
