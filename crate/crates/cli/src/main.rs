//! `chern`: graded character rings from the command line.
//!
//! Exit status is 0 on success, 1 when a verification fails and 2 on usage or
//! computation errors.

mod commands;
mod expr;
mod render;
mod select;
mod suites;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use crate::commands::Report;
use crate::suites::Suite;

const EXPR_HELP: &str = "\
Virtual character of the subgroup. Grammar:
  expr  := term (('+' | '-') term)*
  term  := unary ('*' unary)*
  unary := '-' unary | atom ('^' INT)?
  atom  := INT | r | rK | C_n(expr) | lambda_n(expr) | psi_n(expr) | (expr)
rK is the K-th irreducible in canonical order (r0 trivial, r means r1);
an integer is a multiple of the trivial character.";

#[derive(Parser, Debug)]
#[command(name = "chern", version, about = "Graded character rings of finite groups")]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Group-level facts: order, classes, subgroups.
    Group {
        #[command(subcommand)]
        action: GroupAction,
    },
    /// Character table in canonical row order.
    Table {
        /// Group spec, e.g. A4, C4xC4, PSL(2,5).
        spec: String,
    },
    /// Graded pieces of the gamma filtration.
    Graded {
        spec: String,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// Graded pieces of the saturated filtration and the saturation verdict.
    Saturated {
        spec: String,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// Stable elements at an abelian Sylow subgroup.
    Stable {
        spec: String,
        #[arg(short = 'p', long = "prime")]
        p: u64,
        #[arg(long, default_value_t = 6)]
        depth: usize,
    },
    /// Norm of a virtual character along a normal subgroup of prime index.
    Norm {
        spec: String,
        /// Subgroup given by spec; the first matching conjugacy class
        /// representative that is normal of prime index is used.
        #[arg(long, required_unless_present = "sub_elements", conflicts_with = "sub_elements")]
        sub: Option<String>,
        /// Subgroup given as a comma-separated list of element labels or indices.
        #[arg(long)]
        sub_elements: Option<String>,
        #[arg(long, long_help = EXPR_HELP)]
        expr: String,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Seed for the randomized checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
enum GroupAction {
    /// Order, exponent, conjugacy classes and subgroup classes.
    Info { spec: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Group { action: GroupAction::Info { spec } } => commands::group_info(spec),
        Command::Table { spec } => commands::table(spec),
        Command::Graded { spec, depth } => commands::graded(spec, *depth),
        Command::Saturated { spec, depth } => commands::saturated(spec, *depth),
        Command::Stable { spec, p, depth } => commands::stable(spec, *p, *depth),
        Command::Norm { spec, sub, sub_elements, expr } => {
            commands::norm(spec, sub.as_deref(), sub_elements.as_deref(), expr)
        }
        Command::Verify { suite, seed } => commands::verify(*suite, *seed),
    };
    match result {
        Ok(report) => emit(&report, cli.json),
        Err(message) => {
            if cli.json {
                println!("{}", serde_json::json!({ "command": "error", "error": message }));
            }
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn emit(report: &Report, json: bool) -> ExitCode {
    if json {
        println!("{}", serde_json::to_string_pretty(&report.json).expect("JSON values serialize"));
    } else {
        print!("{}", report.text);
    }
    if report.passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
