use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod commands;
mod report;

/// Exact computations with q-deformed Dirac, Euler, Gamma and Laplace
/// operators on Clifford-valued polynomials.
#[derive(Parser)]
#[command(name = "qclifford", version)]
struct Cli {
    /// Print one JSON object per line instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct PolyArgs {
    /// Dimension m of Cl(0,m).
    #[arg(long)]
    pub m: usize,

    /// Polynomial, e.g. "x1^2*x2*e1 + (1 + q)*x3".
    #[arg(allow_hyphen_values = true)]
    pub expr: String,
}

#[derive(Subcommand)]
pub enum Command {
    /// Jackson partial derivative in one variable.
    Deriv {
        #[command(flatten)]
        poly: PolyArgs,
        /// Variable index i of the derivative.
        #[arg(long = "var")]
        var: usize,
    },
    /// q-Dirac operator (the extended one when x0 or e0 occurs).
    Dirac(PolyArgs),
    /// q-Euler operator.
    Euler(PolyArgs),
    /// q-Gamma operator.
    Gamma(PolyArgs),
    /// q-Laplace operator.
    Laplace(PolyArgs),
    /// Monogenic Fischer decomposition of a homogeneous polynomial.
    Fischer(PolyArgs),
    /// Cauchy-Kovalevskaya extension to x0.
    Ck(PolyArgs),
    /// Check operator identities on random polynomials.
    Verify(VerifyArgs),
    /// One-variable Jackson calculus in t.
    Jackson {
        #[command(subcommand)]
        command: JacksonCommand,
    },
    /// Canonical form, optionally specialized at q = q0 and a point.
    Eval {
        #[command(flatten)]
        poly: PolyArgs,
        /// Rational value substituted for q.
        #[arg(long, allow_hyphen_values = true)]
        q0: Option<String>,
        /// Comma-separated rational coordinates x1,..,xm (x0,..,xm when x0 or e0 occurs).
        #[arg(long, allow_hyphen_values = true)]
        at: Option<String>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "which")]
pub struct Which {
    /// Relation family name, e.g. weyl or comm_euler_dirac.
    #[arg(long)]
    pub relation: Option<String>,
    /// Every relation family.
    #[arg(long)]
    pub all: bool,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub which: Which,
    /// Largest dimension; trials cycle through m = 1..=M.
    #[arg(long, default_value_t = 3)]
    pub m: usize,
    /// Maximum total degree of the random operands.
    #[arg(long, default_value_t = 4)]
    pub degree: u32,
    /// Random operands per relation.
    #[arg(long, default_value_t = 50)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand)]
pub enum JacksonCommand {
    /// Jackson derivative of a polynomial in t.
    Deriv {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// q-integral over [a, b].
    Integrate {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        /// Also evaluate at q = q0 in (0, 1) and compare with the defining series.
        #[arg(long)]
        q0: Option<String>,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Truncated q-exponential E_q (variant E) or e_q (variant e).
    Exp {
        #[arg(long)]
        variant: String,
        #[arg(long)]
        order: u32,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli.command) {
        Ok(reports) => {
            for r in &reports {
                if cli.json {
                    println!("{}", r.to_json());
                } else {
                    println!("{}", r.to_text());
                }
            }
            if reports.iter().all(|r| r.passed()) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
