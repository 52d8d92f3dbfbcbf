use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use verlinde_core::Error;

mod commands;
mod output;

use output::Report;

/// Verlinde numbers, phase factors and level data for compact simple Lie groups.
#[derive(Parser, Debug)]
#[command(name = "verlinde", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Root data summary: Cartan matrix, marks, Coxeter numbers, center.
    Rootdata(Common),
    /// Basic levels k0 and k1 for a subgroup of the center.
    Levels(Common),
    /// Modular S-matrix at level k.
    Smatrix(WithLevel),
    /// Phase factors delta(c1, c2) over Z x Z.
    Delta(WithLevel),
    /// Verlinde numbers for G' = G/Z.
    Verlinde(VerlindeArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Lie type such as A2, D4 or E6.
    #[arg(long = "type", value_name = "TYPE")]
    pub ty: String,
    /// Subgroup of the center: `trivial`, `full` or `gen:<g>[,<g>...]`.
    #[arg(long, default_value = "full")]
    pub center: String,
    /// Generator of Z given as a coweight, e.g. `w1` or `w3+w4`; repeatable, overrides --center.
    #[arg(long = "gen", value_name = "COWEIGHT")]
    pub gens: Vec<String>,
    /// Largest Weyl group to enumerate.
    #[arg(long, default_value_t = verlinde_core::weyl::DEFAULT_WEYL_BUDGET)]
    pub max_weyl_order: u64,
    /// Run every loop on the calling thread.
    #[arg(long)]
    pub sequential: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Args, Debug, Clone)]
pub struct WithLevel {
    #[command(flatten)]
    pub common: Common,
    /// Level k.
    #[arg(long)]
    pub k: i64,
}

#[derive(Args, Debug, Clone)]
pub struct VerlindeArgs {
    #[command(flatten)]
    pub level: WithLevel,
    #[arg(long, default_value_t = 1)]
    pub genus: u32,
    /// Boundary label as comma-separated Dynkin labels; all of P_k when omitted.
    #[arg(long)]
    pub mu: Option<String>,
    /// Twist as 2g exponent vectors separated by `;`, e.g. `1;0` or `1,0;0,1`, or `all`.
    /// Trivial when omitted.
    #[arg(long)]
    pub phi: Option<String>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

/// Usage, precondition and residual failures map to distinct exit codes.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::InvalidType { .. } | Error::IndexOutOfRange { .. } => {
                Failure::Usage(e.to_string())
            }
            e => Failure::Compute(e),
        }
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Compute(Error::Residual { .. } | Error::Negative(_)) => 4,
            Failure::Compute(_) => 3,
        }
    }
}

fn run(cli: Cli) -> Result<(Report, Format), Failure> {
    Ok(match cli.command {
        Command::Rootdata(a) => (commands::rootdata(&a)?, a.format),
        Command::Levels(a) => (commands::levels(&a)?, a.format),
        Command::Smatrix(a) => (commands::smatrix(&a)?, a.common.format),
        Command::Delta(a) => (commands::delta(&a)?, a.common.format),
        Command::Verlinde(a) => (commands::verlinde(&a)?, a.level.common.format),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((report, format)) => {
            print!("{}", report.render(format));
            ExitCode::SUCCESS
        }
        Err(f) => {
            let msg = match &f {
                Failure::Usage(m) => m.clone(),
                Failure::Compute(e) => e.to_string(),
            };
            eprintln!("error: {msg}");
            ExitCode::from(f.exit_code())
        }
    }
}
