mod commands;
mod input;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use perpcat::exactlin::Field;
use perpcat::Error;

use crate::render::Report;

#[derive(Parser, Debug)]
#[command(name = "perpcat", version, about = "Perpendicular categories of exceptional quiver representations")]
struct Cli {
    #[command(flatten)]
    opts: Options,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Options {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Field for builtin modules and probe sets: `q` or `fp:P`.
    #[arg(long, value_parser = input::parse_field, default_value = "q", global = true)]
    pub field: Field,
    /// Dimension cap for the brute-force closure in `verify`.
    #[arg(long, default_value_t = perpcat::orthopair::DEFAULT_CAP as u64, value_parser = clap::value_parser!(u64).range(1..=24), global = true)]
    pub cap: u64,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Text,
}

/// Quiver and module arguments take a JSON file or a builtin: quivers
/// `@A2 @A3 @A3sink @D4 @Kronecker`, modules `@S<i> @P<i> @I<i> @0`.
#[derive(Subcommand, Debug)]
enum Command {
    /// Basis of Hom(M, N).
    Hom { quiver: String, m: String, n: String },
    /// Basis of Ext^1(M, N).
    Ext { quiver: String, m: String, n: String },
    /// The five-term sequence of M for the pair generated by X.
    FiveTerm { quiver: String, x: String, m: String },
    /// The algebra B, the map f, the module L and the presentation sigma.
    Perp { quiver: String, x: String },
    /// The presentation sigma and its characterization on probes.
    Sigma {
        quiver: String,
        x: String,
        #[arg(long, default_value = "@intervals")]
        probes: String,
    },
    /// The full invariant suite on a probe set.
    Verify {
        quiver: String,
        x: String,
        /// Probe file, or `@intervals`, `@preprojectives:N`, `@preinjectives:N`, `@random:N`.
        #[arg(long, default_value = "@intervals")]
        probes: String,
    },
    /// Kernel trichotomy of the localization on complexes, shifts and sums.
    Telescope {
        quiver: String,
        x: String,
        #[arg(long, default_value = "@intervals")]
        probes: String,
    },
    /// Hypotheses for the maximal ideal of a valuation domain.
    Valuation {
        /// `countable` for Z^(N), or `zR` for Z^R.
        #[arg(long, default_value = "countable", value_parser = commands::parse_model)]
        model: perpcat::valuation::ValueModel,
        /// JSON list of value vectors such as {"1": 1, "3": -2}.
        #[arg(long)]
        probes: Option<String>,
    },
}

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::NotExceptional { .. } | Error::ProbeNotInClass(_) | Error::ProbeNotInIdeal(_) => 3,
        Error::VerificationFailed(_)
        | Error::RouteDisagreement(_)
        | Error::EquivalenceViolation(_)
        | Error::IsoInconclusive(_) => 4,
        _ => 2,
    }
}

fn run(cli: &Cli) -> perpcat::Result<Report> {
    let o = &cli.opts;
    match &cli.command {
        Command::Hom { quiver, m, n } => commands::hom(o, quiver, m, n),
        Command::Ext { quiver, m, n } => commands::ext(o, quiver, m, n),
        Command::FiveTerm { quiver, x, m } => commands::five_term(o, quiver, x, m),
        Command::Perp { quiver, x } => commands::perp(o, quiver, x),
        Command::Sigma { quiver, x, probes } => commands::sigma(o, quiver, x, probes),
        Command::Verify { quiver, x, probes } => commands::verify(o, quiver, x, probes),
        Command::Telescope { quiver, x, probes } => commands::telescope(o, quiver, x, probes),
        Command::Valuation { model, probes } => commands::valuation(*model, probes.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let body = match cli.opts.format {
        Format::Json => serde_json::to_string_pretty(&report.json).expect("JSON values serialize") + "\n",
        Format::Text => report.text.join("\n") + "\n",
    };
    match &cli.opts.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, body) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{body}"),
    }
    match report.failure {
        Some(why) => {
            eprintln!("error: verification failed: {why}");
            ExitCode::from(4)
        }
        None => ExitCode::SUCCESS,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::Parse("x".into())), 2);
        assert_eq!(exit_code(&Error::NotExceptional { ext_dim: 1 }), 3);
        assert_eq!(exit_code(&Error::VerificationFailed("x".into())), 4);
        assert_eq!(exit_code(&Error::EquivalenceViolation("x".into())), 4);
    }
}
