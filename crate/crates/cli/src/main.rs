use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

mod args;
mod commands;
mod error;
mod input;

use args::{Cli, Command};
use error::CliError;

fn run(cli: &Cli) -> Result<String, CliError> {
    let format = cli.format;
    match &cli.command {
        Command::Mutate { quiver, vertices } => commands::mutate(&input::quiver(quiver)?, vertices, format),
        Command::Enumerate { quiver, cap } => commands::enumerate_seeds(&input::quiver(quiver)?, *cap, format),
        Command::Polyamory { quiver, specialisation } => {
            let q = input::quiver(quiver)?;
            let sigma = input::specialization(Some(specialisation), "specialisation")?;
            commands::polyamory(&q, &sigma, format)
        }
        Command::EnumeratePolyamorous { quiver, include_vacuous } => {
            commands::enumerate_poly(&input::quiver(quiver)?, *include_vacuous, format)
        }
        Command::Frieze {
            n,
            triangulation,
            specialisation,
            assign,
            symbolic,
            verify,
            width,
            mark,
        } => {
            let req = commands::FriezeRequest {
                n: *n,
                triangulation: triangulation.as_deref().map(input::triangulation).transpose()?,
                sigma: input::specialization(specialisation.as_deref(), "specialisation")?,
                assign: input::specialization(assign.as_deref(), "assignment")?,
                symbolic: *symbolic,
                verify: *verify,
                width: *width,
                mark: *mark,
            };
            commands::frieze(&req, format)
        }
        Command::ClassifyTwoRow { bound } => commands::classify(*bound, format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let _ = std::io::stdout().write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
