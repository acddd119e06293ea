//! `pslab`: curvature, geodesics, embeddings, Penrose data, redshifts and
//! the verification suite from the command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 domain
//! error.

mod charts;
mod commands;
mod config;
mod error;
mod grid;
mod output;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{curvature, embed, geodesic, penrose, redshift, verify};
use config::Config;
use error::CliResult;

#[derive(Parser, Debug)]
#[command(name = "pslab", version, about = "Pseudosphere and Bertotti-Robinson geometry lab")]
struct Cli {
    /// JSON file with default parameters; flags take precedence
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Christoffel symbols, Riemann and Ricci tensors and scalar curvature at a point
    Curvature(curvature::CurvatureArgs),
    /// Integrate a geodesic from a point and initial velocity
    Geodesic(geodesic::GeodesicArgs),
    /// Ambient coordinates of a grid on an embedded surface
    Embed(embed::EmbedArgs),
    /// Run the verification suite
    Verify(verify::VerifyArgs),
    /// Redshift ratio and comoving distance between two times
    Redshift(redshift::RedshiftArgs),
    /// Penrose diagram data for the horizon geometry
    Penrose(penrose::PenroseArgs),
}

impl Command {
    fn key(&self) -> &'static str {
        match self {
            Command::Curvature(_) => "curvature",
            Command::Geodesic(_) => "geodesic",
            Command::Embed(_) => "embed",
            Command::Verify(_) => "verify",
            Command::Redshift(_) => "redshift",
            Command::Penrose(_) => "penrose",
        }
    }
}

fn dispatch(cli: &Cli) -> CliResult<()> {
    let cfg = Config::load(cli.config.as_deref(), cli.command.key())?;
    match &cli.command {
        Command::Curvature(a) => curvature::run(a, &cfg),
        Command::Geodesic(a) => geodesic::run(a, &cfg),
        Command::Embed(a) => embed::run(a, &cfg),
        Command::Verify(a) => verify::run(a, &cfg),
        Command::Redshift(a) => redshift::run(a, &cfg),
        Command::Penrose(a) => penrose::run(a, &cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("pslab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
