mod args;
mod commands;
mod config;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};
use commands::{Failure, Globals};
use config::FileConfig;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let file = match &cli.config {
        Some(path) => match FileConfig::load(path) {
            Ok(c) => c,
            Err(msg) => {
                eprintln!("error: {msg}");
                return ExitCode::from(2);
            }
        },
        None => FileConfig::default(),
    };
    let globals = Globals {
        seed: cli.seed.or(file.seed).unwrap_or(0),
        budget: cli.budget.or(file.budget),
        out: cli.out.clone().or_else(|| file.out.clone()),
        format: cli.format.or(file.format),
        file,
    };
    if globals.budget == Some(0) {
        eprintln!("error: --budget must be positive");
        return ExitCode::from(2);
    }
    let outcome = match &cli.command {
        Command::Gen(a) => commands::gen(&globals, &a.family),
        Command::Run(a) => commands::run(&globals, a),
        Command::Race(a) => commands::race_cmd(&globals, a),
        Command::Bridge(a) => commands::bridge(&globals, a),
        Command::Scheme(c) => commands::scheme(&globals, c),
        Command::Validate(a) => commands::validate(&globals, a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("run `ccrecon --help` for usage");
            ExitCode::from(2)
        }
        Err(Failure::Run(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
