use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qwalk_cli::{run, Flags, Mode, RunConfig};

/// Discrete-time quantum walk simulator.
#[derive(Parser)]
#[command(name = "qwalk", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Position distribution after a number of steps.
    Walk(Flags),
    /// Split-step dispersion omega(k).
    Spectrum(Flags),
    /// Zitterbewegung frequency over a theta1 x theta2 grid.
    Zitter(Flags),
    /// Coin/position entanglement entropy after every step.
    Entropy(Flags),
    /// Entanglement entropy over an initial-state or coin-angle grid.
    Sweep(Flags),
}

fn main() -> ExitCode {
    let (mode, flags) = match Cli::parse().command {
        Command::Walk(f) => (Mode::Walk, f),
        Command::Spectrum(f) => (Mode::Spectrum, f),
        Command::Zitter(f) => (Mode::Zitter, f),
        Command::Entropy(f) => (Mode::Entropy, f),
        Command::Sweep(f) => (Mode::Sweep, f),
    };
    match RunConfig::from_flags(mode, &flags).and_then(|cfg| run(&cfg)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("qwalk {}: {e}", mode.name());
            ExitCode::from(e.exit_code())
        }
    }
}
