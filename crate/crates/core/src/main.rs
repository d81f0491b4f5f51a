use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};
use num_complex::Complex64;

use entbound::harness::{self, CommandOutput, RunConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Command {
    /// Bounds on E_g(a|GHZ> + b|W>) over a grid of a.
    Fig1,
    /// q-squashed entanglement of the sparse N-partite family and its upper bounds.
    Fig2,
    /// Fidelity against q-squashed entanglement for |000> and its perturbation.
    Example3,
    /// Randomized check of every inequality; exits 1 on any failure.
    Verify,
    /// Measures of one state file, or bounds for a superposition of two.
    Measure,
}

#[derive(Debug, Parser)]
#[command(name = "entbound", version, about = "Entanglement measures and superposition bounds")]
struct Cli {
    command: Command,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long = "n-max")]
    n_max: Option<usize>,
    #[arg(long)]
    eps: Option<f64>,
    #[arg(long = "grid-step", default_value_t = 0.01)]
    grid_step: f64,
    #[arg(long, default_value_t = 32)]
    starts: usize,
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    trials: usize,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long = "state")]
    states: Vec<PathBuf>,
    /// Coefficient of the first state as RE,IM.
    #[arg(long = "coeff-a", value_parser = parse_coeff, allow_hyphen_values = true)]
    coeff_a: Option<Complex64>,
    /// Coefficient of the second state as RE,IM.
    #[arg(long = "coeff-b", value_parser = parse_coeff, allow_hyphen_values = true)]
    coeff_b: Option<Complex64>,
}

fn parse_coeff(s: &str) -> Result<Complex64, String> {
    harness::parse_complex(s).map_err(|e| e.to_string())
}

fn run(cli: Cli) -> entbound::Result<CommandOutput> {
    let cfg = RunConfig {
        grid_step: cli.grid_step,
        starts: cli.starts,
        tol: cli.tol,
        seed: cli.seed,
        trials: cli.trials,
        d: cli.d,
        n_max: cli.n_max,
        eps: cli.eps,
        states: cli.states,
        coeff_a: cli.coeff_a,
        coeff_b: cli.coeff_b,
    };
    let output = match cli.command {
        Command::Fig1 => harness::run_fig1(&cfg)?,
        Command::Fig2 => harness::run_fig2(&cfg)?,
        Command::Example3 => harness::run_example3(&cfg)?,
        Command::Verify => harness::run_verify(&cfg)?,
        Command::Measure => harness::run_measure(&cfg)?,
    };
    let text = output.csv.render();
    match &cli.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(output)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) if out.failures == 0 => ExitCode::SUCCESS,
        Ok(out) => {
            eprintln!("entbound: {} check(s) failed", out.failures);
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("entbound: {e}");
            ExitCode::from(2)
        }
    }
}
