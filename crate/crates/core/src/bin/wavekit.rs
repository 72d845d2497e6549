use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use wavekit::cli::{cmd_converge, cmd_reversibility, cmd_run, exit_code, RunConfig};
use wavekit::Error;

#[derive(Parser)]
#[command(name = "wavekit", version, about = "High-order wave-propagation solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve a problem and write frames.
    Run(Flags),
    /// Convergence study over a list of resolutions.
    Converge {
        #[command(flatten)]
        flags: Flags,
        /// Comma-separated resolutions.
        #[arg(long)]
        resolutions: Option<String>,
        #[arg(long)]
        norm: Option<String>,
        /// Cells of the fine-grid reference.
        #[arg(long)]
        reference: Option<String>,
        #[arg(long)]
        reference_cfl: Option<String>,
    },
    /// Stegoton time-reversibility test; `--mx` is cells per layer.
    Reversibility {
        #[command(flatten)]
        flags: Flags,
        #[arg(long)]
        t0: Option<String>,
        /// Run to T = 600.
        #[arg(long)]
        long_run: bool,
    },
}

#[derive(Args)]
struct Flags {
    #[arg(long)]
    problem: Option<String>,
    #[arg(long)]
    mx: Option<String>,
    #[arg(long)]
    my: Option<String>,
    #[arg(long)]
    recon: Option<String>,
    #[arg(long)]
    solver: Option<String>,
    #[arg(long)]
    cfl: Option<String>,
    #[arg(long)]
    tfinal: Option<String>,
    #[arg(long)]
    frames: Option<String>,
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    pulse_width: Option<String>,
    #[arg(long)]
    config: Option<PathBuf>,
}

impl Flags {
    fn pairs(&self) -> Vec<(&'static str, &Option<String>)> {
        vec![
            ("problem", &self.problem),
            ("mx", &self.mx),
            ("my", &self.my),
            ("recon", &self.recon),
            ("solver", &self.solver),
            ("cfl", &self.cfl),
            ("tfinal", &self.tfinal),
            ("frames", &self.frames),
            ("out", &self.out),
            ("pulse_width", &self.pulse_width),
        ]
    }
}

fn build(flags: &Flags, extra: &[(&str, &Option<String>)]) -> Result<RunConfig, Error> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &flags.config {
        cfg.apply_file(path)?;
    }
    for (k, v) in flags.pairs().into_iter().chain(extra.iter().copied()) {
        if let Some(v) = v {
            cfg.set(k, v)?;
        }
    }
    Ok(cfg)
}

fn threads() -> Result<(), Error> {
    let Ok(v) = std::env::var("WAVEKIT_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::Config(format!("WAVEKIT_THREADS must be a positive integer, got '{v}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::Config(e.to_string()))
}

fn main_inner(cli: Cli) -> Result<(), Error> {
    threads()?;
    match cli.command {
        Command::Run(flags) => {
            let cfg = build(&flags, &[])?;
            let summary = cmd_run(&cfg)?;
            for (f, t) in summary.files.iter().zip(&summary.times) {
                println!("t = {t:<12} {}", f.display());
            }
            println!("{} steps", summary.steps);
        }
        Command::Converge {
            flags,
            resolutions,
            norm,
            reference,
            reference_cfl,
        } => {
            let cfg = build(
                &flags,
                &[
                    ("resolutions", &resolutions),
                    ("norm", &norm),
                    ("reference", &reference),
                    ("reference_cfl", &reference_cfl),
                ],
            )?;
            let rows = cmd_converge(&cfg)?;
            println!("{:>10}  {:>12}  {:>6}", "resolution", "error", "order");
            for r in rows {
                let order = r.order.map(|o| format!("{o:.2}")).unwrap_or_default();
                println!("{:>10}  {:>12.3e}  {:>6}", r.resolution, r.error, order);
            }
        }
        Command::Reversibility { flags, t0, long_run } => {
            let long = long_run.then(|| "true".to_string());
            let cfg = build(&flags, &[("t0", &t0), ("long_run", &long)])?;
            let r = cmd_reversibility(&cfg)?;
            println!(
                "cells/layer {}  T {}  t0 {}  max diff {:.3e}",
                r.cells_per_layer, r.t_final, r.t0, r.max_diff
            );
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match main_inner(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("wavekit: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
