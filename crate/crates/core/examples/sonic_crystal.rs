//! A plane wave entering a lattice of rigid-like square rods. The RMS
//! pressure behind the crystal, relative to a run without rods, measures
//! transmission.
//!
//! ```text
//! cargo run --release --example sonic_crystal
//! ```

use wavekit::harness::rms_pressure;
use wavekit::problems::{CrystalParams, ProblemId, ProblemKind, ProblemSpec};
use wavekit::solver::{evolve_with, EvolveOptions};

/// Mean RMS pressure over cells with x in [x0, x1].
fn mean_rms(without_rods: bool, t_final: f64, window: (f64, f64)) -> wavekit::Result<f64> {
    let mut p = CrystalParams::new(20);
    p.without_rods = without_rods;
    p.x_length = 8.0;
    p.x_crystal = 2.0;
    p.periods = 3;
    let mut spec = ProblemSpec::new(ProblemId::SonicCrystal, 1, 20).with_t_final(t_final);
    spec.kind = ProblemKind::SonicCrystal(p.clone());
    let setup = spec.setup()?;
    let period = p.incident().period();
    let t0 = t_final - period;
    let opts = EvolveOptions::to(t_final).with_frames(t0, 16);
    let (frames, _) = evolve_with(&setup.state, &setup.scheme, &opts, |_, _| Ok(()))?;
    let frames: Vec<_> = frames.into_iter().filter(|f| f.t >= t0 - 1e-12).collect();
    let times: Vec<f64> = frames.iter().map(|f| f.t).collect();
    let samples: Vec<Vec<f64>> = frames.iter().map(|f| f.interior_component(0)).collect();
    let rms = rms_pressure(&samples, &times, Some(period))?;
    let grid = p.grid()?;
    let (nx, ny) = (grid.x.num_cells, grid.y.num_cells);
    let mut acc = (0.0, 0usize);
    for j in 0..ny {
        for i in 0..nx {
            let x = grid.x.center(i);
            if x >= window.0 && x <= window.1 {
                acc.0 += rms.rms[j * nx + i];
                acc.1 += 1;
            }
        }
    }
    Ok(acc.0 / acc.1 as f64)
}

/// RMS pressure behind the rods divided by the free-field value.
pub fn run_example() -> wavekit::Result<f64> {
    let (t, window) = (9.0, (5.5, 6.5));
    Ok(mean_rms(false, t, window)? / mean_rms(true, t, window)?)
}

fn main() -> wavekit::Result<()> {
    println!("transmitted RMS ratio = {:.3}", run_example()?);
    Ok(())
}
