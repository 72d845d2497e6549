//! Lake at rest over a Gaussian hump. f-wave-slope reconstruction with the
//! f-wave solver keeps it at rest to rounding; component-wise WENO does not.
//!
//! ```text
//! cargo run --release --example well_balanced_hump
//! ```

use wavekit::problems::{ProblemId, ProblemSpec};
use wavekit::solver::evolve;
use wavekit::ReconKind;

/// Largest |h + b - 1| after a short run.
fn surface_error(recon: ReconKind) -> wavekit::Result<f64> {
    let spec = ProblemSpec::new(ProblemId::SwHumpZero, 100, 50)
        .with_recon(recon)
        .with_t_final(0.02);
    let setup = spec.setup()?;
    let frames = evolve(&setup.state, &setup.scheme, setup.t_final, &[])?;
    let last = frames.last().expect("final frame");
    let h = last.interior_component(0);
    let b = last.interior_aux(0);
    Ok(h.iter().zip(&b).map(|(h, b)| (h + b - 1.0).abs()).fold(0.0, f64::max))
}

/// (f-wave-slope error, component-wise error).
pub fn run_example() -> wavekit::Result<(f64, f64)> {
    Ok((surface_error(ReconKind::FWaveSlope)?, surface_error(ReconKind::Componentwise)?))
}

fn main() -> wavekit::Result<()> {
    let (balanced, naive) = run_example()?;
    println!("fwaveslope     max|h + b - 1| = {balanced:.2e}");
    println!("componentwise  max|h + b - 1| = {naive:.2e}");
    Ok(())
}
