//! A wide pulse crossing a material interface, once with the f-wave solver
//! and characteristic-wise WENO, once with q-waves and component-wise WENO.
//! Only the first keeps high order across the jump in impedance.
//!
//! ```text
//! cargo run --release --example interface_fwave
//! ```

use wavekit::harness::{convergence_study, ConvergenceRow, StudyOptions};
use wavekit::problems::{ProblemId, ProblemSpec, SolverForm};
use wavekit::ReconKind;

pub fn run_example() -> wavekit::Result<(Vec<ConvergenceRow>, Vec<ConvergenceRow>)> {
    let base = ProblemSpec::new(ProblemId::AcousticsInterface, 200, 1).with_pulse_width(4.0)?;
    let resolutions = [200, 400, 800];
    let fwave = convergence_study(
        &base
            .clone()
            .with_solver(SolverForm::FWave)
            .with_recon(ReconKind::Characteristicwise),
        &resolutions,
        &StudyOptions::characteristics(),
    )?;
    let qwave = convergence_study(
        &base.with_solver(SolverForm::QWave).with_recon(ReconKind::Componentwise),
        &resolutions,
        &StudyOptions::characteristics(),
    )?;
    Ok((fwave, qwave))
}

fn main() -> wavekit::Result<()> {
    let (fwave, qwave) = run_example()?;
    println!("{:>6}  {:>10} {:>6}  {:>10} {:>6}", "mx", "f-wave", "order", "q-wave", "order");
    for (f, q) in fwave.iter().zip(&qwave) {
        let o = |r: &wavekit::harness::ConvergenceRow| r.order.map(|o| format!("{o:.2}")).unwrap_or_default();
        println!("{:>6}  {:>10.3e} {:>6}  {:>10.3e} {:>6}", f.resolution, f.error, o(f), q.error, o(q));
    }
    Ok(())
}
