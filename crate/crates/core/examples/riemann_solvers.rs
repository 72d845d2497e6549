//! Wave decompositions from each Riemann solver, and the identities they
//! satisfy: waves sum to the jump (q-waves) or to the flux difference
//! (f-waves), and the fluctuations add up to the same total.
//!
//! ```text
//! cargo run --release --example riemann_solvers
//! ```

use wavekit::riemann::{RiemannSolver, StressLaw};

pub struct Case {
    pub name: &'static str,
    pub speeds: Vec<f64>,
    /// Largest violation of the wave-sum and fluctuation identities.
    pub residual: f64,
}

fn case(name: &'static str, solver: RiemannSolver, ql: &[f64], qr: &[f64], aux: &[f64]) -> wavekit::Result<Case> {
    let d = solver.solve(ql, qr, aux, aux)?;
    let m = ql.len();
    // flux difference, or A (qr - ql) for acoustics
    let df = solver.total_fluctuation(ql, qr, aux)?;
    let sum = d.wave_sum();
    let mut residual = 0.0f64;
    for k in 0..m {
        let jump = if solver.is_fwave() { df[k] } else { qr[k] - ql[k] };
        residual = residual.max((sum[k] - jump).abs());
        residual = residual.max((d.amdq[k] + d.apdq[k] - df[k]).abs());
    }
    Ok(Case {
        name,
        speeds: d.speeds[..d.num_waves].to_vec(),
        residual,
    })
}

pub fn run_example() -> wavekit::Result<Vec<Case>> {
    Ok(vec![
        case("acoustics", RiemannSolver::Acoustics, &[1.0, 0.0], &[0.0, 0.5], &[1.0, 2.0])?,
        case(
            "shallow water (Roe)",
            RiemannSolver::ShallowRoe { g: 1.0, entropy_fix: true },
            &[2.0, 0.0, 0.0],
            &[1.0, 0.0, 0.0],
            &[],
        )?,
        case(
            "shallow water (f-wave)",
            RiemannSolver::ShallowFWave { g: 9.81 },
            &[1.0, 0.3, 0.1],
            &[0.8, -0.2, 0.0],
            &[0.0],
        )?,
        case(
            "nonlinear elasticity",
            RiemannSolver::Elasticity { law: StressLaw::Exponential },
            &[0.1, 0.2],
            &[-0.05, 0.0],
            &[1.0, 1.0],
        )?,
    ])
}

fn main() -> wavekit::Result<()> {
    for c in run_example()? {
        println!("{:<24} speeds {:?}  identity residual {:.1e}", c.name, c.speeds, c.residual);
    }
    Ok(())
}
