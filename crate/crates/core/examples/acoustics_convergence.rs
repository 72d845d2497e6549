//! Convergence of a Gaussian pressure pulse in a homogeneous medium against
//! the exact solution from characteristics.
//!
//! ```text
//! cargo run --release --example acoustics_convergence
//! ```

use wavekit::harness::{convergence_study, ConvergenceRow, StudyOptions};
use wavekit::problems::{ProblemId, ProblemSpec};

pub fn run_example() -> wavekit::Result<Vec<ConvergenceRow>> {
    let spec = ProblemSpec::new(ProblemId::AcousticsHomog, 200, 1);
    convergence_study(&spec, &[200, 400, 800], &StudyOptions::characteristics())
}

fn main() -> wavekit::Result<()> {
    for row in run_example()? {
        let order = row.order.map(|o| format!("{o:.2}")).unwrap_or_default();
        println!("{:>6}  {:.3e}  {order}", row.resolution, row.error);
    }
    Ok(())
}
