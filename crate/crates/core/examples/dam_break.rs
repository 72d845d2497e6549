//! Radial dam break on a square grid: transpose symmetry and a comparison
//! of the 2D radial profile with the 1D radially symmetric equations.
//!
//! ```text
//! cargo run --release --example dam_break
//! ```

use wavekit::harness::{envelope_deviation, radial_scatter, transpose_asymmetry};
use wavekit::problems::{ProblemId, ProblemSpec};
use wavekit::solver::evolve;

pub struct DamBreakReport {
    pub asymmetry: f64,
    /// Distance of the 2D scatter from the 1D profile for r >= 0.2.
    pub envelope: f64,
}

pub fn run_example() -> wavekit::Result<DamBreakReport> {
    let t = 0.25;
    let spec = ProblemSpec::new(ProblemId::SwDambreak2d, 50, 50).with_t_final(t);
    let setup = spec.setup()?;
    let end = evolve(&setup.state, &setup.scheme, t, &[])?.pop().expect("final frame");
    let asymmetry = transpose_asymmetry(&end, 0)?;
    let scatter = radial_scatter(&end, &setup.scheme.grid, (0.0, 0.0), 0);

    let radial = ProblemSpec::new(ProblemId::SwRadial1d, 500, 1).with_t_final(t);
    let rs = radial.setup()?;
    let line = evolve(&rs.state, &rs.scheme, t, &[])?.pop().expect("final frame");
    let reference = radial_scatter(&line, &rs.scheme.grid, (0.0, 0.0), 0);
    let halfwidth = 2.0 * setup.scheme.grid.spacing()[0];
    Ok(DamBreakReport {
        asymmetry,
        envelope: envelope_deviation(&scatter, &reference, halfwidth, 0.2),
    })
}

fn main() -> wavekit::Result<()> {
    let r = run_example()?;
    println!("max |h(i,j) - h(j,i)| = {:.2e}", r.asymmetry);
    println!("radial envelope deviation = {:.2e}", r.envelope);
    Ok(())
}
