//! SSPRK(10,4) on the logistic equation y' = y (1 - y), whose exact
//! solution is known, at three step sizes.
//!
//! ```text
//! cargo run --release --example ssprk_integration
//! ```

use wavekit::grid::{Grid1D, State};
use wavekit::solver::ssprk104_step;

fn exact(t: f64) -> f64 {
    let y0: f64 = 0.1;
    y0 / (y0 + (1.0 - y0) * (-t).exp())
}

fn integrate(steps: usize, t_end: f64) -> wavekit::Result<f64> {
    let grid = Grid1D::new(0.0, 1.0, 1)?;
    let mut s = State::new(&grid.into(), 1, 0);
    s.set_q_with(|_, _, q| q[0] = exact(0.0));
    let dt = t_end / steps as f64;
    for _ in 0..steps {
        s = ssprk104_step(&s, dt, |st| {
            let y = st.interior_q()[0];
            Ok(vec![y * (1.0 - y)])
        })?;
    }
    Ok((s.interior_q()[0] - exact(t_end)).abs())
}

/// (steps, error) for a run to t = 4.
pub fn run_example() -> wavekit::Result<Vec<(usize, f64)>> {
    [4, 8, 16].iter().map(|&n| integrate(n, 4.0).map(|e| (n, e))).collect()
}

fn main() -> wavekit::Result<()> {
    let rows = run_example()?;
    for w in rows.windows(2) {
        println!("{:>3} steps  {:.3e}  order {:.2}", w[1].0, w[1].1, (w[0].1 / w[1].1).log2());
    }
    Ok(())
}
