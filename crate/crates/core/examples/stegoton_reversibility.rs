//! Solitary waves in a layered nonlinear elastic medium, run forward,
//! reversed by negating momentum and run back. Before shocks form the
//! initial state is recovered up to truncation error.
//!
//! ```text
//! cargo run --release --example stegoton_reversibility
//! ```

use wavekit::harness::{time_reversibility_test, ReversibilityOptions, ReversibilityReport};

pub fn run_example() -> wavekit::Result<Vec<ReversibilityReport>> {
    [8, 16]
        .iter()
        .map(|&cells| time_reversibility_test(&ReversibilityOptions::new(cells, 30.0, 10.0)))
        .collect()
}

fn main() -> wavekit::Result<()> {
    for r in run_example()? {
        println!(
            "{:>3} cells/layer  T {}  t0 {}  max diff {:.3e}",
            r.cells_per_layer, r.t_final, r.t0, r.max_diff
        );
    }
    Ok(())
}
