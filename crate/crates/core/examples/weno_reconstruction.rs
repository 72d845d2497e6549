//! Fifth-order WENO edge values from cell averages of sin(x).
//!
//! ```text
//! cargo run --release --example weno_reconstruction
//! ```

use std::f64::consts::PI;

use wavekit::recon::weno5_edge;

/// Largest error of the upper-edge value over a periodic grid of `n` cells.
fn edge_error(n: usize) -> f64 {
    let h = 2.0 * PI / n as f64;
    let avg = |i: isize| ((i as f64 * h).cos() - ((i + 1) as f64 * h).cos()) / h;
    (0..n as isize)
        .map(|i| {
            let v = [avg(i - 2), avg(i - 1), avg(i), avg(i + 1), avg(i + 2)];
            let (upper, _) = weno5_edge(&v);
            (upper - ((i + 1) as f64 * h).sin()).abs()
        })
        .fold(0.0, f64::max)
}

pub fn run_example() -> Vec<(usize, f64)> {
    [20, 40, 80, 160, 320].iter().map(|&n| (n, edge_error(n))).collect()
}

fn main() {
    let rows = run_example();
    for w in rows.windows(2) {
        let order = (w[0].1 / w[1].1).log2();
        println!("{:>4} -> {:>4}  {:.3e}  order {order:.2}", w[0].0, w[1].0, w[1].1);
    }
}
