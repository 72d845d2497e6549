use crate::error::{Error, Result};
use crate::grid::{Grid, State};

/// Sum of absolute jumps between neighbours.
pub fn total_variation(v: &[f64]) -> f64 {
    v.windows(2).map(|w| (w[1] - w[0]).abs()).sum()
}

#[derive(Debug, Clone, PartialEq)]
pub struct RmsPressure {
    pub rms: Vec<f64>,
    /// Set when the window is shorter than the given period.
    pub short_window: bool,
}

/// `sqrt((1/T) ∫ p² dt)` per cell by the trapezoidal rule over the sampled
/// window. `samples[k]` holds the pressure of every cell at `times[k]`.
pub fn rms_pressure(samples: &[Vec<f64>], times: &[f64], period: Option<f64>) -> Result<RmsPressure> {
    if samples.len() != times.len() || samples.len() < 2 {
        return Err(Error::Config(format!(
            "need at least two samples with matching times, got {} and {}",
            samples.len(),
            times.len()
        )));
    }
    let n = samples[0].len();
    if samples.iter().any(|s| s.len() != n) {
        return Err(Error::Config("samples differ in length".into()));
    }
    let window = times[times.len() - 1] - times[0];
    if !(window > 0.0) {
        return Err(Error::Config("sample times must increase".into()));
    }
    let mut acc = vec![0.0; n];
    for k in 1..samples.len() {
        let h = times[k] - times[k - 1];
        for (a, (p0, p1)) in acc.iter_mut().zip(samples[k - 1].iter().zip(&samples[k])) {
            *a += 0.5 * h * (p0 * p0 + p1 * p1);
        }
    }
    Ok(RmsPressure {
        rms: acc.into_iter().map(|a| (a / window).sqrt()).collect(),
        short_window: period.is_some_and(|p| window < p * (1.0 - 1e-12)),
    })
}

/// (distance from `center` to the cell center, q[component]) for every
/// interior cell, sorted by distance.
pub fn radial_scatter(state: &State, grid: &Grid, center: (f64, f64), component: usize) -> Vec<(f64, f64)> {
    let values = state.interior_component(component);
    let gx = grid.x();
    let mut out = Vec::with_capacity(values.len());
    match grid.y() {
        Some(gy) => {
            for j in 0..gy.num_cells {
                for i in 0..gx.num_cells {
                    let (dx, dy) = (gx.center(i) - center.0, gy.center(j) - center.1);
                    out.push((dx.hypot(dy), values[j * gx.num_cells + i]));
                }
            }
        }
        None => {
            for i in 0..gx.num_cells {
                out.push(((gx.center(i) - center.0).abs(), values[i]));
            }
        }
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
    out
}

/// Largest |q(i, j) - q(j, i)| for a component on a square grid.
pub fn transpose_asymmetry(state: &State, component: usize) -> Result<f64> {
    let l = state.layout;
    if l.dim != 2 || l.nx != l.ny {
        return Err(Error::IncompatibleGrids("transpose check needs a square 2D grid".into()));
    }
    let v = state.interior_component(component);
    let n = l.nx;
    let mut worst = 0.0f64;
    for j in 0..n {
        for i in 0..j {
            worst = worst.max((v[j * n + i] - v[i * n + j]).abs());
        }
    }
    Ok(worst)
}

/// Largest distance from scatter points with r >= `r_min` to the range the
/// reference curve (piecewise linear through `reference`, sorted by r)
/// takes within `halfwidth` of the point's radius.
pub fn envelope_deviation(scatter: &[(f64, f64)], reference: &[(f64, f64)], halfwidth: f64, r_min: f64) -> f64 {
    let interp = |r: f64| -> f64 {
        let k = reference.partition_point(|p| p.0 < r);
        if k == 0 {
            return reference[0].1;
        }
        if k == reference.len() {
            return reference[k - 1].1;
        }
        let (a, b) = (reference[k - 1], reference[k]);
        a.1 + (b.1 - a.1) * (r - a.0) / (b.0 - a.0)
    };
    let mut worst = 0.0f64;
    for &(r, h) in scatter.iter().filter(|p| p.0 >= r_min) {
        let (lo_r, hi_r) = (r - halfwidth, r + halfwidth);
        let (mut lo, mut hi) = (interp(lo_r).min(interp(hi_r)), interp(lo_r).max(interp(hi_r)));
        let a = reference.partition_point(|p| p.0 < lo_r);
        let b = reference.partition_point(|p| p.0 <= hi_r);
        for p in &reference[a..b] {
            lo = lo.min(p.1);
            hi = hi.max(p.1);
        }
        worst = worst.max((lo - h).max(h - hi).max(0.0));
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn rms_examples() {
        let times: Vec<f64> = (0..=400).map(|k| k as f64 * 0.01).collect();
        let zero: Vec<Vec<f64>> = times.iter().map(|_| vec![0.0]).collect();
        assert_eq!(rms_pressure(&zero, &times, None).unwrap().rms, vec![0.0]);
        let c: Vec<Vec<f64>> = times.iter().map(|_| vec![-3.0]).collect();
        assert!((rms_pressure(&c, &times, None).unwrap().rms[0] - 3.0).abs() < 1e-14);
        // two periods of 2 sin(pi t)
        let s: Vec<Vec<f64>> = times.iter().map(|&t| vec![2.0 * (PI * t).sin()]).collect();
        let r = rms_pressure(&s, &times, Some(2.0)).unwrap();
        assert!((r.rms[0] - 2f64.sqrt()).abs() < 1e-12);
        assert!(!r.short_window);
        assert!(rms_pressure(&s, &times, Some(5.0)).unwrap().short_window);
    }

    #[test]
    fn total_variation_of_ramp() {
        assert_eq!(total_variation(&[0.0, 1.0, 3.0, 2.0]), 4.0);
    }

    #[test]
    fn envelope_of_exact_curve_is_zero() {
        let reference: Vec<(f64, f64)> = (0..=100).map(|k| (k as f64 * 0.01, (k as f64 * 0.01).powi(2))).collect();
        let scatter: Vec<(f64, f64)> = (0..50).map(|k| (0.013 + k as f64 * 0.019, (0.013 + k as f64 * 0.019f64).powi(2))).collect();
        assert!(envelope_deviation(&scatter, &reference, 0.0, 0.0) < 1e-4);
        assert!(envelope_deviation(&scatter, &reference, 0.02, 0.0) == 0.0);
        let off = [(0.5, 0.35)];
        assert!((envelope_deviation(&off, &reference, 0.0, 0.0) - 0.1).abs() < 1e-12);
    }
}
