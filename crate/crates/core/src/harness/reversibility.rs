use std::sync::Arc;

use super::diagnostics::total_variation;
use crate::error::{Error, Result};
use crate::grid::{BoundarySpec, EdgeCondition, State};
use crate::problems::{HalfCosinePulse, ProblemId, ProblemKind, ProblemSpec};
use crate::recon::ReconKind;
use crate::solver::evolve;

#[derive(Debug, Clone, PartialEq)]
pub struct ReversibilityOptions {
    pub cells_per_layer: usize,
    /// Time at which momentum is negated.
    pub t_final: f64,
    /// Comparison time.
    pub t0: f64,
    pub recon: Option<ReconKind>,
    /// The backward run is invalid if its strain variation exceeds this
    /// multiple of the forward one.
    pub tv_factor: f64,
}

impl ReversibilityOptions {
    pub fn new(cells_per_layer: usize, t_final: f64, t0: f64) -> Self {
        Self {
            cells_per_layer,
            t_final,
            t0,
            recon: None,
            tv_factor: 2.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReversibilityReport {
    pub cells_per_layer: usize,
    pub t_final: f64,
    pub t0: f64,
    /// max over cells and components of |q(2T - t0) - q(t0)| after the
    /// second negation.
    pub max_diff: f64,
    pub tv_forward: f64,
    pub tv_backward: f64,
}

fn negate_momentum(state: &mut State) {
    state.set_q_with(|_, _, q| q[1] = -q[1]);
}

/// Stegoton run to T, momentum negated, continued to 2T - t0 and compared
/// with the solution at t0.
pub fn time_reversibility_test(opts: &ReversibilityOptions) -> Result<ReversibilityReport> {
    let (t, t0) = (opts.t_final, opts.t0);
    if !(t0 >= 0.0 && t0 <= t) {
        return Err(Error::Config(format!("need 0 <= t0 <= T, got t0 = {t0}, T = {t}")));
    }
    let mut spec = ProblemSpec::new(ProblemId::Stegoton, opts.cells_per_layer, 1).with_t_final(t);
    spec.recon = opts.recon;
    let pulse = match &spec.kind {
        ProblemKind::Stegoton(p) => p.pulse,
        _ => unreachable!(),
    };
    let setup = spec.setup()?;
    let frames = evolve(&setup.state, &setup.scheme, t, &[t0])?;
    let at_t0 = frames.first().expect("frame at t0").clone();
    let mut state = frames.last().expect("frame at T").clone();

    negate_momentum(&mut state);
    let reversed = HalfCosinePulse {
        reversed_about: Some(2.0 * t),
        ..pulse
    };
    let mut scheme = setup.scheme.clone();
    scheme.bc = BoundarySpec::new_1d(EdgeCondition::Inflow(Arc::new(reversed)), EdgeCondition::Extrapolation);
    let back = evolve(&state, &scheme, 2.0 * t - t0, &[])?;
    let mut end = back.last().expect("final frame").clone();
    negate_momentum(&mut end);

    let tv_forward = total_variation(&at_t0.interior_component(0)).max(total_variation(&state.interior_component(0)));
    let tv_backward = total_variation(&end.interior_component(0));
    if !tv_backward.is_finite() || tv_backward > opts.tv_factor * tv_forward.max(f64::MIN_POSITIVE) {
        return Err(Error::Invalidated(format!(
            "strain variation grew from {tv_forward:e} to {tv_backward:e} on the backward run"
        )));
    }
    let max_diff = at_t0
        .interior_q()
        .iter()
        .zip(end.interior_q())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(ReversibilityReport {
        cells_per_layer: opts.cells_per_layer,
        t_final: t,
        t0,
        max_diff,
        tv_forward,
        tv_backward,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_interval_is_exact() {
        let r = time_reversibility_test(&ReversibilityOptions::new(8, 12.0, 12.0)).unwrap();
        assert_eq!(r.max_diff, 0.0);
    }

    #[test]
    fn rejects_late_t0() {
        assert!(time_reversibility_test(&ReversibilityOptions::new(8, 5.0, 6.0)).is_err());
    }
}
