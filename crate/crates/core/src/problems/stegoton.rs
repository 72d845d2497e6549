use std::f64::consts::PI;
use std::sync::Arc;

use super::{pick_recon, ProblemId, ProblemSetup, SolverForm};
use crate::error::{Error, Result};
use crate::grid::{BoundarySpec, EdgeCondition, GhostData, GhostSite, Grid, Grid1D, State};
use crate::recon::{ReconKind, ReconMode};
use crate::riemann::{RiemannSolver, StressLaw};
use crate::solver::{Scheme, SemiDiscreteConfig};

/// Left boundary moving as a wall with half-cosine velocity: ghost cells
/// mirror the interior, velocity reflected about the wall velocity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfCosinePulse {
    pub amplitude: f64,
    /// Half duration; the pulse peaks at `t0` and ends at `2 t0`.
    pub t0: f64,
    /// When set to `s`, impose `-u(s - t)`, the boundary data of the
    /// time-reversed problem.
    pub reversed_about: Option<f64>,
}

impl HalfCosinePulse {
    pub fn velocity(&self, t: f64) -> f64 {
        match self.reversed_about {
            Some(s) => -self.forward(s - t),
            None => self.forward(t),
        }
    }

    fn forward(&self, t: f64) -> f64 {
        if (0.0..=2.0 * self.t0).contains(&t) {
            self.amplitude * 0.5 * (1.0 + (PI * (t - self.t0) / self.t0).cos())
        } else {
            0.0
        }
    }
}

impl GhostData for HalfCosinePulse {
    fn fill(&self, site: &GhostSite, interior: &[f64], aux: &[f64], ghost: &mut [f64]) {
        ghost[0] = interior[0];
        ghost[1] = 2.0 * aux[0] * self.velocity(site.t) - interior[1];
    }

    fn mirrored(&self) -> bool {
        true
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StegotonParams {
    pub cells_per_layer: usize,
    /// Domain length in layers; `None` sizes the domain from the final time.
    pub layers: Option<usize>,
    pub law: StressLaw,
    pub pulse: HalfCosinePulse,
    pub t_final: f64,
    /// Periodic medium without inflow, for conservation checks.
    pub periodic: bool,
    /// Amplitude of a smooth strain bump added to the initial data.
    pub initial_strain: f64,
}

impl StegotonParams {
    pub fn new(cells_per_layer: usize) -> Self {
        Self {
            cells_per_layer,
            layers: None,
            law: StressLaw::Exponential,
            pulse: HalfCosinePulse {
                amplitude: 0.2,
                t0: 10.0,
                reversed_about: None,
            },
            t_final: 60.0,
            periodic: false,
            initial_strain: 0.0,
        }
    }

    /// Layers needed so nothing reaches the right boundary by `t_final`.
    pub fn num_layers(&self) -> usize {
        self.layers
            .unwrap_or_else(|| (1.25 * self.t_final).ceil() as usize + 10)
    }

    pub fn grid(&self) -> Result<Grid1D> {
        let layers = self.num_layers();
        Grid1D::new(0.0, layers as f64, layers * self.cells_per_layer)
    }

    /// (rho, K) at x.
    pub fn medium(x: f64) -> (f64, f64) {
        if x - x.floor() < 0.5 {
            (1.0, 1.0)
        } else {
            (4.0, 4.0)
        }
    }

    pub(super) fn setup(&self, recon: Option<ReconKind>, solver: Option<SolverForm>) -> Result<ProblemSetup> {
        if self.cells_per_layer < 2 || self.cells_per_layer % 2 != 0 {
            return Err(Error::Setup(format!(
                "layer halves must align with cells: cells_per_layer = {} is not even",
                self.cells_per_layer
            )));
        }
        if solver == Some(SolverForm::QWave) {
            return Err(Error::Config("the stegoton problem uses the f-wave solver".into()));
        }
        let recon = pick_recon(
            recon,
            ReconKind::Characteristicwise,
            &[
                ReconKind::FWaveSlope,
                ReconKind::Componentwise,
                ReconKind::Characteristicwise,
                ReconKind::Constant,
            ],
        )?;
        let grid = self.grid()?;
        let g: Grid = grid.into();
        let mut state = State::new(&g, 2, 2);
        state.set_aux_with(|i, _, aux| {
            let (rho, k) = Self::medium(grid.center(i));
            aux[0] = rho;
            aux[1] = k;
        });
        let length = grid.x_upper - grid.x_lower;
        let amp = self.initial_strain;
        if amp != 0.0 {
            let avg = crate::grid::cell_average_of(
                |x| amp * (1.0 + (2.0 * PI * x / length).sin()),
                &grid,
                crate::grid::DEFAULT_QUADRATURE_ORDER,
            );
            state.set_q_with(|i, _, q| q[0] = avg[i]);
        }
        let bc = if self.periodic {
            BoundarySpec::new_1d(EdgeCondition::Periodic, EdgeCondition::Periodic)
        } else {
            BoundarySpec::new_1d(EdgeCondition::Inflow(Arc::new(self.pulse)), EdgeCondition::Extrapolation)
        };
        let config = SemiDiscreteConfig::new(
            ReconMode::new(recon),
            RiemannSolver::Elasticity { law: self.law },
        );
        Ok(ProblemSetup {
            id: ProblemId::Stegoton,
            scheme: Scheme::new(grid, bc, config),
            state,
            t_final: self.t_final,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layer_pattern() {
        let p = StegotonParams {
            layers: Some(2),
            ..StegotonParams::new(24)
        };
        let s = p.setup(None, None).unwrap();
        let rho = s.state.interior_aux(0);
        let k = s.state.interior_aux(1);
        assert!(rho[..12].iter().all(|&v| v == 1.0));
        assert!(rho[12..24].iter().all(|&v| v == 4.0));
        assert!(k[..12].iter().all(|&v| v == 1.0));
        assert!(k[12..24].iter().all(|&v| v == 4.0));
    }

    #[test]
    fn odd_cells_per_layer_rejected() {
        assert!(StegotonParams::new(23).setup(None, None).is_err());
    }

    #[test]
    fn pulse_profile() {
        let p = StegotonParams::new(24).pulse;
        assert_eq!(p.velocity(0.0), 0.0);
        assert!((p.velocity(10.0) - 0.2).abs() < 1e-15);
        assert!(p.velocity(20.0).abs() < 1e-15);
        assert_eq!(p.velocity(25.0), 0.0);
        let r = HalfCosinePulse {
            reversed_about: Some(200.0),
            ..p
        };
        assert_eq!(r.velocity(195.0), -p.velocity(5.0));
    }
}
