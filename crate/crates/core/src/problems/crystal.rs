use std::sync::Arc;

use super::{pick_recon, ProblemId, ProblemSetup, SolverForm};
use crate::error::{Error, Result};
use crate::grid::{BoundarySpec, EdgeCondition, GhostData, GhostSite, Grid1D, Grid2D, State};
use crate::recon::{ReconKind, ReconMode};
use crate::riemann::RiemannSolver;
use crate::solver::{Scheme, SemiDiscreteConfig};

/// Plane wave entering through the left ghost cells:
/// `p = A sin(k (c t - (x - x_lower)))` behind the front, `u = p / Z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IncidentWave {
    pub amplitude: f64,
    pub wavenumber: f64,
    pub x_lower: f64,
    pub rho: f64,
    pub c: f64,
}

impl IncidentWave {
    pub fn pressure(&self, x: f64, t: f64) -> f64 {
        let phase = self.c * t - (x - self.x_lower);
        if phase > 0.0 {
            self.amplitude * (self.wavenumber * phase).sin()
        } else {
            0.0
        }
    }

    /// Temporal period of the incident wave.
    pub fn period(&self) -> f64 {
        2.0 * std::f64::consts::PI / (self.wavenumber * self.c)
    }
}

impl GhostData for IncidentWave {
    fn fill(&self, site: &GhostSite, _interior: &[f64], _aux: &[f64], ghost: &mut [f64]) {
        let p = self.pressure(site.normal_coord, site.t);
        ghost[0] = p;
        ghost[1] = p / (self.rho * self.c);
        ghost[2] = 0.0;
    }
}

/// Square rods on a unit lattice, eight periods deep, in nondimensional
/// units (lattice spacing 1).
#[derive(Debug, Clone, PartialEq)]
pub struct CrystalParams {
    /// Cells per lattice period; also the cell count across the domain.
    pub my: usize,
    /// Wavenumber of the incident wave in lattice units.
    pub wavenumber: f64,
    pub amplitude: f64,
    pub rod_side: f64,
    pub rod_rho: f64,
    pub rod_c: f64,
    pub periods: usize,
    pub x_length: f64,
    /// Crystal starts here.
    pub x_crystal: f64,
    /// Leave the rods out (plane-wave reference).
    pub without_rods: bool,
    pub t_final: f64,
}

impl CrystalParams {
    /// Long wave below the gap.
    pub const K_LONG: f64 = 1.5;
    /// Wave inside the partial gap.
    pub const K_GAP: f64 = 2.93;

    pub fn new(my: usize) -> Self {
        Self {
            my,
            wavenumber: Self::K_LONG,
            amplitude: 1.0,
            rod_side: 0.4,
            rod_rho: 1000.0,
            rod_c: 1.0,
            periods: 8,
            x_length: 16.0,
            x_crystal: 4.0,
            without_rods: false,
            t_final: 24.0,
        }
    }

    pub fn mx(&self) -> usize {
        (self.x_length as usize) * self.my
    }

    pub fn grid(&self) -> Result<Grid2D> {
        Ok(Grid2D::new(
            Grid1D::new(0.0, self.x_length, self.mx())?,
            Grid1D::new(0.0, 1.0, self.my)?,
        ))
    }

    /// True inside a rod.
    pub fn in_rod(&self, x: f64, y: f64) -> bool {
        if self.without_rods || x < self.x_crystal || x > self.x_crystal + self.periods as f64 {
            return false;
        }
        let half = 0.5 * self.rod_side;
        let fx = x - x.floor() - 0.5;
        let fy = y - y.floor() - 0.5;
        fx.abs() < half && fy.abs() < half
    }

    pub fn incident(&self) -> IncidentWave {
        IncidentWave {
            amplitude: self.amplitude,
            wavenumber: self.wavenumber,
            x_lower: 0.0,
            rho: 1.0,
            c: 1.0,
        }
    }

    pub(super) fn setup(&self, recon: Option<ReconKind>, solver: Option<SolverForm>) -> Result<ProblemSetup> {
        if self.my < 20 || self.my % 10 != 0 {
            return Err(Error::Config(format!(
                "sonic crystal needs my a multiple of 10 and >= 20 to resolve the rods, got {}",
                self.my
            )));
        }
        if solver == Some(SolverForm::FWave) {
            return Err(Error::Config("the sonic crystal uses the exact acoustics solver".into()));
        }
        let recon = pick_recon(
            recon,
            ReconKind::Characteristicwise,
            &[
                ReconKind::Characteristicwise,
                ReconKind::Componentwise,
                ReconKind::WaveSlope,
                ReconKind::Constant,
            ],
        )?;
        let grid = self.grid()?;
        let mut state = State::new(&grid.into(), 3, 2);
        state.set_aux_with(|i, j, aux| {
            if self.in_rod(grid.x.center(i), grid.y.center(j)) {
                aux[0] = self.rod_rho;
                aux[1] = self.rod_c;
            } else {
                aux[0] = 1.0;
                aux[1] = 1.0;
            }
        });
        let bc = BoundarySpec::new_2d(
            EdgeCondition::Inflow(Arc::new(self.incident())),
            EdgeCondition::Extrapolation,
            EdgeCondition::Periodic,
            EdgeCondition::Periodic,
        );
        let config = SemiDiscreteConfig::new(ReconMode::new(recon), RiemannSolver::Acoustics);
        Ok(ProblemSetup {
            id: ProblemId::SonicCrystal,
            scheme: Scheme::new(grid, bc, config),
            state,
            t_final: self.t_final,
        })
    }
}
