//! Semi-discrete right-hand side, SSPRK(10,4) stepping and the time loop.

mod evolve;
mod rhs;
mod ssprk;

pub use evolve::{compute_dt, evolve, evolve_with, EvolveOptions, EvolveStats, StepInfo};
pub use rhs::{rhs, rhs_filled, total_fluctuation, RhsResult};
pub use ssprk::{ssprk104_step, ssprk104_step_with, STAGE_TIMES};

use crate::error::{Error, Result};
use crate::grid::{BoundarySpec, Grid, State};
use crate::recon::ReconMode;
use crate::riemann::RiemannSolver;

/// Default target Courant number for SSPRK(10,4).
pub const DEFAULT_CFL: f64 = 2.45;
/// Rejection threshold relative to the target.
pub const CFL_MAX_FACTOR: f64 = 1.2;

/// Source evaluated pointwise at cell centers and added to the RHS.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CellSource {
    /// Radially symmetric shallow water in (h, hU): (-hU/r, -hU^2/(h r)).
    RadialShallow,
}

impl CellSource {
    fn apply(&self, q: &[f64], r: f64, out: &mut [f64]) {
        match self {
            CellSource::RadialShallow => {
                let (h, hu) = (q[0], q[1]);
                out[0] -= hu / r;
                out[1] -= hu * hu / (h * r);
            }
        }
    }
}

/// Reconstruction, Riemann solver, CFL control and optional source.
#[derive(Debug, Clone, PartialEq)]
pub struct SemiDiscreteConfig {
    pub recon: ReconMode,
    pub solver: RiemannSolver,
    pub cfl_target: f64,
    pub cfl_max: f64,
    pub source: Option<CellSource>,
}

impl SemiDiscreteConfig {
    pub fn new(recon: ReconMode, solver: RiemannSolver) -> Self {
        Self {
            recon,
            solver,
            cfl_target: DEFAULT_CFL,
            cfl_max: CFL_MAX_FACTOR * DEFAULT_CFL,
            source: None,
        }
    }

    /// Set the target CFL and the matching rejection threshold.
    pub fn with_cfl(mut self, cfl: f64) -> Self {
        self.cfl_target = cfl;
        self.cfl_max = CFL_MAX_FACTOR * cfl;
        self
    }

    pub fn with_source(mut self, source: CellSource) -> Self {
        self.source = Some(source);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.cfl_target > 0.0 && self.cfl_target <= self.cfl_max && self.cfl_max.is_finite()) {
            return Err(Error::Config(format!(
                "need 0 < cfl_target <= cfl_max, got {} and {}",
                self.cfl_target, self.cfl_max
            )));
        }
        self.solver.check()?;
        self.recon.check(&self.solver)
    }
}

/// Everything needed to advance a state: grid, boundaries and discretization.
#[derive(Debug, Clone)]
pub struct Scheme {
    pub grid: Grid,
    pub bc: BoundarySpec,
    pub config: SemiDiscreteConfig,
}

impl Scheme {
    pub fn new(grid: impl Into<Grid>, bc: BoundarySpec, config: SemiDiscreteConfig) -> Self {
        Self {
            grid: grid.into(),
            bc,
            config,
        }
    }

    /// Check the scheme against a state before any compute.
    pub fn validate(&self, state: &State) -> Result<()> {
        self.config.validate()?;
        if state.layout != self.grid.layout() {
            return Err(Error::Setup("state layout does not match the grid".into()));
        }
        if !self.config.solver.supports(state.num_eqn) {
            return Err(Error::Config(format!(
                "{} solver does not handle {} equations",
                self.config.solver.name(),
                state.num_eqn
            )));
        }
        if state.num_aux < self.config.solver.num_aux() {
            return Err(Error::Config(format!(
                "{} solver needs {} aux fields, state has {}",
                self.config.solver.name(),
                self.config.solver.num_aux(),
                state.num_aux
            )));
        }
        if self.config.source.is_some() && (self.grid.dim() != 1 || state.num_eqn != 2) {
            return Err(Error::Config("radial source applies to 1D two-equation systems".into()));
        }
        self.bc.validate(state.num_eqn, self.grid.dim())?;
        state.validate()?;
        self.check_positivity(state)
    }

    /// Depth positivity for shallow water.
    pub fn check_positivity(&self, state: &State) -> Result<()> {
        if matches!(
            self.config.solver,
            RiemannSolver::ShallowRoe { .. } | RiemannSolver::ShallowFWave { .. }
        ) {
            for c in state.layout.interior_indices() {
                let h = state.q[c * state.num_eqn];
                if !(h > 0.0) {
                    return Err(Error::DryState { depth: h }.at(crate::error::Location::Cell { index: c }));
                }
            }
        }
        Ok(())
    }
}
