use super::{pick_recon, ProblemId, ProblemSetup, SolverForm};
use crate::error::{Error, Result};
use crate::grid::{BoundarySpec, EdgeCondition, Grid, Grid1D, State};
use crate::quadrature::GaussLegendre;
use crate::recon::{ReconKind, ReconMode};
use crate::riemann::{RiemannSolver, StressLaw};
use crate::solver::{Scheme, SemiDiscreteConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Medium {
    /// rho = c = 1 everywhere.
    Homogeneous,
    /// rho = c = 1 for x < 0; rho = 4, c = 1/2 for x > 0.
    Interface,
}

impl Medium {
    /// (rho_l, c_l, rho_r, c_r)
    pub fn values(&self) -> (f64, f64, f64, f64) {
        match self {
            Medium::Homogeneous => (1.0, 1.0, 1.0, 1.0),
            Medium::Interface => (1.0, 1.0, 4.0, 0.5),
        }
    }

    /// (rho, c) at a cell center.
    pub fn at(&self, x: f64) -> (f64, f64) {
        let (rl, cl, rr, cr) = self.values();
        if x < 0.0 {
            (rl, cl)
        } else {
            (rr, cr)
        }
    }
}

/// Compact right-going pulse ((y - a)(y + a))^6 / a^12 with y = x - x0.
pub fn pulse(x: f64, x0: f64, a: f64) -> f64 {
    let y = x - x0;
    if y.abs() > a {
        return 0.0;
    }
    let s = (y / a) * (y / a) - 1.0;
    let s3 = s * s * s;
    s3 * s3
}

#[derive(Debug, Clone, PartialEq)]
pub struct AcousticsParams {
    pub medium: Medium,
    pub mx: usize,
    pub pulse_width: f64,
    pub x0: f64,
    pub x_lower: f64,
    pub x_upper: f64,
    pub t_final: f64,
}

/// Form in which the equations are solved.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AcousticsForm {
    /// (p, u) with the exact acoustics solver.
    PressureVelocity,
    /// (strain, momentum) with the linear-stress f-wave solver.
    StrainMomentum,
}

impl AcousticsParams {
    pub fn new(medium: Medium, mx: usize) -> Self {
        Self {
            medium,
            mx,
            pulse_width: 1.0,
            x0: -4.0,
            x_lower: -10.0,
            x_upper: 10.0,
            t_final: 5.0,
        }
    }

    /// Pulse half-width `a`; the final time becomes `a - x0`, when the pulse
    /// has just cleared x = 0.
    pub fn with_width(mut self, a: f64) -> Self {
        self.pulse_width = a;
        self.t_final = a - self.x0;
        self
    }

    pub fn form(solver: Option<SolverForm>) -> AcousticsForm {
        match solver.unwrap_or(SolverForm::QWave) {
            SolverForm::QWave => AcousticsForm::PressureVelocity,
            SolverForm::FWave => AcousticsForm::StrainMomentum,
        }
    }

    pub fn grid(&self) -> Result<Grid1D> {
        Grid1D::new(self.x_lower, self.x_upper, self.mx)
    }

    /// Pressure reflection and transmission coefficients at x = 0.
    pub fn coefficients(&self) -> (f64, f64) {
        let (rl, cl, rr, cr) = self.medium.values();
        let (zl, zr) = (rl * cl, rr * cr);
        ((zr - zl) / (zl + zr), 2.0 * zr / (zl + zr))
    }

    /// Exact (p, u) at (x, t) by characteristics. The pulse starts left of
    /// the interface and leaves through open boundaries.
    pub fn exact(&self, x: f64, t: f64) -> (f64, f64) {
        let (rl, cl, rr, cr) = self.medium.values();
        let (zl, zr) = (rl * cl, rr * cr);
        let (refl, trans) = self.coefficients();
        let f = |xi: f64| pulse(xi, self.x0, self.pulse_width);
        if x < 0.0 {
            let inc = f(x - cl * t);
            // arrival time at the interface is -xi / cl for a left-side foot xi
            let back = refl * f(-x - cl * t);
            (inc + back, (inc - back) / zl)
        } else {
            let p = trans * f(cl * (x / cr - t));
            (p, p / zr)
        }
    }

    /// Points where the exact solution at time t is not polynomial.
    fn breakpoints(&self, t: f64) -> Vec<f64> {
        let (_, cl, _, cr) = self.medium.values();
        let mut pts = vec![0.0];
        for y in [self.x0 - self.pulse_width, self.x0 + self.pulse_width] {
            pts.push(y + cl * t);
            pts.push(-y - cl * t);
            pts.push(cr * (y / cl + t));
        }
        pts
    }

    /// Exact cell averages of (p, u), interior-ordered and interleaved.
    pub fn exact_averages(&self, grid: &Grid1D, t: f64) -> Vec<f64> {
        let rule = GaussLegendre::new(7);
        let bps = self.breakpoints(t);
        let dx = grid.dx();
        let mut out = Vec::with_capacity(2 * grid.num_cells);
        for i in 0..grid.num_cells {
            let (a, b) = (grid.edge(i), grid.edge(i) + dx);
            let mut cuts: Vec<f64> = bps.iter().copied().filter(|&x| x > a && x < b).collect();
            cuts.push(a);
            cuts.push(b);
            cuts.sort_by(f64::total_cmp);
            let (mut p, mut u) = (0.0, 0.0);
            for w in cuts.windows(2) {
                p += rule.integrate(|x| self.exact(x, t).0, w[0], w[1]);
                u += rule.integrate(|x| self.exact(x, t).1, w[0], w[1]);
            }
            out.push(p / dx);
            out.push(u / dx);
        }
        out
    }

    pub(super) fn setup(
        &self,
        id: ProblemId,
        recon: Option<ReconKind>,
        solver: Option<SolverForm>,
    ) -> Result<ProblemSetup> {
        if self.mx < 50 {
            return Err(Error::Config(format!("acoustics needs mx >= 50, got {}", self.mx)));
        }
        if !(self.pulse_width > 0.0 && self.pulse_width.is_finite()) {
            return Err(Error::Config(format!("pulse width must be positive, got {}", self.pulse_width)));
        }
        let grid = self.grid()?;
        if self.medium == Medium::Interface && grid.interface_at(0.0, 1e-9).is_none() {
            return Err(Error::Setup(format!(
                "material interface x = 0 is not a cell edge for mx = {}",
                self.mx
            )));
        }
        let form = Self::form(solver);
        let (solver, allowed) = match form {
            AcousticsForm::PressureVelocity => (
                RiemannSolver::Acoustics,
                &[
                    ReconKind::Componentwise,
                    ReconKind::Characteristicwise,
                    ReconKind::WaveSlope,
                    ReconKind::Constant,
                ][..],
            ),
            AcousticsForm::StrainMomentum => (
                RiemannSolver::Elasticity { law: StressLaw::Linear },
                &[
                    ReconKind::Componentwise,
                    ReconKind::Characteristicwise,
                    ReconKind::FWaveSlope,
                    ReconKind::Constant,
                ][..],
            ),
        };
        let recon = pick_recon(recon, ReconKind::Componentwise, allowed)?;
        let g: Grid = grid.into();
        let mut state = State::new(&g, 2, 2);
        let pu = self.exact_averages(&grid, 0.0);
        let medium = self.medium;
        state.set_aux_with(|i, _, aux| {
            let (rho, c) = medium.at(grid.center(i));
            match form {
                AcousticsForm::PressureVelocity => {
                    aux[0] = rho;
                    aux[1] = c;
                }
                AcousticsForm::StrainMomentum => {
                    aux[0] = rho;
                    aux[1] = rho * c * c;
                }
            }
        });
        state.set_q_with(|i, _, q| {
            let (rho, c) = medium.at(grid.center(i));
            let (p, u) = (pu[2 * i], pu[2 * i + 1]);
            match form {
                AcousticsForm::PressureVelocity => {
                    q[0] = p;
                    q[1] = u;
                }
                AcousticsForm::StrainMomentum => {
                    q[0] = -p / (rho * c * c);
                    q[1] = rho * u;
                }
            }
        });
        let bc = BoundarySpec::new_1d(EdgeCondition::Extrapolation, EdgeCondition::Extrapolation);
        let config = SemiDiscreteConfig::new(ReconMode::new(recon), solver);
        Ok(ProblemSetup {
            id,
            scheme: Scheme::new(grid, bc, config),
            state,
            t_final: self.t_final,
        })
    }

    /// Pressure and velocity per interior cell.
    pub fn observables(&self, state: &State, solver: Option<SolverForm>) -> (Vec<&'static str>, Vec<f64>) {
        let q = state.interior_q();
        let values = match Self::form(solver) {
            AcousticsForm::PressureVelocity => q,
            AcousticsForm::StrainMomentum => {
                let aux = state.interior_aux(0);
                let bulk = state.interior_aux(1);
                let mut out = vec![0.0; q.len()];
                for i in 0..aux.len() {
                    out[2 * i] = -bulk[i] * q[2 * i];
                    out[2 * i + 1] = q[2 * i + 1] / aux[i];
                }
                out
            }
        };
        (vec!["p", "u"], values)
    }
}
