use super::{pick_recon, ProblemId, ProblemSetup, SolverForm};
use crate::error::{Error, Result};
use crate::grid::{BoundarySpec, EdgeCondition, Grid1D, Grid2D, State};
use crate::recon::{ReconKind, ReconMode};
use crate::riemann::RiemannSolver;
use crate::solver::{CellSource, Scheme, SemiDiscreteConfig};

/// Radially symmetric dam break in (h, hU) on r in [0, 2.5].
#[derive(Debug, Clone, PartialEq)]
pub struct RadialParams {
    pub mr: usize,
    pub r_max: f64,
    pub g: f64,
    pub t_final: f64,
}

impl RadialParams {
    pub fn new(mr: usize) -> Self {
        Self {
            mr,
            r_max: 2.5,
            g: 1.0,
            t_final: 1.0,
        }
    }

    pub fn grid(&self) -> Result<Grid1D> {
        Grid1D::new(0.0, self.r_max, self.mr)
    }

    pub(super) fn setup(&self, recon: Option<ReconKind>, solver: Option<SolverForm>) -> Result<ProblemSetup> {
        if self.mr < 100 {
            return Err(Error::Config(format!("radial problem needs mr >= 100, got {}", self.mr)));
        }
        if solver == Some(SolverForm::FWave) {
            return Err(Error::Config("the radial problem uses the Roe solver".into()));
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
        let mut state = State::new(&grid.into(), 2, 0);
        let dx = grid.dx();
        state.set_q_with(|i, _, q| {
            let (a, b) = (grid.edge(i), grid.edge(i) + dx);
            let inside = ((0.5f64).min(b) - a).max(0.0) / dx;
            q[0] = 1.0 + inside;
            q[1] = 0.0;
        });
        let bc = BoundarySpec::new_1d(EdgeCondition::wall(&[1]), EdgeCondition::Extrapolation);
        let config = SemiDiscreteConfig::new(
            ReconMode::new(recon),
            RiemannSolver::ShallowRoe {
                g: self.g,
                entropy_fix: true,
            },
        )
        .with_source(CellSource::RadialShallow);
        Ok(ProblemSetup {
            id: ProblemId::SwRadial1d,
            scheme: Scheme::new(grid, bc, config),
            state,
            t_final: self.t_final,
        })
    }
}

/// Integral of sqrt(R^2 - s^2) from 0 to t, for 0 <= t <= R.
fn circle_primitive(t: f64, r: f64) -> f64 {
    let t = t.min(r);
    0.5 * (t * (r * r - t * t).max(0.0).sqrt() + r * r * (t / r).asin())
}

/// Area of the disk of radius r inside [0, x] x [0, y], x, y >= 0.
fn quadrant_area(x: f64, y: f64, r: f64) -> f64 {
    let xr = x.min(r);
    let knee = if y < r { (r * r - y * y).sqrt() } else { 0.0 };
    let flat = xr.min(knee);
    y.min(r) * flat + circle_primitive(xr, r) - circle_primitive(flat, r)
}

/// Area of the disk inside [x0, x1] x [y0, y1] with x0, y0 >= 0.
fn positive_area(x0: f64, x1: f64, y0: f64, y1: f64, r: f64) -> f64 {
    quadrant_area(x1, y1, r) - quadrant_area(x0, y1, r) - quadrant_area(x1, y0, r)
        + quadrant_area(x0, y0, r)
}

/// Fraction of the cell [x0, x1] x [y0, y1] covered by the disk of radius r
/// centred at the origin. Symmetric in swapping the two ranges, bit for bit.
pub fn circle_cell_fraction(x0: f64, x1: f64, y0: f64, y1: f64, r: f64) -> f64 {
    // canonical order so transposed cells follow the same arithmetic
    let ((x0, x1), (y0, y1)) = if (x0, x1) <= (y0, y1) {
        ((x0, x1), (y0, y1))
    } else {
        ((y0, y1), (x0, x1))
    };
    let split = |a: f64, b: f64| -> Vec<(f64, f64)> {
        if a >= 0.0 {
            vec![(a, b)]
        } else if b <= 0.0 {
            vec![(-b, -a)]
        } else {
            vec![(0.0, -a), (0.0, b)]
        }
    };
    let mut area = 0.0;
    for (a, b) in split(x0, x1) {
        for (c, d) in split(y0, y1) {
            area += positive_area(a, b, c, d, r);
        }
    }
    area / ((x1 - x0) * (y1 - y0))
}

/// Circular dam break on [-1.25, 1.25]^2.
#[derive(Debug, Clone, PartialEq)]
pub struct DamBreakParams {
    pub mx: usize,
    pub my: usize,
    pub g: f64,
    pub radius: f64,
    pub half_width: f64,
    pub t_final: f64,
}

impl DamBreakParams {
    pub fn new(mx: usize, my: usize) -> Self {
        Self {
            mx,
            my,
            g: 1.0,
            radius: 0.5,
            half_width: 1.25,
            t_final: 1.0,
        }
    }

    pub fn grid(&self) -> Result<Grid2D> {
        let w = self.half_width;
        Ok(Grid2D::new(
            Grid1D::new(-w, w, self.mx)?,
            Grid1D::new(-w, w, self.my)?,
        ))
    }

    pub(super) fn setup(&self, recon: Option<ReconKind>, solver: Option<SolverForm>) -> Result<ProblemSetup> {
        if self.mx != self.my {
            return Err(Error::Config(format!(
                "dam break needs mx = my, got {} and {}",
                self.mx, self.my
            )));
        }
        if solver == Some(SolverForm::FWave) {
            return Err(Error::Config("the dam break uses the Roe solver".into()));
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
        let mut state = State::new(&grid.into(), 3, 0);
        let (dx, dy) = (grid.dx(), grid.dy());
        state.set_q_with(|i, j, q| {
            let (x0, y0) = (grid.x.edge(i), grid.y.edge(j));
            let f = circle_cell_fraction(x0, x0 + dx, y0, y0 + dy, self.radius);
            q[0] = 1.0 + f;
        });
        let bc = BoundarySpec::uniform(EdgeCondition::Extrapolation);
        let config = SemiDiscreteConfig::new(
            ReconMode::new(recon),
            RiemannSolver::ShallowRoe {
                g: self.g,
                entropy_fix: true,
            },
        );
        Ok(ProblemSetup {
            id: ProblemId::SwDambreak2d,
            scheme: Scheme::new(grid, bc, config),
            state,
            t_final: self.t_final,
        })
    }
}

/// Initial surface on top of the lake at rest.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HumpKind {
    /// Surface raised by epsilon for 0.05 < x < 0.15.
    EpsPerturb,
    /// Lake at rest.
    ZeroPerturb,
    /// Surface raised by exp(-50 (x - 0.1)^2) / 100.
    Smooth,
}

/// How the bathymetry enters each cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BathymetrySampling {
    /// Exact cell average.
    CellAverage,
    /// Value at the cell center.
    CellCenter,
}

/// b(x, y) = 0.8 exp(-5 (x - 0.9)^2 - 50 (y - 0.5)^2).
pub fn hump_bathymetry(x: f64, y: f64) -> f64 {
    0.8 * (-5.0 * (x - 0.9) * (x - 0.9) - 50.0 * (y - 0.5) * (y - 0.5)).exp()
}

/// Mean of exp(-a (s - c)^2) over [s0, s1].
fn gaussian_mean(a: f64, c: f64, s0: f64, s1: f64) -> f64 {
    let k = a.sqrt();
    let (u0, u1) = (k * (s0 - c), k * (s1 - c));
    // subtract on the side where erf is far from saturation
    let diff = if u0 >= 0.0 {
        libm::erfc(u0) - libm::erfc(u1)
    } else if u1 <= 0.0 {
        libm::erfc(-u1) - libm::erfc(-u0)
    } else {
        libm::erf(u1) - libm::erf(u0)
    };
    0.5 * std::f64::consts::PI.sqrt() / k * diff / (s1 - s0)
}

/// Exact cell average of the hump over [x0, x1] x [y0, y1].
pub fn hump_cell_bathymetry(x0: f64, x1: f64, y0: f64, y1: f64) -> f64 {
    0.8 * gaussian_mean(5.0, 0.9, x0, x1) * gaussian_mean(50.0, 0.5, y0, y1)
}

/// Water over an ellipsoidal hump on [0, 2] x [0, 1].
#[derive(Debug, Clone, PartialEq)]
pub struct HumpParams {
    pub kind: HumpKind,
    pub mx: usize,
    pub my: usize,
    pub epsilon: f64,
    pub g: f64,
    pub sampling: BathymetrySampling,
    /// Solve on y in [0.5, 1] with a wall at y = 0.5; the data are symmetric
    /// about that line. `my` still counts cells across the full domain.
    pub upper_half: bool,
    /// Solve on the first `n` of the `mx` columns only.
    pub columns: Option<usize>,
    pub t_final: f64,
}

impl HumpParams {
    pub fn new(kind: HumpKind, mx: usize, my: usize) -> Self {
        Self {
            kind,
            mx,
            my,
            epsilon: 0.01,
            g: 9.81,
            sampling: BathymetrySampling::CellCenter,
            upper_half: false,
            columns: None,
            t_final: 0.12,
        }
    }

    pub fn grid(&self) -> Result<Grid2D> {
        let y = if self.upper_half {
            Grid1D::new(0.5, 1.0, self.my / 2)?
        } else {
            Grid1D::new(0.0, 1.0, self.my)?
        };
        let n = self.num_columns();
        Ok(Grid2D::new(Grid1D::new(0.0, 2.0 * n as f64 / self.mx as f64, n)?, y))
    }

    fn num_columns(&self) -> usize {
        self.columns.unwrap_or(self.mx).min(self.mx)
    }

    /// An x beyond which the water stays at rest, to about 1e-14 of the
    /// perturbation, up to time `t`.
    pub fn quiet_beyond(&self, t: f64) -> f64 {
        let support = match self.kind {
            HumpKind::ZeroPerturb => 0.0,
            HumpKind::EpsPerturb => 0.15,
            HumpKind::Smooth => 0.1 + (14.0 * std::f64::consts::LN_10 / 50.0).sqrt(),
        };
        let amplitude = match self.kind {
            HumpKind::ZeroPerturb => 0.0,
            HumpKind::EpsPerturb => self.epsilon,
            HumpKind::Smooth => 0.01,
        };
        let c = (self.g * (1.0 + amplitude)).sqrt();
        support + 1.25 * c * t
    }

    pub fn full_grid(&self) -> Result<Grid2D> {
        Ok(Grid2D::new(
            Grid1D::new(0.0, 2.0, self.mx)?,
            Grid1D::new(0.0, 1.0, self.my)?,
        ))
    }

    /// Full-domain interleaved (h, hu, hv) from upper-half values.
    pub fn unfold(&self, half: &[f64]) -> Vec<f64> {
        let (mx, hy) = (self.num_columns(), self.my / 2);
        let mut out = vec![0.0; 2 * half.len()];
        for j in 0..hy {
            for i in 0..mx {
                let src = &half[(j * mx + i) * 3..(j * mx + i + 1) * 3];
                let up = ((hy + j) * mx + i) * 3;
                let down = ((hy - 1 - j) * mx + i) * 3;
                out[up..up + 3].copy_from_slice(src);
                out[down] = src[0];
                out[down + 1] = src[1];
                out[down + 2] = -src[2];
            }
        }
        out
    }

    /// Bathymetry cell values.
    pub fn bathymetry(&self, grid: &Grid2D) -> Vec<f64> {
        let (dx, dy) = (grid.dx(), grid.dy());
        let mut b = Vec::with_capacity(grid.x.num_cells * grid.y.num_cells);
        for j in 0..grid.y.num_cells {
            for i in 0..grid.x.num_cells {
                let (x0, y0) = (grid.x.edge(i), grid.y.edge(j));
                b.push(match self.sampling {
                    BathymetrySampling::CellAverage => hump_cell_bathymetry(x0, x0 + dx, y0, y0 + dy),
                    BathymetrySampling::CellCenter => hump_bathymetry(grid.x.center(i), grid.y.center(j)),
                });
            }
        }
        b
    }

    /// Cell average of the surface perturbation, a function of x only.
    fn perturbation(&self, x0: f64, x1: f64) -> f64 {
        match self.kind {
            HumpKind::ZeroPerturb => 0.0,
            HumpKind::EpsPerturb => {
                let overlap = (x1.min(0.15) - x0.max(0.05)).max(0.0);
                self.epsilon * overlap / (x1 - x0)
            }
            HumpKind::Smooth => gaussian_mean(50.0, 0.1, x0, x1) / 100.0,
        }
    }

    pub(super) fn setup(
        &self,
        id: ProblemId,
        recon: Option<ReconKind>,
        solver: Option<SolverForm>,
    ) -> Result<ProblemSetup> {
        if self.kind != HumpKind::Smooth && (self.mx < 100 || self.my < 50) {
            return Err(Error::Config(format!(
                "hump perturbation runs need at least 100 x 50 cells, got {} x {}",
                self.mx, self.my
            )));
        }
        if self.upper_half && self.my % 2 != 0 {
            return Err(Error::Config(format!("half-domain runs need an even my, got {}", self.my)));
        }
        if !(self.epsilon >= 0.0) {
            return Err(Error::Config(format!("epsilon must be nonnegative, got {}", self.epsilon)));
        }
        if solver == Some(SolverForm::QWave) {
            return Err(Error::Config(
                "bathymetry needs the f-wave solver; the Roe solver ignores it".into(),
            ));
        }
        let recon = pick_recon(
            recon,
            ReconKind::FWaveSlope,
            &[
                ReconKind::FWaveSlope,
                ReconKind::Componentwise,
                ReconKind::Characteristicwise,
                ReconKind::Constant,
            ],
        )?;
        let grid = self.grid()?;
        let mut state = State::new(&grid.into(), 3, 1);
        let b = self.bathymetry(&grid);
        let nx = grid.x.num_cells;
        let dx = grid.dx();
        state.set_aux_with(|i, j, aux| aux[0] = b[j * nx + i]);
        state.set_q_with(|i, j, q| {
            let x0 = grid.x.edge(i);
            q[0] = (1.0 - b[j * nx + i]) + self.perturbation(x0, x0 + dx);
        });
        let bc = if self.upper_half {
            BoundarySpec::new_2d(
                EdgeCondition::Extrapolation,
                EdgeCondition::Extrapolation,
                EdgeCondition::wall(&[2]),
                EdgeCondition::Extrapolation,
            )
        } else {
            BoundarySpec::uniform(EdgeCondition::Extrapolation)
        };
        let config = SemiDiscreteConfig::new(ReconMode::new(recon), RiemannSolver::ShallowFWave { g: self.g });
        Ok(ProblemSetup {
            id,
            scheme: Scheme::new(grid, bc, config),
            state,
            t_final: self.t_final,
        })
    }
}
