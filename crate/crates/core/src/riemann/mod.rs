//! Riemann solvers returning waves, speeds and fluctuations.
//!
//! Every solver works in the normal orientation: component 1 is the normal
//! momentum or velocity. Sweeps along y permute components before calling in.

mod acoustics;
mod elasticity;
mod shallow;

pub use elasticity::StressLaw;

use crate::error::{Error, Result};

/// Largest system handled (2D shallow water and 2D acoustics).
pub const MAX_EQN: usize = 3;
pub const MAX_WAVES: usize = 3;

pub type Vector = [f64; MAX_EQN];

/// Waves (or f-waves), speeds and fluctuations from one interface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveDecomposition {
    pub num_eqn: usize,
    pub num_waves: usize,
    pub waves: [Vector; MAX_WAVES],
    pub speeds: [f64; MAX_WAVES],
    pub amdq: Vector,
    pub apdq: Vector,
    pub is_fwave: bool,
    /// For f-waves whose speed may vanish, the matching q-wave.
    pub qwave_hint: [Option<Vector>; MAX_WAVES],
}

impl WaveDecomposition {
    pub fn new(num_eqn: usize, num_waves: usize, is_fwave: bool) -> Self {
        Self {
            num_eqn,
            num_waves,
            waves: [[0.0; MAX_EQN]; MAX_WAVES],
            speeds: [0.0; MAX_WAVES],
            amdq: [0.0; MAX_EQN],
            apdq: [0.0; MAX_EQN],
            is_fwave,
            qwave_hint: [None; MAX_WAVES],
        }
    }

    pub fn wave(&self, p: usize) -> &[f64] {
        &self.waves[p][..self.num_eqn]
    }

    pub fn max_speed(&self) -> f64 {
        self.speeds[..self.num_waves]
            .iter()
            .fold(0.0, |a, s| a.max(s.abs()))
    }

    /// Sum of waves.
    pub fn wave_sum(&self) -> Vector {
        let mut out = [0.0; MAX_EQN];
        for p in 0..self.num_waves {
            for k in 0..self.num_eqn {
                out[k] += self.waves[p][k];
            }
        }
        out
    }

    /// Fill amdq and apdq from the waves and speeds.
    #[inline]
    pub fn set_fluctuations(&mut self) {
        let (amdq, apdq) = fluctuations_from_waves(self);
        self.amdq = amdq;
        self.apdq = apdq;
    }
}

/// Left- and right-going fluctuations by the sign of each speed. q-waves are
/// scaled by their speed; f-waves are summed, with zero-speed f-waves split
/// evenly.
#[inline]
pub fn fluctuations_from_waves(d: &WaveDecomposition) -> (Vector, Vector) {
    let mut amdq = [0.0; MAX_EQN];
    let mut apdq = [0.0; MAX_EQN];
    for p in 0..d.num_waves {
        let s = d.speeds[p];
        let w = &d.waves[p];
        for k in 0..d.num_eqn {
            if d.is_fwave {
                if s < 0.0 {
                    amdq[k] += w[k];
                } else if s > 0.0 {
                    apdq[k] += w[k];
                } else {
                    amdq[k] += 0.5 * w[k];
                    apdq[k] += 0.5 * w[k];
                }
            } else {
                amdq[k] += s.min(0.0) * w[k];
                apdq[k] += s.max(0.0) * w[k];
            }
        }
    }
    (amdq, apdq)
}

/// Right eigenvectors (as columns of `r`), left eigenvectors (rows of `l`) and
/// eigenvalues of a cell's normal coefficient matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigensystem {
    pub num_eqn: usize,
    pub r: [[f64; MAX_EQN]; MAX_EQN],
    pub l: [[f64; MAX_EQN]; MAX_EQN],
    pub speeds: [f64; MAX_EQN],
}

impl Eigensystem {
    /// Build from right eigenvectors given column by column.
    pub fn from_columns(num_eqn: usize, cols: &[Vector], speeds: &[f64]) -> Self {
        let mut r = [[0.0; MAX_EQN]; MAX_EQN];
        for (p, col) in cols.iter().enumerate().take(num_eqn) {
            for k in 0..num_eqn {
                r[k][p] = col[k];
            }
        }
        let l = invert(num_eqn, &r);
        let mut s = [0.0; MAX_EQN];
        s[..num_eqn].copy_from_slice(&speeds[..num_eqn]);
        Self {
            num_eqn,
            r,
            l,
            speeds: s,
        }
    }

    /// Characteristic coefficients L q.
    #[inline]
    pub fn project(&self, q: &[f64]) -> Vector {
        let mut out = [0.0; MAX_EQN];
        for p in 0..self.num_eqn {
            let mut s = 0.0;
            for k in 0..self.num_eqn {
                s += self.l[p][k] * q[k];
            }
            out[p] = s;
        }
        out
    }

    /// R w.
    #[inline]
    pub fn expand(&self, w: &[f64]) -> Vector {
        let mut out = [0.0; MAX_EQN];
        for k in 0..self.num_eqn {
            let mut s = 0.0;
            for p in 0..self.num_eqn {
                s += self.r[k][p] * w[p];
            }
            out[k] = s;
        }
        out
    }
}

/// Gauss-Jordan inverse with partial pivoting of the leading n x n block.
fn invert(n: usize, a: &[[f64; MAX_EQN]; MAX_EQN]) -> [[f64; MAX_EQN]; MAX_EQN] {
    let mut m = *a;
    let mut inv = [[0.0; MAX_EQN]; MAX_EQN];
    for (i, row) in inv.iter_mut().enumerate().take(n) {
        row[i] = 1.0;
    }
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&x, &y| m[x][col].abs().total_cmp(&m[y][col].abs()))
            .unwrap();
        m.swap(col, piv);
        inv.swap(col, piv);
        let d = m[col][col];
        for k in 0..n {
            m[col][k] /= d;
            inv[col][k] /= d;
        }
        for row in 0..n {
            if row != col {
                let f = m[row][col];
                if f != 0.0 {
                    for k in 0..n {
                        m[row][k] -= f * m[col][k];
                        inv[row][k] -= f * inv[col][k];
                    }
                }
            }
        }
    }
    inv
}

/// The solver families. Auxiliary layouts: acoustics `[rho, c]`, shallow
/// f-wave `[b]`, elasticity `[rho, K]`; the others use none.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RiemannSolver {
    /// Exact solver for linear acoustics in (p, u) or (p, u, v).
    Acoustics,
    /// Roe solver for shallow water in (h, hu) or (h, hu, hv).
    ShallowRoe { g: f64, entropy_fix: bool },
    /// f-wave solver for shallow water over piecewise-constant bathymetry.
    ShallowFWave { g: f64 },
    /// f-wave solver for 1D elasticity in (strain, momentum).
    Elasticity { law: StressLaw },
    /// Scalar advection at constant speed.
    Advection { speed: f64 },
}

impl RiemannSolver {
    pub fn name(&self) -> &'static str {
        match self {
            RiemannSolver::Acoustics => "acoustics",
            RiemannSolver::ShallowRoe { .. } => "shallow_roe",
            RiemannSolver::ShallowFWave { .. } => "shallow_fwave",
            RiemannSolver::Elasticity { .. } => "elasticity_fwave",
            RiemannSolver::Advection { .. } => "advection",
        }
    }

    pub fn is_fwave(&self) -> bool {
        matches!(
            self,
            RiemannSolver::ShallowFWave { .. } | RiemannSolver::Elasticity { .. }
        )
    }

    pub fn num_aux(&self) -> usize {
        match self {
            RiemannSolver::Acoustics | RiemannSolver::Elasticity { .. } => 2,
            RiemannSolver::ShallowFWave { .. } => 1,
            _ => 0,
        }
    }

    /// Whether the solver handles `m` equations.
    pub fn supports(&self, m: usize) -> bool {
        match self {
            RiemannSolver::Acoustics
            | RiemannSolver::ShallowRoe { .. }
            | RiemannSolver::ShallowFWave { .. } => m == 2 || m == 3,
            RiemannSolver::Elasticity { .. } => m == 2,
            RiemannSolver::Advection { .. } => m == 1,
        }
    }

    /// Whether the cell sum of q is conserved in the absence of sources.
    pub fn is_conservative(&self) -> bool {
        !matches!(self, RiemannSolver::Acoustics)
    }

    pub fn check(&self) -> Result<()> {
        match *self {
            RiemannSolver::ShallowRoe { g, .. } | RiemannSolver::ShallowFWave { g } => {
                if !(g > 0.0 && g.is_finite()) {
                    return Err(Error::Config(format!("gravity must be positive, got {g}")));
                }
            }
            RiemannSolver::Advection { speed } if !speed.is_finite() => {
                return Err(Error::Config("advection speed must be finite".into()));
            }
            _ => {}
        }
        Ok(())
    }

    /// Solve the Riemann problem between `ql` and `qr`.
    #[inline]
    pub fn solve(&self, ql: &[f64], qr: &[f64], auxl: &[f64], auxr: &[f64]) -> Result<WaveDecomposition> {
        match *self {
            RiemannSolver::Acoustics => acoustics::solve(ql, qr, auxl, auxr),
            RiemannSolver::ShallowRoe { g, entropy_fix } => shallow::solve_roe(ql, qr, g, entropy_fix),
            RiemannSolver::ShallowFWave { g } => shallow::solve_fwave(ql, qr, auxl[0], auxr[0], g),
            RiemannSolver::Elasticity { law } => elasticity::solve(ql, qr, auxl, auxr, law),
            RiemannSolver::Advection { speed } => {
                let mut d = WaveDecomposition::new(1, 1, false);
                d.waves[0][0] = qr[0] - ql[0];
                d.speeds[0] = speed;
                d.set_fluctuations();
                Ok(d)
            }
        }
    }

    /// Normal flux f(q) for conservative systems.
    #[inline]
    pub fn flux(&self, q: &[f64], aux: &[f64]) -> Result<Option<Vector>> {
        Ok(match *self {
            RiemannSolver::Acoustics => None,
            RiemannSolver::ShallowRoe { g, .. } | RiemannSolver::ShallowFWave { g } => {
                Some(shallow::flux(q, g)?)
            }
            RiemannSolver::Elasticity { law } => Some(elasticity::flux(q, aux, law)?),
            RiemannSolver::Advection { speed } => Some([speed * q[0], 0.0, 0.0]),
        })
    }

    /// Total fluctuation inside one cell from its two reconstructed edge
    /// states: `q_lo` at the lower face and `q_hi` at the upper face. Flux
    /// difference for conservative systems, `A (q_hi - q_lo)` for acoustics.
    #[inline]
    pub fn total_fluctuation(&self, q_lo: &[f64], q_hi: &[f64], aux: &[f64]) -> Result<Vector> {
        let m = q_lo.len();
        match *self {
            RiemannSolver::Acoustics => acoustics::total_fluctuation(q_lo, q_hi, aux),
            _ => {
                let hi = self.flux(q_hi, aux)?.expect("conservative solver has a flux");
                let lo = self.flux(q_lo, aux)?.expect("conservative solver has a flux");
                let mut out = [0.0; MAX_EQN];
                for k in 0..m {
                    out[k] = hi[k] - lo[k];
                }
                Ok(out)
            }
        }
    }

    /// Eigensystem of the normal coefficient matrix at one cell state.
    pub fn eigensystem(&self, q: &[f64], aux: &[f64]) -> Result<Eigensystem> {
        let m = q.len();
        match *self {
            RiemannSolver::Acoustics => acoustics::eigensystem(m, aux),
            RiemannSolver::ShallowRoe { g, .. } | RiemannSolver::ShallowFWave { g } => {
                shallow::eigensystem(q, g)
            }
            RiemannSolver::Elasticity { law } => elasticity::eigensystem(q, aux, law),
            RiemannSolver::Advection { speed } => {
                Ok(Eigensystem::from_columns(1, &[[1.0, 0.0, 0.0]], &[speed]))
            }
        }
    }
}
