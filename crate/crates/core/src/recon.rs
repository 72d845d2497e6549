//! Fifth-order WENO reconstruction of interface states in ratio form.
//!
//! Edges are produced per interface: `ql[k]` is the limit from the cell below
//! interface `k` and `qr[k]` the limit from the cell above. Interface `k`
//! separates interior cells `k - 1` and `k`, so an axis with `n` cells has
//! interfaces `0..=n`.

use crate::error::{Error, Location, Result};
use crate::grid::{Grid1D, Grid2D, State};
use crate::riemann::{RiemannSolver, Vector, WaveDecomposition, MAX_EQN, MAX_WAVES};

/// Smoothness-indicator regularization, applied to difference ratios.
pub const WENO_EPSILON: f64 = 1e-6;
/// Default zero-difference threshold.
pub const DEFAULT_TAU0: f64 = 1e-12;
/// Relative speed floor for dividing f-waves by their speeds.
pub const SPEED_FLOOR: f64 = 1e-8;

const GAMMA: [f64; 3] = [0.1, 0.6, 0.3];

/// Limiter function phi of the ratios around an interface, with the central
/// ratio equal to one: `theta_a`, `theta_b` are the two upwind ratios (far,
/// near) and `theta_e` the downwind one.
#[inline]
pub fn weno5_phi(theta_a: f64, theta_b: f64, theta_e: f64) -> f64 {
    const SIXTH: f64 = 1.0 / 6.0;
    const C: f64 = 13.0 / 12.0;
    let (a, b, e) = (theta_a, theta_b, theta_e);
    let p0 = (-2.0 * a + 5.0 * b) * SIXTH;
    let p1 = (b + 2.0) * SIXTH;
    let p2 = (4.0 - e) * SIXTH;
    let s0 = WENO_EPSILON + C * (b - a) * (b - a) + 0.25 * (3.0 * b - a) * (3.0 * b - a);
    let s1 = WENO_EPSILON + C * (1.0 - b) * (1.0 - b) + 0.25 * (b + 1.0) * (b + 1.0);
    let s2 = WENO_EPSILON + C * (e - 1.0) * (e - 1.0) + 0.25 * (e - 3.0) * (e - 3.0);
    let (q0, q1, q2) = (s0 * s0, s1 * s1, s2 * s2);
    // weights gamma_k / q_k over a common denominator
    let w0 = GAMMA[0] * q1 * q2;
    let w1 = GAMMA[1] * q0 * q2;
    let w2 = GAMMA[2] * q0 * q1;
    (w0 * p0 + w1 * p1 + w2 * p2) / (w0 + w1 + w2)
}

/// Increment `edge - cell` from the four differences around an interface,
/// ordered from far upwind to downwind; `c` is the interface's own jump.
/// Same weights as `weno5_phi` with every difference divided by the largest
/// one instead of by `c`, so the limit `c -> 0` is kept.
#[inline]
fn increment(a: f64, b: f64, c: f64, e: f64, scale: f64, tau0: f64) -> f64 {
    const SIXTH: f64 = 1.0 / 6.0;
    const C: f64 = 13.0 / 12.0;
    let m = a.abs().max(b.abs()).max(c.abs()).max(e.abs());
    if m <= tau0 * scale {
        return 0.0;
    }
    let r = 1.0 / m;
    let (a, b, c, e) = (a * r, b * r, c * r, e * r);
    let p0 = (-2.0 * a + 5.0 * b) * SIXTH;
    let p1 = (b + 2.0 * c) * SIXTH;
    let p2 = (4.0 * c - e) * SIXTH;
    let eps = WENO_EPSILON * c * c;
    let s0 = eps + C * (b - a) * (b - a) + 0.25 * (3.0 * b - a) * (3.0 * b - a);
    let s1 = eps + C * (c - b) * (c - b) + 0.25 * (b + c) * (b + c);
    let s2 = eps + C * (e - c) * (e - c) + 0.25 * (e - 3.0 * c) * (e - 3.0 * c);
    let (q0, q1, q2) = (s0 * s0, s1 * s1, s2 * s2);
    let w0 = GAMMA[0] * q1 * q2;
    let w1 = GAMMA[1] * q0 * q2;
    let w2 = GAMMA[2] * q0 * q1;
    let sum = w0 + w1 + w2;
    // two flat substencils: both have zero increment
    if sum == 0.0 {
        return 0.0;
    }
    m * (w0 * p0 + w1 * p1 + w2 * p2) / sum
}

#[inline]
fn scale_of(v: &[f64]) -> f64 {
    v.iter().fold(1.0f64, |s, x| s.max(x.abs()))
}

/// Edge values of the middle cell of `v = (v_{i-2}, ..., v_{i+2})`:
/// `(upper, lower)` = (q^L at i+1/2, q^R at i-1/2).
pub fn weno5_edge(v: &[f64; 5]) -> (f64, f64) {
    weno5_edge_tau(v, DEFAULT_TAU0)
}

pub fn weno5_edge_tau(v: &[f64; 5], tau0: f64) -> (f64, f64) {
    let d = [v[1] - v[0], v[2] - v[1], v[3] - v[2], v[4] - v[3]];
    let s = scale_of(v);
    let upper = v[2] + increment(d[0], d[1], d[2], d[3], s, tau0);
    let lower = v[2] - increment(d[3], d[2], d[1], d[0], s, tau0);
    (upper, lower)
}

/// Reconstruction strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReconKind {
    Componentwise,
    Characteristicwise,
    WaveSlope,
    FWaveSlope,
    /// Piecewise constant; reduces the scheme to first-order Godunov.
    Constant,
}

impl ReconKind {
    pub fn name(&self) -> &'static str {
        match self {
            ReconKind::Componentwise => "componentwise",
            ReconKind::Characteristicwise => "characteristicwise",
            ReconKind::WaveSlope => "waveslope",
            ReconKind::FWaveSlope => "fwaveslope",
            ReconKind::Constant => "constant",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "componentwise" => ReconKind::Componentwise,
            "characteristicwise" => ReconKind::Characteristicwise,
            "waveslope" => ReconKind::WaveSlope,
            "fwaveslope" => ReconKind::FWaveSlope,
            "constant" => ReconKind::Constant,
            other => return Err(Error::Config(format!("unknown reconstruction '{other}'"))),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReconMode {
    pub kind: ReconKind,
    pub tau0: f64,
}

impl ReconMode {
    pub fn new(kind: ReconKind) -> Self {
        Self {
            kind,
            tau0: DEFAULT_TAU0,
        }
    }

    /// Reject combinations that cannot work.
    pub fn check(&self, solver: &RiemannSolver) -> Result<()> {
        if !(self.tau0 > 0.0 && self.tau0.is_finite()) {
            return Err(Error::Config(format!("tau0 must be positive, got {}", self.tau0)));
        }
        match self.kind {
            ReconKind::FWaveSlope if !solver.is_fwave() => Err(Error::Config(format!(
                "fwaveslope reconstruction needs an f-wave solver, not {}",
                solver.name()
            ))),
            ReconKind::WaveSlope if solver.is_fwave() => Err(Error::Config(format!(
                "waveslope reconstruction needs a q-wave solver, not {}",
                solver.name()
            ))),
            _ => Ok(()),
        }
    }
}

/// One grid line of cell data including ghosts, components in normal order.
#[derive(Debug, Clone, PartialEq)]
pub struct Line {
    pub q: Vec<f64>,
    pub aux: Vec<f64>,
    pub num_eqn: usize,
    pub num_aux: usize,
    pub num_ghost: usize,
}

impl Line {
    pub fn total_cells(&self) -> usize {
        self.q.len() / self.num_eqn
    }

    pub fn interior_cells(&self) -> usize {
        self.total_cells() - 2 * self.num_ghost
    }

    #[inline]
    pub fn cell(&self, c: usize) -> &[f64] {
        &self.q[c * self.num_eqn..(c + 1) * self.num_eqn]
    }

    #[inline]
    pub fn aux_of(&self, c: usize) -> &[f64] {
        &self.aux[c * self.num_aux..(c + 1) * self.num_aux]
    }
}

/// Interface states along a line.
#[derive(Debug, Clone, PartialEq)]
pub struct ReconstructedEdges {
    pub num_eqn: usize,
    /// `(n + 1) * m` values: limit from the lower cell.
    pub ql: Vec<f64>,
    /// `(n + 1) * m` values: limit from the upper cell.
    pub qr: Vec<f64>,
}

impl ReconstructedEdges {
    pub fn num_interfaces(&self) -> usize {
        self.ql.len() / self.num_eqn
    }

    pub fn left(&self, k: usize) -> &[f64] {
        &self.ql[k * self.num_eqn..(k + 1) * self.num_eqn]
    }

    pub fn right(&self, k: usize) -> &[f64] {
        &self.qr[k * self.num_eqn..(k + 1) * self.num_eqn]
    }
}

/// Reconstruct edges on one line. `axis` and `line_index` only label errors.
pub fn reconstruct_line(
    line: &Line,
    mode: &ReconMode,
    solver: &RiemannSolver,
    axis: usize,
    line_index: usize,
) -> Result<ReconstructedEdges> {
    let m = line.num_eqn;
    let ng = line.num_ghost;
    let n = line.interior_cells();
    if ng < 3 {
        return Err(Error::Setup(format!("reconstruction needs 3 ghost cells, got {ng}")));
    }
    let mut out = ReconstructedEdges {
        num_eqn: m,
        ql: vec![0.0; (n + 1) * m],
        qr: vec![0.0; (n + 1) * m],
    };
    match mode.kind {
        ReconKind::Constant => {
            for k in 0..=n {
                out.ql[k * m..(k + 1) * m].copy_from_slice(line.cell(ng + k - 1));
                out.qr[k * m..(k + 1) * m].copy_from_slice(line.cell(ng + k));
            }
        }
        ReconKind::Componentwise => componentwise(line, mode.tau0, &mut out),
        ReconKind::Characteristicwise => characteristicwise(line, mode.tau0, solver, axis, line_index, &mut out)?,
        ReconKind::WaveSlope | ReconKind::FWaveSlope => {
            wave_slope(line, mode, solver, axis, line_index, &mut out)?
        }
    }
    Ok(out)
}

/// Cells `ng - 1 ..= ng + n` each contribute one upper and one lower edge.
fn componentwise(line: &Line, tau0: f64, out: &mut ReconstructedEdges) {
    let m = line.num_eqn;
    let ng = line.num_ghost;
    let n = line.interior_cells();
    let mut v = [0.0; 5];
    for c in ng - 1..=ng + n {
        for k in 0..m {
            for (j, vj) in v.iter_mut().enumerate() {
                *vj = line.q[(c + j - 2) * m + k];
            }
            let (upper, lower) = weno5_edge_tau(&v, tau0);
            // upper face of cell c is interface c - ng + 1
            if c + 1 >= ng && c < ng + n {
                out.ql[(c + 1 - ng) * m + k] = upper;
            }
            if c >= ng {
                out.qr[(c - ng) * m + k] = lower;
            }
        }
    }
}

fn characteristicwise(
    line: &Line,
    tau0: f64,
    solver: &RiemannSolver,
    axis: usize,
    line_index: usize,
    out: &mut ReconstructedEdges,
) -> Result<()> {
    let m = line.num_eqn;
    let ng = line.num_ghost;
    let n = line.interior_cells();
    let mut w = [[0.0; MAX_EQN]; 5];
    let mut v = [0.0; 5];
    for c in ng - 1..=ng + n {
        let eig = solver
            .eigensystem(line.cell(c), line.aux_of(c))
            .map_err(|e| {
                e.at(Location::Interface {
                    axis,
                    line: line_index,
                    index: (c + 1).saturating_sub(ng),
                })
            })?;
        for (j, wj) in w.iter_mut().enumerate() {
            *wj = eig.project(line.cell(c + j - 2));
        }
        let mut upper = [0.0; MAX_EQN];
        let mut lower = [0.0; MAX_EQN];
        for p in 0..m {
            for j in 0..5 {
                v[j] = w[j][p];
            }
            let (u, l) = weno5_edge_tau(&v, tau0);
            upper[p] = u;
            lower[p] = l;
        }
        let upper = eig.expand(&upper);
        let lower = eig.expand(&lower);
        if c + 1 >= ng && c < ng + n {
            let k = c + 1 - ng;
            out.ql[k * m..(k + 1) * m].copy_from_slice(&upper[..m]);
        }
        if c >= ng {
            let k = c - ng;
            out.qr[k * m..(k + 1) * m].copy_from_slice(&lower[..m]);
        }
    }
    Ok(())
}

/// Waves used for slope limiting at one interface.
fn limiter_waves(
    d: &WaveDecomposition,
    kind: ReconKind,
    floor: f64,
) -> Result<[Vector; MAX_WAVES]> {
    let mut w = [[0.0; MAX_EQN]; MAX_WAVES];
    for p in 0..d.num_waves {
        if kind == ReconKind::WaveSlope {
            w[p] = d.waves[p];
            continue;
        }
        let s = d.speeds[p];
        if s.abs() >= floor && s != 0.0 {
            let r = 1.0 / s;
            for k in 0..d.num_eqn {
                w[p][k] = d.waves[p][k] * r;
            }
        } else if let Some(hint) = d.qwave_hint[p] {
            w[p] = hint;
        } else if d.waves[p][..d.num_eqn].iter().all(|&z| z == 0.0) {
            // nothing to limit
        } else {
            return Err(Error::Resonance { speed: s, floor });
        }
    }
    Ok(w)
}

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn wave_slope(
    line: &Line,
    mode: &ReconMode,
    solver: &RiemannSolver,
    axis: usize,
    line_index: usize,
    out: &mut ReconstructedEdges,
) -> Result<()> {
    let m = line.num_eqn;
    let ng = line.num_ghost;
    let n = line.interior_cells();
    // Interfaces -2 ..= n + 2, stored with offset 2.
    let count = n + 5;
    let solve_at = |j: usize| {
        let lo = ng + j - 3;
        solver
            .solve(line.cell(lo), line.cell(lo + 1), line.aux_of(lo), line.aux_of(lo + 1))
            .map_err(|e| {
                e.at(Location::Interface {
                    axis,
                    line: line_index,
                    index: j.saturating_sub(2),
                })
            })
    };
    let mut waves = vec![[[0.0; MAX_EQN]; MAX_WAVES]; count];
    let mut slowest = vec![f64::INFINITY; count];
    let mut max_speed = 0.0f64;
    let mut num_waves = 0;
    for j in 0..count {
        let d = solve_at(j)?;
        num_waves = d.num_waves;
        max_speed = max_speed.max(d.max_speed());
        for p in 0..d.num_waves {
            slowest[j] = slowest[j].min(d.speeds[p].abs());
        }
        waves[j] = limiter_waves(&d, mode.kind, 0.0).unwrap_or_default();
    }
    let floor = SPEED_FLOOR * max_speed;
    if mode.kind == ReconKind::FWaveSlope {
        for j in 0..count {
            if slowest[j] < floor || slowest[j] == 0.0 {
                let d = solve_at(j)?;
                waves[j] = limiter_waves(&d, mode.kind, floor).map_err(|e| {
                    e.at(Location::Interface {
                        axis,
                        line: line_index,
                        index: j.saturating_sub(2),
                    })
                })?;
            }
        }
    }
    for k in 0..=n {
        let j = k + 2;
        let lower_cell = line.cell(ng + k - 1);
        let upper_cell = line.cell(ng + k);
        let mut left = [0.0; MAX_EQN];
        let mut right = [0.0; MAX_EQN];
        left[..m].copy_from_slice(lower_cell);
        right[..m].copy_from_slice(upper_cell);
        let scale = scale_of(&line.q[(ng + k - 3) * m..(ng + k + 3) * m]);
        for p in 0..num_waves {
            let w0 = &waves[j][p][..m];
            let norm2 = dot(w0, w0);
            let cut = mode.tau0 * scale;
            if norm2 <= cut * cut {
                continue;
            }
            let inv = 1.0 / norm2;
            let theta = |off: isize| dot(&waves[(j as isize + off) as usize][p][..m], w0) * inv;
            let (tm2, tm1, tp1, tp2) = (theta(-2), theta(-1), theta(1), theta(2));
            let phi_l = weno5_phi(tm2, tm1, tp1);
            let phi_r = weno5_phi(tp2, tp1, tm1);
            for c in 0..m {
                left[c] += phi_l * w0[c];
                right[c] -= phi_r * w0[c];
            }
        }
        out.ql[k * m..(k + 1) * m].copy_from_slice(&left[..m]);
        out.qr[k * m..(k + 1) * m].copy_from_slice(&right[..m]);
    }
    Ok(())
}

/// Permutation that puts the normal component of axis `axis` in slot 1.
#[inline]
pub fn normal_component(k: usize, axis: usize, m: usize) -> usize {
    if axis == 1 && m == 3 && (k == 1 || k == 2) {
        3 - k
    } else {
        k
    }
}

/// Gather row `j` (axis 0) or column `i` (axis 1) of a state, ghosts
/// included, with the normal component moved to slot 1.
pub fn gather_line(state: &State, axis: usize, index: usize) -> Line {
    let layout = state.layout;
    let m = state.num_eqn;
    let ma = state.num_aux;
    let cells: Vec<usize> = if axis == 0 {
        (0..layout.total_x()).map(|i| layout.cell(i, index)).collect()
    } else {
        (0..layout.total_y()).map(|j| layout.cell(index, j)).collect()
    };
    let mut q = vec![0.0; cells.len() * m];
    let mut aux = vec![0.0; cells.len() * ma];
    for (n, &c) in cells.iter().enumerate() {
        for k in 0..m {
            q[n * m + normal_component(k, axis, m)] = state.q[c * m + k];
        }
        aux[n * ma..(n + 1) * ma].copy_from_slice(&state.aux[c * ma..(c + 1) * ma]);
    }
    Line {
        q,
        aux,
        num_eqn: m,
        num_aux: ma,
        num_ghost: layout.num_ghost,
    }
}

/// Reconstruct a 1D state whose ghost cells are filled.
pub fn reconstruct(
    state: &State,
    grid: &Grid1D,
    mode: &ReconMode,
    solver: &RiemannSolver,
) -> Result<ReconstructedEdges> {
    if state.layout.nx != grid.num_cells || state.layout.dim != 1 {
        return Err(Error::Setup("state does not match a 1D grid".into()));
    }
    mode.check(solver)?;
    reconstruct_line(&gather_line(state, 0, 0), mode, solver, 0, 0)
}

/// Edges along every row (x sweeps, indexed by j) and every column (y sweeps,
/// indexed by i). Column edges are in normal order: slot 1 holds v.
pub fn reconstruct_2d_rows_cols(
    state: &State,
    grid: &Grid2D,
    mode: &ReconMode,
    solver: &RiemannSolver,
) -> Result<(Vec<ReconstructedEdges>, Vec<ReconstructedEdges>)> {
    use rayon::prelude::*;
    let layout = state.layout;
    if layout.dim != 2 || layout.nx != grid.x.num_cells || layout.ny != grid.y.num_cells {
        return Err(Error::Setup("state does not match the 2D grid".into()));
    }
    mode.check(solver)?;
    let ng = layout.num_ghost;
    let rows = (0..layout.ny)
        .into_par_iter()
        .map(|j| reconstruct_line(&gather_line(state, 0, j + ng), mode, solver, 0, j))
        .collect::<Result<Vec<_>>>()?;
    let cols = (0..layout.nx)
        .into_par_iter()
        .map(|i| reconstruct_line(&gather_line(state, 1, i + ng), mode, solver, 1, i))
        .collect::<Result<Vec<_>>>()?;
    Ok((rows, cols))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_and_linear() {
        assert_eq!(weno5_edge(&[3.0; 5]), (3.0, 3.0));
        let (u, l) = weno5_edge(&[0.0, 1.0, 2.0, 3.0, 4.0]);
        assert!((u - 2.5).abs() < 1e-15 && (l - 1.5).abs() < 1e-15);
    }

    #[test]
    fn step_is_not_oscillatory() {
        let (u, l) = weno5_edge(&[0.0, 0.0, 0.0, 1.0, 1.0]);
        assert!((0.0..=1.0).contains(&u));
        assert!((0.0..=1.0).contains(&l));
        assert!(l <= 0.1);
    }

    #[test]
    fn tiny_jump_is_ignored() {
        let (u, l) = weno5_edge(&[1.0, 1.0, 1.0, 1.0 + 1e-13, 2.0]);
        assert_eq!(u, 1.0);
        assert_eq!(l, 1.0);
    }

    #[test]
    fn parabola_averages_are_exact() {
        // cell averages of x^2 on unit cells centred at -2..2
        let avg = |c: f64| c * c + 1.0 / 12.0;
        let v = [avg(-2.0), avg(-1.0), avg(0.0), avg(1.0), avg(2.0)];
        let (u, l) = weno5_edge(&v);
        assert!((u - 0.25).abs() < 1e-14, "{u}");
        assert!((l - 0.25).abs() < 1e-14, "{l}");
    }

    #[test]
    fn normal_permutation() {
        assert_eq!(normal_component(1, 1, 3), 2);
        assert_eq!(normal_component(2, 1, 3), 1);
        assert_eq!(normal_component(1, 0, 3), 1);
        assert_eq!(normal_component(1, 1, 2), 1);
    }

    #[test]
    fn mode_checks() {
        let roe = RiemannSolver::ShallowRoe { g: 1.0, entropy_fix: true };
        let fw = RiemannSolver::ShallowFWave { g: 1.0 };
        assert!(ReconMode::new(ReconKind::FWaveSlope).check(&roe).is_err());
        assert!(ReconMode::new(ReconKind::WaveSlope).check(&fw).is_err());
        assert!(ReconMode::new(ReconKind::FWaveSlope).check(&fw).is_ok());
        assert!(ReconKind::parse("bogus").is_err());
    }
}
