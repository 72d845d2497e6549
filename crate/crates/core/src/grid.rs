//! Uniform Cartesian grids, cell-average state with ghost framing, and
//! boundary conditions.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quadrature::GaussLegendre;

/// Ghost layers needed by the fifth-order reconstructions.
pub const NUM_GHOST: usize = 3;

/// One uniform axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    pub x_lower: f64,
    pub x_upper: f64,
    pub num_cells: usize,
    pub num_ghost: usize,
}

impl Grid1D {
    pub fn new(x_lower: f64, x_upper: f64, num_cells: usize) -> Result<Self> {
        Self::with_ghosts(x_lower, x_upper, num_cells, NUM_GHOST)
    }

    pub fn with_ghosts(x_lower: f64, x_upper: f64, num_cells: usize, num_ghost: usize) -> Result<Self> {
        if num_cells == 0 {
            return Err(Error::Setup("grid needs at least one cell".into()));
        }
        if !(x_lower.is_finite() && x_upper.is_finite()) || x_upper <= x_lower {
            return Err(Error::Setup(format!(
                "invalid extent [{x_lower}, {x_upper}]"
            )));
        }
        if num_ghost < NUM_GHOST {
            return Err(Error::Setup(format!(
                "fifth-order reconstruction needs {NUM_GHOST} ghost cells, got {num_ghost}"
            )));
        }
        Ok(Self {
            x_lower,
            x_upper,
            num_cells,
            num_ghost,
        })
    }

    pub fn dx(&self) -> f64 {
        (self.x_upper - self.x_lower) / self.num_cells as f64
    }

    /// Cells including both ghost layers.
    pub fn total_cells(&self) -> usize {
        self.num_cells + 2 * self.num_ghost
    }

    /// Center of interior cell `i` (0-based).
    pub fn center(&self, i: usize) -> f64 {
        self.x_lower + (i as f64 + 0.5) * self.dx()
    }

    /// Center of a ghost-inclusive cell index; negative offsets land in the
    /// lower ghost layer.
    pub fn center_ghost(&self, index: usize) -> f64 {
        self.x_lower + (index as f64 - self.num_ghost as f64 + 0.5) * self.dx()
    }

    /// Coordinate of interior interface `k`, `k = 0..=num_cells`.
    pub fn edge(&self, k: usize) -> f64 {
        self.x_lower + k as f64 * self.dx()
    }

    pub fn centers(&self) -> Vec<f64> {
        (0..self.num_cells).map(|i| self.center(i)).collect()
    }

    /// Index of the interface at `x`, if `x` is within `tol` of one.
    pub fn interface_at(&self, x: f64, tol: f64) -> Option<usize> {
        let s = (x - self.x_lower) / self.dx();
        let k = s.round();
        if (s - k).abs() <= tol && k >= 0.0 && k <= self.num_cells as f64 {
            Some(k as usize)
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid2D {
    pub x: Grid1D,
    pub y: Grid1D,
}

impl Grid2D {
    pub fn new(x: Grid1D, y: Grid1D) -> Self {
        Self { x, y }
    }

    pub fn dx(&self) -> f64 {
        self.x.dx()
    }

    pub fn dy(&self) -> f64 {
        self.y.dx()
    }
}

/// Either grid dimensionality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Grid {
    OneD(Grid1D),
    TwoD(Grid2D),
}

impl Grid {
    pub fn dim(&self) -> usize {
        match self {
            Grid::OneD(_) => 1,
            Grid::TwoD(_) => 2,
        }
    }

    /// The x axis (the only axis in 1D).
    pub fn x(&self) -> &Grid1D {
        match self {
            Grid::OneD(g) => g,
            Grid::TwoD(g) => &g.x,
        }
    }

    pub fn y(&self) -> Option<&Grid1D> {
        match self {
            Grid::OneD(_) => None,
            Grid::TwoD(g) => Some(&g.y),
        }
    }

    /// Cell widths per axis; the unused axis reports infinity.
    pub fn spacing(&self) -> [f64; 2] {
        match self {
            Grid::OneD(g) => [g.dx(), f64::INFINITY],
            Grid::TwoD(g) => [g.dx(), g.dy()],
        }
    }

    /// Area (2D) or length (1D) of one cell.
    pub fn cell_measure(&self) -> f64 {
        match self {
            Grid::OneD(g) => g.dx(),
            Grid::TwoD(g) => g.dx() * g.dy(),
        }
    }

    pub fn layout(&self) -> Layout {
        match self {
            Grid::OneD(g) => Layout {
                nx: g.num_cells,
                ny: 1,
                num_ghost: g.num_ghost,
                dim: 1,
            },
            Grid::TwoD(g) => {
                assert_eq!(g.x.num_ghost, g.y.num_ghost, "ghost width must agree per axis");
                Layout {
                    nx: g.x.num_cells,
                    ny: g.y.num_cells,
                    num_ghost: g.x.num_ghost,
                    dim: 2,
                }
            }
        }
    }
}

impl From<Grid1D> for Grid {
    fn from(g: Grid1D) -> Self {
        Grid::OneD(g)
    }
}

impl From<Grid2D> for Grid {
    fn from(g: Grid2D) -> Self {
        Grid::TwoD(g)
    }
}

/// Cell counts and ghost framing of a state array. Cells are stored row-major
/// by y then x; in 1D there is a single row and no ghost rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Layout {
    pub nx: usize,
    pub ny: usize,
    pub num_ghost: usize,
    pub dim: usize,
}

impl Layout {
    pub fn total_x(&self) -> usize {
        self.nx + 2 * self.num_ghost
    }

    pub fn total_y(&self) -> usize {
        if self.dim == 1 {
            1
        } else {
            self.ny + 2 * self.num_ghost
        }
    }

    pub fn total_cells(&self) -> usize {
        self.total_x() * self.total_y()
    }

    pub fn interior_cells(&self) -> usize {
        self.nx * self.ny
    }

    /// Ghost-inclusive cell index.
    #[inline]
    pub fn cell(&self, i: usize, j: usize) -> usize {
        j * self.total_x() + i
    }

    /// Ghost-inclusive index of interior cell (i, j).
    #[inline]
    pub fn interior_cell(&self, i: usize, j: usize) -> usize {
        let gj = if self.dim == 1 { 0 } else { j + self.num_ghost };
        self.cell(i + self.num_ghost, gj)
    }

    /// Ghost-inclusive indices of interior cells, row-major by y then x.
    pub fn interior_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.ny).flat_map(move |j| (0..self.nx).map(move |i| self.interior_cell(i, j)))
    }
}

/// Cell averages, capacity and auxiliary coefficients on a ghost-framed grid.
#[derive(Debug, Clone, PartialEq)]
pub struct State {
    /// `num_eqn` values per cell, cell-major.
    pub q: Vec<f64>,
    /// `num_aux` values per cell, cell-major.
    pub aux: Vec<f64>,
    /// Capacity per cell.
    pub kappa: Vec<f64>,
    pub t: f64,
    pub num_eqn: usize,
    pub num_aux: usize,
    pub layout: Layout,
}

impl State {
    pub fn new(grid: &Grid, num_eqn: usize, num_aux: usize) -> Self {
        let layout = grid.layout();
        let n = layout.total_cells();
        Self {
            q: vec![0.0; n * num_eqn],
            aux: vec![0.0; n * num_aux],
            kappa: vec![1.0; n],
            t: 0.0,
            num_eqn,
            num_aux,
            layout,
        }
    }

    #[inline]
    pub fn cell_q(&self, cell: usize) -> &[f64] {
        &self.q[cell * self.num_eqn..(cell + 1) * self.num_eqn]
    }

    #[inline]
    pub fn cell_q_mut(&mut self, cell: usize) -> &mut [f64] {
        &mut self.q[cell * self.num_eqn..(cell + 1) * self.num_eqn]
    }

    #[inline]
    pub fn cell_aux(&self, cell: usize) -> &[f64] {
        &self.aux[cell * self.num_aux..(cell + 1) * self.num_aux]
    }

    #[inline]
    pub fn cell_aux_mut(&mut self, cell: usize) -> &mut [f64] {
        &mut self.aux[cell * self.num_aux..(cell + 1) * self.num_aux]
    }

    /// Component `k` over the interior, row-major by y then x.
    pub fn interior_component(&self, k: usize) -> Vec<f64> {
        self.layout
            .interior_indices()
            .map(|c| self.q[c * self.num_eqn + k])
            .collect()
    }

    /// Auxiliary field `k` over the interior.
    pub fn interior_aux(&self, k: usize) -> Vec<f64> {
        self.layout
            .interior_indices()
            .map(|c| self.aux[c * self.num_aux + k])
            .collect()
    }

    /// All interior values, `num_eqn` per cell.
    pub fn interior_q(&self) -> Vec<f64> {
        let m = self.num_eqn;
        let mut out = Vec::with_capacity(self.layout.interior_cells() * m);
        for c in self.layout.interior_indices() {
            out.extend_from_slice(&self.q[c * m..(c + 1) * m]);
        }
        out
    }

    /// Overwrite interior values from an interior-ordered buffer.
    pub fn set_interior_q(&mut self, values: &[f64]) {
        let m = self.num_eqn;
        assert_eq!(values.len(), self.layout.interior_cells() * m);
        let layout = self.layout;
        for (n, c) in layout.interior_indices().enumerate() {
            self.q[c * m..(c + 1) * m].copy_from_slice(&values[n * m..(n + 1) * m]);
        }
    }

    /// Set every interior cell from a function of the interior index pair.
    pub fn set_q_with(&mut self, mut f: impl FnMut(usize, usize, &mut [f64])) {
        let layout = self.layout;
        let m = self.num_eqn;
        for j in 0..layout.ny {
            for i in 0..layout.nx {
                let c = layout.interior_cell(i, j);
                f(i, j, &mut self.q[c * m..(c + 1) * m]);
            }
        }
    }

    pub fn set_aux_with(&mut self, mut f: impl FnMut(usize, usize, &mut [f64])) {
        let layout = self.layout;
        let ma = self.num_aux;
        for j in 0..layout.ny {
            for i in 0..layout.nx {
                let c = layout.interior_cell(i, j);
                f(i, j, &mut self.aux[c * ma..(c + 1) * ma]);
            }
        }
    }

    pub fn set_kappa_with(&mut self, mut f: impl FnMut(usize, usize) -> f64) {
        let layout = self.layout;
        for j in 0..layout.ny {
            for i in 0..layout.nx {
                self.kappa[layout.interior_cell(i, j)] = f(i, j);
            }
        }
    }

    /// Finiteness of q, aux and kappa, and kappa > 0, over the interior.
    pub fn validate(&self) -> Result<()> {
        for c in self.layout.interior_indices() {
            if self.cell_q(c).iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidState(format!("non-finite value in cell {c}")));
            }
            if self.cell_aux(c).iter().any(|v| !v.is_finite()) {
                return Err(Error::InvalidState(format!("non-finite aux in cell {c}")));
            }
            let k = self.kappa[c];
            if !(k.is_finite() && k > 0.0) {
                return Err(Error::InvalidState(format!("capacity {k} in cell {c}")));
            }
        }
        Ok(())
    }

    /// Sum of kappa * q * cell measure over the interior, per component.
    pub fn conserved_totals(&self, grid: &Grid) -> Vec<f64> {
        let m = self.num_eqn;
        let measure = grid.cell_measure();
        let mut sums = vec![0.0; m];
        for c in self.layout.interior_indices() {
            for k in 0..m {
                sums[k] += self.kappa[c] * self.q[c * m + k] * measure;
            }
        }
        sums
    }
}

/// Which side of an axis a boundary sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Lower,
    Upper,
}

/// Where a ghost cell sits, passed to time-dependent boundary data.
#[derive(Debug, Clone, Copy)]
pub struct GhostSite {
    pub t: f64,
    pub axis: usize,
    pub side: Side,
    /// 1 for the ghost adjacent to the boundary.
    pub depth: usize,
    /// Ghost cell center along the boundary normal.
    pub normal_coord: f64,
    /// Cell center along the boundary (0 in 1D).
    pub tangential_coord: f64,
}

/// Time-dependent ghost data (inflow pulses, incident waves).
pub trait GhostData: Send + Sync + fmt::Debug {
    /// Write the ghost state. `interior` is the interior cell nearest the
    /// boundary; `aux` is the ghost cell's auxiliary data.
    fn fill(&self, site: &GhostSite, interior: &[f64], aux: &[f64], ghost: &mut [f64]);

    /// Pass the mirror-image interior cell to `fill` instead of the nearest.
    fn mirrored(&self) -> bool {
        false
    }
}

/// Boundary treatment on one edge.
#[derive(Debug, Clone)]
pub enum EdgeCondition {
    Periodic,
    /// Zero-order extrapolation (copy of the nearest interior cell).
    Extrapolation,
    /// Mirror interior cells and negate the listed components.
    Wall { negate: Vec<usize> },
    Inflow(Arc<dyn GhostData>),
}

impl EdgeCondition {
    pub fn wall(negate: &[usize]) -> Self {
        EdgeCondition::Wall {
            negate: negate.to_vec(),
        }
    }

    fn is_periodic(&self) -> bool {
        matches!(self, EdgeCondition::Periodic)
    }

    pub fn name(&self) -> &'static str {
        match self {
            EdgeCondition::Periodic => "periodic",
            EdgeCondition::Extrapolation => "extrapolation",
            EdgeCondition::Wall { .. } => "wall",
            EdgeCondition::Inflow(_) => "inflow",
        }
    }
}

/// Per-edge boundary conditions: `[axis][side]`.
#[derive(Debug, Clone)]
pub struct BoundarySpec {
    pub edges: [[EdgeCondition; 2]; 2],
}

impl BoundarySpec {
    pub fn new_1d(lower: EdgeCondition, upper: EdgeCondition) -> Self {
        Self {
            edges: [
                [lower, upper],
                [EdgeCondition::Extrapolation, EdgeCondition::Extrapolation],
            ],
        }
    }

    pub fn new_2d(
        x_lower: EdgeCondition,
        x_upper: EdgeCondition,
        y_lower: EdgeCondition,
        y_upper: EdgeCondition,
    ) -> Self {
        Self {
            edges: [[x_lower, x_upper], [y_lower, y_upper]],
        }
    }

    pub fn uniform(kind: EdgeCondition) -> Self {
        Self {
            edges: [
                [kind.clone(), kind.clone()],
                [kind.clone(), kind],
            ],
        }
    }

    pub fn edge(&self, axis: usize, side: Side) -> &EdgeCondition {
        &self.edges[axis][side as usize]
    }

    /// Check periodic pairing and wall component indices.
    pub fn validate(&self, num_eqn: usize, dim: usize) -> Result<()> {
        for axis in 0..dim {
            let [lo, hi] = &self.edges[axis];
            if lo.is_periodic() != hi.is_periodic() {
                return Err(Error::Config(format!(
                    "periodic boundary on axis {axis} must be set on both edges"
                )));
            }
            for e in [lo, hi] {
                if let EdgeCondition::Wall { negate } = e {
                    if let Some(&bad) = negate.iter().find(|&&k| k >= num_eqn) {
                        return Err(Error::Config(format!(
                            "wall negates component {bad} but the system has {num_eqn}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Fill every ghost cell of `state` from its interior. Interior values are not
/// touched.
pub fn fill_ghost_cells(state: &mut State, grid: &Grid, bc: &BoundarySpec) -> Result<()> {
    bc.validate(state.num_eqn, grid.dim())?;
    let layout = state.layout;
    let (tx, ty) = (layout.total_x(), layout.total_y());
    let t = state.t;
    // x edges on every row (ghost rows too), then y edges on every column so
    // the corners end up consistent.
    for j in 0..ty {
        let tangential = grid.y().map_or(0.0, |g| g.center_ghost(j));
        let cells: Vec<usize> = (0..tx).map(|i| layout.cell(i, j)).collect();
        fill_line(state, &cells, grid.x(), 0, tangential, bc, t);
    }
    if let Some(gy) = grid.y() {
        for i in 0..tx {
            let tangential = grid.x().center_ghost(i);
            let cells: Vec<usize> = (0..ty).map(|j| layout.cell(i, j)).collect();
            fill_line(state, &cells, gy, 1, tangential, bc, t);
        }
    }
    Ok(())
}

fn fill_line(
    state: &mut State,
    cells: &[usize],
    axis_grid: &Grid1D,
    axis: usize,
    tangential: f64,
    bc: &BoundarySpec,
    t: f64,
) {
    let ng = axis_grid.num_ghost;
    let n = cells.len() - 2 * ng;
    let m = state.num_eqn;
    let ma = state.num_aux;
    let mut buf = vec![0.0; m];
    for side in [Side::Lower, Side::Upper] {
        let edge = bc.edge(axis, side);
        for depth in 1..=ng {
            let ghost = match side {
                Side::Lower => ng - depth,
                Side::Upper => ng + n - 1 + depth,
            };
            let source = match (edge, side) {
                (EdgeCondition::Periodic, Side::Lower) => ng + n - depth,
                (EdgeCondition::Periodic, Side::Upper) => ng + depth - 1,
                (EdgeCondition::Wall { .. }, Side::Lower) => ng + depth - 1,
                (EdgeCondition::Wall { .. }, Side::Upper) => ng + n - depth,
                (EdgeCondition::Inflow(d), Side::Lower) if d.mirrored() => ng + depth - 1,
                (EdgeCondition::Inflow(d), Side::Upper) if d.mirrored() => ng + n - depth,
                (_, Side::Lower) => ng,
                (_, Side::Upper) => ng + n - 1,
            };
            let (g, s) = (cells[ghost], cells[source]);
            buf.copy_from_slice(&state.q[s * m..(s + 1) * m]);
            match edge {
                EdgeCondition::Wall { negate } => {
                    for &k in negate {
                        buf[k] = -buf[k];
                    }
                }
                EdgeCondition::Inflow(data) => {
                    let site = GhostSite {
                        t,
                        axis,
                        side,
                        depth,
                        normal_coord: axis_grid.center_ghost(ghost),
                        tangential_coord: tangential,
                    };
                    let interior = buf.clone();
                    data.fill(&site, &interior, &state.aux[g * ma..(g + 1) * ma], &mut buf);
                }
                _ => {}
            }
            state.q[g * m..(g + 1) * m].copy_from_slice(&buf);
        }
    }
}

/// Fill ghost aux and capacity. Periodic edges wrap, walls and mirrored inflow
/// mirror, everything else extrapolates.
pub fn fill_aux_ghosts(state: &mut State, grid: &Grid, bc: &BoundarySpec) {
    let layout = state.layout;
    let (tx, ty) = (layout.total_x(), layout.total_y());
    let ng = layout.num_ghost;
    let ma = state.num_aux;
    let mut lines: Vec<(usize, Vec<usize>)> = (0..ty)
        .map(|j| (0, (0..tx).map(|i| layout.cell(i, j)).collect()))
        .collect();
    if grid.dim() == 2 {
        lines.extend((0..tx).map(|i| (1, (0..ty).map(|j| layout.cell(i, j)).collect())));
    }
    for (axis, cells) in lines {
        let n = cells.len() - 2 * ng;
        for side in [Side::Lower, Side::Upper] {
            for depth in 1..=ng {
                let ghost = match side {
                    Side::Lower => ng - depth,
                    Side::Upper => ng + n - 1 + depth,
                };
                let source = match (bc.edge(axis, side), side) {
                    (EdgeCondition::Periodic, Side::Lower) => ng + n - depth,
                    (EdgeCondition::Periodic, Side::Upper) => ng + depth - 1,
                    (EdgeCondition::Wall { .. }, Side::Lower) => ng + depth - 1,
                    (EdgeCondition::Wall { .. }, Side::Upper) => ng + n - depth,
                    (EdgeCondition::Inflow(d), Side::Lower) if d.mirrored() => ng + depth - 1,
                    (EdgeCondition::Inflow(d), Side::Upper) if d.mirrored() => ng + n - depth,
                    (_, Side::Lower) => ng,
                    (_, Side::Upper) => ng + n - 1,
                };
                let (g, s) = (cells[ghost], cells[source]);
                for k in 0..ma {
                    state.aux[g * ma + k] = state.aux[s * ma + k];
                }
                state.kappa[g] = state.kappa[s];
            }
        }
    }
}

/// Gauss-Legendre cell averages of `f` over each interior cell, exact for
/// polynomials up to degree `2 * order - 1`.
pub fn cell_average_of(f: impl Fn(f64) -> f64, grid: &Grid1D, order: usize) -> Vec<f64> {
    let rule = GaussLegendre::new(order);
    let dx = grid.dx();
    (0..grid.num_cells)
        .map(|i| {
            let a = grid.edge(i);
            rule.average(&f, a, a + dx)
        })
        .collect()
}

/// Tensor-product Gauss-Legendre cell averages over a 2D grid, row-major by y
/// then x.
pub fn cell_average_2d(f: impl Fn(f64, f64) -> f64, grid: &Grid2D, order: usize) -> Vec<f64> {
    let rule = GaussLegendre::new(order);
    let (dx, dy) = (grid.dx(), grid.dy());
    let mut out = Vec::with_capacity(grid.x.num_cells * grid.y.num_cells);
    for j in 0..grid.y.num_cells {
        let y0 = grid.y.edge(j);
        for i in 0..grid.x.num_cells {
            let x0 = grid.x.edge(i);
            out.push(rule.average(|y| rule.average(|x| f(x, y), x0, x0 + dx), y0, y0 + dy));
        }
    }
    out
}

/// Default Gauss order for smooth initial data.
pub const DEFAULT_QUADRATURE_ORDER: usize = 5;

#[cfg(test)]
mod tests {
    use super::*;

    fn line_state(values: &[f64], ng: usize) -> (State, Grid) {
        let grid = Grid::OneD(Grid1D::with_ghosts(0.0, values.len() as f64, values.len(), ng).unwrap());
        let mut s = State::new(&grid, 1, 0);
        s.set_q_with(|i, _, q| q[0] = values[i]);
        (s, grid)
    }

    fn ghosts(s: &State) -> Vec<f64> {
        s.q.clone()
    }

    #[test]
    fn periodic_wraps() {
        let (mut s, grid) = line_state(&[1.0, 2.0, 3.0], 3);
        let bc = BoundarySpec::new_1d(EdgeCondition::Periodic, EdgeCondition::Periodic);
        fill_ghost_cells(&mut s, &grid, &bc).unwrap();
        assert_eq!(ghosts(&s), vec![1.0, 2.0, 3.0, 1.0, 2.0, 3.0, 1.0, 2.0, 3.0]);
        // Nearest ghosts: [3 | 1 2 3 | 1]
        assert_eq!(s.q[2], 3.0);
        assert_eq!(s.q[6], 1.0);
    }

    #[test]
    fn extrapolation_copies_nearest() {
        let (mut s, grid) = line_state(&[1.0, 2.0, 3.0], 3);
        let bc = BoundarySpec::new_1d(EdgeCondition::Extrapolation, EdgeCondition::Extrapolation);
        fill_ghost_cells(&mut s, &grid, &bc).unwrap();
        assert_eq!(&s.q[..3], &[1.0, 1.0, 1.0]);
        assert_eq!(&s.q[6..], &[3.0, 3.0, 3.0]);
    }

    #[test]
    fn wall_mirrors_and_negates() {
        let grid = Grid::OneD(Grid1D::new(0.0, 3.0, 3).unwrap());
        let mut s = State::new(&grid, 2, 0);
        s.set_q_with(|i, _, q| {
            q[0] = 10.0 + i as f64;
            q[1] = 20.0 + i as f64;
        });
        let bc = BoundarySpec::new_1d(EdgeCondition::wall(&[1]), EdgeCondition::Extrapolation);
        fill_ghost_cells(&mut s, &grid, &bc).unwrap();
        // ghost adjacent to the wall mirrors c1, the next one c2
        assert_eq!(s.cell_q(2), &[10.0, -20.0]);
        assert_eq!(s.cell_q(1), &[11.0, -21.0]);
        assert_eq!(s.cell_q(0), &[12.0, -22.0]);
    }

    #[test]
    fn wall_with_bad_component_is_config_error() {
        let grid = Grid::OneD(Grid1D::new(0.0, 3.0, 3).unwrap());
        let mut s = State::new(&grid, 2, 0);
        let bc = BoundarySpec::new_1d(EdgeCondition::wall(&[2]), EdgeCondition::Extrapolation);
        assert!(matches!(
            fill_ghost_cells(&mut s, &grid, &bc),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn unpaired_periodic_is_rejected() {
        let bc = BoundarySpec::new_1d(EdgeCondition::Periodic, EdgeCondition::Extrapolation);
        assert!(bc.validate(1, 1).is_err());
    }

    #[test]
    fn too_few_ghosts_rejected() {
        assert!(Grid1D::with_ghosts(0.0, 1.0, 10, 2).is_err());
        assert!(Grid1D::new(1.0, 1.0, 10).is_err());
    }

    #[test]
    fn cell_centers() {
        let g = Grid1D::new(-1.0, 1.0, 4).unwrap();
        assert_eq!(g.dx(), 0.5);
        assert_eq!(g.centers(), vec![-0.75, -0.25, 0.25, 0.75]);
        assert_eq!(g.interface_at(0.0, 1e-9), Some(2));
        assert_eq!(g.interface_at(0.1, 1e-9), None);
    }

    #[test]
    fn averages() {
        let g = Grid1D::new(0.0, 1.0, 1).unwrap();
        assert_eq!(cell_average_of(|_| 7.0, &g, 5), vec![7.0]);
        assert!((cell_average_of(|x| x, &g, 5)[0] - 0.5).abs() < 1e-15);
        assert!((cell_average_of(|x| x * x, &g, 3)[0] - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn two_d_fill_is_idempotent_with_corners() {
        let grid = Grid::TwoD(Grid2D::new(
            Grid1D::new(0.0, 1.0, 4).unwrap(),
            Grid1D::new(0.0, 1.0, 5).unwrap(),
        ));
        let mut s = State::new(&grid, 3, 0);
        s.set_q_with(|i, j, q| {
            q[0] = (i * 7 + j) as f64;
            q[1] = i as f64;
            q[2] = j as f64;
        });
        let bc = BoundarySpec::new_2d(
            EdgeCondition::wall(&[1]),
            EdgeCondition::Extrapolation,
            EdgeCondition::Periodic,
            EdgeCondition::Periodic,
        );
        fill_ghost_cells(&mut s, &grid, &bc).unwrap();
        let once = s.clone();
        fill_ghost_cells(&mut s, &grid, &bc).unwrap();
        assert_eq!(once, s);
        assert!(s.q.iter().all(|v| v.is_finite()));
    }
}
