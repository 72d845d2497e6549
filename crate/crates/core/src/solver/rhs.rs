use rayon::prelude::*;

use super::Scheme;
use crate::error::{Location, Result};
use crate::grid::{fill_ghost_cells, State};
use crate::recon::{gather_line, normal_component, reconstruct_line, Line, ReconMode};
use crate::riemann::{RiemannSolver, Vector};

/// Time derivative of the interior cell averages.
#[derive(Debug, Clone, PartialEq)]
pub struct RhsResult {
    /// Interior-ordered, `num_eqn` values per cell.
    pub dqdt: Vec<f64>,
    /// Largest wave speed seen along each axis.
    pub max_speed: [f64; 2],
}

/// Total fluctuation of a cell from its lower-face and upper-face states.
pub fn total_fluctuation(
    q_lower_face: &[f64],
    q_upper_face: &[f64],
    aux: &[f64],
    solver: &RiemannSolver,
) -> Result<Vector> {
    solver.total_fluctuation(q_lower_face, q_upper_face, aux)
}

/// Fill ghosts on a copy of `state` and evaluate the RHS.
pub fn rhs(state: &State, scheme: &Scheme) -> Result<RhsResult> {
    let mut work = state.clone();
    fill_ghost_cells(&mut work, &scheme.grid, &scheme.bc)?;
    rhs_filled(&work, scheme)
}

/// Per-cell sums `apdq(i-1/2) + amdq(i+1/2) + total fluctuation(i)` along a
/// line, in the line's normal component order, and the largest speed.
fn line_increments(
    line: &Line,
    solver: &RiemannSolver,
    mode: &ReconMode,
    axis: usize,
    index: usize,
) -> Result<(Vec<f64>, f64)> {
    let m = line.num_eqn;
    let ng = line.num_ghost;
    let n = line.interior_cells();
    let edges = reconstruct_line(line, mode, solver, axis, index)?;
    let mut amdq = vec![0.0; (n + 1) * m];
    let mut apdq = vec![0.0; (n + 1) * m];
    let mut speed = 0.0f64;
    for k in 0..=n {
        let d = solver
            .solve(edges.left(k), edges.right(k), line.aux_of(ng + k - 1), line.aux_of(ng + k))
            .map_err(|e| e.at(Location::Interface { axis, line: index, index: k }))?;
        speed = speed.max(d.max_speed());
        amdq[k * m..(k + 1) * m].copy_from_slice(&d.amdq[..m]);
        apdq[k * m..(k + 1) * m].copy_from_slice(&d.apdq[..m]);
    }
    let mut inc = vec![0.0; n * m];
    for i in 0..n {
        let tf = solver
            .total_fluctuation(edges.right(i), edges.left(i + 1), line.aux_of(ng + i))
            .map_err(|e| e.at(Location::Cell { index: ng + i }))?;
        for k in 0..m {
            inc[i * m + k] = apdq[i * m + k] + amdq[(i + 1) * m + k] + tf[k];
        }
    }
    Ok((inc, speed))
}

/// RHS of a state whose ghost cells are already filled.
pub fn rhs_filled(state: &State, scheme: &Scheme) -> Result<RhsResult> {
    let layout = state.layout;
    let m = state.num_eqn;
    let cfg = &scheme.config;
    let [dx, dy] = scheme.grid.spacing();
    let ng = layout.num_ghost;
    let (nx, ny) = (layout.nx, layout.ny);

    let row_index = |j: usize| if layout.dim == 1 { 0 } else { j + ng };
    let rows: Vec<(Vec<f64>, f64)> = (0..ny)
        .into_par_iter()
        .map(|j| line_increments(&gather_line(state, 0, row_index(j)), &cfg.solver, &cfg.recon, 0, j))
        .collect::<Result<_>>()?;

    let mut dqdt = vec![0.0; nx * ny * m];
    let mut max_speed = [0.0f64; 2];
    for (j, (inc, s)) in rows.iter().enumerate() {
        max_speed[0] = max_speed[0].max(*s);
        for i in 0..nx {
            for k in 0..m {
                dqdt[(j * nx + i) * m + k] = inc[i * m + k] / dx;
            }
        }
    }

    if layout.dim == 2 {
        let cols: Vec<(Vec<f64>, f64)> = (0..nx)
            .into_par_iter()
            .map(|i| line_increments(&gather_line(state, 1, i + ng), &cfg.solver, &cfg.recon, 1, i))
            .collect::<Result<_>>()?;
        for (i, (inc, s)) in cols.iter().enumerate() {
            max_speed[1] = max_speed[1].max(*s);
            for j in 0..ny {
                for k in 0..m {
                    let kn = normal_component(k, 1, m);
                    dqdt[(j * nx + i) * m + k] += inc[j * m + kn] / dy;
                }
            }
        }
    }

    for j in 0..ny {
        for i in 0..nx {
            let kappa = state.kappa[layout.interior_cell(i, j)];
            for v in &mut dqdt[(j * nx + i) * m..(j * nx + i + 1) * m] {
                *v = -*v / kappa;
            }
        }
    }

    if let Some(src) = &cfg.source {
        let gx = scheme.grid.x();
        for i in 0..nx {
            let c = layout.interior_cell(i, 0);
            src.apply(state.cell_q(c), gx.center(i), &mut dqdt[i * m..(i + 1) * m]);
        }
    }
    Ok(RhsResult { dqdt, max_speed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{BoundarySpec, EdgeCondition, Grid1D};
    use crate::recon::ReconKind;
    use crate::solver::SemiDiscreteConfig;

    #[test]
    fn constant_state_is_steady() {
        let grid = Grid1D::new(0.0, 1.0, 20).unwrap();
        let mut s = State::new(&grid.into(), 2, 2);
        s.set_q_with(|_, _, q| {
            q[0] = 0.3;
            q[1] = -0.1;
        });
        s.set_aux_with(|_, _, a| {
            a[0] = 2.0;
            a[1] = 0.5;
        });
        for kind in [ReconKind::Componentwise, ReconKind::Characteristicwise, ReconKind::WaveSlope] {
            let scheme = Scheme::new(
                grid,
                BoundarySpec::uniform(EdgeCondition::Periodic),
                SemiDiscreteConfig::new(ReconMode::new(kind), RiemannSolver::Acoustics),
            );
            let mut st = s.clone();
            crate::grid::fill_aux_ghosts(&mut st, &scheme.grid, &scheme.bc);
            let r = rhs(&st, &scheme).unwrap();
            assert!(r.dqdt.iter().all(|&v| v == 0.0));
            assert_eq!(r.max_speed[0], 0.5);
        }
    }

    #[test]
    fn shallow_flux_difference_example() {
        let tf = total_fluctuation(
            &[1.0, 0.0],
            &[2.0, 0.0],
            &[],
            &RiemannSolver::ShallowRoe { g: 1.0, entropy_fix: true },
        )
        .unwrap();
        assert_eq!(tf[..2], [0.0, 1.5]);
    }
}
