use crate::error::{Error, Result};
use crate::grid::Grid;

/// Discrete error norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Norm {
    /// Cell measure times the sum of absolute differences.
    L1,
    /// Square root of the cell measure times the sum of squares.
    L2,
    /// Largest absolute difference.
    Max,
}

impl Norm {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "l1" | "L1" => Ok(Norm::L1),
            "l2" | "L2" => Ok(Norm::L2),
            "max" | "linf" => Ok(Norm::Max),
            other => Err(Error::Config(format!("unknown norm '{other}'"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Norm::L1 => "l1",
            Norm::L2 => "l2",
            Norm::Max => "max",
        }
    }
}

/// Error between interleaved cell values `q` and `reference`, restricted to
/// `components` (all when empty). L1 and L2 are summed per component and
/// then over components.
pub fn error_norm(
    q: &[f64],
    reference: &[f64],
    num_fields: usize,
    cell_measure: f64,
    components: &[usize],
    norm: Norm,
) -> Result<f64> {
    if q.len() != reference.len() || num_fields == 0 || q.len() % num_fields != 0 {
        return Err(Error::IncompatibleGrids(format!(
            "{} values against {} reference values with {num_fields} fields",
            q.len(),
            reference.len()
        )));
    }
    let all: Vec<usize> = (0..num_fields).collect();
    let comps = if components.is_empty() { &all[..] } else { components };
    if let Some(&c) = comps.iter().find(|&&c| c >= num_fields) {
        return Err(Error::Config(format!("component {c} out of range")));
    }
    let mut total = 0.0;
    for &c in comps {
        let diffs = q
            .iter()
            .zip(reference)
            .skip(c)
            .step_by(num_fields)
            .map(|(a, b)| (a - b).abs());
        total += match norm {
            Norm::L1 => cell_measure * diffs.sum::<f64>(),
            Norm::L2 => (cell_measure * diffs.map(|d| d * d).sum::<f64>()).sqrt(),
            Norm::Max => diffs.fold(0.0, f64::max),
        };
    }
    Ok(total)
}

/// `Δx Σ |Q_i - Q̄_i|` over all components.
pub fn l1_error(q: &[f64], reference: &[f64], num_fields: usize, cell_measure: f64) -> Result<f64> {
    error_norm(q, reference, num_fields, cell_measure, &[], Norm::L1)
}

/// Exact block means of fine interleaved cell values onto a coarser grid
/// covering the same domain.
pub fn block_average(fine: &[f64], fine_grid: &Grid, coarse_grid: &Grid, num_fields: usize) -> Result<Vec<f64>> {
    let ratio = |f: &crate::grid::Grid1D, c: &crate::grid::Grid1D| -> Result<usize> {
        let same = (f.x_lower - c.x_lower).abs() <= 1e-12 * (1.0 + c.x_lower.abs())
            && (f.x_upper - c.x_upper).abs() <= 1e-12 * (1.0 + c.x_upper.abs());
        if !same || c.num_cells == 0 || f.num_cells % c.num_cells != 0 {
            return Err(Error::IncompatibleGrids(format!(
                "{} cells on [{}, {}] do not refine {} cells on [{}, {}]",
                f.num_cells, f.x_lower, f.x_upper, c.num_cells, c.x_lower, c.x_upper
            )));
        }
        Ok(f.num_cells / c.num_cells)
    };
    if fine_grid.dim() != coarse_grid.dim() {
        return Err(Error::IncompatibleGrids("grids differ in dimension".into()));
    }
    let rx = ratio(fine_grid.x(), coarse_grid.x())?;
    let (ry, fny, cny) = match (fine_grid.y(), coarse_grid.y()) {
        (Some(fy), Some(cy)) => (ratio(fy, cy)?, fy.num_cells, cy.num_cells),
        _ => (1, 1, 1),
    };
    let (fnx, cnx) = (fine_grid.x().num_cells, coarse_grid.x().num_cells);
    if fine.len() != fnx * fny * num_fields {
        return Err(Error::IncompatibleGrids(format!(
            "{} fine values for {fnx} x {fny} cells",
            fine.len()
        )));
    }
    let mut out = vec![0.0; cnx * cny * num_fields];
    let w = 1.0 / (rx * ry) as f64;
    for j in 0..fny {
        for i in 0..fnx {
            let src = (j * fnx + i) * num_fields;
            let dst = ((j / ry) * cnx + i / rx) * num_fields;
            for m in 0..num_fields {
                out[dst + m] += fine[src + m];
            }
        }
    }
    for v in &mut out {
        *v *= w;
    }
    Ok(out)
}

/// Orders between consecutive rows, `log(e0/e1) / log(n1/n0)`.
pub fn observed_orders(resolutions: &[usize], errors: &[f64]) -> Vec<Option<f64>> {
    let mut out = vec![None];
    for k in 1..errors.len() {
        let r = resolutions[k] as f64 / resolutions[k - 1] as f64;
        out.push(Some((errors[k - 1] / errors[k]).ln() / r.ln()));
    }
    out.truncate(errors.len());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{Grid1D, Grid2D};

    #[test]
    fn l1_examples() {
        assert_eq!(l1_error(&[1.0, 2.0], &[1.0, 2.0], 1, 0.5).unwrap(), 0.0);
        assert_eq!(l1_error(&[1.0, 2.0], &[1.0, 1.0], 1, 0.5).unwrap(), 0.5);
        assert!(l1_error(&[1.0], &[1.0, 1.0], 1, 0.5).is_err());
    }

    #[test]
    fn component_selection() {
        let q = [1.0, 10.0, 2.0, 20.0];
        let r = [0.0, 0.0, 0.0, 0.0];
        assert_eq!(error_norm(&q, &r, 2, 1.0, &[0], Norm::L1).unwrap(), 3.0);
        assert_eq!(error_norm(&q, &r, 2, 1.0, &[1], Norm::Max).unwrap(), 20.0);
        assert_eq!(error_norm(&q, &r, 2, 1.0, &[0], Norm::L2).unwrap(), 5f64.sqrt());
    }

    #[test]
    fn block_means_2d() {
        let fine = Grid::from(Grid2D::new(
            Grid1D::new(0.0, 2.0, 4).unwrap(),
            Grid1D::new(0.0, 1.0, 2).unwrap(),
        ));
        let coarse = Grid::from(Grid2D::new(
            Grid1D::new(0.0, 2.0, 2).unwrap(),
            Grid1D::new(0.0, 1.0, 1).unwrap(),
        ));
        let v: Vec<f64> = (0..8).map(|k| k as f64).collect();
        let out = block_average(&v, &fine, &coarse, 1).unwrap();
        assert_eq!(out, vec![(0.0 + 1.0 + 4.0 + 5.0) / 4.0, (2.0 + 3.0 + 6.0 + 7.0) / 4.0]);
        assert_eq!(block_average(&v, &fine, &fine, 1).unwrap(), v);
        let odd = Grid::from(Grid2D::new(
            Grid1D::new(0.0, 2.0, 3).unwrap(),
            Grid1D::new(0.0, 1.0, 1).unwrap(),
        ));
        assert!(matches!(
            block_average(&v, &fine, &odd, 1),
            Err(Error::IncompatibleGrids(_))
        ));
    }

    #[test]
    fn orders_from_pairs() {
        let o = observed_orders(&[10, 20, 100], &[1.0, 0.25, 0.01]);
        assert_eq!(o[0], None);
        assert!((o[1].unwrap() - 2.0).abs() < 1e-14);
        assert!((o[2].unwrap() - 2.0).abs() < 1e-14);
    }
}
