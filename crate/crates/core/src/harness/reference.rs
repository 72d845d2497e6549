use super::norms::block_average;
use crate::error::{Error, Location, Result};
use crate::grid::Grid;
use crate::problems::{ProblemKind, ProblemSpec};
use crate::solver::evolve;

/// How a reference solution was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Exact cell averages from the characteristic solution.
    Characteristics,
    /// The scheme itself on a finer grid, block-averaged.
    FineGrid { cells: usize },
}

impl Provenance {
    pub fn tag(&self) -> String {
        match self {
            Provenance::Characteristics => "analytic-characteristics".into(),
            Provenance::FineGrid { cells } => format!("fine-grid-self:{cells}"),
        }
    }
}

/// Requested kind of reference.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReferenceKind {
    Characteristics,
    /// Run the problem with this many cells (as in `ProblemSpec::refined`).
    FineGrid { cells: usize },
}

/// Cell averages of a problem's observables at its final time.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceSolution {
    pub grid: Grid,
    pub num_fields: usize,
    pub values: Vec<f64>,
    pub provenance: Provenance,
}

impl ReferenceSolution {
    /// Conservative average onto `grid`.
    pub fn onto(&self, grid: &Grid) -> Result<Vec<f64>> {
        block_average(&self.values, &self.grid, grid, self.num_fields)
    }
}

/// Reference for `spec` at its final time. Characteristics references are
/// built on the spec's own grid.
pub fn build_reference(spec: &ProblemSpec, kind: ReferenceKind) -> Result<ReferenceSolution> {
    match kind {
        ReferenceKind::Characteristics => {
            let ProblemKind::Acoustics(p) = &spec.kind else {
                return Err(Error::Unsupported(format!(
                    "characteristics reference for the nonlinear or 2D problem {}",
                    spec.id.name()
                )));
            };
            let t = spec.t_final.unwrap_or(p.t_final);
            let grid = p.grid()?;
            Ok(ReferenceSolution {
                values: p.exact_averages(&grid, t),
                grid: grid.into(),
                num_fields: 2,
                provenance: Provenance::Characteristics,
            })
        }
        ReferenceKind::FineGrid { cells } => {
            if let ProblemKind::Hump(_) = &spec.kind {
                return hump_reference(spec, cells).map_err(|e| e.at(Location::Resolution { cells }));
            }
            let fine = spec.refined(cells);
            let setup = fine.setup().map_err(|e| e.at(Location::Resolution { cells }))?;
            let frames = evolve(&setup.state, &setup.scheme, setup.t_final, &[])
                .map_err(|e| e.at(Location::Resolution { cells }))?;
            let last = frames.last().expect("final frame");
            let (names, values) = fine.observables(last);
            Ok(ReferenceSolution {
                grid: setup.scheme.grid,
                num_fields: names.len(),
                values,
                provenance: Provenance::FineGrid { cells },
            })
        }
    }
}

/// Fine hump run on the upper half, cut off where the water stays at rest,
/// unfolded and padded with the initial data.
fn hump_reference(spec: &ProblemSpec, cells: usize) -> Result<ReferenceSolution> {
    let mut fine = spec.refined(cells);
    let full = fine.setup()?;
    let (names, mut values) = fine.observables(&full.state);
    let m = names.len();

    let ProblemKind::Hump(p) = &mut fine.kind else { unreachable!() };
    let t = spec.t_final.unwrap_or(p.t_final);
    p.upper_half = p.my % 2 == 0;
    let keep = (p.quiet_beyond(t) / 2.0 * p.mx as f64).ceil() as usize + 2 * full.state.layout.num_ghost;
    p.columns = Some(keep.min(p.mx));
    let part = fine.setup()?;
    let frames = evolve(&part.state, &part.scheme, part.t_final, &[])?;
    let (_, solved) = fine.observables(frames.last().expect("final frame"));
    let ProblemKind::Hump(p) = &fine.kind else { unreachable!() };
    let solved = if p.upper_half { p.unfold(&solved) } else { solved };

    let (mx, n) = (p.mx, p.columns.unwrap_or(p.mx).min(p.mx));
    for (j, row) in solved.chunks_exact(n * m).enumerate() {
        values[j * mx * m..(j * mx + n) * m].copy_from_slice(row);
    }
    Ok(ReferenceSolution {
        grid: full.scheme.grid,
        num_fields: m,
        values,
        provenance: Provenance::FineGrid { cells },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::ProblemId;

    #[test]
    fn characteristics_only_for_acoustics() {
        let spec = ProblemSpec::new(ProblemId::Stegoton, 24, 1);
        assert!(matches!(
            build_reference(&spec, ReferenceKind::Characteristics),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn hump_reference_matches_full_run() {
        let spec = ProblemSpec::new(ProblemId::SwHumpSmooth, 80, 40).with_t_final(0.12);
        let r = build_reference(&spec, ReferenceKind::FineGrid { cells: 80 }).unwrap();
        let setup = spec.setup().unwrap();
        let frames = evolve(&setup.state, &setup.scheme, setup.t_final, &[]).unwrap();
        let full = frames.last().unwrap().interior_q();
        let worst = r.values.iter().zip(&full).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(worst < 1e-11, "{worst:e}");
    }

    #[test]
    fn reference_onto_itself() {
        let spec = ProblemSpec::new(ProblemId::AcousticsHomog, 100, 1);
        let r = build_reference(&spec, ReferenceKind::Characteristics).unwrap();
        assert_eq!(r.onto(&r.grid).unwrap(), r.values);
    }
}
