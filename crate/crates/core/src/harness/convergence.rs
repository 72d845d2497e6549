use super::norms::{error_norm, observed_orders, Norm};
use super::reference::{build_reference, ReferenceKind, ReferenceSolution};
use crate::error::{Error, Location, Result};
use crate::problems::ProblemSpec;
use crate::solver::evolve;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub resolution: usize,
    pub error: f64,
    pub order: Option<f64>,
}

/// How errors are measured in a study.
#[derive(Debug, Clone, PartialEq)]
pub struct StudyOptions {
    pub norm: Norm,
    /// Observable indices entering the norm; `None` takes the problem's
    /// default and an empty list means all.
    pub components: Option<Vec<usize>>,
    pub reference: ReferenceKind,
    /// CFL target of the fine-grid reference run, if different.
    pub reference_cfl: Option<f64>,
}

impl StudyOptions {
    /// L1 against exact characteristics.
    pub fn characteristics() -> Self {
        Self {
            norm: Norm::L1,
            components: None,
            reference: ReferenceKind::Characteristics,
            reference_cfl: None,
        }
    }

    /// Against a run with `cells` cells.
    pub fn fine_grid(cells: usize, norm: Norm) -> Self {
        Self {
            norm,
            components: None,
            reference: ReferenceKind::FineGrid { cells },
            reference_cfl: None,
        }
    }

    pub fn with_reference_cfl(mut self, cfl: f64) -> Self {
        self.reference_cfl = Some(cfl);
        self
    }

    pub fn with_components(mut self, components: &[usize]) -> Self {
        self.components = Some(components.to_vec());
        self
    }
}

/// Error of one run of `spec` at its final time.
pub fn run_error(spec: &ProblemSpec, reference: &ReferenceSolution, opts: &StudyOptions) -> Result<f64> {
    let setup = spec.setup()?;
    let frames = evolve(&setup.state, &setup.scheme, setup.t_final, &[])?;
    let (names, values) = spec.observables(frames.last().expect("final frame"));
    let target = reference.onto(&setup.scheme.grid)?;
    let components = opts.components.clone().unwrap_or_else(|| spec.error_components());
    error_norm(
        &values,
        &target,
        names.len(),
        setup.scheme.grid.cell_measure(),
        &components,
        opts.norm,
    )
}

/// Errors and observed orders for increasing resolutions.
pub fn convergence_study(
    spec: &ProblemSpec,
    resolutions: &[usize],
    opts: &StudyOptions,
) -> Result<Vec<ConvergenceRow>> {
    if resolutions.is_empty() || resolutions.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Config(format!(
            "resolutions must be increasing, got {resolutions:?}"
        )));
    }
    let shared = match opts.reference {
        ReferenceKind::FineGrid { cells } => {
            let finest = *resolutions.last().unwrap();
            if cells < 8 * finest || cells % finest != 0 {
                return Err(Error::Config(format!(
                    "fine-grid reference with {cells} cells must be a multiple of, and at least 8x, {finest}"
                )));
            }
            let mut fine = spec.clone();
            if opts.reference_cfl.is_some() {
                fine.cfl = opts.reference_cfl;
            }
            Some(build_reference(&fine, opts.reference)?)
        }
        ReferenceKind::Characteristics => None,
    };
    let mut errors = Vec::with_capacity(resolutions.len());
    for &n in resolutions {
        let run = spec.refined(n);
        let err = match &shared {
            Some(r) => run_error(&run, r, opts),
            None => build_reference(&run, opts.reference).and_then(|r| run_error(&run, &r, opts)),
        }
        .map_err(|e| e.at(Location::Resolution { cells: n }))?;
        errors.push(err);
    }
    let orders = observed_orders(resolutions, &errors);
    Ok(resolutions
        .iter()
        .zip(errors)
        .zip(orders)
        .map(|((&resolution, error), order)| ConvergenceRow {
            resolution,
            error,
            order,
        })
        .collect())
}
