//! Error norms, convergence studies, reversibility and symmetry checks.

mod convergence;
mod diagnostics;
mod norms;
mod reference;
mod reversibility;

pub use convergence::{convergence_study, run_error, ConvergenceRow, StudyOptions};
pub use diagnostics::{envelope_deviation, radial_scatter, rms_pressure, total_variation, transpose_asymmetry, RmsPressure};
pub use norms::{block_average, error_norm, l1_error, observed_orders, Norm};
pub use reference::{build_reference, Provenance, ReferenceKind, ReferenceSolution};
pub use reversibility::{time_reversibility_test, ReversibilityOptions, ReversibilityReport};
