//! High-order wave-propagation finite volume methods for hyperbolic systems.
//!
//! The semi-discrete scheme updates cell averages from interface
//! fluctuations plus an in-cell total fluctuation, with fifth-order WENO
//! edge values (component-wise, characteristic-wise, wave-slope or
//! f-wave-slope) and SSPRK(10,4) time stepping.

pub mod cli;
pub mod error;
pub mod grid;
pub mod harness;
pub mod problems;

pub mod quadrature;
pub mod recon;
pub mod riemann;
pub mod solver;

pub use error::{Error, Location, Result};
pub use grid::{BoundarySpec, EdgeCondition, Grid, Grid1D, Grid2D, State};
pub use recon::{ReconKind, ReconMode};
pub use riemann::{RiemannSolver, StressLaw, WaveDecomposition};
pub use solver::{evolve, rhs, Scheme, SemiDiscreteConfig};
