use std::fmt;

/// Errors raised by grid setup, Riemann solves and time stepping.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("setup error: {0}")]
    Setup(String),
    #[error("nonpositive material coefficient {name} = {value}")]
    Coefficient { name: &'static str, value: f64 },
    #[error("dry state: depth {depth} is not positive")]
    DryState { depth: f64 },
    #[error("resonant interface: wave speed {speed:e} below floor {floor:e}")]
    Resonance { speed: f64, floor: f64 },
    #[error("stress law overflow at strain {strain}")]
    StressOverflow { strain: f64 },
    #[error("{source} at {location}")]
    Located {
        location: Location,
        #[source]
        source: Box<Error>,
    },
    #[error("non-finite value in Runge-Kutta stage {stage}")]
    BlowUp { stage: usize },
    #[error("time step {dt:e} fell below the floor {floor:e} at t = {t}")]
    StepTooSmall { dt: f64, floor: f64, t: f64 },
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("incompatible grids: {0}")]
    IncompatibleGrids(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("test invalidated: {0}")]
    Invalidated(String),
}

impl Error {
    /// Attach a grid location to an error raised by a pointwise kernel.
    pub fn at(self, location: Location) -> Error {
        match self {
            Error::Located { .. } => self,
            other => Error::Located {
                location,
                source: Box::new(other),
            },
        }
    }

    /// True for errors that come from the numerics rather than the inputs.
    pub fn is_numerical(&self) -> bool {
        match self {
            Error::Located { source, .. } => source.is_numerical(),
            Error::Config(_)
            | Error::Setup(_)
            | Error::IncompatibleGrids(_)
            | Error::Unsupported(_) => false,
            _ => true,
        }
    }
}

/// Where on the grid an error happened.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    /// Interface index along a sweep line (0 = lower domain edge).
    Interface { axis: usize, line: usize, index: usize },
    /// Ghost-inclusive cell index.
    Cell { index: usize },
    /// One run of a study, by resolution.
    Resolution { cells: usize },
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Interface { axis, line, index } => {
                let name = if *axis == 0 { "x" } else { "y" };
                write!(f, "{name}-interface {index} of line {line}")
            }
            Location::Cell { index } => write!(f, "cell {index}"),
            Location::Resolution { cells } => write!(f, "resolution {cells}"),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
