use thiserror::Error;

/// Errors raised by the map, its approximations and the analysis layer.
///
/// Infeasible steps are *not* errors; they are reported through
/// [`StepOutcome`](crate::map::StepOutcome) and trajectory termination data.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("rotation step {0} is outside (0, pi)")]
    RotationOutOfRange(f64),

    #[error("rotation fraction {p}/{q} is not in lowest terms")]
    FractionNotReduced { p: u32, q: u32 },

    #[error("rotation fraction {p}/{q} has a zero term")]
    FractionZero { p: u32, q: u32 },

    #[error("{name} must be finite and positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("series order {0} is not in 1..=4")]
    SeriesOrder(usize),

    #[error("series expansion does not converge here (|x| = {0} >= 1)")]
    OutsideConvergence(f64),

    #[error("negative radicand {0}: prediction unavailable")]
    NegativeRadicand(f64),

    #[error("step is infeasible (discriminant {0})")]
    Infeasible(f64),

    #[error("no full return to the initial angle before the trajectory ended")]
    NoReturn,

    #[error("orbit is not periodic")]
    NotPeriodic,

    #[error("trajectory is empty")]
    EmptyTrajectory,

    #[error("invalid config: {0}")]
    Config(String),

    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
