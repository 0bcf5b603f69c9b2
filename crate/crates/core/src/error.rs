//! Error type shared by all gate-construction and analysis routines.

use thiserror::Error;

/// Errors produced by gate construction, sequence parsing and sweeps.
#[derive(Debug, Error)]
pub enum Error {
    /// An angle or error coordinate was NaN or infinite.
    #[error("non-finite input for {0}")]
    NonFinite(&'static str),

    /// Two matrices of different dimension were combined.
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    /// A propagator product over an empty list was requested.
    #[error("cannot compose an empty sequence")]
    EmptySequence,

    /// Entries fail the unitarity check `U U† = E`.
    #[error("matrix is not unitary (residual {0:.3e})")]
    NotUnitary(f64),

    /// A flip angle left the domain of its defining formula.
    #[error("flip angle out of domain: {0}")]
    AngleDomain(String),

    /// Winding numbers produced a negative flip angle.
    #[error("winding numbers ({n1},{n2},{n3}) give a negative flip angle of {angle_deg:.4} deg")]
    NegativeFlipAngle {
        n1: u32,
        n2: u32,
        n3: u32,
        angle_deg: f64,
    },

    /// Evolution for a negative duration was requested.
    #[error("negative evolution time {0} s")]
    NegativeTime(f64),

    /// A sweep grid specification was rejected.
    #[error("invalid sweep spec: {0}")]
    InvalidSweepSpec(String),

    /// The chosen error axis does not apply to the gate under test.
    #[error("axis `{axis}` is not valid for {gate}")]
    AxisMismatch { axis: &'static str, gate: String },

    /// Not enough points survived the fit-window guards.
    #[error(
        "only {found} usable points in fit range [{lo}, {hi}] (need at least {need}); \
         widen the range"
    )]
    TooFewFitPoints {
        found: usize,
        need: usize,
        lo: f64,
        hi: f64,
    },

    /// A sequence file line could not be parsed.
    #[error("parse error at line {line}: {message}")]
    SequenceParse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
