use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Failures raised by the analytic and numerical routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A frequency that must be strictly positive was not.
    NonPositiveFrequency { what: &'static str, value: f64 },
    /// `quench_b` needs a real post-quench frequency.
    QuenchFinalFrequency { omega_f: f64 },
    /// A tabulated schedule does not keep `2J/(ω1² − ω2²)` constant.
    VaryingRotationAngle {
        index: usize,
        time: f64,
        ratio: f64,
        reference: f64,
    },
    /// A schedule or sample table is malformed.
    InvalidSchedule(&'static str),
    /// Output times must start at zero and increase strictly.
    InvalidTimeGrid(&'static str),
    /// The adaptive integrator could not keep its step above round-off.
    StepSizeUnderflow { time: f64 },
    /// The adaptive integrator hit its step budget.
    StepLimit { time: f64 },
    /// Rényi entropies are only defined here for integer orders `n ≥ 2`.
    InvalidRenyiOrder(u32),
    /// The Schmidt sum was cut before its tail dropped below tolerance.
    TruncationInsufficient { terms: usize, tail: f64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonPositiveFrequency { what, value } => {
                write!(f, "{what} must be strictly positive, got {value}")
            }
            Error::QuenchFinalFrequency { omega_f } => write!(
                f,
                "quench_b needs a positive final frequency, got {omega_f}; \
                 use free_b for a vanishing and inverted_b for an imaginary one"
            ),
            Error::VaryingRotationAngle {
                index,
                time,
                ratio,
                reference,
            } => write!(
                f,
                "rotation angle is not constant: sample {index} at t = {time} has \
                 2J/(ω1²−ω2²) = {ratio}, expected {reference}"
            ),
            Error::InvalidSchedule(msg) => write!(f, "invalid schedule: {msg}"),
            Error::InvalidTimeGrid(msg) => write!(f, "invalid time grid: {msg}"),
            Error::StepSizeUnderflow { time } => {
                write!(f, "integrator step size underflow at t = {time}")
            }
            Error::StepLimit { time } => {
                write!(f, "integrator exceeded its step budget at t = {time}")
            }
            Error::InvalidRenyiOrder(n) => write!(f, "Rényi order must be at least 2, got {n}"),
            Error::TruncationInsufficient { terms, tail } => write!(
                f,
                "Schmidt sum truncated at {terms} terms leaves a tail of {tail:e}"
            ),
        }
    }
}

impl core::error::Error for Error {}
