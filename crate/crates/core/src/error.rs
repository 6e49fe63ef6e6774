use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u32),

    /// Two values over different digit alphabets were combined.
    #[error("alphabet mismatch: modulus {0} vs {1}")]
    ModulusMismatch(u32, u32),

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("digit {digit} out of range for modulus {modulus}")]
    DigitOutOfRange { digit: u32, modulus: u32 },

    #[error("state {state} out of range for a machine with {count} states")]
    StateOutOfRange { state: u32, count: u32 },

    #[error("a truncated series needs at least one coefficient")]
    EmptySeries,

    /// The output row of some state is not a permutation of the alphabet.
    #[error("machine is not invertible: output row of state {0} is not a permutation")]
    NotInvertible(u32),

    /// Constant term of a series is not a unit of `Z/nZ`.
    #[error("not invertible: a0 not a unit")]
    NotAUnit,

    /// A synthesis oracle broke the length-preservation or prefix-monotonicity
    /// contract of sequential functions.
    #[error("oracle is not sequential: {0}")]
    NotSequential(String),

    /// Machine synthesis ran out of its exploration budget before the
    /// remainder classes closed.
    #[error("synthesis budget exhausted: {0}")]
    SynthesisBudget(String),

    /// Remainder closure is only defined for the all-ones geometric series.
    #[error("unsupported series: remainder closure requires the geometric series of 1/(1 - X)")]
    UnsupportedSeries,

    /// Remainder enumeration did not close within the requested depth.
    #[error("remainder closure not witnessed within depth {0}")]
    ClosureNotWitnessed(usize),

    /// Lamplighter conversion is only defined over `Z/2Z`.
    #[error("unsupported modulus: expected 2, got {0}")]
    UnsupportedModulus(u32),

    #[error("parse error: {0}")]
    Parse(String),
}
