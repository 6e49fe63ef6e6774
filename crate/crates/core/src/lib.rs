//! Exact arithmetic for the lamplighter group seen through three lenses.
//!
//! The lamplighter group `(⊕_Z Z/2Z) ⋊ Z` is generated by a 2-state Mealy
//! machine over the binary alphabet. This crate builds that machine (and its
//! mod-`n` generalization), and lets every group element act in three
//! independent ways that must agree exactly:
//!
//! * **machine transduction** — feed a digit word through a chain of machine
//!   states ([`mealy`]),
//! * **affine series maps** — act on truncated power series over `Z/nZ` by
//!   `g ↦ f^κ·(h + g)` with `f = 1/(1 − X)` ([`series`], [`affine`]),
//! * **normal-form algebra** — multiply canonical `(support, κ)` pairs, which
//!   for `n = 2` are ordinary lamplighter elements `(finite lamp set, shift)`
//!   ([`affine`], [`lamplighter`]).
//!
//! Everything is integer-exact: distances are kept as exponents, series are
//! truncated eagerly at a fixed length, and all group laws are decidable
//! equalities. The [`verify`] module packages the consistency checks into
//! seeded, reproducible suites.

pub mod affine;
mod error;
pub mod lamplighter;
pub mod mealy;
pub mod series;
pub mod verify;
pub mod words;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn core_values_are_shareable() {
        assert_send_sync::<words::DigitWord>();
        assert_send_sync::<mealy::MealyMachine>();
        assert_send_sync::<series::TruncatedSeries>();
        assert_send_sync::<affine::NormalForm>();
        assert_send_sync::<lamplighter::LampElement>();
    }
}
