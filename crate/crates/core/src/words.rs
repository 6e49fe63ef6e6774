//! Finite words over digit alphabets and the prefix metric.
//!
//! A word is a finite sequence of digits drawn from `{0, …, n−1}`. The
//! distance between two distinct words is `2^(−k)` where `k` is the length of
//! their longest common prefix; we keep the exponent `k` itself so that all
//! comparisons stay exact integers.

use std::fmt;

use crate::{Error, Result};

/// A finite word over the alphabet `{0, …, modulus−1}`.
///
/// The empty word is valid. Words are immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitWord {
    modulus: u32,
    digits: Vec<u32>,
}

/// Prefix distance between two words, kept in exponent form: `Exponent(k)`
/// stands for the value `2^(−k)`, `Equal` for distance zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrefixDistance {
    Equal,
    Exponent(usize),
}

impl DigitWord {
    /// Builds a word, rejecting digits outside `[0, modulus)`.
    pub fn new(modulus: u32, digits: Vec<u32>) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::BadModulus(modulus));
        }
        for &d in &digits {
            if d >= modulus {
                return Err(Error::DigitOutOfRange { digit: d, modulus });
            }
        }
        Ok(Self { modulus, digits })
    }

    /// The empty word λ.
    pub fn empty(modulus: u32) -> Result<Self> {
        Self::new(modulus, Vec::new())
    }

    /// Parses the textual form: one character per digit (`"0110"`), or
    /// comma-separated integers (`"1,0,11"`) for alphabets past base 10.
    /// The empty string denotes λ.
    pub fn parse(text: &str, modulus: u32) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Self::empty(modulus);
        }
        let digits: Vec<u32> = if text.contains(',') {
            text.split(',')
                .map(|part| {
                    part.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad digit {part:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            text.chars()
                .map(|c| {
                    c.to_digit(10)
                        .ok_or_else(|| Error::Parse(format!("bad digit {c:?}")))
                })
                .collect::<Result<_>>()?
        };
        Self::new(modulus, digits)
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &DigitWord) -> Result<DigitWord> {
        self.check_alphabet(other)?;
        let mut digits = self.digits.clone();
        digits.extend_from_slice(&other.digits);
        Ok(DigitWord {
            modulus: self.modulus,
            digits,
        })
    }

    /// Length of the longest common prefix of `self` and `other`.
    pub fn common_prefix_length(&self, other: &DigitWord) -> Result<usize> {
        self.check_alphabet(other)?;
        Ok(self
            .digits
            .iter()
            .zip(&other.digits)
            .take_while(|(a, b)| a == b)
            .count())
    }

    /// Prefix distance in exponent form: `Equal` when the words coincide,
    /// otherwise `Exponent(k)` with `k` the common prefix length, denoting
    /// the distance `2^(−k)`.
    pub fn prefix_distance_exponent(&self, other: &DigitWord) -> Result<PrefixDistance> {
        self.check_alphabet(other)?;
        if self == other {
            Ok(PrefixDistance::Equal)
        } else {
            Ok(PrefixDistance::Exponent(self.common_prefix_length(other)?))
        }
    }

    /// True iff `other = self · y` for some suffix `y`.
    pub fn is_prefix_of(&self, other: &DigitWord) -> Result<bool> {
        self.check_alphabet(other)?;
        Ok(self.len() <= other.len() && other.digits[..self.len()] == self.digits[..])
    }

    fn check_alphabet(&self, other: &DigitWord) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        Ok(())
    }
}

impl fmt::Display for DigitWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.modulus <= 10 {
            for d in &self.digits {
                write!(f, "{d}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.digits.iter().map(|d| d.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(text: &str) -> DigitWord {
        DigitWord::parse(text, 2).unwrap()
    }

    #[test]
    fn common_prefix_examples() {
        assert_eq!(w("0110").common_prefix_length(&w("0111")).unwrap(), 3);
        assert_eq!(w("0110").common_prefix_length(&w("0110")).unwrap(), 4);
        assert_eq!(w("10").common_prefix_length(&w("01")).unwrap(), 0);
    }

    #[test]
    fn distance_exponent_examples() {
        assert_eq!(
            w("0110").prefix_distance_exponent(&w("0111")).unwrap(),
            PrefixDistance::Exponent(3)
        );
        assert_eq!(
            w("0110").prefix_distance_exponent(&w("0110")).unwrap(),
            PrefixDistance::Equal
        );
        assert_eq!(
            w("10").prefix_distance_exponent(&w("01")).unwrap(),
            PrefixDistance::Exponent(0)
        );
    }

    #[test]
    fn prefix_examples() {
        assert!(w("").is_prefix_of(&w("0110")).unwrap());
        assert!(w("01").is_prefix_of(&w("0110")).unwrap());
        assert!(!w("011").is_prefix_of(&w("01")).unwrap());
    }

    #[test]
    fn mismatched_alphabets_are_rejected() {
        let x = DigitWord::parse("012", 3).unwrap();
        assert_eq!(
            w("01").common_prefix_length(&x),
            Err(Error::ModulusMismatch(2, 3))
        );
        assert_eq!(
            w("01").prefix_distance_exponent(&x),
            Err(Error::ModulusMismatch(2, 3))
        );
        assert_eq!(w("01").is_prefix_of(&x), Err(Error::ModulusMismatch(2, 3)));
    }

    #[test]
    fn out_of_range_digit_is_rejected() {
        assert_eq!(
            DigitWord::new(2, vec![0, 2]),
            Err(Error::DigitOutOfRange {
                digit: 2,
                modulus: 2
            })
        );
    }

    #[test]
    fn text_round_trip() {
        assert_eq!(w("0110").to_string(), "0110");
        assert_eq!(w("").to_string(), "");
        let wide = DigitWord::parse("3,12,0", 13).unwrap();
        assert_eq!(wide.to_string(), "3,12,0");
        assert_eq!(DigitWord::parse("3,12,0", 13).unwrap(), wide);
    }

    fn word_strategy(modulus: u32, max_len: usize) -> impl Strategy<Value = DigitWord> {
        proptest::collection::vec(0..modulus, 0..=max_len)
            .prop_map(move |digits| DigitWord::new(modulus, digits).unwrap())
    }

    proptest! {
        #[test]
        fn prefix_length_is_symmetric(
            x in word_strategy(3, 24),
            y in word_strategy(3, 24),
        ) {
            prop_assert_eq!(
                x.common_prefix_length(&y).unwrap(),
                y.common_prefix_length(&x).unwrap()
            );
        }

        // Exponent form of the ultrametric inequality
        // d(x, z) <= max(d(x, y), d(y, z)).
        #[test]
        fn prefix_length_is_ultrametric(
            x in word_strategy(2, 24),
            y in word_strategy(2, 24),
            z in word_strategy(2, 24),
        ) {
            let xz = x.common_prefix_length(&z).unwrap();
            let xy = x.common_prefix_length(&y).unwrap();
            let yz = y.common_prefix_length(&z).unwrap();
            prop_assert!(xz >= xy.min(yz));
        }

        #[test]
        fn prefixes_are_detected(
            u in word_strategy(2, 12),
            s in word_strategy(2, 12),
        ) {
            let v = u.concat(&s).unwrap();
            prop_assert!(u.is_prefix_of(&v).unwrap());
            prop_assert_eq!(u.common_prefix_length(&v).unwrap(), u.len());
        }
    }
}
