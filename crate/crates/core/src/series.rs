//! Truncated formal power series over `Z/nZ`.
//!
//! A value holds the first `L` coefficients of a series. All binary
//! operations require equal modulus and equal length, and every operation is
//! prefix-exact: the first `L'` coefficients of a sum, product, inverse or
//! power depend only on the first `L'` coefficients of the operands. That is
//! what makes the fixed-length representation lossless for prefix queries.

use std::fmt;

use num_integer::Integer;

use crate::words::DigitWord;
use crate::{Error, Result};

/// An element of `Z/nZ`, always stored reduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModInt {
    modulus: u32,
    value: u32,
}

impl ModInt {
    /// Reduces `value` into `[0, modulus)`; negative inputs wrap.
    pub fn new(modulus: u32, value: i64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::BadModulus(modulus));
        }
        let m = i64::from(modulus);
        let value = value.rem_euclid(m) as u32;
        Ok(Self { modulus, value })
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn add(&self, other: ModInt) -> Result<ModInt> {
        self.check(other)?;
        Ok(Self {
            modulus: self.modulus,
            value: (self.value + other.value) % self.modulus,
        })
    }

    pub fn mul(&self, other: ModInt) -> Result<ModInt> {
        self.check(other)?;
        let v = u64::from(self.value) * u64::from(other.value) % u64::from(self.modulus);
        Ok(Self {
            modulus: self.modulus,
            value: v as u32,
        })
    }

    pub fn neg(&self) -> ModInt {
        Self {
            modulus: self.modulus,
            value: (self.modulus - self.value) % self.modulus,
        }
    }

    /// True iff the value is invertible in `Z/nZ`, i.e. coprime to `n`.
    pub fn is_unit(&self) -> bool {
        i64::from(self.value).gcd(&i64::from(self.modulus)) == 1
    }

    pub fn inverse(&self) -> Result<ModInt> {
        let e = i64::from(self.value).extended_gcd(&i64::from(self.modulus));
        if e.gcd != 1 {
            return Err(Error::NotAUnit);
        }
        Self::new(self.modulus, e.x)
    }

    fn check(&self, other: ModInt) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        Ok(())
    }
}

/// The first `L ≥ 1` coefficients of a series `Σ a_k X^k` over `Z/nZ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    modulus: u32,
    coeffs: Vec<u32>,
}

impl TruncatedSeries {
    /// Builds a series from raw integers, reducing each coefficient mod `n`.
    pub fn from_coeffs(modulus: u32, coeffs: impl IntoIterator<Item = i64>) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::BadModulus(modulus));
        }
        let m = i64::from(modulus);
        let coeffs: Vec<u32> = coeffs
            .into_iter()
            .map(|c| c.rem_euclid(m) as u32)
            .collect();
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        Ok(Self { modulus, coeffs })
    }

    pub fn zero(modulus: u32, len: usize) -> Result<Self> {
        Self::from_coeffs(modulus, std::iter::repeat_n(0, len))
    }

    /// The multiplicative identity `1 0 0 …`.
    pub fn one(modulus: u32, len: usize) -> Result<Self> {
        Self::constant(ModInt::new(modulus, 1)?, len)
    }

    /// The constant series `a 0 0 …`.
    pub fn constant(a: ModInt, len: usize) -> Result<Self> {
        let mut coeffs = vec![0i64; len];
        if let Some(first) = coeffs.first_mut() {
            *first = i64::from(a.value());
        }
        Self::from_coeffs(a.modulus(), coeffs)
    }

    /// Parses a digit string (`"1100"`) or comma-separated integers.
    pub fn parse(text: &str, modulus: u32) -> Result<Self> {
        let word = DigitWord::parse(text, modulus)
            .map_err(|_| Error::Parse(format!("bad series text {text:?}")))?;
        if word.is_empty() {
            return Err(Error::EmptySeries);
        }
        Self::from_word(&word)
    }

    /// Reads a word as the series whose coefficient `k` is the word's digit `k`.
    pub fn from_word(word: &DigitWord) -> Result<Self> {
        Self::from_coeffs(word.modulus(), word.digits().iter().map(|&d| i64::from(d)))
    }

    /// Writes the coefficients back out as a word of the same length.
    pub fn to_word(&self) -> DigitWord {
        DigitWord::new(self.modulus, self.coeffs.clone()).expect("coefficients are reduced")
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> ModInt {
        ModInt {
            modulus: self.modulus,
            value: self.coeffs[k],
        }
    }

    /// Keeps the first `len` coefficients. `len` must be in `[1, L]`.
    pub fn truncate(&self, len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::EmptySeries);
        }
        if len > self.len() {
            return Err(Error::LengthMismatch(len, self.len()));
        }
        Ok(Self {
            modulus: self.modulus,
            coeffs: self.coeffs[..len].to_vec(),
        })
    }

    /// Truncates or zero-pads to exactly `len ≥ 1` coefficients.
    pub fn resized(&self, len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::EmptySeries);
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(len, 0);
        Ok(Self {
            modulus: self.modulus,
            coeffs,
        })
    }

    /// Coefficientwise sum.
    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_shape(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| (a + b) % self.modulus)
            .collect();
        Ok(Self {
            modulus: self.modulus,
            coeffs,
        })
    }

    /// Truncated Cauchy product: coefficient `k` is `Σ_{i≤k} a_i·b_{k−i}`.
    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_shape(other)?;
        let n = u64::from(self.modulus);
        let len = self.len();
        let mut coeffs = vec![0u32; len];
        for (k, c) in coeffs.iter_mut().enumerate() {
            let mut acc = 0u64;
            for i in 0..=k {
                acc += u64::from(self.coeffs[i]) * u64::from(other.coeffs[k - i]) % n;
            }
            *c = (acc % n) as u32;
        }
        Ok(Self {
            modulus: self.modulus,
            coeffs,
        })
    }

    /// True iff the constant term is a unit of `Z/nZ`.
    pub fn is_unit(&self) -> bool {
        self.coeff(0).is_unit()
    }

    /// Multiplicative inverse at the same truncation, by the recurrence
    /// `b_0 = a_0^{-1}`, `b_k = -a_0^{-1} Σ_{i=1}^{k} a_i b_{k-i}`.
    pub fn inverse(&self) -> Result<TruncatedSeries> {
        let a0_inv = self.coeff(0).inverse()?;
        let n = u64::from(self.modulus);
        let len = self.len();
        let mut b = vec![0u32; len];
        b[0] = a0_inv.value();
        for k in 1..len {
            let mut acc = 0u64;
            for i in 1..=k {
                acc += u64::from(self.coeffs[i]) * u64::from(b[k - i]) % n;
            }
            let s = (acc % n) as u32;
            let neg = (self.modulus - s) % self.modulus;
            b[k] = (u64::from(neg) * u64::from(a0_inv.value()) % n) as u32;
        }
        Ok(Self {
            modulus: self.modulus,
            coeffs: b,
        })
    }

    /// Drops the constant term and reindexes; the final slot is zeroed
    /// because the true coefficient `a_L` is unknown at this truncation.
    pub fn shift(&self) -> TruncatedSeries {
        let mut coeffs: Vec<u32> = self.coeffs[1..].to_vec();
        coeffs.push(0);
        Self {
            modulus: self.modulus,
            coeffs,
        }
    }

    /// The geometric series of `1/(1 − aX)`: coefficient `k` is `a^k`.
    pub fn geometric(a: ModInt, len: usize) -> Result<TruncatedSeries> {
        if len == 0 {
            return Err(Error::EmptySeries);
        }
        let n = u64::from(a.modulus());
        let mut coeffs = Vec::with_capacity(len);
        let mut acc = 1u64 % n;
        for _ in 0..len {
            coeffs.push(acc as u32);
            acc = acc * u64::from(a.value()) % n;
        }
        Ok(Self {
            modulus: a.modulus(),
            coeffs,
        })
    }

    /// Integer power at the same truncation; negative exponents require the
    /// constant term to be a unit.
    pub fn power(&self, m: i64) -> Result<TruncatedSeries> {
        let base = if m < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::one(self.modulus, self.len())?;
        for _ in 0..m.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    fn check_shape(&self, other: &TruncatedSeries) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        if self.len() != other.len() {
            return Err(Error::LengthMismatch(self.len(), other.len()));
        }
        Ok(())
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_word())
    }
}
