//! Affine maps on truncated series, the lamplighter Mealy machine, and the
//! normal-form algebra of the group it generates.
//!
//! Throughout, `f` is the geometric series of `1/(1 − X)` and application is
//! postfix: the product "`x` then `y`" acts by `g ↦ y(x(g))`. Every element
//! of the machine group can be written canonically as "add `Σ s_m f^m`, then
//! multiply by `f^κ`", which is the [`NormalForm`] `(support, κ)`. For
//! modulus 2 this is literally a lamplighter element: the support is the set
//! of lit lamps and `κ` the lamplighter's position.

use std::collections::BTreeMap;
use std::fmt;

use crate::mealy::{transduce_chain, MealyMachine};
use crate::series::{ModInt, TruncatedSeries};
use crate::words::DigitWord;
use crate::{Error, Result};

/// Which affine map an [`AffineAtom`] performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AtomKind {
    /// `g ↦ parameter + g`
    Alpha,
    /// `g ↦ parameter · g`
    Mu,
    /// `g ↦ parameter⁻¹ · g`
    MuInverse,
}

/// One affine map on truncated series. Multiplicative atoms require a unit
/// parameter, enforced at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineAtom {
    kind: AtomKind,
    parameter: TruncatedSeries,
}

impl AffineAtom {
    pub fn alpha(h: TruncatedSeries) -> Self {
        Self {
            kind: AtomKind::Alpha,
            parameter: h,
        }
    }

    pub fn mu(f: TruncatedSeries) -> Result<Self> {
        if !f.is_unit() {
            return Err(Error::NotAUnit);
        }
        Ok(Self {
            kind: AtomKind::Mu,
            parameter: f,
        })
    }

    pub fn mu_inverse(f: TruncatedSeries) -> Result<Self> {
        if !f.is_unit() {
            return Err(Error::NotAUnit);
        }
        Ok(Self {
            kind: AtomKind::MuInverse,
            parameter: f,
        })
    }

    pub fn kind(&self) -> AtomKind {
        self.kind
    }

    pub fn parameter(&self) -> &TruncatedSeries {
        &self.parameter
    }

    pub fn apply(&self, g: &TruncatedSeries) -> Result<TruncatedSeries> {
        match self.kind {
            AtomKind::Alpha => self.parameter.add(g),
            AtomKind::Mu => self.parameter.mul(g),
            AtomKind::MuInverse => self.parameter.inverse()?.mul(g),
        }
    }
}

/// Applies the atoms left to right (postfix composition).
pub fn apply_atom_chain(atoms: &[AffineAtom], g: &TruncatedSeries) -> Result<TruncatedSeries> {
    let mut current = g.clone();
    for atom in atoms {
        current = atom.apply(&current)?;
    }
    Ok(current)
}

/// The `n`-state machine whose state `s` realizes "add the constant `s`,
/// then multiply by the all-ones series": reading the letter `r` it outputs
/// `s + r` and moves to state `s + r`.
pub fn build_lamplighter_machine(modulus: u32) -> Result<MealyMachine> {
    MealyMachine::from_fn(modulus, modulus, |s, r| {
        ((s + r) % modulus, (s + r) % modulus)
    })
}

/// Result of enumerating the single-letter remainders of `μ[f]`:
/// the discovered state labels and the machine their transitions form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemainderClosure {
    /// Shift label `s` of each discovered state, in discovery order.
    pub shifts: Vec<u32>,
    pub machine: MealyMachine,
}

const CLOSURE_PROBE_LEN: usize = 8;
const CLOSURE_STATE_CAP: usize = 1024;

/// Enumerates the remainders of multiplication by the all-ones series,
/// reading one letter at a time until the set of observed behaviors closes.
///
/// Only `f = 1/(1 − X)` (every retained coefficient equal to 1) is accepted.
/// States are told apart by their action on the probe inputs `0` and `1`;
/// `depth` bounds how many letters may be read before closure must have been
/// witnessed.
pub fn remainder_closure(f: &TruncatedSeries, depth: usize) -> Result<RemainderClosure> {
    if f.coeffs().iter().any(|&c| c != 1) {
        return Err(Error::UnsupportedSeries);
    }
    let n = f.modulus();

    // fingerprint of the remainder behind `path`: its outputs on the two
    // probes, starting at the first position the remainder controls
    let eval = |path: &[u32], probe_first: u32| -> Result<Vec<u32>> {
        let len = path.len() + CLOSURE_PROBE_LEN;
        let mut coeffs: Vec<i64> = path.iter().map(|&d| i64::from(d)).collect();
        coeffs.push(i64::from(probe_first));
        coeffs.resize(len, 0);
        let input = TruncatedSeries::from_coeffs(n, coeffs)?;
        let all_ones = TruncatedSeries::geometric(ModInt::new(n, 1)?, len)?;
        Ok(all_ones.mul(&input)?.coeffs()[path.len()..].to_vec())
    };
    let fingerprint = |path: &[u32]| -> Result<(Vec<u32>, Vec<u32>)> {
        Ok((eval(path, 0)?, eval(path, 1)?))
    };

    let mut paths: Vec<Vec<u32>> = vec![Vec::new()];
    let mut prints: Vec<(Vec<u32>, Vec<u32>)> = vec![fingerprint(&[])?];
    let mut transition: Vec<u32> = Vec::new();
    let mut output: Vec<u32> = Vec::new();

    let mut next = 0usize;
    while next < paths.len() {
        let path = paths[next].clone();
        for r in 0..n {
            let mut child = path.clone();
            child.push(r);
            // the letter emitted while reading r is the first coefficient the
            // parent remainder produces, one position before the child's tail
            let parent_view = eval(&path, r)?;
            output.push(parent_view[0]);
            let child_print = fingerprint(&child)?;
            let target = match prints.iter().position(|p| *p == child_print) {
                Some(j) => j as u32,
                None => {
                    if child.len() > depth {
                        return Err(Error::ClosureNotWitnessed(depth));
                    }
                    if paths.len() >= CLOSURE_STATE_CAP {
                        return Err(Error::ClosureNotWitnessed(depth));
                    }
                    paths.push(child);
                    prints.push(child_print);
                    (paths.len() - 1) as u32
                }
            };
            transition.push(target);
        }
        next += 1;
    }

    let shifts: Vec<u32> = prints.iter().map(|p| p.0[0]).collect();
    let machine = MealyMachine::new(paths.len() as u32, n, transition, output)?;
    Ok(RemainderClosure { shifts, machine })
}

/// One generator token: `(s, +1)` is the machine state `s` acting forward,
/// `(s, −1)` is its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenToken {
    pub s: u32,
    pub inverse: bool,
}

/// A word in the machine generators and their inverses, applied left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorWord {
    modulus: u32,
    tokens: Vec<GenToken>,
}

impl GeneratorWord {
    pub fn new(modulus: u32, tokens: Vec<GenToken>) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::BadModulus(modulus));
        }
        for t in &tokens {
            if t.s >= modulus {
                return Err(Error::DigitOutOfRange {
                    digit: t.s,
                    modulus,
                });
            }
        }
        Ok(Self { modulus, tokens })
    }

    pub fn empty(modulus: u32) -> Result<Self> {
        Self::new(modulus, Vec::new())
    }

    /// Parses whitespace-separated tokens `g<s>` / `g<s>^-1`; for modulus 2
    /// the aliases `q` = `g0` and `p` = `g1` (and `q^-1`, `p^-1`) work too.
    pub fn parse(text: &str, modulus: u32) -> Result<Self> {
        let mut tokens = Vec::new();
        for raw in text.split_whitespace() {
            let (body, inverse) = match raw.strip_suffix("^-1") {
                Some(body) => (body, true),
                None => (raw, false),
            };
            let s = match body {
                "q" if modulus == 2 => 0,
                "p" if modulus == 2 => 1,
                _ => body
                    .strip_prefix('g')
                    .and_then(|v| v.parse::<u32>().ok())
                    .ok_or_else(|| Error::Parse(format!("bad generator token {raw:?}")))?,
            };
            tokens.push(GenToken { s, inverse });
        }
        Self::new(modulus, tokens)
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn tokens(&self) -> &[GenToken] {
        &self.tokens
    }

    pub fn concat(&self, other: &GeneratorWord) -> Result<GeneratorWord> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        let mut tokens = self.tokens.clone();
        tokens.extend_from_slice(&other.tokens);
        Self::new(self.modulus, tokens)
    }

    /// Folds the tokens into a canonical normal form.
    pub fn to_normal_form(&self) -> NormalForm {
        let mut acc = NormalForm::identity(self.modulus).expect("modulus checked");
        for t in &self.tokens {
            let lift = if t.inverse {
                NormalForm::generator_inverse(self.modulus, t.s)
            } else {
                NormalForm::generator(self.modulus, t.s)
            }
            .expect("token range checked");
            acc = acc.mul(&lift).expect("same modulus");
        }
        acc
    }

    /// Transduction route: feed `word` through the machine chain, using the
    /// lamplighter machine in state `s` for `(s, +1)` and the inverted
    /// machine in state `s` for `(s, −1)`.
    pub fn apply_to_word(&self, word: &DigitWord) -> Result<DigitWord> {
        if word.modulus() != self.modulus {
            return Err(Error::ModulusMismatch(self.modulus, word.modulus()));
        }
        let machine = build_lamplighter_machine(self.modulus)?;
        let inverse = machine.invert()?;
        let stages: Vec<(&MealyMachine, u32)> = self
            .tokens
            .iter()
            .map(|t| (if t.inverse { &inverse } else { &machine }, t.s))
            .collect();
        transduce_chain(&stages, word)
    }
}

impl fmt::Display for GeneratorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for t in &self.tokens {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            match (self.modulus, t.s) {
                (2, 0) => write!(f, "q")?,
                (2, 1) => write!(f, "p")?,
                (_, s) => write!(f, "g{s}")?,
            }
            if t.inverse {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

/// Canonical form of a machine-group element: apply "add `Σ s_m f^m`" first,
/// then "multiply by `f^κ`", with `f` the all-ones geometric series.
///
/// The support map never stores zero coefficients, so equality of normal
/// forms is plain structural equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalForm {
    modulus: u32,
    support: BTreeMap<i64, u32>,
    kappa: i64,
}

impl NormalForm {
    /// Builds a normal form, reducing coefficients mod `n` and pruning zeros.
    pub fn new(
        modulus: u32,
        support: impl IntoIterator<Item = (i64, i64)>,
        kappa: i64,
    ) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::BadModulus(modulus));
        }
        let mut map = BTreeMap::new();
        for (m, s) in support {
            let s = s.rem_euclid(i64::from(modulus)) as u32;
            let entry = map.entry(m).or_insert(0u32);
            *entry = (*entry + s) % modulus;
        }
        map.retain(|_, v| *v != 0);
        Ok(Self {
            modulus,
            support: map,
            kappa,
        })
    }

    pub fn identity(modulus: u32) -> Result<Self> {
        Self::new(modulus, [], 0)
    }

    /// The generator `(s, +1)`: add the constant `s`, then multiply by `f`.
    pub fn generator(modulus: u32, s: u32) -> Result<Self> {
        if s >= modulus {
            return Err(Error::DigitOutOfRange { digit: s, modulus });
        }
        Self::new(modulus, [(0, i64::from(s))], 1)
    }

    /// The inverse generator `(s, −1)`, i.e. the group inverse of
    /// [`NormalForm::generator`] — coefficient `−s` at exponent 1, `κ = −1`.
    pub fn generator_inverse(modulus: u32, s: u32) -> Result<Self> {
        if s >= modulus {
            return Err(Error::DigitOutOfRange { digit: s, modulus });
        }
        Self::new(modulus, [(1, -i64::from(s))], -1)
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn support(&self) -> &BTreeMap<i64, u32> {
        &self.support
    }

    pub fn kappa(&self) -> i64 {
        self.kappa
    }

    pub fn is_identity(&self) -> bool {
        self.support.is_empty() && self.kappa == 0
    }

    fn coeff(&self, m: i64) -> u32 {
        self.support.get(&m).copied().unwrap_or(0)
    }

    /// Product "apply `self` first, then `other`": the result's coefficient
    /// at exponent `m` is `self(m) + other(m + self.κ)` and the exponents add.
    pub fn mul(&self, other: &NormalForm) -> Result<NormalForm> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch(self.modulus, other.modulus));
        }
        let keys: std::collections::BTreeSet<i64> = self
            .support
            .keys()
            .copied()
            .chain(other.support.keys().map(|m| m - self.kappa))
            .collect();
        let support = keys
            .into_iter()
            .map(|m| {
                (
                    m,
                    i64::from((self.coeff(m) + other.coeff(m + self.kappa)) % self.modulus),
                )
            })
            .collect::<Vec<_>>();
        Self::new(self.modulus, support, self.kappa + other.kappa)
    }

    /// Group inverse: coefficient at `m` is `−self(m − κ)`, exponent `−κ`.
    pub fn inverse(&self) -> NormalForm {
        let support: Vec<(i64, i64)> = self
            .support
            .iter()
            .map(|(&m, &s)| (m + self.kappa, -i64::from(s)))
            .collect();
        Self::new(self.modulus, support, -self.kappa).expect("modulus unchanged")
    }

    /// Acts on a truncated series: `g ↦ f^κ·(h + g)` with
    /// `h = Σ s_m f^m`, everything at `g`'s truncation.
    pub fn apply_to_series(&self, g: &TruncatedSeries) -> Result<TruncatedSeries> {
        if g.modulus() != self.modulus {
            return Err(Error::ModulusMismatch(self.modulus, g.modulus()));
        }
        let len = g.len();
        let powers = self.power_table(len)?;
        let mut h = TruncatedSeries::zero(self.modulus, len)?;
        for (&m, &s) in &self.support {
            let scaled = scale(powers.get(m), ModInt::new(self.modulus, i64::from(s))?)?;
            h = h.add(&scaled)?;
        }
        powers.get(self.kappa).mul(&h.add(g)?)
    }

    /// Acts on a digit word by converting through series form; the empty
    /// word maps to itself.
    pub fn apply_to_word(&self, word: &DigitWord) -> Result<DigitWord> {
        if word.modulus() != self.modulus {
            return Err(Error::ModulusMismatch(self.modulus, word.modulus()));
        }
        if word.is_empty() {
            return Ok(word.clone());
        }
        let g = TruncatedSeries::from_word(word)?;
        Ok(self.apply_to_series(&g)?.to_word())
    }

    /// Consecutive powers of `f` covering every exponent this element needs.
    fn power_table(&self, len: usize) -> Result<PowerTable> {
        let mut lo = 0i64.min(self.kappa);
        let mut hi = 0i64.max(self.kappa);
        if let (Some(min), Some(max)) = (
            self.support.keys().next().copied(),
            self.support.keys().next_back().copied(),
        ) {
            lo = lo.min(min);
            hi = hi.max(max);
        }
        let f = TruncatedSeries::geometric(ModInt::new(self.modulus, 1)?, len)?;
        // 1 - X, the exact inverse of the all-ones series
        let f_inv = TruncatedSeries::from_coeffs(self.modulus, [1, -1])?.resized(len)?;
        let one = TruncatedSeries::one(self.modulus, len)?;
        let mut ascending = vec![one.clone()];
        for _ in 0..hi {
            ascending.push(ascending.last().unwrap().mul(&f)?);
        }
        let mut descending = vec![one];
        for _ in 0..-lo {
            descending.push(descending.last().unwrap().mul(&f_inv)?);
        }
        Ok(PowerTable {
            ascending,
            descending,
        })
    }

    /// Parses `{m1:s1,m2:s2,...};kappa`; for modulus 2 the coefficients may
    /// be omitted (`{-1,3};2`). `{}` is the empty support.
    pub fn parse(text: &str, modulus: u32) -> Result<Self> {
        let (set_part, kappa_part) = text
            .trim()
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("missing ';kappa' in {text:?}")))?;
        let kappa: i64 = kappa_part
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad exponent {kappa_part:?}")))?;
        let inner = set_part
            .trim()
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("support must be braced: {set_part:?}")))?;
        let mut support = Vec::new();
        for entry in inner.split(',') {
            let entry = entry.trim();
            if entry.is_empty() {
                continue;
            }
            let (m, s) = match entry.split_once(':') {
                Some((m, s)) => (
                    m.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad exponent {m:?}")))?,
                    s.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad coefficient {s:?}")))?,
                ),
                None => {
                    if modulus != 2 {
                        return Err(Error::Parse(format!(
                            "entry {entry:?} needs an explicit coefficient for modulus {modulus}"
                        )));
                    }
                    (
                        entry
                            .parse::<i64>()
                            .map_err(|_| Error::Parse(format!("bad exponent {entry:?}")))?,
                        1,
                    )
                }
            };
            support.push((m, s));
        }
        Self::new(modulus, support, kappa)
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for (m, s) in &self.support {
            if !first {
                write!(f, ",")?;
            }
            first = false;
            if self.modulus == 2 {
                write!(f, "{m}")?;
            } else {
                write!(f, "{m}:{s}")?;
            }
        }
        write!(f, "}};{}", self.kappa)
    }
}

struct PowerTable {
    ascending: Vec<TruncatedSeries>,
    descending: Vec<TruncatedSeries>,
}

impl PowerTable {
    fn get(&self, m: i64) -> &TruncatedSeries {
        if m >= 0 {
            &self.ascending[m as usize]
        } else {
            &self.descending[(-m) as usize]
        }
    }
}

fn scale(series: &TruncatedSeries, a: ModInt) -> Result<TruncatedSeries> {
    let constant = TruncatedSeries::constant(a, series.len())?;
    constant.mul(series)
}
