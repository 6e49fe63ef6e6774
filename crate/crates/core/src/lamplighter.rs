//! The lamplighter group family: finite lamp sets under symmetric
//! difference, four equivalent multiplications on (lamps, position) pairs,
//! the isomorphisms between them, and a generic semidirect product.
//!
//! `l2_mul` shifts the left lamp set by the right position; `l2bar_mul`
//! shifts it the other way; `l2prime_mul` works on finitely-supported bit
//! maps instead of sets; `opposite_mul` reverses any multiplication. The
//! lamplighter group proper is the opposite of `l2_mul`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::affine::NormalForm;
use crate::{Error, Result};

/// A finite set of integers, kept sorted and duplicate-free.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FinSet {
    elements: Vec<i64>,
}

impl FinSet {
    pub fn new(mut elements: Vec<i64>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        Self { elements }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn elements(&self) -> &[i64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, value: i64) -> bool {
        self.elements.binary_search(&value).is_ok()
    }

    /// `(self \ other) ∪ (other \ self)` by a linear merge.
    pub fn symmetric_difference(&self, other: &FinSet) -> FinSet {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (a, b) = (&self.elements, &other.elements);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        FinSet { elements: out }
    }

    pub fn intersection(&self, other: &FinSet) -> FinSet {
        FinSet {
            elements: self
                .elements
                .iter()
                .copied()
                .filter(|v| other.contains(*v))
                .collect(),
        }
    }

    pub fn difference(&self, other: &FinSet) -> FinSet {
        FinSet {
            elements: self
                .elements
                .iter()
                .copied()
                .filter(|v| !other.contains(*v))
                .collect(),
        }
    }

    /// Translates every element by `y`.
    pub fn shift(&self, y: i64) -> FinSet {
        FinSet {
            elements: self.elements.iter().map(|v| v + y).collect(),
        }
    }

    /// Negates every element.
    pub fn negate(&self) -> FinSet {
        FinSet::new(self.elements.iter().map(|v| -v).collect())
    }
}

/// Symmetric difference as a free function, matching the other set ops below.
pub fn symdiff(a: &FinSet, b: &FinSet) -> FinSet {
    a.symmetric_difference(b)
}

pub fn shift_set(s: &FinSet, y: i64) -> FinSet {
    s.shift(y)
}

/// A (finite lamp set, lamplighter position) pair.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LampElement {
    pub lamps: FinSet,
    pub position: i64,
}

impl LampElement {
    pub fn new(lamps: FinSet, position: i64) -> Self {
        Self { lamps, position }
    }

    pub fn identity() -> Self {
        Self::new(FinSet::empty(), 0)
    }

    /// Parses `{s1,s2,...};x` with `{}` for the empty lamp set.
    pub fn parse(text: &str) -> Result<Self> {
        let (set_part, pos_part) = text
            .trim()
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("missing ';position' in {text:?}")))?;
        let position: i64 = pos_part
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad position {pos_part:?}")))?;
        let inner = set_part
            .trim()
            .strip_prefix('{')
            .and_then(|s| s.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("lamp set must be braced: {set_part:?}")))?;
        let mut lamps = Vec::new();
        for entry in inner.split(',') {
            let entry = entry.trim();
            if entry.is_empty() {
                continue;
            }
            lamps.push(
                entry
                    .parse::<i64>()
                    .map_err(|_| Error::Parse(format!("bad lamp index {entry:?}")))?,
            );
        }
        Ok(Self::new(FinSet::new(lamps), position))
    }
}

impl fmt::Display for LampElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for v in self.lamps.elements() {
            if !first {
                write!(f, ",")?;
            }
            first = false;
            write!(f, "{v}")?;
        }
        write!(f, "}};{}", self.position)
    }
}

/// `(S, x)·(T, y) = (S_y Δ T, x + y)`.
pub fn l2_mul(a: &LampElement, b: &LampElement) -> LampElement {
    LampElement::new(
        a.lamps.shift(b.position).symmetric_difference(&b.lamps),
        a.position + b.position,
    )
}

/// Inverse for [`l2_mul`]: `(S_{-x}, -x)`.
pub fn l2_inv(a: &LampElement) -> LampElement {
    LampElement::new(a.lamps.shift(-a.position), -a.position)
}

/// `(S, x) ∘̄ (T, y) = (S_{−y} Δ T, x + y)`.
pub fn l2bar_mul(a: &LampElement, b: &LampElement) -> LampElement {
    LampElement::new(
        a.lamps.shift(-b.position).symmetric_difference(&b.lamps),
        a.position + b.position,
    )
}

/// Reverses a multiplication: `opposite(·)(x, y) = y·x`. Applied to
/// [`l2_mul`] this yields the lamplighter group itself.
pub fn opposite_mul<T>(mul: impl Fn(&T, &T) -> T) -> impl Fn(&T, &T) -> T {
    move |a, b| mul(b, a)
}

/// A finitely-supported map `Z → Z/2Z` (stored as the set of 1-bits) with a
/// position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeqLampElement {
    pub bits: BTreeSet<i64>,
    pub position: i64,
}

impl SeqLampElement {
    pub fn new(bits: impl IntoIterator<Item = i64>, position: i64) -> Self {
        Self {
            bits: bits.into_iter().collect(),
            position,
        }
    }

    pub fn identity() -> Self {
        Self::new([], 0)
    }

    fn bit(&self, i: i64) -> bool {
        self.bits.contains(&i)
    }
}

/// Bit `i` of the product is `a(i − m) ⊕ b(i)` where `m` is `b`'s position;
/// positions add.
pub fn l2prime_mul(a: &SeqLampElement, b: &SeqLampElement) -> SeqLampElement {
    let m = b.position;
    let candidates: BTreeSet<i64> = a
        .bits
        .iter()
        .map(|k| k + m)
        .chain(b.bits.iter().copied())
        .collect();
    let bits = candidates
        .into_iter()
        .filter(|&i| a.bit(i - m) ^ b.bit(i))
        .collect();
    SeqLampElement {
        bits,
        position: a.position + b.position,
    }
}

/// Inverse for [`l2prime_mul`]: bit `i` becomes bit `i + n`, position negates.
pub fn l2prime_inv(a: &SeqLampElement) -> SeqLampElement {
    SeqLampElement {
        bits: a.bits.iter().map(|k| k - a.position).collect(),
        position: -a.position,
    }
}

/// Reads the 1-bits off as a lamp set, keeping the position.
pub fn iso_l2prime_to_l2(x: &SeqLampElement) -> LampElement {
    LampElement::new(FinSet::new(x.bits.iter().copied().collect()), x.position)
}

/// Negates every lamp index, keeping the position.
pub fn iso_l2_to_l2bar(x: &LampElement) -> LampElement {
    LampElement::new(x.lamps.negate(), x.position)
}

/// An element of a semidirect product: a pair of one element from each
/// factor. The twisting action lives in [`SemidirectGroup`], which keeps it
/// as plain runtime data so arbitrary groups can be plugged in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemidirectElement<N, H> {
    pub n_part: N,
    pub h_part: H,
}

type BinOp<T> = Box<dyn Fn(&T, &T) -> T>;
type Action<H, N> = Box<dyn Fn(&H, &N) -> N>;

/// The data of `N ⋊ H`: both multiplications, both identities, and the
/// action of `H` on `N`.
pub struct SemidirectGroup<N, H> {
    n_identity: N,
    h_identity: H,
    n_mul: BinOp<N>,
    h_mul: BinOp<H>,
    action: Action<H, N>,
}

impl<N: Clone + PartialEq, H: Clone + PartialEq> SemidirectGroup<N, H> {
    pub fn new(
        n_identity: N,
        h_identity: H,
        n_mul: impl Fn(&N, &N) -> N + 'static,
        h_mul: impl Fn(&H, &H) -> H + 'static,
        action: impl Fn(&H, &N) -> N + 'static,
    ) -> Self {
        Self {
            n_identity,
            h_identity,
            n_mul: Box::new(n_mul),
            h_mul: Box::new(h_mul),
            action: Box::new(action),
        }
    }

    pub fn element(&self, n_part: N, h_part: H) -> SemidirectElement<N, H> {
        SemidirectElement { n_part, h_part }
    }

    pub fn identity(&self) -> SemidirectElement<N, H> {
        self.element(self.n_identity.clone(), self.h_identity.clone())
    }

    /// `(n₁, h₁)·(n₂, h₂) = (n₁·φ^{h₁}(n₂), h₁·h₂)`.
    pub fn mul(
        &self,
        a: &SemidirectElement<N, H>,
        b: &SemidirectElement<N, H>,
    ) -> SemidirectElement<N, H> {
        let acted = (self.action)(&a.h_part, &b.n_part);
        SemidirectElement {
            n_part: (self.n_mul)(&a.n_part, &acted),
            h_part: (self.h_mul)(&a.h_part, &b.h_part),
        }
    }

    /// Spot check that the action by `h` preserves products and the identity
    /// on the given samples.
    pub fn action_is_automorphism_on(&self, h: &H, samples: &[N]) -> bool {
        if (self.action)(h, &self.n_identity) != self.n_identity {
            return false;
        }
        samples.iter().all(|x| {
            samples.iter().all(|y| {
                (self.action)(h, &(self.n_mul)(x, y))
                    == (self.n_mul)(&(self.action)(h, x), &(self.action)(h, y))
            })
        })
    }
}

/// Reads a modulus-2 normal form as a lamplighter element: support keys are
/// the lit lamps, the exponent is the position.
pub fn nf_to_lamp(x: &NormalForm) -> Result<LampElement> {
    if x.modulus() != 2 {
        return Err(Error::UnsupportedModulus(x.modulus()));
    }
    Ok(LampElement::new(
        FinSet::new(x.support().keys().copied().collect()),
        x.kappa(),
    ))
}
