//! Finite Mealy machines over digit alphabets.
//!
//! A machine is a pair of total tables `(state, letter) → state` and
//! `(state, letter) → letter`. Reading a word from a state produces an output
//! word of the same length and a final state; a machine is invertible when
//! every state's output row permutes the alphabet, and the inverse machine is
//! obtained by swapping the input/output labels on every arrow.
//!
//! [`synthesize_machine`] goes the other way: given a black-box
//! length-preserving, prefix-monotone word function, it recovers a machine by
//! bounded-depth remainder closure. Exact remainder equality of a black box is
//! undecidable, so two remainders are identified when they agree on every word
//! that fits in the remaining depth budget; the resulting machine is
//! guaranteed to match the oracle on all words up to the requested depth.

use std::collections::HashMap;
use std::fmt;

use crate::words::DigitWord;
use crate::{Error, Result};

/// Immutable transition/output tables over states `0..state_count` and
/// letters `0..modulus`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MealyMachine {
    state_count: u32,
    modulus: u32,
    transition: Vec<u32>,
    output: Vec<u32>,
}

/// A machine together with a distinguished start state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InitialMachine {
    machine: MealyMachine,
    start: u32,
}

impl MealyMachine {
    /// Builds a machine from row-major tables indexed by `state*modulus + letter`.
    pub fn new(
        state_count: u32,
        modulus: u32,
        transition: Vec<u32>,
        output: Vec<u32>,
    ) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::BadModulus(modulus));
        }
        if state_count == 0 {
            return Err(Error::StateOutOfRange { state: 0, count: 0 });
        }
        let size = state_count as usize * modulus as usize;
        if transition.len() != size {
            return Err(Error::LengthMismatch(transition.len(), size));
        }
        if output.len() != size {
            return Err(Error::LengthMismatch(output.len(), size));
        }
        for &q in &transition {
            if q >= state_count {
                return Err(Error::StateOutOfRange {
                    state: q,
                    count: state_count,
                });
            }
        }
        for &b in &output {
            if b >= modulus {
                return Err(Error::DigitOutOfRange { digit: b, modulus });
            }
        }
        Ok(Self {
            state_count,
            modulus,
            transition,
            output,
        })
    }

    /// Builds the tables from a rule `(state, letter) ↦ (next state, output letter)`.
    pub fn from_fn(
        state_count: u32,
        modulus: u32,
        rule: impl Fn(u32, u32) -> (u32, u32),
    ) -> Result<Self> {
        let mut transition = Vec::with_capacity(state_count as usize * modulus as usize);
        let mut output = Vec::with_capacity(transition.capacity());
        for q in 0..state_count {
            for a in 0..modulus {
                let (next, out) = rule(q, a);
                transition.push(next);
                output.push(out);
            }
        }
        Self::new(state_count, modulus, transition, output)
    }

    pub fn state_count(&self) -> u32 {
        self.state_count
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// One transition: returns `(next state, output letter)`.
    pub fn step(&self, state: u32, letter: u32) -> Result<(u32, u32)> {
        if state >= self.state_count {
            return Err(Error::StateOutOfRange {
                state,
                count: self.state_count,
            });
        }
        if letter >= self.modulus {
            return Err(Error::DigitOutOfRange {
                digit: letter,
                modulus: self.modulus,
            });
        }
        let idx = (state * self.modulus + letter) as usize;
        Ok((self.transition[idx], self.output[idx]))
    }

    /// Reads a whole word; returns the final state and the output word,
    /// which always has the same length as the input.
    pub fn transduce(&self, state: u32, word: &DigitWord) -> Result<(u32, DigitWord)> {
        if word.modulus() != self.modulus {
            return Err(Error::ModulusMismatch(self.modulus, word.modulus()));
        }
        let mut q = state;
        let mut out = Vec::with_capacity(word.len());
        for &a in word.digits() {
            let (next, b) = self.step(q, a)?;
            out.push(b);
            q = next;
        }
        Ok((q, DigitWord::new(self.modulus, out)?))
    }

    /// The state reached after reading `prefix` from `state`. The word
    /// function of that state is exactly the remainder of the original state
    /// function after `prefix`.
    pub fn remainder_state(&self, state: u32, prefix: &DigitWord) -> Result<u32> {
        if prefix.modulus() != self.modulus {
            return Err(Error::ModulusMismatch(self.modulus, prefix.modulus()));
        }
        if state >= self.state_count {
            return Err(Error::StateOutOfRange {
                state,
                count: self.state_count,
            });
        }
        let mut q = state;
        for &a in prefix.digits() {
            q = self.step(q, a)?.0;
        }
        Ok(q)
    }

    /// True iff every state's output row is a permutation of the alphabet.
    pub fn is_invertible(&self) -> bool {
        (0..self.state_count).all(|q| {
            let mut seen = vec![false; self.modulus as usize];
            for a in 0..self.modulus {
                seen[self.output[(q * self.modulus + a) as usize] as usize] = true;
            }
            seen.into_iter().all(|s| s)
        })
    }

    /// Swaps input and output on every arrow: whenever `q` reads `a`,
    /// outputs `b` and moves to `p`, the inverse machine in `q` reads `b`,
    /// outputs `a` and moves to `p`.
    pub fn invert(&self) -> Result<MealyMachine> {
        let size = self.transition.len();
        let mut transition = vec![u32::MAX; size];
        let mut output = vec![u32::MAX; size];
        for q in 0..self.state_count {
            for a in 0..self.modulus {
                let idx = (q * self.modulus + a) as usize;
                let b = self.output[idx];
                let inv_idx = (q * self.modulus + b) as usize;
                if output[inv_idx] != u32::MAX {
                    return Err(Error::NotInvertible(q));
                }
                transition[inv_idx] = self.transition[idx];
                output[inv_idx] = a;
            }
        }
        if output.contains(&u32::MAX) {
            // some letter never produced as an output: row not surjective
            let q = output
                .iter()
                .position(|&b| b == u32::MAX)
                .map(|i| i as u32 / self.modulus)
                .unwrap_or(0);
            return Err(Error::NotInvertible(q));
        }
        MealyMachine::new(self.state_count, self.modulus, transition, output)
    }
}

impl InitialMachine {
    pub fn new(machine: MealyMachine, start: u32) -> Result<Self> {
        if start >= machine.state_count() {
            return Err(Error::StateOutOfRange {
                state: start,
                count: machine.state_count(),
            });
        }
        Ok(Self { machine, start })
    }

    pub fn machine(&self) -> &MealyMachine {
        &self.machine
    }

    pub fn start(&self) -> u32 {
        self.start
    }

    pub fn transduce(&self, word: &DigitWord) -> Result<(u32, DigitWord)> {
        self.machine.transduce(self.start, word)
    }
}

/// Feeds `word` through the stages left to right: the first stage reads the
/// input, each later stage reads the previous stage's output.
pub fn transduce_chain(stages: &[(&MealyMachine, u32)], word: &DigitWord) -> Result<DigitWord> {
    let mut current = word.clone();
    for (machine, state) in stages {
        current = machine.transduce(*state, &current)?.1;
    }
    Ok(current)
}

/// True iff some relabeling of states turns `a` into `b` exactly.
///
/// Intended for the small machines produced by synthesis; the search tries
/// every permutation of the state set.
pub fn machines_isomorphic(a: &MealyMachine, b: &MealyMachine) -> bool {
    if a.state_count != b.state_count || a.modulus != b.modulus {
        return false;
    }
    let k = a.state_count as usize;
    let mut perm: Vec<u32> = (0..k as u32).collect();
    permutations(&mut perm, 0, &mut |p| {
        (0..a.state_count).all(|q| {
            (0..a.modulus).all(|letter| {
                let idx = (q * a.modulus + letter) as usize;
                let mapped = (p[q as usize] * b.modulus + letter) as usize;
                p[a.transition[idx] as usize] == b.transition[mapped]
                    && a.output[idx] == b.output[mapped]
            })
        })
    })
}

fn permutations(items: &mut [u32], k: usize, check: &mut impl FnMut(&[u32]) -> bool) -> bool {
    if k == items.len() {
        return check(items);
    }
    for i in k..items.len() {
        items.swap(k, i);
        if permutations(items, k + 1, check) {
            items.swap(k, i);
            return true;
        }
        items.swap(k, i);
    }
    false
}

const SYNTHESIS_CALL_BUDGET: usize = 1 << 21;

/// Memoizing oracle wrapper that rejects non-sequential behavior as soon as
/// it is observed: every evaluated word must keep its length and extend the
/// output of its own prefix.
struct CheckedOracle<'a, F: Fn(&DigitWord) -> DigitWord> {
    oracle: &'a F,
    modulus: u32,
    cache: HashMap<Vec<u32>, Vec<u32>>,
    calls: usize,
}

impl<'a, F: Fn(&DigitWord) -> DigitWord> CheckedOracle<'a, F> {
    fn new(oracle: &'a F, modulus: u32) -> Self {
        Self {
            oracle,
            modulus,
            cache: HashMap::new(),
            calls: 0,
        }
    }

    fn eval(&mut self, word: &[u32]) -> Result<Vec<u32>> {
        if let Some(out) = self.cache.get(word) {
            return Ok(out.clone());
        }
        let parent_out = if word.is_empty() {
            Vec::new()
        } else {
            self.eval(&word[..word.len() - 1])?
        };
        self.calls += 1;
        if self.calls > SYNTHESIS_CALL_BUDGET {
            return Err(Error::SynthesisBudget(format!(
                "more than {SYNTHESIS_CALL_BUDGET} oracle calls"
            )));
        }
        let input = DigitWord::new(self.modulus, word.to_vec())?;
        let out = (self.oracle)(&input);
        if out.modulus() != self.modulus {
            return Err(Error::NotSequential(format!(
                "output alphabet {} differs from input alphabet {}",
                out.modulus(),
                self.modulus
            )));
        }
        if out.len() != word.len() {
            return Err(Error::NotSequential(format!(
                "output length {} for input of length {}",
                out.len(),
                word.len()
            )));
        }
        if out.digits()[..parent_out.len()] != parent_out[..] {
            return Err(Error::NotSequential(format!(
                "output of {input} does not extend the output of its prefix"
            )));
        }
        let digits = out.digits().to_vec();
        self.cache.insert(word.to_vec(), digits.clone());
        Ok(digits)
    }

    /// Remainders after `u` and `r` agree on every word of length `k`.
    fn remainders_agree(&mut self, u: &[u32], r: &[u32], k: usize) -> Result<bool> {
        let mut v = vec![0u32; k];
        loop {
            let left = {
                let mut w = u.to_vec();
                w.extend_from_slice(&v);
                self.eval(&w)?
            };
            let right = {
                let mut w = r.to_vec();
                w.extend_from_slice(&v);
                self.eval(&w)?
            };
            if left[u.len()..] != right[r.len()..] {
                return Ok(false);
            }
            if !increment(&mut v, self.modulus) {
                return Ok(true);
            }
        }
    }
}

fn increment(digits: &mut [u32], modulus: u32) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < modulus {
            return true;
        }
        *d = 0;
    }
    false
}

/// Recovers an initial Mealy machine from a black-box word function by
/// remainder closure to depth `depth`.
///
/// States are the remainder classes of the oracle behind explored prefixes;
/// two remainders are identified when they agree on every continuation that
/// still fits in the depth budget. The returned machine transduces exactly
/// like the oracle on all words of length at most `depth`; nothing is claimed
/// beyond that depth.
pub fn synthesize_machine<F>(oracle: F, modulus: u32, depth: usize) -> Result<InitialMachine>
where
    F: Fn(&DigitWord) -> DigitWord,
{
    if modulus < 2 {
        return Err(Error::BadModulus(modulus));
    }
    if depth == 0 {
        return Err(Error::SynthesisBudget("depth must be at least 1".into()));
    }
    let mut oc = CheckedOracle::new(&oracle, modulus);
    let mut reps: Vec<Vec<u32>> = vec![Vec::new()];
    let mut transition: Vec<u32> = Vec::new();
    let mut output: Vec<u32> = Vec::new();

    let mut next = 0usize;
    while next < reps.len() {
        let u = reps[next].clone();
        for a in 0..modulus {
            let mut child = u.clone();
            child.push(a);
            let out_letter = oc.eval(&child)?[u.len()];
            let child_budget = depth.saturating_sub(child.len());
            let mut target = None;
            for (j, rep) in reps.iter().enumerate() {
                let k = child_budget.min(depth.saturating_sub(rep.len()));
                if oc.remainders_agree(&child, rep, k)? {
                    target = Some(j as u32);
                    break;
                }
            }
            let target = match target {
                Some(j) => j,
                None => {
                    reps.push(child);
                    (reps.len() - 1) as u32
                }
            };
            transition.push(target);
            output.push(out_letter);
        }
        next += 1;
    }

    let machine = MealyMachine::new(reps.len() as u32, modulus, transition, output)?;
    InitialMachine::new(machine, 0)
}

impl fmt::Display for MealyMachine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "mealy n={} states={}", self.modulus, self.state_count)?;
        for q in 0..self.state_count {
            write!(f, "state {q}:")?;
            for a in 0..self.modulus {
                let idx = (q * self.modulus + a) as usize;
                write!(f, " {a}/{}->{}", self.output[idx], self.transition[idx])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl fmt::Display for InitialMachine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "mealy n={} states={} start={}",
            self.machine.modulus, self.machine.state_count, self.start
        )?;
        for q in 0..self.machine.state_count {
            write!(f, "state {q}:")?;
            for a in 0..self.machine.modulus {
                let idx = (q * self.machine.modulus + a) as usize;
                write!(
                    f,
                    " {a}/{}->{}",
                    self.machine.output[idx], self.machine.transition[idx]
                )?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn parse_key_value(token: &str, key: &str) -> Result<u32> {
    let rest = token
        .strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| Error::Parse(format!("expected {key}=<int>, got {token:?}")))?;
    rest.parse::<u32>()
        .map_err(|_| Error::Parse(format!("bad integer in {token:?}")))
}

/// Parses the line-oriented machine text format produced by [`fmt::Display`]:
/// a `mealy n=<modulus> states=<k> [start=<q>]` header followed by one
/// `state <i>: <a>/<b>-><j> …` line per state, entries in increasing letter
/// order. Missing or duplicated entries are rejected.
pub fn parse_machine(text: &str) -> Result<(MealyMachine, Option<u32>)> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty machine text".into()))?;
    let mut tokens = header.split_whitespace();
    if tokens.next() != Some("mealy") {
        return Err(Error::Parse("machine text must start with 'mealy'".into()));
    }
    let modulus = parse_key_value(
        tokens
            .next()
            .ok_or_else(|| Error::Parse("missing n=".into()))?,
        "n",
    )?;
    let state_count = parse_key_value(
        tokens
            .next()
            .ok_or_else(|| Error::Parse("missing states=".into()))?,
        "states",
    )?;
    let start = match tokens.next() {
        Some(token) => Some(parse_key_value(token, "start")?),
        None => None,
    };

    let mut transition = Vec::with_capacity(state_count as usize * modulus as usize);
    let mut output = Vec::with_capacity(transition.capacity());
    for q in 0..state_count {
        let line = lines
            .next()
            .ok_or_else(|| Error::Parse(format!("missing line for state {q}")))?;
        let body = line
            .strip_prefix(&format!("state {q}:"))
            .ok_or_else(|| Error::Parse(format!("expected 'state {q}:', got {line:?}")))?;
        let entries: Vec<&str> = body.split_whitespace().collect();
        if entries.len() != modulus as usize {
            return Err(Error::Parse(format!(
                "state {q}: expected {modulus} entries, got {}",
                entries.len()
            )));
        }
        for (a, entry) in entries.iter().enumerate() {
            let (io, next) = entry
                .split_once("->")
                .ok_or_else(|| Error::Parse(format!("bad entry {entry:?}")))?;
            let (input, out) = io
                .split_once('/')
                .ok_or_else(|| Error::Parse(format!("bad entry {entry:?}")))?;
            let input: u32 = input
                .parse()
                .map_err(|_| Error::Parse(format!("bad entry {entry:?}")))?;
            if input != a as u32 {
                return Err(Error::Parse(format!(
                    "state {q}: entry for letter {a} missing (found letter {input})"
                )));
            }
            output.push(
                out.parse()
                    .map_err(|_| Error::Parse(format!("bad entry {entry:?}")))?,
            );
            transition.push(
                next.parse()
                    .map_err(|_| Error::Parse(format!("bad entry {entry:?}")))?,
            );
        }
    }
    if lines.next().is_some() {
        return Err(Error::Parse("trailing lines after state table".into()));
    }
    let machine = MealyMachine::new(state_count, modulus, transition, output)?;
    if let Some(q0) = start {
        InitialMachine::new(machine.clone(), q0)?;
    }
    Ok((machine, start))
}
