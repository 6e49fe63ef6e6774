//! Seeded verification suites.
//!
//! Every property below is a consistency law of the library, run against a
//! deterministic ChaCha stream derived from the configured seed and the
//! property name. Identical configuration therefore yields a byte-identical
//! report, and any failure carries a reproducer with the seed and offending
//! inputs. The CLI's `verify` command is a thin wrapper over [`run_suite`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::affine::{
    apply_atom_chain, build_lamplighter_machine, remainder_closure, AffineAtom, GenToken,
    GeneratorWord, NormalForm,
};
use crate::lamplighter::{
    iso_l2_to_l2bar, iso_l2prime_to_l2, l2_inv, l2_mul, l2bar_mul, l2prime_inv, l2prime_mul,
    nf_to_lamp, opposite_mul, shift_set, symdiff, FinSet, LampElement, SeqLampElement,
};
use crate::mealy::{machines_isomorphic, synthesize_machine};
use crate::series::{ModInt, TruncatedSeries};
use crate::words::DigitWord;

/// Knobs shared by the verification suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub modulus: u32,
    pub series_len: usize,
    pub seed: u64,
    pub depth: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            modulus: 2,
            series_len: 64,
            seed: 0,
            depth: 20,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Axioms,
    Iso,
    Faithful,
    All,
}

impl Suite {
    pub fn from_name(name: &str) -> Option<Suite> {
        match name {
            "axioms" => Some(Suite::Axioms),
            "iso" => Some(Suite::Iso),
            "faithful" => Some(Suite::Faithful),
            "all" => Some(Suite::All),
            _ => None,
        }
    }
}

/// Outcome of one named property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub properties: Vec<PropertyReport>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.properties.iter().all(PropertyReport::passed)
    }

    /// One line per property plus a summary line; stable across runs for a
    /// fixed configuration.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for p in &self.properties {
            if p.passed() {
                out.push_str(&format!("ok   {} ({} cases)\n", p.name, p.cases));
            } else {
                out.push_str(&format!(
                    "FAIL {} ({}/{} failed) repro: {}\n",
                    p.name,
                    p.failures,
                    p.cases,
                    p.first_failure.as_deref().unwrap_or("-")
                ));
            }
        }
        let failed = self.properties.iter().filter(|p| !p.passed()).count();
        if failed == 0 {
            out.push_str(&format!(
                "verify: all {} properties passed\n",
                self.properties.len()
            ));
        } else {
            out.push_str(&format!(
                "verify: {failed} of {} properties FAILED\n",
                self.properties.len()
            ));
        }
        out
    }
}

type PropFn = fn(&VerifyConfig) -> PropertyReport;

const AXIOM_PROPS: &[PropFn] = &[
    ultrametric,
    prefix_symmetry,
    ring_laws,
    unit_inverse,
    geometric_identities,
    shift_decomposition,
    truncation_coherence,
    symmetric_difference_group,
    shift_identities,
    l2_axioms,
    l2bar_axioms,
    l2prime_axioms,
    l2_opposite_axioms,
    non_commutativity,
];

const ISO_PROPS: &[PropFn] = &[
    inverse_round_trip,
    synthesis,
    closure_states,
    iso_seq_to_set,
    iso_negate_lamps,
    semidirect_factorization,
    anti_isomorphism,
    cross_realization,
    word_homomorphism,
    normal_form_bridge,
];

const FAITHFUL_PROPS: &[PropFn] = &[
    uniqueness_exhaustive,
    infinite_order,
    torsion_and_commutation,
    non_normality_witness,
    composition_order,
];

/// Runs the named suite with the given configuration.
pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> SuiteReport {
    let props: Vec<PropFn> = match suite {
        Suite::Axioms => AXIOM_PROPS.to_vec(),
        Suite::Iso => ISO_PROPS.to_vec(),
        Suite::Faithful => FAITHFUL_PROPS.to_vec(),
        Suite::All => AXIOM_PROPS
            .iter()
            .chain(ISO_PROPS)
            .chain(FAITHFUL_PROPS)
            .copied()
            .collect(),
    };
    SuiteReport {
        properties: props.into_iter().map(|p| p(cfg)).collect(),
    }
}

fn prop_rng(cfg: &VerifyConfig, name: &str) -> ChaCha8Rng {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for b in name.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(cfg.seed ^ h)
}

/// Runs `case` the given number of times, remembering the first reproducer.
fn check(
    name: &'static str,
    cases: usize,
    mut case: impl FnMut(usize) -> Option<String>,
) -> PropertyReport {
    let mut failures = 0;
    let mut first_failure = None;
    for i in 0..cases {
        if let Some(repro) = case(i) {
            failures += 1;
            if first_failure.is_none() {
                first_failure = Some(repro);
            }
        }
    }
    PropertyReport {
        name,
        cases,
        failures,
        first_failure,
    }
}

fn repro(cfg: &VerifyConfig, detail: &str) -> String {
    format!("seed={} {}", cfg.seed, detail)
}

// ---- randomized value builders ------------------------------------------

fn rand_word(rng: &mut ChaCha8Rng, modulus: u32, len: usize) -> DigitWord {
    let digits = (0..len).map(|_| rng.random_range(0..modulus)).collect();
    DigitWord::new(modulus, digits).expect("digits in range")
}

fn rand_word_up_to(rng: &mut ChaCha8Rng, modulus: u32, max_len: usize) -> DigitWord {
    let len = rng.random_range(0..=max_len);
    rand_word(rng, modulus, len)
}

fn rand_series(rng: &mut ChaCha8Rng, modulus: u32, len: usize) -> TruncatedSeries {
    let coeffs = (0..len).map(|_| i64::from(rng.random_range(0..modulus)));
    TruncatedSeries::from_coeffs(modulus, coeffs.collect::<Vec<_>>()).expect("len >= 1")
}

fn rand_unit_series(rng: &mut ChaCha8Rng, modulus: u32, len: usize) -> TruncatedSeries {
    loop {
        let s = rand_series(rng, modulus, len);
        if s.is_unit() {
            return s;
        }
    }
}

fn rand_finset(rng: &mut ChaCha8Rng) -> FinSet {
    let size = rng.random_range(0..6);
    FinSet::new((0..size).map(|_| rng.random_range(-10..=10)).collect())
}

fn rand_lamp(rng: &mut ChaCha8Rng) -> LampElement {
    LampElement::new(rand_finset(rng), rng.random_range(-10..=10))
}

fn rand_seq(rng: &mut ChaCha8Rng) -> SeqLampElement {
    let size = rng.random_range(0..6);
    let bits: Vec<i64> = (0..size).map(|_| rng.random_range(-10..=10)).collect();
    SeqLampElement::new(bits, rng.random_range(-10..=10))
}

fn rand_genword(rng: &mut ChaCha8Rng, modulus: u32, max_len: usize) -> GeneratorWord {
    let len = rng.random_range(0..=max_len);
    let tokens = (0..len)
        .map(|_| GenToken {
            s: rng.random_range(0..modulus),
            inverse: rng.random_range(0..2) == 1,
        })
        .collect();
    GeneratorWord::new(modulus, tokens).expect("tokens in range")
}

fn rand_normal_form(rng: &mut ChaCha8Rng, modulus: u32) -> NormalForm {
    let size = rng.random_range(0..5);
    let support: Vec<(i64, i64)> = (0..size)
        .map(|_| {
            (
                rng.random_range(-6..=6),
                i64::from(rng.random_range(0..modulus)),
            )
        })
        .collect();
    NormalForm::new(modulus, support, rng.random_range(-5..=5)).expect("modulus >= 2")
}

// ---- axiom suite ----------------------------------------------------------

fn ultrametric(cfg: &VerifyConfig) -> PropertyReport {
    let name = "words/ultrametric";
    let mut rng = prop_rng(cfg, name);
    check(name, 10_000, |_| {
        let x = rand_word_up_to(&mut rng, cfg.modulus, 64);
        let y = rand_word_up_to(&mut rng, cfg.modulus, 64);
        let z = rand_word_up_to(&mut rng, cfg.modulus, 64);
        let xz = x.common_prefix_length(&z).unwrap();
        let xy = x.common_prefix_length(&y).unwrap();
        let yz = y.common_prefix_length(&z).unwrap();
        (xz < xy.min(yz)).then(|| repro(cfg, &format!("x={x} y={y} z={z}")))
    })
}

fn prefix_symmetry(cfg: &VerifyConfig) -> PropertyReport {
    let name = "words/prefix-symmetry";
    let mut rng = prop_rng(cfg, name);
    check(name, 2_000, |_| {
        let x = rand_word_up_to(&mut rng, cfg.modulus, 64);
        let y = rand_word_up_to(&mut rng, cfg.modulus, 64);
        (x.common_prefix_length(&y).unwrap() != y.common_prefix_length(&x).unwrap())
            .then(|| repro(cfg, &format!("x={x} y={y}")))
    })
}

fn ring_laws(cfg: &VerifyConfig) -> PropertyReport {
    let name = "series/ring-laws";
    let mut rng = prop_rng(cfg, name);
    let len = cfg.series_len;
    let moduli = [2u32, 3, 4];
    check(name, moduli.len() * 200, |i| {
        let n = moduli[i / 200];
        let f = rand_series(&mut rng, n, len);
        let g = rand_series(&mut rng, n, len);
        let h = rand_series(&mut rng, n, len);
        let ok = f.add(&g).unwrap() == g.add(&f).unwrap()
            && f.mul(&g).unwrap() == g.mul(&f).unwrap()
            && f.add(&g).unwrap().add(&h).unwrap() == f.add(&g.add(&h).unwrap()).unwrap()
            && f.mul(&g).unwrap().mul(&h).unwrap() == f.mul(&g.mul(&h).unwrap()).unwrap()
            && f.mul(&g.add(&h).unwrap()).unwrap()
                == f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap()
            && f.add(&TruncatedSeries::zero(n, len).unwrap()).unwrap() == f
            && f.mul(&TruncatedSeries::one(n, len).unwrap()).unwrap() == f;
        (!ok).then(|| repro(cfg, &format!("mod={n} f={f} g={g} h={h}")))
    })
}

fn unit_inverse(cfg: &VerifyConfig) -> PropertyReport {
    let name = "series/unit-inverse";
    let mut rng = prop_rng(cfg, name);
    let len = cfg.series_len;
    let moduli = [2u32, 3, 4];
    check(name, moduli.len() * 200, |i| {
        let n = moduli[i / 200];
        let f = rand_unit_series(&mut rng, n, len);
        let ok = f.mul(&f.inverse().unwrap()).unwrap() == TruncatedSeries::one(n, len).unwrap();
        (!ok).then(|| repro(cfg, &format!("mod={n} f={f}")))
    })
}

fn geometric_identities(cfg: &VerifyConfig) -> PropertyReport {
    let name = "series/geometric-identities";
    let len = cfg.series_len;
    let cases: Vec<(u32, u32)> = (2u32..=5).flat_map(|n| (0..n).map(move |a| (n, a))).collect();
    let total = cases.len();
    check(name, total, |i| {
        let (n, a) = cases[i];
        let a = ModInt::new(n, i64::from(a)).unwrap();
        let geo = TruncatedSeries::geometric(a, len).unwrap();
        let linear = TruncatedSeries::from_coeffs(n, [1, -i64::from(a.value())])
            .unwrap()
            .resized(len)
            .unwrap();
        if linear.inverse().unwrap() != geo {
            return Some(repro(cfg, &format!("mod={n} a={} inverse", a.value())));
        }
        let scaled = TruncatedSeries::constant(a, len).unwrap().mul(&geo).unwrap();
        if geo.shift().coeffs()[..len - 1] != scaled.coeffs()[..len - 1] {
            return Some(repro(cfg, &format!("mod={n} a={} shift", a.value())));
        }
        None
    })
}

fn shift_decomposition(cfg: &VerifyConfig) -> PropertyReport {
    let name = "series/shift-decomposition";
    let mut rng = prop_rng(cfg, name);
    let len = cfg.series_len;
    let moduli = [2u32, 3, 4, 5];
    check(name, moduli.len() * 100, |i| {
        let n = moduli[i / 100];
        let f = rand_series(&mut rng, n, len);
        let x = TruncatedSeries::from_coeffs(n, [0, 1])
            .unwrap()
            .resized(len)
            .unwrap();
        let rebuilt = TruncatedSeries::constant(f.coeff(0), len)
            .unwrap()
            .add(&x.mul(&f.shift()).unwrap())
            .unwrap();
        (rebuilt != f).then(|| repro(cfg, &format!("mod={n} f={f}")))
    })
}

fn truncation_coherence(cfg: &VerifyConfig) -> PropertyReport {
    let name = "series/truncation-coherence";
    let mut rng = prop_rng(cfg, name);
    let len = cfg.series_len.max(4);
    check(name, 200, |_| {
        let n = [2u32, 3, 4, 5][rng.random_range(0..4)];
        let f = rand_unit_series(&mut rng, n, len);
        let g = rand_series(&mut rng, n, len);
        let keep = rng.random_range(1..len);
        let ft = f.truncate(keep).unwrap();
        let gt = g.truncate(keep).unwrap();
        let ok = f.add(&g).unwrap().truncate(keep).unwrap() == ft.add(&gt).unwrap()
            && f.mul(&g).unwrap().truncate(keep).unwrap() == ft.mul(&gt).unwrap()
            && f.inverse().unwrap().truncate(keep).unwrap() == ft.inverse().unwrap()
            && f.power(3).unwrap().truncate(keep).unwrap() == ft.power(3).unwrap()
            && f.power(-2).unwrap().truncate(keep).unwrap() == ft.power(-2).unwrap();
        (!ok).then(|| repro(cfg, &format!("mod={n} keep={keep} f={f} g={g}")))
    })
}

fn symmetric_difference_group(cfg: &VerifyConfig) -> PropertyReport {
    let name = "sets/symmetric-difference-group";
    let mut rng = prop_rng(cfg, name);
    check(name, 500, |_| {
        let a = rand_finset(&mut rng);
        let b = rand_finset(&mut rng);
        let c = rand_finset(&mut rng);
        let ok = symdiff(&a, &b) == symdiff(&b, &a)
            && symdiff(&symdiff(&a, &b), &c) == symdiff(&a, &symdiff(&b, &c))
            && symdiff(&a, &FinSet::empty()) == a
            && symdiff(&a, &a) == FinSet::empty()
            // cancellation via the self-inverse law
            && symdiff(&symdiff(&a, &b), &a.clone()) == b;
        (!ok).then(|| repro(cfg, &format!("a={a:?} b={b:?} c={c:?}")))
    })
}

fn shift_identities(cfg: &VerifyConfig) -> PropertyReport {
    let name = "sets/shift-identities";
    let mut rng = prop_rng(cfg, name);
    check(name, 500, |_| {
        let s = rand_finset(&mut rng);
        let t = rand_finset(&mut rng);
        let x = rng.random_range(-10i64..=10);
        let y = rng.random_range(-10i64..=10);
        let ok = s.intersection(&t).shift(y) == s.shift(y).intersection(&t.shift(y))
            && s.difference(&t).shift(y) == s.shift(y).difference(&t.shift(y))
            && symdiff(&s, &t).shift(y) == symdiff(&s.shift(y), &t.shift(y))
            && s.shift(x).shift(y) == s.shift(x + y)
            && s.negate().shift(-y) == s.shift(y).negate();
        (!ok).then(|| repro(cfg, &format!("s={s:?} t={t:?} x={x} y={y}")))
    })
}

fn l2_axioms(cfg: &VerifyConfig) -> PropertyReport {
    let name = "lamplighter/l2-axioms";
    let mut rng = prop_rng(cfg, name);
    check(name, 500, |_| {
        let a = rand_lamp(&mut rng);
        let b = rand_lamp(&mut rng);
        let c = rand_lamp(&mut rng);
        let e = LampElement::identity();
        let ok = l2_mul(&l2_mul(&a, &b), &c) == l2_mul(&a, &l2_mul(&b, &c))
            && l2_mul(&a, &e) == a
            && l2_mul(&e, &a) == a
            && l2_mul(&a, &l2_inv(&a)) == e
            && l2_mul(&l2_inv(&a), &a) == e;
        (!ok).then(|| repro(cfg, &format!("a={a} b={b} c={c}")))
    })
}

fn l2bar_axioms(cfg: &VerifyConfig) -> PropertyReport {
    let name = "lamplighter/l2bar-axioms";
    let mut rng = prop_rng(cfg, name);
    check(name, 500, |_| {
        let a = rand_lamp(&mut rng);
        let b = rand_lamp(&mut rng);
        let c = rand_lamp(&mut rng);
        let e = LampElement::identity();
        let inv = LampElement::new(a.lamps.shift(a.position), -a.position);
        let ok = l2bar_mul(&l2bar_mul(&a, &b), &c) == l2bar_mul(&a, &l2bar_mul(&b, &c))
            && l2bar_mul(&a, &e) == a
            && l2bar_mul(&e, &a) == a
            && l2bar_mul(&a, &inv) == e
            && l2bar_mul(&inv, &a) == e;
        (!ok).then(|| repro(cfg, &format!("a={a} b={b} c={c}")))
    })
}

fn l2prime_axioms(cfg: &VerifyConfig) -> PropertyReport {
    let name = "lamplighter/l2prime-axioms";
    let mut rng = prop_rng(cfg, name);
    check(name, 500, |_| {
        let a = rand_seq(&mut rng);
        let b = rand_seq(&mut rng);
        let c = rand_seq(&mut rng);
        let e = SeqLampElement::identity();
        let ok = l2prime_mul(&l2prime_mul(&a, &b), &c) == l2prime_mul(&a, &l2prime_mul(&b, &c))
            && l2prime_mul(&a, &e) == a
            && l2prime_mul(&e, &a) == a
            && l2prime_mul(&a, &l2prime_inv(&a)) == e
            && l2prime_mul(&l2prime_inv(&a), &a) == e;
        (!ok).then(|| repro(cfg, &format!("a={a:?} b={b:?} c={c:?}")))
    })
}

fn l2_opposite_axioms(cfg: &VerifyConfig) -> PropertyReport {
    let name = "lamplighter/l2-opposite-axioms";
    let mut rng = prop_rng(cfg, name);
    let op = opposite_mul(l2_mul);
    check(name, 500, |_| {
        let a = rand_lamp(&mut rng);
        let b = rand_lamp(&mut rng);
        let c = rand_lamp(&mut rng);
        let e = LampElement::identity();
        let ok = op(&op(&a, &b), &c) == op(&a, &op(&b, &c))
            && op(&a, &e) == a
            && op(&e, &a) == a
            && op(&a, &l2_inv(&a)) == e
            && op(&l2_inv(&a), &a) == e;
        (!ok).then(|| repro(cfg, &format!("a={a} b={b} c={c}")))
    })
}

fn non_commutativity(cfg: &VerifyConfig) -> PropertyReport {
    let name = "lamplighter/non-commutativity";
    check(name, 1, |_| {
        let l0 = LampElement::parse("{0};0").unwrap();
        let l1 = LampElement::parse("{1};1").unwrap();
        let forward = l2_mul(&l0, &l1);
        let backward = l2_mul(&l1, &l0);
        let ok = forward == LampElement::parse("{};1").unwrap()
            && backward == LampElement::parse("{0,1};1").unwrap()
            && forward != backward;
        (!ok).then(|| repro(cfg, "l0={0};0 l1={1};1"))
    })
}

// ---- iso suite -------------------------------------------------------------

fn inverse_round_trip(cfg: &VerifyConfig) -> PropertyReport {
    let name = "machine/inverse-round-trip";
    let mut rng = prop_rng(cfg, name);
    let machine = build_lamplighter_machine(cfg.modulus).unwrap();
    let inverse = machine.invert().unwrap();
    check(name, 10_000, |_| {
        let q = rng.random_range(0..cfg.modulus);
        let w = rand_word_up_to(&mut rng, cfg.modulus, 64);
        let (fwd_state, out) = machine.transduce(q, &w).unwrap();
        let (bwd_state, back) = inverse.transduce(q, &out).unwrap();
        (back != w || fwd_state != bwd_state).then(|| repro(cfg, &format!("q={q} w={w}")))
    })
}

fn synthesis(cfg: &VerifyConfig) -> PropertyReport {
    let name = "machine/synthesis";
    // depth 8 keeps the exhaustive agreement check to 2^8 words
    let depth = 8;
    check(name, 1, |_| {
        let oracle = |word: &DigitWord| {
            let mut acc = 0;
            let digits = word
                .digits()
                .iter()
                .map(|&d| {
                    acc = (acc + d) % 2;
                    acc
                })
                .collect();
            DigitWord::new(2, digits).unwrap()
        };
        let synth = match synthesize_machine(oracle, 2, depth) {
            Ok(m) => m,
            Err(e) => return Some(repro(cfg, &format!("synthesis failed: {e}"))),
        };
        if synth.machine().state_count() != 2 {
            return Some(repro(
                cfg,
                &format!("expected 2 states, got {}", synth.machine().state_count()),
            ));
        }
        if !machines_isomorphic(synth.machine(), &build_lamplighter_machine(2).unwrap()) {
            return Some(repro(cfg, "synthesized machine not isomorphic"));
        }
        for bits in 0u32..(1 << depth) {
            let digits: Vec<u32> = (0..depth).map(|i| (bits >> i) & 1).collect();
            let input = DigitWord::new(2, digits).unwrap();
            if synth.transduce(&input).unwrap().1 != oracle(&input) {
                return Some(repro(cfg, &format!("disagrees on {input}")));
            }
        }
        None
    })
}

fn closure_states(cfg: &VerifyConfig) -> PropertyReport {
    let name = "machine/remainder-closure";
    let moduli = [2u32, 3, 5];
    check(name, moduli.len(), |i| {
        let n = moduli[i];
        let f = TruncatedSeries::geometric(
            ModInt::new(n, 1).unwrap(),
            cfg.series_len.max(8),
        )
        .unwrap();
        match remainder_closure(&f, cfg.depth) {
            Ok(closure) => {
                let ok = closure.shifts.len() == n as usize
                    && closure.machine == build_lamplighter_machine(n).unwrap();
                (!ok).then(|| repro(cfg, &format!("mod={n} states={:?}", closure.shifts)))
            }
            Err(e) => Some(repro(cfg, &format!("mod={n} closure failed: {e}"))),
        }
    })
}

fn iso_seq_to_set(cfg: &VerifyConfig) -> PropertyReport {
    let name = "iso/bitmap-to-lampset";
    let mut rng = prop_rng(cfg, name);
    check(name, 500, |_| {
        let a = rand_seq(&mut rng);
        let b = rand_seq(&mut rng);
        let ok = iso_l2prime_to_l2(&l2prime_mul(&a, &b))
            == l2_mul(&iso_l2prime_to_l2(&a), &iso_l2prime_to_l2(&b));
        (!ok).then(|| repro(cfg, &format!("a={a:?} b={b:?}")))
    })
}

fn iso_negate_lamps(cfg: &VerifyConfig) -> PropertyReport {
    let name = "iso/negate-lamps";
    let mut rng = prop_rng(cfg, name);
    check(name, 500, |_| {
        let a = rand_lamp(&mut rng);
        let b = rand_lamp(&mut rng);
        let ok = iso_l2_to_l2bar(&l2_mul(&a, &b))
            == l2bar_mul(&iso_l2_to_l2bar(&a), &iso_l2_to_l2bar(&b));
        (!ok).then(|| repro(cfg, &format!("a={a} b={b}")))
    })
}

fn semidirect_factorization(cfg: &VerifyConfig) -> PropertyReport {
    let name = "iso/semidirect-factorization";
    let mut rng = prop_rng(cfg, name);
    check(name, 200, |_| {
        let a = rand_seq(&mut rng);
        // bit i of the n-part is bit i + position of the original
        let n_part = SeqLampElement::new(a.bits.iter().map(|k| k - a.position), 0);
        let h_part = SeqLampElement::new([], a.position);
        if l2prime_mul(&n_part, &h_part) != a {
            return Some(repro(cfg, &format!("a={a:?} does not factor")));
        }
        // the factorization is unique: position pins the h-part, then the
        // n-part is recovered by cancellation
        let recovered = l2prime_mul(&a, &l2prime_inv(&h_part));
        (recovered != n_part || recovered.position != 0)
            .then(|| repro(cfg, &format!("a={a:?} non-unique factorization")))
    })
}

fn anti_isomorphism(cfg: &VerifyConfig) -> PropertyReport {
    let name = "iso/anti-isomorphism";
    let mut rng = prop_rng(cfg, name);
    let op = opposite_mul(l2_mul);
    check(name, 500, |_| {
        let a = rand_lamp(&mut rng);
        let b = rand_lamp(&mut rng);
        (l2_mul(&a, &b) != op(&b, &a)).then(|| repro(cfg, &format!("a={a} b={b}")))
    })
}

fn cross_realization(cfg: &VerifyConfig) -> PropertyReport {
    let name = "iso/cross-realization";
    let mut rng = prop_rng(cfg, name);
    check(name, 500, |_| {
        let word = rand_genword(&mut rng, cfg.modulus, 20);
        let input = rand_word(&mut rng, cfg.modulus, cfg.series_len);
        let via_machine = word.apply_to_word(&input).unwrap();
        let via_nf = word.to_normal_form().apply_to_word(&input).unwrap();
        (via_machine != via_nf).then(|| repro(cfg, &format!("word=[{word}] input={input}")))
    })
}

fn word_homomorphism(cfg: &VerifyConfig) -> PropertyReport {
    let name = "iso/word-homomorphism";
    let mut rng = prop_rng(cfg, name);
    check(name, 500, |_| {
        let left = rand_genword(&mut rng, cfg.modulus, 10);
        let right = rand_genword(&mut rng, cfg.modulus, 10);
        let joined = left.concat(&right).unwrap().to_normal_form();
        let split = left
            .to_normal_form()
            .mul(&right.to_normal_form())
            .unwrap();
        (joined != split).then(|| repro(cfg, &format!("left=[{left}] right=[{right}]")))
    })
}

fn normal_form_bridge(cfg: &VerifyConfig) -> PropertyReport {
    let name = "iso/normal-form-bridge";
    let mut rng = prop_rng(cfg, name);
    check(name, 300, |_| {
        // pinned to modulus 2: lamp conversion only exists there
        let x = rand_normal_form(&mut rng, 2);
        let y = rand_normal_form(&mut rng, 2);
        let lx = nf_to_lamp(&x).unwrap();
        let ly = nf_to_lamp(&y).unwrap();
        let expected = LampElement::new(
            symdiff(&lx.lamps, &shift_set(&ly.lamps, -lx.position)),
            lx.position + ly.position,
        );
        (nf_to_lamp(&x.mul(&y).unwrap()).unwrap() != expected)
            .then(|| repro(cfg, &format!("x={x} y={y}")))
    })
}

// ---- faithful suite ---------------------------------------------------------

fn uniqueness_exhaustive(cfg: &VerifyConfig) -> PropertyReport {
    let name = "faithful/uniqueness-exhaustive";
    // every support within [-3, 3] and |κ| ≤ 3, acting on length-16 series
    let len = 16;
    let zero = TruncatedSeries::zero(2, len).unwrap();
    let one = TruncatedSeries::one(2, len).unwrap();
    let mut seen = std::collections::HashMap::new();
    let mut forms = Vec::new();
    for mask in 0u32..(1 << 7) {
        for kappa in -3i64..=3 {
            let support: Vec<(i64, i64)> = (0..7)
                .filter(|b| mask & (1 << b) != 0)
                .map(|b| (i64::from(b) - 3, 1))
                .collect();
            forms.push(NormalForm::new(2, support, kappa).unwrap());
        }
    }
    let total = forms.len();
    check(name, total, |i| {
        let x = &forms[i];
        let fingerprint = (
            x.apply_to_series(&zero).unwrap(),
            x.apply_to_series(&one).unwrap(),
        );
        seen.insert(fingerprint, x.clone())
            .map(|other| repro(cfg, &format!("{x} and {other} act identically")))
    })
}

fn infinite_order(cfg: &VerifyConfig) -> PropertyReport {
    let name = "faithful/infinite-order";
    let q = NormalForm::generator(2, 0).unwrap();
    let mut acc = NormalForm::identity(2).unwrap();
    check(name, 64, |i| {
        acc = acc.mul(&q).unwrap();
        let k = i as i64 + 1;
        let ok = !acc.is_identity() && acc == NormalForm::new(2, [], k).unwrap();
        (!ok).then(|| repro(cfg, &format!("q^{k} = {acc}")))
    })
}

fn torsion_and_commutation(cfg: &VerifyConfig) -> PropertyReport {
    let name = "faithful/torsion-and-commutation";
    let p = NormalForm::generator(2, 1).unwrap();
    let q = NormalForm::generator(2, 0).unwrap();
    let a = p.mul(&q.inverse()).unwrap();
    let conj = |j: i64| {
        let qj = NormalForm::new(2, [], j).unwrap();
        qj.inverse().mul(&a).unwrap().mul(&qj).unwrap()
    };
    check(name, 1, |_| {
        if !a.mul(&a).unwrap().is_identity() {
            return Some(repro(cfg, &format!("(p·q^-1)^2 = {}", a.mul(&a).unwrap())));
        }
        for j in -5i64..=5 {
            for k in -5i64..=5 {
                let jk = conj(j).mul(&conj(k)).unwrap();
                let kj = conj(k).mul(&conj(j)).unwrap();
                if jk != kj {
                    return Some(repro(cfg, &format!("j={j} k={k}")));
                }
            }
        }
        None
    })
}

fn non_normality_witness(cfg: &VerifyConfig) -> PropertyReport {
    let name = "faithful/non-normality-witness";
    let mut rng = prop_rng(cfg, name);
    let len = 32;
    check(name, 1, |_| {
        let f = TruncatedSeries::geometric(ModInt::new(2, 1).unwrap(), len).unwrap();
        let g = rand_series(&mut rng, 2, len);
        let a = [
            AffineAtom::alpha(f.clone()),
            AffineAtom::mu(f.clone()).unwrap(),
            AffineAtom::alpha(f.clone()),
        ];
        let mut lhs_chain = a.to_vec();
        lhs_chain.push(AffineAtom::mu(f.clone()).unwrap());
        let lhs = apply_atom_chain(&lhs_chain, &g).unwrap();
        for k in -4i64..=4 {
            let mut rhs_chain = vec![AffineAtom::mu(f.power(k).unwrap()).unwrap()];
            rhs_chain.extend(a.to_vec());
            let rhs = apply_atom_chain(&rhs_chain, &g).unwrap();
            if lhs == rhs {
                return Some(repro(cfg, &format!("coset match at k={k} g={g}")));
            }
        }
        None
    })
}

fn composition_order(cfg: &VerifyConfig) -> PropertyReport {
    let name = "faithful/composition-order";
    check(name, 1, |_| {
        let qp = GeneratorWord::parse("q p", 2).unwrap().to_normal_form();
        let pq = GeneratorWord::parse("p q", 2).unwrap().to_normal_form();
        let ok = qp != pq && qp == NormalForm::new(2, [(-1, 1)], 2).unwrap();
        (!ok).then(|| repro(cfg, &format!("qp={qp} pq={pq}")))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_suites_pass() {
        let cfg = VerifyConfig::default();
        for suite in [Suite::Axioms, Suite::Iso, Suite::Faithful] {
            let report = run_suite(suite, &cfg);
            assert!(report.all_passed(), "{}", report.render());
        }
    }

    #[test]
    fn reports_are_deterministic() {
        let cfg = VerifyConfig {
            seed: 42,
            ..VerifyConfig::default()
        };
        let a = run_suite(Suite::All, &cfg);
        let b = run_suite(Suite::All, &cfg);
        assert_eq!(a.render(), b.render());
    }

    #[test]
    fn cross_realization_over_mod3() {
        let cfg = VerifyConfig {
            modulus: 3,
            ..VerifyConfig::default()
        };
        let report = run_suite(Suite::Iso, &cfg);
        assert!(report.all_passed(), "{}", report.render());
    }

    #[test]
    fn suite_names_parse() {
        assert_eq!(Suite::from_name("axioms"), Some(Suite::Axioms));
        assert_eq!(Suite::from_name("iso"), Some(Suite::Iso));
        assert_eq!(Suite::from_name("faithful"), Some(Suite::Faithful));
        assert_eq!(Suite::from_name("all"), Some(Suite::All));
        assert_eq!(Suite::from_name("bogus"), None);
    }
}
