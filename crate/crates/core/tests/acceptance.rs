//! Acceptance suite: the library's exit criteria, one test per criterion.
//!
//! Everything here is an exact integer equality; there are no tolerances.
//! Each test prints a single `criterion N (...): PASS` line (run with
//! `--nocapture` to see them) and panics with the reproducer on failure.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lamplighter_core::affine::{
    build_lamplighter_machine, remainder_closure, GenToken, GeneratorWord, NormalForm,
};
use lamplighter_core::lamplighter::{
    iso_l2_to_l2bar, iso_l2prime_to_l2, l2_inv, l2_mul, l2bar_mul, l2prime_inv, l2prime_mul,
    opposite_mul, symdiff, FinSet, LampElement, SeqLampElement,
};
use lamplighter_core::mealy::{machines_isomorphic, synthesize_machine, MealyMachine};
use lamplighter_core::series::{ModInt, TruncatedSeries};
use lamplighter_core::words::DigitWord;

fn criterion(number: u32, description: &str, check: impl FnOnce() -> Result<(), String>) {
    match check() {
        Ok(()) => println!("criterion {number} ({description}): PASS"),
        Err(msg) => {
            println!("criterion {number} ({description}): FAIL - {msg}");
            panic!("criterion {number} ({description}) failed: {msg}");
        }
    }
}

fn fail_if(condition: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if condition {
        Err(msg())
    } else {
        Ok(())
    }
}

fn rand_word(rng: &mut ChaCha8Rng, modulus: u32, len: usize) -> DigitWord {
    let digits = (0..len).map(|_| rng.random_range(0..modulus)).collect();
    DigitWord::new(modulus, digits).unwrap()
}

fn rand_word_up_to(rng: &mut ChaCha8Rng, modulus: u32, max_len: usize) -> DigitWord {
    let len = rng.random_range(0..=max_len);
    rand_word(rng, modulus, len)
}

fn rand_series(rng: &mut ChaCha8Rng, modulus: u32, len: usize) -> TruncatedSeries {
    let coeffs: Vec<i64> = (0..len)
        .map(|_| i64::from(rng.random_range(0..modulus)))
        .collect();
    TruncatedSeries::from_coeffs(modulus, coeffs).unwrap()
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
    GeneratorWord::new(modulus, tokens).unwrap()
}

#[test]
fn criterion_1_worked_examples() {
    criterion(1, "worked symmetric-difference and lamp products", || {
        let a = FinSet::new(vec![4, 5, 6, 7]);
        let b = FinSet::new(vec![1, 2, 4, 5]);
        let c = FinSet::new(vec![2, 3, 5, 6]);
        let ab = symdiff(&a, &b);
        fail_if(ab != FinSet::new(vec![1, 2, 6, 7]), || format!("AΔB = {ab:?}"))?;
        let abc = symdiff(&ab, &c);
        fail_if(abc != FinSet::new(vec![1, 3, 5, 7]), || {
            format!("(AΔB)ΔC = {abc:?}")
        })?;

        let l0 = LampElement::parse("{0};0").unwrap();
        let l1 = LampElement::parse("{1};1").unwrap();
        let forward = l2_mul(&l0, &l1);
        let backward = l2_mul(&l1, &l0);
        fail_if(forward != LampElement::parse("{};1").unwrap(), || {
            format!("l0·l1 = {forward}")
        })?;
        fail_if(backward != LampElement::parse("{0,1};1").unwrap(), || {
            format!("l1·l0 = {backward}")
        })
    });
}

#[test]
fn criterion_2_machine_reconstruction() {
    criterion(2, "machine tables, invertibility, inverse round-trip", || {
        let machine = build_lamplighter_machine(2).unwrap();
        // tables written out from the rule: state s reading r outputs s+r
        // and moves to state s+r
        let expected = MealyMachine::new(2, 2, vec![0, 1, 1, 0], vec![0, 1, 1, 0]).unwrap();
        fail_if(machine != expected, || format!("tables differ: {machine}"))?;
        fail_if(!machine.is_invertible(), || "not invertible".to_string())?;

        let inverse = machine.invert().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for i in 0..10_000 {
            let q = rng.random_range(0..2);
            let w = rand_word_up_to(&mut rng, 2, 64);
            let (fwd, out) = machine.transduce(q, &w).unwrap();
            let (bwd, back) = inverse.transduce(q, &out).unwrap();
            fail_if(back != w || fwd != bwd, || {
                format!("round trip {i} failed at q={q} w={w}")
            })?;
        }
        Ok(())
    });
}

#[test]
fn criterion_3_cross_realization() {
    criterion(3, "machine chain equals normal-form series action", || {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (modulus, words) in [(2u32, 500usize), (3, 200)] {
            for i in 0..words {
                let word = rand_genword(&mut rng, modulus, 20);
                let input = rand_word(&mut rng, modulus, 64);
                let via_machine = word.apply_to_word(&input).unwrap();
                let via_nf = word.to_normal_form().apply_to_word(&input).unwrap();
                fail_if(via_machine != via_nf, || {
                    format!("mod {modulus} case {i}: word=[{word}] input={input}")
                })?;
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_4_homomorphism() {
    criterion(4, "normal form distributes over concatenation", || {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for i in 0..500 {
            let whole = rand_genword(&mut rng, 2, 20);
            let cut = rng.random_range(0..=whole.tokens().len());
            let left = GeneratorWord::new(2, whole.tokens()[..cut].to_vec()).unwrap();
            let right = GeneratorWord::new(2, whole.tokens()[cut..].to_vec()).unwrap();
            let joined = whole.to_normal_form();
            let split = left.to_normal_form().mul(&right.to_normal_form()).unwrap();
            fail_if(joined != split, || {
                format!("case {i}: word=[{whole}] cut={cut}")
            })?;
        }
        Ok(())
    });
}

#[test]
fn criterion_5_ring_laws() {
    criterion(5, "ring laws at length 128 over Z/2, Z/3, Z/4", || {
        let len = 128;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in [2u32, 3, 4] {
            let zero = TruncatedSeries::zero(n, len).unwrap();
            let one = TruncatedSeries::one(n, len).unwrap();
            for i in 0..200 {
                let f = rand_series(&mut rng, n, len);
                let g = rand_series(&mut rng, n, len);
                let h = rand_series(&mut rng, n, len);
                let ok = f.add(&g).unwrap() == g.add(&f).unwrap()
                    && f.mul(&g).unwrap() == g.mul(&f).unwrap()
                    && f.add(&g).unwrap().add(&h).unwrap() == f.add(&g.add(&h).unwrap()).unwrap()
                    && f.mul(&g).unwrap().mul(&h).unwrap() == f.mul(&g.mul(&h).unwrap()).unwrap()
                    && f.mul(&g.add(&h).unwrap()).unwrap()
                        == f.mul(&g).unwrap().add(&f.mul(&h).unwrap()).unwrap()
                    && f.add(&zero).unwrap() == f
                    && f.mul(&one).unwrap() == f;
                fail_if(!ok, || format!("ring law mod {n} case {i}: f={f} g={g} h={h}"))?;
            }
            for i in 0..200 {
                let f = loop {
                    let s = rand_series(&mut rng, n, len);
                    if s.is_unit() {
                        break s;
                    }
                };
                fail_if(f.mul(&f.inverse().unwrap()).unwrap() != one, || {
                    format!("unit inverse mod {n} case {i}: f={f}")
                })?;
            }
            for a in 0..n {
                let a = ModInt::new(n, i64::from(a)).unwrap();
                let geo = TruncatedSeries::geometric(a, len).unwrap();
                let linear = TruncatedSeries::from_coeffs(n, [1, -i64::from(a.value())])
                    .unwrap()
                    .resized(len)
                    .unwrap();
                fail_if(linear.inverse().unwrap() != geo, || {
                    format!("inverse of 1-aX differs from geometric, mod {n} a={}", a.value())
                })?;
                let scaled = TruncatedSeries::constant(a, len).unwrap().mul(&geo).unwrap();
                fail_if(
                    geo.shift().coeffs()[..len - 1] != scaled.coeffs()[..len - 1],
                    || format!("shifted geometric differs, mod {n} a={}", a.value()),
                )?;
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_6_finite_stateness() {
    criterion(6, "remainder closure has exactly n states", || {
        for n in [2u32, 3, 5] {
            let f = TruncatedSeries::geometric(ModInt::new(n, 1).unwrap(), 64).unwrap();
            let closure = remainder_closure(&f, 20)
                .map_err(|e| format!("mod {n}: closure failed: {e}"))?;
            fail_if(closure.shifts.len() != n as usize, || {
                format!("mod {n}: {} states", closure.shifts.len())
            })?;
            fail_if(
                closure.machine != build_lamplighter_machine(n).unwrap(),
                || format!("mod {n}: closure machine differs"),
            )?;
        }
        Ok(())
    });
}

#[test]
fn criterion_7_group_structure() {
    criterion(7, "torsion, commutation, infinite order, uniqueness", || {
        let p = NormalForm::generator(2, 1).unwrap();
        let q = NormalForm::generator(2, 0).unwrap();

        let a = p.mul(&q.inverse()).unwrap();
        fail_if(!a.mul(&a).unwrap().is_identity(), || {
            format!("(p·q^-1)^2 = {}", a.mul(&a).unwrap())
        })?;

        let conj = |j: i64| {
            let qj = NormalForm::new(2, [], j).unwrap();
            qj.inverse().mul(&a).unwrap().mul(&qj).unwrap()
        };
        for j in -5i64..=5 {
            for k in -5i64..=5 {
                let jk = conj(j).mul(&conj(k)).unwrap();
                let kj = conj(k).mul(&conj(j)).unwrap();
                fail_if(jk != kj, || format!("conjugates at j={j}, k={k} do not commute"))?;
            }
        }

        let mut acc = NormalForm::identity(2).unwrap();
        for k in 1..=64 {
            acc = acc.mul(&q).unwrap();
            fail_if(acc.is_identity(), || format!("q^{k} is the identity"))?;
        }

        // uniqueness: every support within [-3,3] and |κ| ≤ 3 acts
        // distinctly on length-16 series, probed at 0 and 1
        let len = 16;
        let zero = TruncatedSeries::zero(2, len).unwrap();
        let one = TruncatedSeries::one(2, len).unwrap();
        let mut seen: HashMap<_, NormalForm> = HashMap::new();
        for mask in 0u32..(1 << 7) {
            for kappa in -3i64..=3 {
                let support: Vec<(i64, i64)> = (0..7)
                    .filter(|b| mask & (1 << b) != 0)
                    .map(|b| (i64::from(b) - 3, 1))
                    .collect();
                let x = NormalForm::new(2, support, kappa).unwrap();
                let fingerprint = (
                    x.apply_to_series(&zero).unwrap(),
                    x.apply_to_series(&one).unwrap(),
                );
                if let Some(other) = seen.insert(fingerprint, x.clone()) {
                    return Err(format!("{x} and {other} act identically"));
                }
            }
        }
        fail_if(seen.len() != 128 * 7, || {
            format!("expected 896 distinct actions, got {}", seen.len())
        })
    });
}

#[test]
fn criterion_8_lamplighter_presentations() {
    criterion(8, "group axioms, isomorphisms, semidirect factorization", || {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let e = LampElement::identity();

        for i in 0..500 {
            let a = rand_lamp(&mut rng);
            let b = rand_lamp(&mut rng);
            let c = rand_lamp(&mut rng);
            let ok = l2_mul(&l2_mul(&a, &b), &c) == l2_mul(&a, &l2_mul(&b, &c))
                && l2_mul(&a, &e) == a
                && l2_mul(&e, &a) == a
                && l2_mul(&a, &l2_inv(&a)) == e
                && l2_mul(&l2_inv(&a), &a) == e;
            fail_if(!ok, || format!("L2 axioms case {i}: a={a} b={b} c={c}"))?;
        }

        for i in 0..500 {
            let a = rand_lamp(&mut rng);
            let b = rand_lamp(&mut rng);
            let c = rand_lamp(&mut rng);
            let inv = LampElement::new(a.lamps.shift(a.position), -a.position);
            let ok = l2bar_mul(&l2bar_mul(&a, &b), &c) == l2bar_mul(&a, &l2bar_mul(&b, &c))
                && l2bar_mul(&a, &e) == a
                && l2bar_mul(&e, &a) == a
                && l2bar_mul(&a, &inv) == e
                && l2bar_mul(&inv, &a) == e;
            fail_if(!ok, || format!("L2-bar axioms case {i}: a={a} b={b} c={c}"))?;
        }

        let seq_e = SeqLampElement::identity();
        for i in 0..500 {
            let a = rand_seq(&mut rng);
            let b = rand_seq(&mut rng);
            let c = rand_seq(&mut rng);
            let ok = l2prime_mul(&l2prime_mul(&a, &b), &c) == l2prime_mul(&a, &l2prime_mul(&b, &c))
                && l2prime_mul(&a, &seq_e) == a
                && l2prime_mul(&seq_e, &a) == a
                && l2prime_mul(&a, &l2prime_inv(&a)) == seq_e
                && l2prime_mul(&l2prime_inv(&a), &a) == seq_e;
            fail_if(!ok, || format!("L2-prime axioms case {i}"))?;
        }

        let op = opposite_mul(l2_mul);
        for i in 0..500 {
            let a = rand_lamp(&mut rng);
            let b = rand_lamp(&mut rng);
            let c = rand_lamp(&mut rng);
            let ok = op(&op(&a, &b), &c) == op(&a, &op(&b, &c))
                && op(&a, &e) == a
                && op(&e, &a) == a
                && op(&a, &l2_inv(&a)) == e
                && op(&l2_inv(&a), &a) == e;
            fail_if(!ok, || format!("opposite axioms case {i}: a={a} b={b} c={c}"))?;
        }

        for i in 0..500 {
            let a = rand_lamp(&mut rng);
            let b = rand_lamp(&mut rng);
            let negated = iso_l2_to_l2bar(&l2_mul(&a, &b))
                == l2bar_mul(&iso_l2_to_l2bar(&a), &iso_l2_to_l2bar(&b));
            fail_if(!negated, || format!("negate-lamps iso case {i}: a={a} b={b}"))?;

            let sa = rand_seq(&mut rng);
            let sb = rand_seq(&mut rng);
            let read_off = iso_l2prime_to_l2(&l2prime_mul(&sa, &sb))
                == l2_mul(&iso_l2prime_to_l2(&sa), &iso_l2prime_to_l2(&sb));
            fail_if(!read_off, || format!("bitmap iso case {i}"))?;
        }

        for i in 0..200 {
            let a = rand_seq(&mut rng);
            let n_part = SeqLampElement::new(a.bits.iter().map(|k| k - a.position), 0);
            let h_part = SeqLampElement::new([], a.position);
            fail_if(l2prime_mul(&n_part, &h_part) != a, || {
                format!("factorization case {i}: {a:?}")
            })?;
            let recovered = l2prime_mul(&a, &l2prime_inv(&h_part));
            fail_if(recovered != n_part, || {
                format!("factorization not unique, case {i}: {a:?}")
            })?;
        }
        Ok(())
    });
}

#[test]
fn criterion_9_synthesis() {
    criterion(9, "synthesis recovers the two-state machine at depth 8", || {
        // independent oracle: running prefix sum of the digits, mod 2
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
        let synth =
            synthesize_machine(oracle, 2, 8).map_err(|e| format!("synthesis failed: {e}"))?;
        fail_if(synth.machine().state_count() != 2, || {
            format!("{} states", synth.machine().state_count())
        })?;
        for bits in 0u32..(1 << 8) {
            let digits: Vec<u32> = (0..8).map(|i| (bits >> i) & 1).collect();
            let input = DigitWord::new(2, digits).unwrap();
            fail_if(synth.transduce(&input).unwrap().1 != oracle(&input), || {
                format!("disagrees with the oracle on {input}")
            })?;
        }
        fail_if(
            !machines_isomorphic(synth.machine(), &build_lamplighter_machine(2).unwrap()),
            || "not isomorphic to the built machine".to_string(),
        )
    });
}

#[test]
fn criterion_10_ultrametric() {
    criterion(10, "prefix-length ultrametric inequality", || {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for i in 0..10_000 {
            let x = rand_word_up_to(&mut rng, 2, 64);
            let y = rand_word_up_to(&mut rng, 2, 64);
            let z = rand_word_up_to(&mut rng, 2, 64);
            let xz = x.common_prefix_length(&z).unwrap();
            let xy = x.common_prefix_length(&y).unwrap();
            let yz = y.common_prefix_length(&z).unwrap();
            fail_if(xz < xy.min(yz), || format!("case {i}: x={x} y={y} z={z}"))?;
        }
        Ok(())
    });
}
