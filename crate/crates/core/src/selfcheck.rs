//! The invariant suite behind `congruence-lab selfcheck`.

use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::congruence::{gamma_member, sample_gamma};
use crate::matrix::{sample_sl, IntMatrix};
use crate::modular::{enumerate_sl_with_cap, mod_reduce, sl_order_formula, Modulus};
use crate::residual::{
    phi_general, phi_general_preimage, phi_k, phi_preimage, power_congruence_check, witness_p, witness_rf,
    TracelessMatrix, WitnessImage,
};
use crate::torsion::{matrix_order, minkowski_probe, mod_spectrum_with_cap, spectrum_bound, TorsionSpectrum};
use crate::words::{decompose_int, decompose_mod, lift_to_int};

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
}

type Check = fn(&Scale) -> Result<String, String>;

struct Scale {
    quick: bool,
    seed: u64,
    cap: u64,
}

impl Scale {
    fn samples(&self, full: usize) -> usize {
        if self.quick {
            (full / 10).max(1)
        } else {
            full
        }
    }
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

/// Runs every check; `quick` shrinks sample counts and enumeration ranges.
pub fn run_selfcheck(quick: bool, seed: u64, cap: u64) -> Vec<CheckOutcome> {
    let scale = Scale { quick, seed, cap };
    let checks: [(&'static str, Check); 9] = [
        ("index-formula-vs-enumeration", index_vs_enumeration),
        ("torsion-facts", torsion_facts),
        ("elementary-round-trip", elementary_round_trip),
        ("congruence-surjectivity", congruence_surjectivity),
        ("phi-k-suite", phi_k_suite),
        ("power-congruence", power_congruence),
        ("minkowski-probe", minkowski),
        ("witness-completeness", witnesses),
        ("phi-general", phi_general_suite),
    ];
    checks
        .iter()
        .map(|(name, check)| {
            let start = Instant::now();
            let result = check(&scale);
            let millis = start.elapsed().as_millis();
            match result {
                Ok(detail) => CheckOutcome { name, passed: true, detail, millis },
                Err(detail) => CheckOutcome { name, passed: false, detail, millis },
            }
        })
        .collect()
}

fn index_vs_enumeration(s: &Scale) -> Result<String, String> {
    let top2 = if s.quick { 6 } else { 12 };
    let cases3: &[u64] = if s.quick { &[2] } else { &[2, 3, 4] };
    let cases = (2..=top2).map(|m| (2usize, m)).chain(cases3.iter().map(|&m| (3usize, m)));
    let mut count = 0;
    for (n, m) in cases {
        let found = enumerate_sl_with_cap(n, m, s.cap).map_err(fail)?.len();
        let formula = sl_order_formula(n, m).map_err(fail)?;
        ensure(BigUint::from(found) == formula, || {
            format!("n={n} N={m}: enumeration {found}, formula {formula}")
        })?;
        count += 1;
    }
    Ok(format!("{count} (n, N) pairs agree"))
}

fn torsion_facts(s: &Scale) -> Result<String, String> {
    let order = |t: &str| matrix_order(&t.parse().expect("literal")).map(|o| o.finite());
    ensure(order("0,-1;1,0").map_err(fail)? == Some(4), || "order of (0,-1;1,0) is not 4".into())?;
    ensure(order("0,-1;1,1").map_err(fail)? == Some(6), || "order of (0,-1;1,1) is not 6".into())?;
    let tau2 = mod_spectrum_with_cap(2, 2, s.cap).map_err(fail)?;
    let tau3 = mod_spectrum_with_cap(2, 3, s.cap).map_err(fail)?;
    ensure(tau2.to_vec() == [1, 2, 3], || format!("τ(SL_2(Z/2)) = {:?}", tau2.to_vec()))?;
    ensure(tau3.to_vec() == [1, 2, 3, 4, 6], || format!("τ(SL_2(Z/3)) = {:?}", tau3.to_vec()))?;
    let kernel: TorsionSpectrum = [1, 2].into_iter().collect();
    let bound = spectrum_bound(&kernel, &tau2);
    ensure(bound.to_vec() == [1, 2, 3, 4, 6], || format!("bound = {:?}", bound.to_vec()))?;
    Ok("orders 4 and 6, spectra {1,2,3} and {1,2,3,4,6}".into())
}

fn elementary_round_trip(s: &Scale) -> Result<String, String> {
    let samples = s.samples(1000);
    for n in [2usize, 3] {
        for k in 0..samples as u64 {
            let x = sample_sl(n, 24, s.seed.wrapping_add(k));
            let w = decompose_int(&x).map_err(fail)?;
            ensure(w.eval_over_integers() == x, || format!("round trip failed for {x}"))?;
        }
    }
    let group = enumerate_sl_with_cap(2, 6, s.cap).map_err(fail)?;
    for y in &group {
        let w = decompose_mod(y).map_err(fail)?;
        ensure(w.eval_mod(y.modulus()) == *y, || format!("mod-6 round trip failed for {y}"))?;
    }
    Ok(format!("{} integer samples per n, {} elements of SL_2(Z/6)", samples, group.len()))
}

fn congruence_surjectivity(s: &Scale) -> Result<String, String> {
    let mut total = 0;
    for m in 2..=6u64 {
        for y in enumerate_sl_with_cap(2, m, s.cap).map_err(fail)? {
            let x = lift_to_int(&y).map_err(fail)?;
            ensure(x.det().is_one() && mod_reduce(&x, y.modulus()) == y, || {
                format!("lift of {y} is {x}")
            })?;
            total += 1;
        }
    }
    Ok(format!("{total} elements lifted"))
}

fn grid(s: &Scale) -> Vec<(usize, u64, u32)> {
    let ks: &[u32] = if s.quick { &[1, 2] } else { &[1, 2, 3] };
    let mut out = Vec::new();
    for n in [2usize, 3] {
        for p in [2u64, 3, 5] {
            for &k in ks {
                out.push((n, p, k));
            }
        }
    }
    out
}

fn phi_k_suite(s: &Scale) -> Result<String, String> {
    let pairs = s.samples(1000);
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    for (n, p, k) in grid(s) {
        let level = p.pow(k);
        for _ in 0..pairs {
            let x = sample_gamma(n, level, 3, rng.gen());
            let y = sample_gamma(n, level, 3, rng.gen());
            let lhs = phi_k(&(&x * &y), p, k).map_err(fail)?;
            let rhs = phi_k(&x, p, k).map_err(fail)?.add(&phi_k(&y, p, k).map_err(fail)?).map_err(fail)?;
            ensure(lhs == rhs, || format!("additivity fails at n={n} p={p} k={k}"))?;
            let z = if rng.gen_bool(0.5) { x } else { sample_gamma(n, level * p, 3, rng.gen()) };
            let in_kernel = phi_k(&z, p, k).map_err(fail)?.is_zero();
            ensure(in_kernel == gamma_member(&z, level * p).map_err(fail)?, || {
                format!("kernel mismatch at n={n} p={p} k={k} for {z}")
            })?;
        }
        let basis = TracelessMatrix::basis(n, &Modulus::new(p).map_err(fail)?);
        for t in &basis {
            let x = phi_preimage(t, p, k).map_err(fail)?;
            ensure(phi_k(&x, p, k).map_err(fail)? == *t, || format!("preimage of {t} misses"))?;
        }
        let rank = rank_mod_p(&basis.iter().map(|t| t.entries().to_vec()).collect::<Vec<_>>(), p);
        ensure(rank == n * n - 1, || format!("image rank {rank} at n={n} p={p}"))?;
    }
    Ok(format!("{} grid points, {pairs} pairs each", grid(s).len()))
}

/// Rank over `F_p` of a list of vectors.
pub(crate) fn rank_mod_p(vectors: &[Vec<u64>], p: u64) -> usize {
    let modulus = Modulus::new(p).expect("prime");
    let mut rows: Vec<Vec<u64>> = vectors.to_vec();
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
        rows.swap(rank, pivot);
        let inv = modulus.inverse(rows[rank][col]).expect("nonzero mod prime");
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let factor = modulus.mul(rows[r][col], inv);
                let pivot_row = rows[rank].clone();
                for (v, &w) in rows[r].iter_mut().zip(&pivot_row) {
                    *v = modulus.add(*v, modulus.neg(modulus.mul(factor, w)));
                }
            }
        }
        rank += 1;
    }
    rank
}

fn power_congruence(s: &Scale) -> Result<String, String> {
    let samples = s.samples(1000);
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed ^ 0x5eed);
    for (n, p, k) in grid(s) {
        for _ in 0..samples {
            let x = sample_gamma(n, p.pow(k), 3, rng.gen());
            ensure(power_congruence_check(&x, p, k).map_err(fail)?, || {
                format!("{x}^{p} is not in Γ({p}^{})", k + 1)
            })?;
        }
    }
    Ok(format!("{samples} samples per grid point"))
}

fn minkowski(s: &Scale) -> Result<String, String> {
    let trials = s.samples(10_000);
    for level in [3u64, 4, 5, 6] {
        minkowski_probe(level, trials, s.seed.wrapping_add(level)).map_err(fail)?;
    }
    Ok(format!("{trials} conjugates per level, no torsion in Γ(3..6)"))
}

fn witnesses(s: &Scale) -> Result<String, String> {
    let samples = s.samples(1000);
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed ^ 0xfeed);
    let mut done = 0;
    while done < samples {
        let x = sample_sl(2, rng.gen_range(1..=12), rng.gen());
        if x.is_identity() {
            continue;
        }
        let w = witness_rf(&x).map_err(fail)?;
        ensure(!w.image.is_trivial(), || format!("trivial rf image for {x}"))?;
        done += 1;
    }
    for p in [2u64, 3] {
        let mut done = 0;
        while done < samples {
            let x = sample_gamma(2, p, rng.gen_range(1..=4), rng.gen());
            if x.is_identity() {
                continue;
            }
            let w = witness_p(&x, p).map_err(fail)?;
            let nonzero = matches!(&w.image, WitnessImage::Traceless(t) if !t.is_zero());
            ensure(nonzero && is_power_of(&w.quotient_order, p), || {
                format!("bad p-witness for {x} at p={p}")
            })?;
            done += 1;
        }
    }
    Ok(format!("{samples} samples per witness kind"))
}

pub(crate) fn is_power_of(value: &BigUint, p: u64) -> bool {
    let p = BigUint::from(p);
    let mut v = value.clone();
    while v > BigUint::one() {
        if &v % &p != BigUint::from(0u32) {
            return false;
        }
        v /= &p;
    }
    v == BigUint::one()
}

fn phi_general_suite(_s: &Scale) -> Result<String, String> {
    for m in [2u64, 3, 4] {
        let modulus = Modulus::new(m).map_err(fail)?;
        let mut hits = 0u64;
        for idx in 0..m.pow(4) {
            let entries: Vec<BigInt> = (0..4).map(|d| BigInt::from(idx / m.pow(d) % m)).collect();
            let Ok(t) = TracelessMatrix::new(2, modulus.clone(), &entries) else { continue };
            let x = phi_general_preimage(&t);
            ensure(phi_general(&x, m).map_err(fail)? == t, || format!("preimage of {t} misses"))?;
            hits += 1;
        }
        ensure(hits == m.pow(3), || format!("image has {hits} elements for N={m}"))?;
        for x in small_gamma_elements(m, 2) {
            let zero = phi_general(&x, m).map_err(fail)?.is_zero();
            ensure(zero == gamma_member(&x, m * m).map_err(fail)?, || format!("kernel mismatch for {x}"))?;
        }
    }
    Ok("sl_2(Z/N) fully hit, kernel = Γ(N²) for N = 2, 3, 4".into())
}

/// All `1 + N·Y` in `SL_2(Z)` with entries of `Y` in `[-bound, bound]`.
pub(crate) fn small_gamma_elements(level: u64, bound: i64) -> Vec<IntMatrix> {
    let level = level as i64;
    let range = || -bound..=bound;
    let mut out = Vec::new();
    for a in range() {
        for b in range() {
            for c in range() {
                for d in range() {
                    let x = IntMatrix::from_rows(&[
                        vec![1 + level * a, level * b],
                        vec![level * c, 1 + level * d],
                    ])
                    .expect("2x2");
                    if x.is_unimodular() {
                        out.push(x);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_over_prime_field() {
        assert_eq!(rank_mod_p(&[vec![1, 2], vec![2, 4]], 5), 1);
        assert_eq!(rank_mod_p(&[vec![1, 2], vec![2, 3]], 5), 2);
        assert_eq!(rank_mod_p(&[vec![1, 1], vec![1, 1]], 2), 1);
    }

    #[test]
    fn powers_of_p() {
        assert!(is_power_of(&BigUint::from(8u32), 2));
        assert!(is_power_of(&BigUint::one(), 3));
        assert!(!is_power_of(&BigUint::from(12u32), 2));
    }

    #[test]
    fn quick_suite_passes() {
        let outcomes = run_selfcheck(true, 1, crate::modular::DEFAULT_ENUMERATION_CAP);
        for o in &outcomes {
            assert!(o.passed, "{}: {}", o.name, o.detail);
        }
        assert_eq!(outcomes.len(), 9);
    }
}
