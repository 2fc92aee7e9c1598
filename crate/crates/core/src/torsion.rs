//! Orders of torsion elements and torsion spectra.
//!
//! A finite-order matrix in `GL_n(Z)` has a minimal polynomial that is a
//! product of distinct cyclotomic polynomials `Φ_d` of total degree at most
//! `n`, so its order is the lcm of some `d_i` with `Σ φ(d_i) <= n`. That
//! finite candidate set makes [`matrix_order`] exact: no power-growth
//! heuristics are needed to declare an element of infinite order.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::congruence::{entry_gcd, gamma_member};
use crate::error::{Error, Result};
use crate::matrix::{sample_sl_from, IntMatrix};
use crate::modular::{enumerate_sl_with_cap, DEFAULT_ENUMERATION_CAP};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum OrderResult {
    Finite { value: u64 },
    Infinite,
}

impl OrderResult {
    pub fn finite(&self) -> Option<u64> {
        match self {
            OrderResult::Finite { value } => Some(*value),
            OrderResult::Infinite => None,
        }
    }
}

/// A finite set of element orders.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
#[serde(transparent)]
pub struct TorsionSpectrum(BTreeSet<u64>);

impl TorsionSpectrum {
    pub fn orders(&self) -> &BTreeSet<u64> {
        &self.0
    }

    pub fn contains(&self, order: u64) -> bool {
        self.0.contains(&order)
    }

    pub fn to_vec(&self) -> Vec<u64> {
        self.0.iter().copied().collect()
    }

    pub fn is_divisor_closed(&self) -> bool {
        self.0
            .iter()
            .all(|&d| (1..=d).filter(|k| d % k == 0).all(|k| self.0.contains(&k)))
    }

    pub fn is_subset(&self, other: &TorsionSpectrum) -> bool {
        self.0.is_subset(&other.0)
    }
}

impl FromIterator<u64> for TorsionSpectrum {
    fn from_iter<I: IntoIterator<Item = u64>>(iter: I) -> Self {
        TorsionSpectrum(iter.into_iter().collect())
    }
}

pub fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// All lcms of multisets `{d_i}` with `Σ φ(d_i) <= n`.
pub fn candidate_orders(n: usize) -> BTreeSet<u64> {
    let n = n as u64;
    // φ(d) >= sqrt(d/2), so φ(d) <= n forces d <= 2n²
    let degrees: Vec<(u64, u64)> = (1..=2 * n * n + 2)
        .map(|d| (d, euler_phi(d)))
        .filter(|&(_, phi)| phi <= n)
        .collect();
    let mut out = BTreeSet::new();
    fn walk(degrees: &[(u64, u64)], start: usize, budget: u64, acc: u64, out: &mut BTreeSet<u64>) {
        out.insert(acc);
        for (idx, &(d, phi)) in degrees.iter().enumerate().skip(start) {
            if phi <= budget {
                walk(degrees, idx, budget - phi, acc.lcm(&d), out);
            }
        }
    }
    walk(&degrees, 0, n, 1, &mut out);
    out
}

/// Exact order of a determinant-1 integer matrix.
pub fn matrix_order(x: &IntMatrix) -> Result<OrderResult> {
    x.require_unimodular()?;
    let candidates = candidate_orders(x.dim());
    let largest = *candidates.last().expect("1 is always a candidate");
    let mut power = x.clone();
    for d in 1..=largest {
        if candidates.contains(&d) && power.is_identity() {
            return Ok(OrderResult::Finite { value: d });
        }
        power = &power * x;
    }
    Ok(OrderResult::Infinite)
}

pub fn mod_spectrum(n: usize, modulus: u64) -> Result<TorsionSpectrum> {
    mod_spectrum_with_cap(n, modulus, DEFAULT_ENUMERATION_CAP)
}

/// Element orders of `SL_n(Z/N)`, by enumeration.
pub fn mod_spectrum_with_cap(n: usize, modulus: u64, cap: u64) -> Result<TorsionSpectrum> {
    let group = enumerate_sl_with_cap(n, modulus, cap)?;
    let orders: BTreeSet<u64> = group.par_iter().map(|y| y.order()).collect();
    Ok(TorsionSpectrum(orders))
}

/// `{k·r : k ∈ kernel, r ∈ range}`, the bound `τ(dom) ⊆ τ(ker)·τ(ran)`.
pub fn spectrum_bound(kernel: &TorsionSpectrum, range: &TorsionSpectrum) -> TorsionSpectrum {
    kernel
        .0
        .iter()
        .flat_map(|k| range.0.iter().map(move |r| k * r))
        .collect()
}

/// Checks `-q(X-1) = Σ_{i=2..q} C(q,i)(X-1)^i` for `X^q = 1`; the identity is
/// the binomial expansion of `((X-1)+1)^q - 1 = 0`.
pub fn binomial_torsion_identity(x: &IntMatrix, q: u64) -> bool {
    let n = x.dim();
    let y = IntMatrix::new(n, x.minus_identity()).expect("same dimension");
    let lhs: Vec<BigInt> = y.entries().iter().map(|v| -(BigInt::from(q) * v)).collect();
    let mut rhs = vec![BigInt::from(0); n * n];
    let mut power = y.clone();
    for i in 2..=q {
        power = &power * &y;
        let c = BigInt::from(binomial(q, i));
        for (acc, v) in rhs.iter_mut().zip(power.entries()) {
            *acc += &c * v;
        }
    }
    lhs == rhs
}

/// Outcome of a falsification probe.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct ProbeReport {
    pub trials: usize,
    pub failures: usize,
    /// Descriptions of the first few counterexamples; empty on success.
    pub examples: Vec<String>,
}

impl ProbeReport {
    fn fail(&mut self, what: String) {
        self.failures += 1;
        if self.examples.len() < 5 {
            self.examples.push(what);
        }
    }
}

/// Order-4 and order-6 elements of `SL_2(Z)`.
pub fn sl2_torsion_generators() -> [IntMatrix; 2] {
    [
        "0,-1;1,0".parse().expect("literal"),
        "0,-1;1,1".parse().expect("literal"),
    ]
}

/// Samples conjugates `g·T·g⁻¹` of the order-4 and order-6 elements of
/// `SL_2(Z)` and checks none lies in `Γ(N)`; also checks every nontrivial
/// power of a sample that lands in `Γ(2)` squares to the identity.
/// A falsification probe: any failure is returned as `CounterexampleFound`.
pub fn minkowski_probe(level: u64, trials: usize, seed: u64) -> Result<ProbeReport> {
    if level < 3 {
        return Err(Error::BadModulus(level.to_string()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let generators = sl2_torsion_generators();
    let two = BigInt::from(2);
    let mut report = ProbeReport {
        trials,
        ..ProbeReport::default()
    };
    for t in 0..trials {
        let torsion = &generators[t % 2];
        let expected = if t % 2 == 0 { 4 } else { 6 };
        let length = rng.gen_range(1..=10);
        let g = sample_sl_from(&mut rng, 2, length, 5);
        let conj = &(&g * torsion) * &g.inverse_sl()?;

        if gamma_member(&conj, level)? {
            report.fail(format!("{conj} has finite order and lies in Γ({level})"));
        }
        let gcd = entry_gcd(&conj);
        if gcd != 1u32.into() && gcd != 2u32.into() {
            report.fail(format!("{conj} has finite order and level {gcd}"));
        }
        if matrix_order(&conj)?.finite() != Some(expected) {
            report.fail(format!("{conj} is a conjugate without order {expected}"));
        }
        let mut power = conj.clone();
        for _ in 1..expected {
            if !power.is_identity()
                && crate::congruence::congruent_to_identity(&power, &two)
                && !(&power * &power).is_identity()
            {
                report.fail(format!("{power} is torsion in Γ(2) but does not square to 1"));
            }
            power = &power * &conj;
        }
    }
    if report.failures > 0 {
        return Err(Error::CounterexampleFound {
            failures: report.failures,
            first: report.examples[0].clone(),
        });
    }
    Ok(report)
}
