//! Finite quotients that separate elements from the identity.
//!
//! For `X = 1 + p^k·Y ∈ Γ(p^k)` the map `X ↦ Y mod p` is a homomorphism
//! `Γ(p^k) → sl_n(Z/p)` with kernel `Γ(p^(k+1))`; more generally
//! `1 + N·Y ↦ Y mod N` maps `Γ(N)` onto `sl_n(Z/N)` with kernel `Γ(N²)`.
//! Witnesses pick a quotient in which a given matrix is nontrivial: the
//! smallest prime `p` with `X ≢ 1 mod p`, or, inside `Γ(p)`, the first step
//! of the `p`-chain that `X` leaves.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::congruence::{congruent_to_identity, diagonal_block, entry_gcd};
use crate::error::{Error, Result};
use crate::matrix::{parse_rows, write_rows, IntMatrix};
use crate::modular::{is_prime, mod_reduce, sl_order_formula, sl_order_prime_power, split_mod_suffix, ModMatrix, Modulus};

/// Traceless `n×n` matrix over `Z/N`, an element of `sl_n(Z/N)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TracelessMatrix {
    n: usize,
    modulus: Modulus,
    entries: Vec<u64>,
}

impl TracelessMatrix {
    /// Reduces `entries` mod `N` and checks the trace vanishes.
    pub fn new(n: usize, modulus: Modulus, entries: &[BigInt]) -> Result<Self> {
        if n == 0 || entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                left: n * n,
                right: entries.len(),
            });
        }
        let entries: Vec<u64> = entries.iter().map(|v| modulus.reduce(v)).collect();
        let trace = (0..n).fold(0, |acc, k| modulus.add(acc, entries[k * n + k]));
        if trace != 0 {
            return Err(Error::InvalidArgument(format!(
                "trace is {trace} mod {}, expected 0",
                modulus.value()
            )));
        }
        Ok(TracelessMatrix { n, modulus, entries })
    }

    pub fn zero(n: usize, modulus: Modulus) -> Self {
        TracelessMatrix {
            n,
            modulus,
            entries: vec![0; n * n],
        }
    }

    /// The standard basis: off-diagonal units `e_ij` and the diagonal
    /// differences `e_ii - e_(i+1)(i+1)`; `n² - 1` elements.
    pub fn basis(n: usize, modulus: &Modulus) -> Vec<TracelessMatrix> {
        let m = modulus.value();
        let mut out = Vec::with_capacity(n * n - 1);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let mut e = vec![0; n * n];
                    e[i * n + j] = 1;
                    out.push(TracelessMatrix { n, modulus: modulus.clone(), entries: e });
                }
            }
        }
        for i in 0..n.saturating_sub(1) {
            let mut e = vec![0; n * n];
            e[i * n + i] = 1;
            e[(i + 1) * n + i + 1] = m - 1;
            out.push(TracelessMatrix { n, modulus: modulus.clone(), entries: e });
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0)
    }

    pub fn add(&self, other: &TracelessMatrix) -> Result<TracelessMatrix> {
        if self.n != other.n || self.modulus != other.modulus {
            return Err(Error::InvalidArgument("operands live in different sl_n(Z/N)".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| self.modulus.add(a, b))
            .collect();
        Ok(TracelessMatrix {
            n: self.n,
            modulus: self.modulus.clone(),
            entries,
        })
    }
}

impl fmt::Display for TracelessMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rows(f, self.n, self.entries.iter())?;
        write!(f, " mod {}", self.modulus)
    }
}

impl FromStr for TracelessMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (rows, modulus) = split_mod_suffix(s)?;
        let (n, entries) = parse_rows(rows)?;
        TracelessMatrix::new(n, modulus, &entries)
    }
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// `Y mod target` where `X = 1 + scale·Y`.
fn quotient_map(x: &IntMatrix, scale: &BigInt, target: &Modulus) -> Result<TracelessMatrix> {
    x.require_unimodular()?;
    if !congruent_to_identity(x, scale) {
        return Err(Error::NotInGamma {
            level: scale.to_string(),
        });
    }
    let y: Vec<BigInt> = x.minus_identity().iter().map(|v| v / scale).collect();
    TracelessMatrix::new(x.dim(), target.clone(), &y)
}

/// `φ_k(1 + p^k·Y) = Y mod p` on `Γ(p^k)`.
pub fn phi_k(x: &IntMatrix, p: u64, k: u32) -> Result<TracelessMatrix> {
    require_prime(p)?;
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    quotient_map(x, &BigInt::from(p).pow(k), &Modulus::new(p)?)
}

/// `1 + N·Y ↦ Y mod N` on `Γ(N)`.
pub fn phi_general(x: &IntMatrix, level: u64) -> Result<TracelessMatrix> {
    let modulus = Modulus::new(level)?;
    quotient_map(x, &BigInt::from(level), &modulus)
}

/// An element of `Γ(scale)` whose image `Y mod N` is `t`: diagonal blocks
/// `(1+s, s; -s, 1-s)` raised to the partial traces of `t`, followed by
/// elementary lifts `1 + s·c·e_ij` that fix up the off-diagonal entries.
fn build_preimage(t: &TracelessMatrix, scale: &BigInt) -> IntMatrix {
    let n = t.n;
    let m = &t.modulus;
    let mut off = t.entries.clone();
    let mut result = IntMatrix::identity(n);
    let mut partial = 0u64;
    for i in 0..n.saturating_sub(1) {
        partial = m.add(partial, t.entries[i * n + i]);
        if partial == 0 {
            continue;
        }
        // the block contributes e_ii - e_(i+1)(i+1) + e_i(i+1) - e_(i+1)i
        result = &result * &diagonal_block(n, i, scale).pow(partial);
        off[i * n + i + 1] = m.add(off[i * n + i + 1], m.neg(partial));
        off[(i + 1) * n + i] = m.add(off[(i + 1) * n + i], partial);
    }
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            let c = off[i * n + j];
            if c != 0 {
                result.add_col_multiple(i, j, &(scale * BigInt::from(c)));
            }
        }
    }
    result
}

/// An element of `Γ(p^k)` with `φ_k(result) = t`; `t` must live in `sl_n(Z/p)`.
pub fn phi_preimage(t: &TracelessMatrix, p: u64, k: u32) -> Result<IntMatrix> {
    require_prime(p)?;
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    if t.modulus.value() != p {
        return Err(Error::BadModulus(format!(
            "traceless matrix is mod {}, expected mod {p}",
            t.modulus
        )));
    }
    Ok(build_preimage(t, &BigInt::from(p).pow(k)))
}

/// An element of `Γ(N)` with `phi_general(result, N) = t`, `N` the modulus of `t`.
pub fn phi_general_preimage(t: &TracelessMatrix) -> IntMatrix {
    build_preimage(t, &BigInt::from(t.modulus.value()))
}

/// Whether `X^p ∈ Γ(p^(k+1))` for `X ∈ Γ(p^k)`; always true.
pub fn power_congruence_check(x: &IntMatrix, p: u64, k: u32) -> Result<bool> {
    require_prime(p)?;
    x.require_unimodular()?;
    let level = BigInt::from(p).pow(k);
    if !congruent_to_identity(x, &level) {
        return Err(Error::NotInGamma {
            level: level.to_string(),
        });
    }
    Ok(congruent_to_identity(&x.pow(p), &(level * p)))
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum WitnessKind {
    ResidualFinite,
    ResidualPFinite,
}

impl WitnessKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            WitnessKind::ResidualFinite => "residual-finite",
            WitnessKind::ResidualPFinite => "residual-p-finite",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum WitnessImage {
    Reduction(ModMatrix),
    Traceless(TracelessMatrix),
}

impl WitnessImage {
    pub fn is_trivial(&self) -> bool {
        match self {
            WitnessImage::Reduction(y) => y.is_identity(),
            WitnessImage::Traceless(t) => t.is_zero(),
        }
    }
}

impl fmt::Display for WitnessImage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessImage::Reduction(y) => y.fmt(f),
            WitnessImage::Traceless(t) => t.fmt(f),
        }
    }
}

/// A finite quotient of order `quotient_order`, taken at congruence level
/// `level`, in which `target` has the nontrivial image `image`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CongruenceWitness {
    pub target: IntMatrix,
    pub kind: WitnessKind,
    pub prime: u64,
    pub level: BigUint,
    pub quotient_order: BigUint,
    pub image: WitnessImage,
}

impl CongruenceWitness {
    /// `{"kind", "prime", "level", "quotient_order", "image"}`; the level is
    /// a JSON number when it fits in 64 bits and a decimal string otherwise,
    /// the quotient order is always a decimal string.
    pub fn to_json(&self) -> Value {
        let level = match self.level.to_u64() {
            Some(v) => json!(v),
            None => json!(self.level.to_string()),
        };
        json!({
            "kind": self.kind.as_str(),
            "prime": self.prime,
            "level": level,
            "quotient_order": self.quotient_order.to_string(),
            "image": self.image.to_string(),
        })
    }
}

/// Separates `x` from the identity in `SL_n(Z/p)` for the smallest prime `p`
/// with `x ≢ 1 mod p`.
pub fn witness_rf(x: &IntMatrix) -> Result<CongruenceWitness> {
    x.require_unimodular()?;
    if x.is_identity() {
        return Err(Error::IdentityInput);
    }
    let p = (2u64..)
        .filter(|&p| is_prime(p))
        .find(|&p| !congruent_to_identity(x, &BigInt::from(p)))
        .expect("a nonzero level has a non-dividing prime");
    let modulus = Modulus::new(p)?;
    Ok(CongruenceWitness {
        target: x.clone(),
        kind: WitnessKind::ResidualFinite,
        prime: p,
        level: BigUint::from(p),
        quotient_order: sl_order_formula(x.dim(), p)?,
        image: WitnessImage::Reduction(mod_reduce(x, &modulus)),
    })
}

/// For `x ∈ Γ(p)`, `x ≠ 1`: with `s` the largest exponent such that
/// `x ∈ Γ(p^s)`, the image `φ_s(x) ≠ 0` separates `x` in the `p`-group
/// `Γ(p)/Γ(p^(s+1))` of order `|SL_n(Z/p^(s+1))| / |SL_n(Z/p)|`.
pub fn witness_p(x: &IntMatrix, p: u64) -> Result<CongruenceWitness> {
    require_prime(p)?;
    x.require_unimodular()?;
    if x.is_identity() {
        return Err(Error::IdentityInput);
    }
    let gcd = entry_gcd(x);
    let prime = BigUint::from(p);
    if !gcd.is_multiple_of(&prime) {
        return Err(Error::NotInGamma {
            level: p.to_string(),
        });
    }
    let mut s = 0u32;
    let mut rest = gcd;
    while !rest.is_zero() && rest.is_multiple_of(&prime) {
        rest /= &prime;
        s += 1;
    }
    let n = x.dim();
    let image = phi_k(x, p, s)?;
    debug_assert!(!image.is_zero());
    Ok(CongruenceWitness {
        target: x.clone(),
        kind: WitnessKind::ResidualPFinite,
        prime: p,
        level: prime.pow(s + 1),
        quotient_order: sl_order_prime_power(n, p, s + 1) / sl_order_prime_power(n, p, 1),
        image: WitnessImage::Traceless(image),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::{gamma_index, gamma_member, sample_gamma};
    use crate::matrix::sample_sl;

    fn int(text: &str) -> IntMatrix {
        text.parse().unwrap()
    }

    fn tl(text: &str) -> TracelessMatrix {
        text.parse().unwrap()
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_k(&int("1,2;0,1"), 2, 1).unwrap(), tl("0,1;0,0 mod 2"));
        assert!(phi_k(&IntMatrix::identity(3), 5, 2).unwrap().is_zero());
        assert!(matches!(phi_k(&int("1,2;0,1"), 3, 1), Err(Error::NotInGamma { .. })));
        assert_eq!(phi_k(&int("1,2;0,1"), 4, 1).unwrap_err(), Error::NotPrime(4));
        assert_eq!(phi_k(&int("1,8;0,1"), 2, 3).unwrap(), tl("0,1;0,0 mod 2"));
        assert_eq!(phi_general(&int("1,3;0,1"), 3).unwrap(), tl("0,1;0,0 mod 3"));
        assert!(phi_general(&int("1,9;0,1"), 3).unwrap().is_zero());
    }

    #[test]
    fn traceless_validation() {
        assert!("1,0;0,0 mod 3".parse::<TracelessMatrix>().is_err());
        assert_eq!(tl("1,0;0,-1 mod 3").to_string(), "1,0;0,2 mod 3");
        assert_eq!(TracelessMatrix::basis(3, &Modulus::new(5).unwrap()).len(), 8);
    }

    #[test]
    fn preimage_examples() {
        let e12 = tl("0,1;0,0 mod 3");
        assert_eq!(phi_preimage(&e12, 3, 2).unwrap(), int("1,9;0,1"));
        assert_eq!(phi_preimage(&TracelessMatrix::zero(3, Modulus::new(5).unwrap()), 5, 1).unwrap(), IntMatrix::identity(3));
        let d = tl("1,0;0,-1 mod 5");
        let x = phi_preimage(&d, 5, 1).unwrap();
        assert!(gamma_member(&x, 5).unwrap());
        assert_eq!(phi_k(&x, 5, 1).unwrap(), d);
        // the bare block hits e11 - e22 + e12 - e21
        let block = diagonal_block(2, 0, &BigInt::from(5));
        assert_eq!(phi_k(&block, 5, 1).unwrap(), tl("1,1;-1,-1 mod 5"));
        assert!(phi_preimage(&d, 3, 1).is_err());
    }

    #[test]
    fn preimages_hit_everything_small() {
        for (n, p, k) in [(2usize, 2u64, 1u32), (2, 3, 2), (3, 2, 1)] {
            let modulus = Modulus::new(p).unwrap();
            let count = p.pow((n * n) as u32);
            let mut hits = 0;
            for idx in 0..count {
                let mut rest = idx;
                let entries: Vec<BigInt> = (0..n * n)
                    .map(|_| {
                        let v = rest % p;
                        rest /= p;
                        BigInt::from(v)
                    })
                    .collect();
                let Ok(t) = TracelessMatrix::new(n, modulus.clone(), &entries) else { continue };
                let x = phi_preimage(&t, p, k).unwrap();
                assert!(x.is_unimodular());
                assert_eq!(phi_k(&x, p, k).unwrap(), t);
                hits += 1;
            }
            assert_eq!(hits, p.pow((n * n - 1) as u32));
        }
    }

    #[test]
    fn phi_is_additive_with_kernel_next_level() {
        for seed in 0..100 {
            let x = sample_gamma(3, 9, 4, seed);
            let y = sample_gamma(3, 9, 4, seed + 500);
            let sum = phi_k(&x, 3, 2).unwrap().add(&phi_k(&y, 3, 2).unwrap()).unwrap();
            assert_eq!(phi_k(&(&x * &y), 3, 2).unwrap(), sum);
            let z = sample_gamma(3, 27, 4, seed);
            assert!(phi_k(&z, 3, 2).unwrap().is_zero());
            assert_eq!(phi_k(&x, 3, 2).unwrap().is_zero(), gamma_member(&x, 27).unwrap());
        }
    }

    #[test]
    fn power_congruence() {
        assert!(power_congruence_check(&int("1,2;0,1"), 2, 1).unwrap());
        assert_eq!(int("1,2;0,1").pow(2), int("1,4;0,1"));
        assert!(power_congruence_check(&IntMatrix::identity(2), 3, 4).unwrap());
        assert!(matches!(power_congruence_check(&int("1,1;0,1"), 2, 1), Err(Error::NotInGamma { .. })));
        for seed in 0..50 {
            assert!(power_congruence_check(&sample_gamma(2, 25, 5, seed), 5, 2).unwrap());
        }
    }

    #[test]
    fn rf_witness_examples() {
        let w = witness_rf(&int("1,2;0,1")).unwrap();
        assert_eq!((w.prime, w.level.clone()), (3, BigUint::from(3u32)));
        assert_eq!(w.quotient_order, BigUint::from(24u32));
        let w = witness_rf(&int("0,-1;1,0")).unwrap();
        assert_eq!(w.prime, 2);
        assert_eq!(w.image.to_string(), "0,1;1,0 mod 2");
        assert_eq!(witness_rf(&IntMatrix::identity(2)).unwrap_err(), Error::IdentityInput);
        for seed in 0..100 {
            let x = sample_sl(2, 1 + seed as usize % 9, seed);
            if !x.is_identity() {
                assert!(!witness_rf(&x).unwrap().image.is_trivial());
            }
        }
    }

    #[test]
    fn p_witness_examples() {
        let w = witness_p(&int("1,2;0,1"), 2).unwrap();
        assert_eq!(w.level, BigUint::from(4u32));
        assert_eq!(w.image.to_string(), "0,1;0,0 mod 2");
        assert_eq!(w.quotient_order, BigUint::from(8u32));
        let w = witness_p(&int("1,4;0,1"), 2).unwrap();
        assert_eq!(w.level, BigUint::from(8u32));
        assert_eq!(w.image.to_string(), "0,1;0,0 mod 2");
        let w = witness_p(&int("1,9;0,1"), 3).unwrap();
        assert_eq!(w.level, BigUint::from(27u32));
        assert_eq!(w.image.to_string(), "0,1;0,0 mod 3");
        assert_eq!(
            w.quotient_order,
            gamma_index(2, 27).unwrap() / gamma_index(2, 3).unwrap()
        );
        assert!(matches!(witness_p(&int("1,3;0,1"), 2), Err(Error::NotInGamma { .. })));
        assert_eq!(witness_p(&IntMatrix::identity(2), 2).unwrap_err(), Error::IdentityInput);
    }

    #[test]
    fn witness_json_shape() {
        let w = witness_p(&int("1,2;0,1"), 2).unwrap();
        assert_eq!(
            w.to_json().to_string(),
            r#"{"image":"0,1;0,0 mod 2","kind":"residual-p-finite","level":4,"prime":2,"quotient_order":"8"}"#
        );
        let huge = int("1,340282366920938463463374607431768211456;0,1"); // 2^128
        let w = witness_p(&huge, 2).unwrap();
        assert_eq!(w.to_json()["level"], json!("680564733841876926926749214863536422912"));
        assert_eq!(w.quotient_order, BigUint::from(2u32).pow(384));
    }
}
