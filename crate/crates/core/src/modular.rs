//! Arithmetic in `Z/N`: factorized moduli, matrices over `Z/N`, and the
//! brute-force enumeration of `SL_n(Z/N)` used as a counting oracle.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::{parse_rows, write_rows, IntMatrix};

/// Default bound on `N^(n²)` for exhaustive enumeration.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

/// A modulus `N >= 2` together with its prime factorization.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Modulus {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl Modulus {
    pub fn new(value: u64) -> Result<Self> {
        crt_split(value)
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    /// `(p, s)` pairs with strictly increasing primes.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn is_prime(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }

    pub fn prime_power(&self) -> Option<(u64, u32)> {
        match self.factors.as_slice() {
            [single] => Some(*single),
            _ => None,
        }
    }

    /// The local factors `p^s` of the CRT decomposition.
    pub fn local_moduli(&self) -> Vec<Modulus> {
        self.factors
            .iter()
            .map(|&(p, s)| Modulus {
                value: p.pow(s),
                factors: vec![(p, s)],
            })
            .collect()
    }

    pub fn reduce(&self, v: &BigInt) -> u64 {
        v.mod_floor(&BigInt::from(self.value))
            .to_u64()
            .expect("residue fits in u64")
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.value as u128) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.value as u128) as u64
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.value - a
        }
    }

    pub fn inverse(&self, a: u64) -> Option<u64> {
        mod_inverse(a, self.value)
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Prime factorization of `n` by trial division.
pub fn crt_split(n: u64) -> Result<Modulus> {
    if n < 2 {
        return Err(Error::BadModulus(n.to_string()));
    }
    let mut factors = Vec::new();
    let mut rest = n;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        if rest.is_multiple_of(p) {
            let mut s = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                s += 1;
            }
            factors.push((p, s));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(Modulus { value: n, factors })
}

pub fn is_prime(n: u64) -> bool {
    crt_split(n).map(|m| m.is_prime()).unwrap_or(false)
}

pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128 % m as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

/// Unique `x` in `[0, ∏m)` with `x ≡ r_i (mod m_i)`, for pairwise coprime `m_i`.
pub fn crt_combine(residues: &[(u64, u64)]) -> u64 {
    let total: u128 = residues.iter().map(|&(_, m)| m as u128).product();
    let mut x: u128 = 0;
    for &(r, m) in residues {
        let rest = total / m as u128;
        let inv = mod_inverse((rest % m as u128) as u64, m).expect("moduli are coprime") as u128;
        x = (x + (r as u128 % m as u128) * inv % m as u128 * rest) % total;
    }
    x as u64
}

/// Square matrix over `Z/N`, entries kept in `[0, N)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ModMatrix {
    n: usize,
    modulus: Modulus,
    entries: Vec<u64>,
}

impl ModMatrix {
    pub fn new(n: usize, modulus: Modulus, entries: Vec<u64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("dimension must be at least 1".into()));
        }
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                left: n * n,
                right: entries.len(),
            });
        }
        if let Some(v) = entries.iter().find(|&&v| v >= modulus.value) {
            return Err(Error::InvalidArgument(format!(
                "entry {v} is not reduced mod {}",
                modulus.value
            )));
        }
        Ok(ModMatrix {
            n,
            modulus,
            entries,
        })
    }

    pub fn identity(n: usize, modulus: Modulus) -> Self {
        let mut entries = vec![0; n * n];
        for k in 0..n {
            entries[k * n + k] = 1;
        }
        ModMatrix {
            n,
            modulus,
            entries,
        }
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

    /// Entry at 1-based position `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> u64 {
        assert!(i >= 1 && i <= self.n && j >= 1 && j <= self.n, "index out of range");
        self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub(crate) fn at(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.n + c]
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(idx, &v)| {
            v == u64::from(idx / self.n == idx % self.n)
        })
    }

    pub fn checked_mul(&self, other: &ModMatrix) -> Result<ModMatrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        if self.modulus.value != other.modulus.value {
            return Err(Error::BadModulus(format!(
                "{} vs {}",
                self.modulus.value, other.modulus.value
            )));
        }
        let n = self.n;
        let m = self.modulus.value as u128;
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                let mut acc: u128 = 0;
                for k in 0..n {
                    acc = (acc + self.at(r, k) as u128 * other.at(k, c) as u128) % m;
                }
                entries.push(acc as u64);
            }
        }
        Ok(ModMatrix {
            n,
            modulus: self.modulus.clone(),
            entries,
        })
    }

    /// Representative integer matrix with entries in `[0, N)`.
    pub fn to_int(&self) -> IntMatrix {
        IntMatrix::new(self.n, self.entries.iter().map(|&v| BigInt::from(v)).collect())
            .expect("dimension is consistent")
    }

    pub fn det(&self) -> u64 {
        self.modulus.reduce(&self.to_int().det())
    }

    /// Multiplicative order in `GL_n(Z/N)` by repeated multiplication.
    pub fn order(&self) -> u64 {
        let mut power = self.clone();
        let mut k = 1;
        while !power.is_identity() {
            power = &power * self;
            k += 1;
        }
        k
    }

    /// Right-multiplies in place by `1_n + a·e_ij` (0-based): column j += a·column i.
    pub(crate) fn add_col_multiple(&mut self, i: usize, j: usize, a: u64) {
        for r in 0..self.n {
            let v = self.modulus.mul(self.entries[r * self.n + i], a);
            let idx = r * self.n + j;
            self.entries[idx] = self.modulus.add(self.entries[idx], v);
        }
    }

    pub(crate) fn require_unimodular(&self) -> Result<()> {
        let det = self.det();
        if det == 1 % self.modulus.value {
            Ok(())
        } else {
            Err(Error::NotUnimodular {
                det: format!("{det} mod {}", self.modulus.value),
            })
        }
    }
}

impl Mul for &ModMatrix {
    type Output = ModMatrix;

    fn mul(self, rhs: &ModMatrix) -> ModMatrix {
        self.checked_mul(rhs).expect("matrix shapes and moduli must agree")
    }
}

impl fmt::Display for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rows(f, self.n, self.entries.iter())?;
        write!(f, " mod {}", self.modulus.value)
    }
}

/// Splits `"<rows> mod N"` into the row text and the modulus.
pub(crate) fn split_mod_suffix(s: &str) -> Result<(&str, Modulus)> {
    let (rows, modulus) = s
        .rsplit_once("mod")
        .ok_or_else(|| Error::parse("modular matrix (missing 'mod N')", s))?;
    let value: u64 = modulus
        .trim()
        .parse()
        .map_err(|_| Error::parse("modulus", s))?;
    Ok((rows, Modulus::new(value)?))
}

impl FromStr for ModMatrix {
    type Err = Error;

    /// Entries are reduced into `[0, N)` on parse.
    fn from_str(s: &str) -> Result<Self> {
        let (rows, modulus) = split_mod_suffix(s)?;
        let (n, entries) = parse_rows(rows)?;
        Ok(mod_reduce(&IntMatrix::new(n, entries)?, &modulus))
    }
}

/// Entrywise reduction `SL_n(Z) -> SL_n(Z/N)`.
pub fn mod_reduce(x: &IntMatrix, modulus: &Modulus) -> ModMatrix {
    ModMatrix {
        n: x.dim(),
        modulus: modulus.clone(),
        entries: x.entries().iter().map(|v| modulus.reduce(v)).collect(),
    }
}

pub fn enumerate_sl(n: usize, modulus: u64) -> Result<Vec<ModMatrix>> {
    enumerate_sl_with_cap(n, modulus, DEFAULT_ENUMERATION_CAP)
}

/// Every matrix over `Z/N` with determinant 1, in lexicographic order of
/// the row-major entry tuple. Requires `N^(n²) <= cap`.
pub fn enumerate_sl_with_cap(n: usize, modulus: u64, cap: u64) -> Result<Vec<ModMatrix>> {
    if n == 0 {
        return Err(Error::InvalidArgument("dimension must be at least 1".into()));
    }
    let modulus = Modulus::new(modulus)?;
    let total = search_space(n, modulus.value, cap)?;
    let m = modulus.value;
    let cells = n * n;
    let found: Vec<Vec<u64>> = (0..total)
        .into_par_iter()
        .filter_map(|index| {
            let mut digits = vec![0u64; cells];
            let mut rest = index;
            for slot in digits.iter_mut().rev() {
                *slot = rest % m;
                rest /= m;
            }
            (small_det_mod(&digits, n, m) == 1).then_some(digits)
        })
        .collect();
    Ok(found
        .into_iter()
        .map(|entries| ModMatrix {
            n,
            modulus: modulus.clone(),
            entries,
        })
        .collect())
}

/// `N^(n²)` if it is within `cap`.
pub(crate) fn search_space(n: usize, modulus: u64, cap: u64) -> Result<u64> {
    let required = BigUint::from(modulus).pow((n * n) as u32);
    match required.to_u64() {
        Some(total) if total <= cap => Ok(total),
        _ => Err(Error::CapExceeded {
            required: required.to_string(),
            cap,
        }),
    }
}

fn small_det_mod(entries: &[u64], n: usize, m: u64) -> u64 {
    match n {
        1 => entries[0] % m,
        2 => {
            let v = entries[0] as i128 * entries[3] as i128 - entries[1] as i128 * entries[2] as i128;
            v.rem_euclid(m as i128) as u64
        }
        _ => {
            let mut acc: i128 = 0;
            let mut sub = Vec::with_capacity((n - 1) * (n - 1));
            for c in 0..n {
                if entries[c] == 0 {
                    continue;
                }
                sub.clear();
                for r in 1..n {
                    for k in (0..n).filter(|&k| k != c) {
                        sub.push(entries[r * n + k]);
                    }
                }
                let term = entries[c] as i128 * small_det_mod(&sub, n - 1, m) as i128;
                acc += if c % 2 == 0 { term } else { -term };
                acc = acc.rem_euclid(m as i128);
            }
            acc as u64
        }
    }
}

/// `|SL_n(Z/p)| = (1/(p-1)) · ∏_{i<n} (p^n - p^i)`.
fn sl_order_prime(n: usize, p: u64) -> BigUint {
    let p = BigUint::from(p);
    let pn = p.pow(n as u32);
    let gl: BigUint = (0..n).map(|i| &pn - p.pow(i as u32)).product();
    let (q, r) = gl.div_rem(&(&p - 1u32));
    debug_assert!(r.is_zero());
    q
}

/// `|SL_n(Z/N)|`, assembled over the prime-power factors of `N` as
/// `p^((s-1)(n²-1)) · |SL_n(Z/p)|`. `N = 1` gives 1.
pub fn sl_order_formula(n: usize, modulus: u64) -> Result<BigUint> {
    if modulus == 0 {
        return Err(Error::BadModulus("0".into()));
    }
    if modulus == 1 {
        return Ok(BigUint::one());
    }
    let modulus = Modulus::new(modulus)?;
    Ok(modulus
        .factors()
        .iter()
        .map(|&(p, s)| sl_order_prime_power(n, p, s))
        .product())
}

/// `|SL_n(Z/p^s)| = p^((s-1)(n²-1)) · |SL_n(Z/p)|` for prime `p` and `s >= 1`.
pub fn sl_order_prime_power(n: usize, p: u64, s: u32) -> BigUint {
    assert!(s >= 1, "exponent must be positive");
    BigUint::from(p).pow((s - 1) * (n * n - 1) as u32) * sl_order_prime(n, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorizations() {
        assert_eq!(crt_split(12).unwrap().factors(), &[(2, 2), (3, 1)]);
        assert_eq!(crt_split(7).unwrap().factors(), &[(7, 1)]);
        assert_eq!(crt_split(360).unwrap().factors(), &[(2, 3), (3, 2), (5, 1)]);
        assert_eq!(crt_split(1).unwrap_err(), Error::BadModulus("1".into()));
        assert!(crt_split(0).is_err());
        assert!(crt_split(9).unwrap().prime_power() == Some((3, 2)));
        assert!(crt_split(6).unwrap().prime_power().is_none());
    }

    #[test]
    fn factorization_product_invariant() {
        for n in 2..2000u64 {
            let m = crt_split(n).unwrap();
            let prod: u64 = m.factors().iter().map(|&(p, s)| p.pow(s)).product();
            assert_eq!(prod, n);
            assert!(m.factors().windows(2).all(|w| w[0].0 < w[1].0));
            assert!(m.factors().iter().all(|&(p, s)| s >= 1 && is_prime(p)));
        }
    }

    #[test]
    fn reduction() {
        let x: IntMatrix = "2,1;1,1".parse().unwrap();
        let y = mod_reduce(&x, &Modulus::new(2).unwrap());
        assert_eq!(y.to_string(), "0,1;1,1 mod 2");
        let neg: IntMatrix = "-1,-7;0,-1".parse().unwrap();
        assert_eq!(mod_reduce(&neg, &Modulus::new(5).unwrap()).entries(), &[4, 3, 0, 4]);
        assert!(mod_reduce(&IntMatrix::identity(3), &Modulus::new(9).unwrap()).is_identity());
    }

    #[test]
    fn text_round_trip() {
        let y: ModMatrix = "0,1;-1,0 mod 4".parse().unwrap();
        assert_eq!(y.to_string(), "0,1;3,0 mod 4");
        assert_eq!(y.to_string().parse::<ModMatrix>().unwrap(), y);
        assert!("0,1;1,0".parse::<ModMatrix>().is_err());
        assert!("0,1;1,0 mod 1".parse::<ModMatrix>().is_err());
    }

    #[test]
    fn crt_recombination() {
        assert_eq!(crt_combine(&[(1, 4), (2, 3)]), 5);
        assert_eq!(crt_combine(&[(0, 8), (0, 9), (3, 5)]), 288);
        assert_eq!(mod_inverse(3, 7), Some(5));
        assert_eq!(mod_inverse(2, 4), None);
    }

    #[test]
    fn small_enumerations() {
        assert_eq!(enumerate_sl(2, 2).unwrap().len(), 6);
        assert_eq!(enumerate_sl(3, 2).unwrap().len(), 168);
        let trivial = enumerate_sl(1, 7).unwrap();
        assert_eq!(trivial.len(), 1);
        assert!(trivial[0].is_identity());
    }

    #[test]
    fn enumeration_is_sorted_and_unimodular() {
        let all = enumerate_sl(2, 5).unwrap();
        assert!(all.windows(2).all(|w| w[0].entries() < w[1].entries()));
        assert!(all.iter().all(|y| y.det() == 1));
    }

    #[test]
    fn enumeration_cap() {
        let err = enumerate_sl_with_cap(3, 5, 1000).unwrap_err();
        assert_eq!(
            err,
            Error::CapExceeded {
                required: "1953125".into(),
                cap: 1000
            }
        );
        assert!(enumerate_sl(5, 13).is_err());
    }

    #[test]
    fn order_formula_values() {
        assert_eq!(sl_order_formula(2, 2).unwrap(), BigUint::from(6u32));
        assert_eq!(sl_order_formula(2, 3).unwrap(), BigUint::from(24u32));
        assert_eq!(sl_order_formula(3, 2).unwrap(), BigUint::from(168u32));
        assert_eq!(sl_order_formula(4, 1).unwrap(), BigUint::one());
        assert_eq!(sl_order_formula(1, 30).unwrap(), BigUint::one());
    }

    #[test]
    fn order_formula_is_multiplicative() {
        for n in 1..=4 {
            for big_n in 2..200u64 {
                let split = crt_split(big_n).unwrap();
                let product: BigUint = split
                    .local_moduli()
                    .iter()
                    .map(|q| sl_order_formula(n, q.value()).unwrap())
                    .product();
                assert_eq!(sl_order_formula(n, big_n).unwrap(), product);
            }
        }
    }

    #[test]
    fn prime_power_lift_by_enumeration() {
        for (n, p, k) in [(2usize, 2u64, 2u32), (2, 2, 3), (2, 3, 2)] {
            let top = enumerate_sl(n, p.pow(k)).unwrap().len() as u64;
            let base = enumerate_sl(n, p).unwrap().len() as u64;
            assert_eq!(top, p.pow((k - 1) * (n * n - 1) as u32) * base);
        }
    }
}
