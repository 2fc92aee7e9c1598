//! Principal congruence subgroups `Γ(N) = {X ∈ SL_n(Z) : X ≡ 1 mod N}`.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::{random_nonzero, random_off_diagonal, sample_sl_from, IntMatrix, DEFAULT_ENTRY_BOUND};
use crate::modular::{is_prime, sl_order_formula};

/// The largest `N` with `X ∈ Γ(N)`. Zero stands for the identity, which
/// lies in every `Γ(N)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Level(BigUint);

impl Level {
    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn is_infinite(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("infinite")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// True iff `N` divides every entry of `X - 1`.
pub fn gamma_member(x: &IntMatrix, level: impl Into<BigInt>) -> Result<bool> {
    let level = level.into();
    if level.sign() != Sign::Plus {
        return Err(Error::BadModulus(level.to_string()));
    }
    x.require_unimodular()?;
    Ok(congruent_to_identity(x, &level))
}

pub(crate) fn congruent_to_identity(x: &IntMatrix, level: &BigInt) -> bool {
    x.minus_identity().iter().all(|v| v.is_multiple_of(level))
}

pub fn gamma_level(x: &IntMatrix) -> Result<Level> {
    x.require_unimodular()?;
    Ok(Level(entry_gcd(x)))
}

/// Nonnegative gcd of the entries of `X - 1`.
pub(crate) fn entry_gcd(x: &IntMatrix) -> BigUint {
    x.minus_identity()
        .iter()
        .fold(BigInt::zero(), |g, v| g.gcd(v))
        .magnitude()
        .clone()
}

/// `[Γ(1) : Γ(N)] = |SL_n(Z/N)|`.
pub fn gamma_index(n: usize, level: u64) -> Result<BigUint> {
    sl_order_formula(n, level)
}

/// `|Γ(p^k)/Γ(p^(k+1))| = p^(n²-1)` for `k >= 1`.
pub fn successive_quotient_order(n: usize, p: u64, k: u32) -> Result<BigUint> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    Ok(BigUint::from(p).pow((n * n - 1) as u32))
}

/// `(1+L, L; -L, 1-L)` on the diagonal slots `(i, i+1)`, identity elsewhere.
/// It lies in `Γ(L)` and has determinant 1.
pub fn diagonal_block(n: usize, i: usize, level: &BigInt) -> IntMatrix {
    assert!(i + 1 < n, "block needs slots i and i+1");
    let mut entries = IntMatrix::identity(n).entries().to_vec();
    entries[i * n + i] = BigInt::one() + level;
    entries[i * n + i + 1] = level.clone();
    entries[(i + 1) * n + i] = -level;
    entries[(i + 1) * n + i + 1] = BigInt::one() - level;
    IntMatrix::new(n, entries).expect("dimension is consistent")
}

/// A random element of `Γ(level)`: a product of `length` generators
/// `1 + level·a·e_ij` and diagonal blocks, conjugated by a random element of
/// `SL_n(Z)`. Deterministic per seed.
pub fn sample_gamma(n: usize, level: u64, length: usize, seed: u64) -> IntMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_gamma_from(&mut rng, n, &BigInt::from(level), length)
}

pub(crate) fn sample_gamma_from<R: Rng>(rng: &mut R, n: usize, level: &BigInt, length: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    if n < 2 {
        return m;
    }
    for _ in 0..length {
        if rng.gen_ratio(1, 4) {
            let i = rng.gen_range(0..n - 1);
            let block = diagonal_block(n, i, level);
            let block = if rng.gen_bool(0.5) {
                block.inverse_sl().expect("block has determinant 1")
            } else {
                block
            };
            m = &m * &block;
        } else {
            let (i, j) = random_off_diagonal(rng, n);
            let a = BigInt::from(random_nonzero(rng, DEFAULT_ENTRY_BOUND)) * level;
            m.add_col_multiple(i, j, &a);
        }
    }
    let g = sample_sl_from(rng, n, 4, 2);
    let g_inv = g.inverse_sl().expect("sampled matrices have determinant 1");
    &(&g * &m) * &g_inv
}
