//! Square matrices of arbitrary-precision integers.
//!
//! Entries are stored row-major. Public accessors take 1-based `(i, j)`
//! indices, matching the usual `e_ij` notation for matrix units.

use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Coefficient bound used by [`sample_sl`].
pub const DEFAULT_ENTRY_BOUND: i64 = 5;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(n: usize, entries: Vec<BigInt>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("dimension must be at least 1".into()));
        }
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                left: n * n,
                right: entries.len(),
            });
        }
        Ok(IntMatrix { n, entries })
    }

    /// Builds a matrix from rows of machine integers; rows must form a square.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                left: n,
                right: bad.len(),
            });
        }
        let entries = rows.iter().flatten().map(|&v| BigInt::from(v)).collect();
        IntMatrix::new(n, entries)
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![BigInt::zero(); n * n];
        for k in 0..n {
            entries[k * n + k] = BigInt::one();
        }
        IntMatrix { n, entries }
    }

    /// `1_n + a·e_ij`, with 1-based indices and `i != j`.
    pub fn elementary(n: usize, i: usize, j: usize, a: BigInt) -> Result<Self> {
        let unit = MatrixUnit::new(i, j, n)?;
        if i == j {
            return Err(Error::InvalidArgument(format!(
                "elementary generator needs i != j, got ({i},{j})"
            )));
        }
        let mut m = IntMatrix::identity(n);
        m.entries[unit.offset()] = a;
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    /// Entry at 1-based position `(i, j)`. Panics when out of range.
    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        assert!(i >= 1 && i <= self.n && j >= 1 && j <= self.n, "index out of range");
        &self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub(crate) fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.n + c]
    }

    pub fn is_identity(&self) -> bool {
        self.entries.iter().enumerate().all(|(idx, v)| {
            if idx / self.n == idx % self.n {
                v.is_one()
            } else {
                v.is_zero()
            }
        })
    }

    /// Entries of `self - 1_n`, row-major.
    pub fn minus_identity(&self) -> Vec<BigInt> {
        let mut out = self.entries.clone();
        for k in 0..self.n {
            out[k * self.n + k] -= 1;
        }
        out
    }

    pub fn trace(&self) -> BigInt {
        (0..self.n).map(|k| self.at(k, k).clone()).sum()
    }

    pub fn checked_mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                let mut acc = BigInt::zero();
                for k in 0..n {
                    let a = self.at(r, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc += a * other.at(k, c);
                }
                entries.push(acc);
            }
        }
        Ok(IntMatrix { n, entries })
    }

    pub fn pow(&self, mut exp: u64) -> IntMatrix {
        let mut base = self.clone();
        let mut acc = IntMatrix::identity(self.n);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact determinant: cofactor expansion up to 4×4, fraction-free
    /// (Bareiss) elimination above.
    pub fn det(&self) -> BigInt {
        if self.n <= 4 {
            cofactor_det(&self.entries, self.n)
        } else {
            bareiss_det(&self.entries, self.n)
        }
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().is_one()
    }

    pub(crate) fn require_unimodular(&self) -> Result<()> {
        let det = self.det();
        if det.is_one() {
            Ok(())
        } else {
            Err(Error::NotUnimodular {
                det: det.to_string(),
            })
        }
    }

    /// Integer inverse of a determinant-1 matrix via the adjugate.
    pub fn inverse_sl(&self) -> Result<IntMatrix> {
        self.require_unimodular()?;
        let n = self.n;
        if n == 1 {
            return Ok(self.clone());
        }
        let mut entries = vec![BigInt::zero(); n * n];
        for r in 0..n {
            for c in 0..n {
                // adj[c][r] = (-1)^(r+c) · minor(r, c)
                let minor = self.minor(r, c).det();
                entries[c * n + r] = if (r + c) % 2 == 0 { minor } else { -minor };
            }
        }
        Ok(IntMatrix { n, entries })
    }

    fn minor(&self, skip_r: usize, skip_c: usize) -> IntMatrix {
        let n = self.n;
        let entries = (0..n)
            .filter(|&r| r != skip_r)
            .flat_map(|r| {
                (0..n)
                    .filter(move |&c| c != skip_c)
                    .map(move |c| self.at(r, c).clone())
            })
            .collect();
        IntMatrix { n: n - 1, entries }
    }

    /// Largest absolute value among the entries.
    pub fn max_abs_entry(&self) -> BigInt {
        self.entries
            .iter()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(BigInt::zero)
    }

    /// Right-multiplies in place by `1_n + a·e_ij` (0-based): column j += a·column i.
    pub(crate) fn add_col_multiple(&mut self, i: usize, j: usize, a: &BigInt) {
        for r in 0..self.n {
            let v = &self.entries[r * self.n + i] * a;
            self.entries[r * self.n + j] += v;
        }
    }
}

fn cofactor_det(m: &[BigInt], n: usize) -> BigInt {
    match n {
        0 => BigInt::one(),
        1 => m[0].clone(),
        2 => &m[0] * &m[3] - &m[1] * &m[2],
        _ => {
            let mut acc = BigInt::zero();
            for c in 0..n {
                if m[c].is_zero() {
                    continue;
                }
                let sub: Vec<BigInt> = (1..n)
                    .flat_map(|r| (0..n).filter(move |&k| k != c).map(move |k| r * n + k))
                    .map(|idx| m[idx].clone())
                    .collect();
                let term = &m[c] * cofactor_det(&sub, n - 1);
                if c % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
    }
}

fn bareiss_det(m: &[BigInt], n: usize) -> BigInt {
    let mut a = m.to_vec();
    let mut sign_negative = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k * n + k].is_zero() {
            match (k + 1..n).find(|&r| !a[r * n + k].is_zero()) {
                Some(r) => {
                    for c in 0..n {
                        a.swap(k * n + c, r * n + c);
                    }
                    sign_negative = !sign_negative;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                // exact by Sylvester's identity
                a[i * n + j] = num.div_floor(&prev);
            }
        }
        prev = a[k * n + k].clone();
    }
    let det = a[n * n - 1].clone();
    if sign_negative {
        -det
    } else {
        det
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    /// Panics on dimension mismatch; use [`mat_mul`] for the checked form.
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_mul(rhs).expect("matrix dimensions must agree")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rows(f, self.n, self.entries.iter())
    }
}

pub(crate) fn write_rows<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    n: usize,
    entries: impl Iterator<Item = T>,
) -> fmt::Result {
    for (idx, v) in entries.enumerate() {
        if idx > 0 {
            f.write_str(if idx % n == 0 { ";" } else { "," })?;
        }
        write!(f, "{v}")?;
    }
    Ok(())
}

/// Parses `"a,b;c,d"` into a dimension and row-major entries.
pub(crate) fn parse_rows(text: &str) -> Result<(usize, Vec<BigInt>)> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::parse("matrix", text));
    }
    let rows: Vec<&str> = compact.split(';').collect();
    let n = rows.len();
    let mut entries = Vec::with_capacity(n * n);
    for row in rows {
        let cells: Vec<&str> = row.split(',').collect();
        if cells.len() != n {
            return Err(Error::parse("matrix (not square)", text));
        }
        for cell in cells {
            let v = cell
                .parse::<BigInt>()
                .map_err(|_| Error::parse("matrix entry", text))?;
            entries.push(v);
        }
    }
    Ok((n, entries))
}

impl FromStr for IntMatrix {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (n, entries) = parse_rows(s)?;
        IntMatrix::new(n, entries)
    }
}

/// The matrix unit `e_ij` of an `n×n` matrix ring.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct MatrixUnit {
    i: usize,
    j: usize,
    n: usize,
}

impl MatrixUnit {
    pub fn new(i: usize, j: usize, n: usize) -> Result<Self> {
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::InvalidArgument(format!(
                "matrix unit ({i},{j}) out of range for dimension {n}"
            )));
        }
        Ok(MatrixUnit { i, j, n })
    }

    pub fn row(&self) -> usize {
        self.i
    }

    pub fn col(&self) -> usize {
        self.j
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn offset(&self) -> usize {
        (self.i - 1) * self.n + (self.j - 1)
    }

    pub fn to_matrix(&self) -> IntMatrix {
        let mut entries = vec![BigInt::zero(); self.n * self.n];
        entries[self.offset()] = BigInt::one();
        IntMatrix { n: self.n, entries }
    }
}

/// Exact product; errors on dimension mismatch.
pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> Result<IntMatrix> {
    a.checked_mul(b)
}

pub fn mat_det(a: &IntMatrix) -> BigInt {
    a.det()
}

pub fn mat_inv_sl(a: &IntMatrix) -> Result<IntMatrix> {
    a.inverse_sl()
}

/// Product of `length` random elementary matrices `1 + a·e_ij` with
/// `1 <= |a| <= DEFAULT_ENTRY_BOUND`; deterministic per seed.
pub fn sample_sl(n: usize, length: usize, seed: u64) -> IntMatrix {
    sample_sl_with_bound(n, length, seed, DEFAULT_ENTRY_BOUND)
}

pub fn sample_sl_with_bound(n: usize, length: usize, seed: u64, bound: i64) -> IntMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_sl_from(&mut rng, n, length, bound)
}

pub(crate) fn sample_sl_from<R: Rng>(rng: &mut R, n: usize, length: usize, bound: i64) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    if n < 2 || bound < 1 {
        return m;
    }
    for _ in 0..length {
        let (i, j) = random_off_diagonal(rng, n);
        let a = random_nonzero(rng, bound);
        m.add_col_multiple(i, j, &BigInt::from(a));
    }
    m
}

pub(crate) fn random_off_diagonal<R: Rng>(rng: &mut R, n: usize) -> (usize, usize) {
    let i = rng.gen_range(0..n);
    let mut j = rng.gen_range(0..n - 1);
    if j >= i {
        j += 1;
    }
    (i, j)
}

pub(crate) fn random_nonzero<R: Rng>(rng: &mut R, bound: i64) -> i64 {
    let a = rng.gen_range(1..=bound);
    if rng.gen_bool(0.5) {
        -a
    } else {
        a
    }
}
