//! Elementary generators `1 + a·e_ij`, words in them, and the reduction
//! algorithms that certify elementary generation of `SL_n` over `Z`, over
//! the local rings `Z/p^k`, and over `Z/N` by CRT recombination.
//!
//! Both reductions bring the input to the identity with row and column
//! operations. Every operation is recorded as an elementary matrix, so if
//! `L_a ⋯ L_1 · X · R_1 ⋯ R_b = 1` then
//! `X = L_1⁻¹ ⋯ L_a⁻¹ · R_b⁻¹ ⋯ R_1⁻¹`, which is the emitted word.
//! Column swaps are signed swaps `E_ij(1)·E_ji(-1)·E_ij(1)`, and the final
//! diagonal of units is folded into the last slot pairwise along adjacent
//! slots `(1,2), (2,3), …`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::modular::{crt_combine, mod_reduce, ModMatrix, Modulus};

/// The ring a word is evaluated in.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Ring {
    Integers,
    Modular(Modulus),
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => f.write_str("Z"),
            Ring::Modular(m) => write!(f, "Z/{m}"),
        }
    }
}

/// `1_n + a·e_ij` with 1-based `i != j`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ElementaryGen {
    pub i: usize,
    pub j: usize,
    pub a: BigInt,
}

impl ElementaryGen {
    pub fn new(i: usize, j: usize, a: impl Into<BigInt>) -> Self {
        ElementaryGen { i, j, a: a.into() }
    }

    pub fn inverse(&self) -> Self {
        ElementaryGen::new(self.i, self.j, -&self.a)
    }

    pub fn to_matrix(&self, n: usize) -> Result<IntMatrix> {
        IntMatrix::elementary(n, self.i, self.j, self.a.clone())
    }
}

impl fmt::Display for ElementaryGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E({},{},{})", self.i, self.j, self.a)
    }
}

/// Column swap with a sign, `E_ij(1)·E_ji(-1)·E_ij(1)`: column `j` receives
/// column `i`, column `i` receives minus column `j`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct SignedSwap {
    pub i: usize,
    pub j: usize,
}

impl SignedSwap {
    pub fn as_gens(&self) -> [ElementaryGen; 3] {
        [
            ElementaryGen::new(self.i, self.j, 1),
            ElementaryGen::new(self.j, self.i, -1),
            ElementaryGen::new(self.i, self.j, 1),
        ]
    }
}

/// A product of elementary generators, evaluated left to right. The
/// optional swap prefix is applied first; the decomposition routines
/// always emit it empty.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ElementaryWord {
    n: usize,
    ring: Ring,
    gens: Vec<ElementaryGen>,
    permutation_prefix: Vec<SignedSwap>,
}

/// Result of evaluating a word in its ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum WordValue {
    Integer(IntMatrix),
    Modular(ModMatrix),
}

impl ElementaryWord {
    pub fn new(n: usize, ring: Ring, gens: Vec<ElementaryGen>) -> Result<Self> {
        Self::with_prefix(n, ring, Vec::new(), gens)
    }

    pub fn with_prefix(
        n: usize,
        ring: Ring,
        permutation_prefix: Vec<SignedSwap>,
        gens: Vec<ElementaryGen>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("dimension must be at least 1".into()));
        }
        let pairs = gens
            .iter()
            .map(|g| (g.i, g.j))
            .chain(permutation_prefix.iter().map(|s| (s.i, s.j)));
        for (i, j) in pairs {
            if i == j || i == 0 || j == 0 || i > n || j > n {
                return Err(Error::InvalidArgument(format!(
                    "generator ({i},{j}) is not off-diagonal in dimension {n}"
                )));
            }
        }
        Ok(ElementaryWord {
            n,
            ring,
            gens,
            permutation_prefix,
        })
    }

    pub fn empty(n: usize, ring: Ring) -> Self {
        ElementaryWord {
            n,
            ring,
            gens: Vec::new(),
            permutation_prefix: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[ElementaryGen] {
        &self.gens
    }

    pub fn permutation_prefix(&self) -> &[SignedSwap] {
        &self.permutation_prefix
    }

    pub fn len(&self) -> usize {
        self.gens.len() + 3 * self.permutation_prefix.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Concatenation; both words must share dimension and ring.
    pub fn concat(&self, other: &ElementaryWord) -> Result<ElementaryWord> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        if self.ring != other.ring {
            return Err(Error::InvalidArgument(format!(
                "cannot concatenate words over {} and {}",
                self.ring, other.ring
            )));
        }
        let mut gens = self.expanded();
        gens.extend(other.expanded());
        ElementaryWord::new(self.n, self.ring.clone(), gens)
    }

    /// All generators with the swap prefix spelled out.
    pub fn expanded(&self) -> Vec<ElementaryGen> {
        self.permutation_prefix
            .iter()
            .flat_map(|s| s.as_gens())
            .chain(self.gens.iter().cloned())
            .collect()
    }

    /// Product over `Z`, ignoring the ring tag.
    pub fn eval_over_integers(&self) -> IntMatrix {
        let mut m = IntMatrix::identity(self.n);
        for g in self.expanded() {
            m.add_col_multiple(g.i - 1, g.j - 1, &g.a);
        }
        m
    }

    /// Product over `Z/N`.
    pub fn eval_mod(&self, modulus: &Modulus) -> ModMatrix {
        let mut m = ModMatrix::identity(self.n, modulus.clone());
        for g in self.expanded() {
            m.add_col_multiple(g.i - 1, g.j - 1, modulus.reduce(&g.a));
        }
        m
    }

    pub fn evaluate(&self) -> WordValue {
        match &self.ring {
            Ring::Integers => WordValue::Integer(self.eval_over_integers()),
            Ring::Modular(m) => WordValue::Modular(self.eval_mod(m)),
        }
    }

    /// Parses `"E(1,2,5);E(2,1,-1) | Z/6"`; the dimension is not part of
    /// the text and must be supplied.
    pub fn parse(text: &str, n: usize) -> Result<ElementaryWord> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let (body, tag) = compact
            .rsplit_once('|')
            .ok_or_else(|| Error::parse("word (missing ring tag)", text))?;
        let ring = match tag {
            "Z" => Ring::Integers,
            _ => {
                let value = tag
                    .strip_prefix("Z/")
                    .and_then(|v| v.parse::<u64>().ok())
                    .ok_or_else(|| Error::parse("ring tag", text))?;
                Ring::Modular(Modulus::new(value)?)
            }
        };
        let mut gens = Vec::new();
        for item in body.split(';').filter(|s| !s.is_empty()) {
            let inner = item
                .strip_prefix("E(")
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| Error::parse("generator", text))?;
            let parts: Vec<&str> = inner.split(',').collect();
            let [i, j, a] = parts.as_slice() else {
                return Err(Error::parse("generator", text));
            };
            let bad = || Error::parse("generator", text);
            gens.push(ElementaryGen::new(
                i.parse::<usize>().map_err(|_| bad())?,
                j.parse::<usize>().map_err(|_| bad())?,
                a.parse::<BigInt>().map_err(|_| bad())?,
            ));
        }
        ElementaryWord::new(n, ring, gens)
    }
}

impl fmt::Display for ElementaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens = self.expanded();
        for (k, g) in gens.iter().enumerate() {
            if k > 0 {
                f.write_str(";")?;
            }
            write!(f, "{g}")?;
        }
        if !gens.is_empty() {
            f.write_str(" ")?;
        }
        write!(f, "| {}", self.ring)
    }
}

pub fn eval_word(w: &ElementaryWord) -> WordValue {
    w.evaluate()
}

/// Scalar arithmetic needed by the reduction engine.
trait Scalars {
    type E: Clone + PartialEq;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn unit_inverse(&self, a: &Self::E) -> Option<Self::E>;
    fn coefficient(&self, a: &Self::E) -> BigInt;

    fn is_zero(&self, a: &Self::E) -> bool {
        *a == self.zero()
    }
}

struct Integers;

impl Scalars for Integers {
    type E = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn unit_inverse(&self, a: &BigInt) -> Option<BigInt> {
        (a.abs().is_one()).then(|| a.clone())
    }
    fn coefficient(&self, a: &BigInt) -> BigInt {
        a.clone()
    }
}

struct Residues(Modulus);

impl Scalars for Residues {
    type E = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        self.0.add(*a, *b)
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.0.mul(*a, *b)
    }
    fn neg(&self, a: &u64) -> u64 {
        self.0.neg(*a)
    }
    fn unit_inverse(&self, a: &u64) -> Option<u64> {
        self.0.inverse(*a)
    }
    fn coefficient(&self, a: &u64) -> BigInt {
        BigInt::from(*a)
    }
}

/// Working matrix plus the recorded row (left) and column (right) operations.
struct Reduction<S: Scalars> {
    s: S,
    n: usize,
    m: Vec<S::E>,
    left: Vec<(usize, usize, S::E)>,
    right: Vec<(usize, usize, S::E)>,
}

impl<S: Scalars> Reduction<S> {
    fn new(s: S, n: usize, m: Vec<S::E>) -> Self {
        Reduction {
            s,
            n,
            m,
            left: Vec::new(),
            right: Vec::new(),
        }
    }

    fn at(&self, r: usize, c: usize) -> &S::E {
        &self.m[r * self.n + c]
    }

    /// Left multiplication by `E_ij(a)`: row i += a·row j.
    fn row_add(&mut self, i: usize, j: usize, a: S::E) {
        if self.s.is_zero(&a) {
            return;
        }
        for c in 0..self.n {
            let v = self.s.mul(&a, self.at(j, c));
            let idx = i * self.n + c;
            self.m[idx] = self.s.add(&self.m[idx], &v);
        }
        self.left.push((i, j, a));
    }

    /// Right multiplication by `E_ij(a)`: column j += a·column i.
    fn col_add(&mut self, i: usize, j: usize, a: S::E) {
        if self.s.is_zero(&a) {
            return;
        }
        for r in 0..self.n {
            let v = self.s.mul(&a, self.at(r, i));
            let idx = r * self.n + j;
            self.m[idx] = self.s.add(&self.m[idx], &v);
        }
        self.right.push((i, j, a));
    }

    /// Moves column `from` to column `to` (the displaced column is negated).
    fn signed_col_swap(&mut self, from: usize, to: usize) {
        let one = self.s.one();
        let minus_one = self.s.neg(&one);
        self.col_add(from, to, one.clone());
        self.col_add(to, from, minus_one);
        self.col_add(from, to, one);
    }

    /// With a unit at `(k, k)`, clears the rest of row k and column k.
    fn clear_cross(&mut self, k: usize) {
        let inv = self
            .s
            .unit_inverse(self.at(k, k))
            .expect("pivot is a unit");
        for c in k + 1..self.n {
            let q = self.s.neg(&self.s.mul(self.at(k, c), &inv));
            self.col_add(k, c, q);
        }
        for r in k + 1..self.n {
            let q = self.s.neg(&self.s.mul(self.at(r, k), &inv));
            self.row_add(r, k, q);
        }
    }

    /// Turns a diagonal of units with product 1 into the identity:
    /// `diag(a, b) → (a a; 0 b) → (1 a; (a⁻¹-1)b b) → (1 a; 0 ab) → diag(1, ab)`.
    fn diagonal_cleanup(&mut self) {
        for k in 0..self.n.saturating_sub(1) {
            let a = self.at(k, k).clone();
            if a == self.s.one() {
                continue;
            }
            let b = self.at(k + 1, k + 1).clone();
            let inv = self.s.unit_inverse(&a).expect("diagonal entry is a unit");
            let t = self.s.add(&inv, &self.s.neg(&self.s.one()));
            self.col_add(k, k + 1, self.s.one());
            self.col_add(k + 1, k, t.clone());
            self.row_add(k + 1, k, self.s.neg(&self.s.mul(&t, &b)));
            self.col_add(k, k + 1, self.s.neg(&a));
        }
    }

    fn is_identity(&self) -> bool {
        (0..self.n).all(|r| {
            (0..self.n).all(|c| {
                let expected = if r == c { self.s.one() } else { self.s.zero() };
                *self.at(r, c) == expected
            })
        })
    }

    fn into_word(self, ring: Ring) -> ElementaryWord {
        debug_assert!(self.is_identity());
        let s = &self.s;
        let gen = |(i, j, a): &(usize, usize, S::E)| {
            ElementaryGen::new(i + 1, j + 1, s.coefficient(&s.neg(a)))
        };
        let gens = self
            .left
            .iter()
            .map(gen)
            .chain(self.right.iter().rev().map(gen))
            .collect();
        ElementaryWord::new(self.n, ring, gens).expect("indices are in range")
    }
}

/// A decomposition with the length bound the reduction guarantees for it.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub word: ElementaryWord,
    pub length_bound: usize,
}

/// Nearest-integer quotient: `|e - q·p| <= |p|/2`.
fn nearest_quotient(e: &BigInt, p: &BigInt) -> BigInt {
    let (q, r) = e.div_mod_floor(p);
    if (&r * 2u32).abs() > p.abs() {
        q + 1
    } else {
        q
    }
}

/// Euclidean reduction over `Z`. The word length is at most
/// `Σ_k [(n-k-1)·(bits(m_k) + 1) + 3] + 4(n-1)` where `m_k` is the smallest
/// nonzero magnitude in row k when its pivot step starts: each round of
/// nearest-quotient column reductions at least halves that minimum.
pub fn decompose_int_with_bound(x: &IntMatrix) -> Result<Decomposition> {
    x.require_unimodular()?;
    let n = x.dim();
    let mut red = Reduction::new(Integers, n, x.entries().to_vec());
    let mut bound = 4 * n.saturating_sub(1);
    for k in 0..n {
        let nonzero = |red: &Reduction<Integers>| -> Vec<usize> {
            (k..n).filter(|&c| !red.at(k, c).is_zero()).collect()
        };
        let smallest = nonzero(&red)
            .into_iter()
            .map(|c| red.at(k, c).abs())
            .min()
            .expect("a determinant-1 matrix has no zero row");
        bound += (n - k - 1) * (smallest.bits() as usize + 1) + 3;
        loop {
            let cols = nonzero(&red);
            if cols.len() == 1 {
                break;
            }
            // smallest magnitude, ties to the leftmost column
            let pivot = *cols
                .iter()
                .min_by_key(|&&c| (red.at(k, c).abs(), c))
                .expect("non-empty");
            let p = red.at(k, pivot).clone();
            for c in cols.into_iter().filter(|&c| c != pivot) {
                let q = nearest_quotient(red.at(k, c), &p);
                red.col_add(pivot, c, -q);
            }
        }
        let col = nonzero(&red)[0];
        if col != k {
            red.signed_col_swap(col, k);
        }
        red.clear_cross(k);
    }
    red.diagonal_cleanup();
    Ok(Decomposition {
        word: red.into_word(Ring::Integers),
        length_bound: bound,
    })
}

/// Elementary word over `Z` whose product is exactly `x`.
pub fn decompose_int(x: &IntMatrix) -> Result<ElementaryWord> {
    decompose_int_with_bound(x).map(|d| d.word)
}

/// Upper bound on the length of [`decompose_local`] output in dimension `n`.
pub fn local_length_bound(n: usize) -> usize {
    (0..n).map(|k| 3 + 2 * (n - k - 1)).sum::<usize>() + 4 * n.saturating_sub(1)
}

/// Decomposition over the local ring `Z/p^k`: pivot on the first unit of
/// the current row, clear the row and column, recurse, then fix the diagonal.
pub fn decompose_local(y: &ModMatrix) -> Result<ElementaryWord> {
    let modulus = y.modulus().clone();
    if modulus.prime_power().is_none() {
        return Err(Error::NotPrimePower(modulus.value()));
    }
    y.require_unimodular()?;
    let n = y.dim();
    let mut red = Reduction::new(Residues(modulus.clone()), n, y.entries().to_vec());
    for k in 0..n {
        let col = (k..n)
            .find(|&c| red.s.unit_inverse(red.at(k, c)).is_some())
            .expect("a unimodular matrix over a local ring has a unit in each pivot row");
        if col != k {
            red.signed_col_swap(col, k);
        }
        red.clear_cross(k);
    }
    red.diagonal_cleanup();
    Ok(red.into_word(Ring::Modular(modulus)))
}

/// Decomposition over `Z/N`: split by CRT, decompose each local factor, and
/// lift each local generator to the coefficient in `[0, N)` that agrees with
/// it on its factor and vanishes on the others.
pub fn decompose_mod(y: &ModMatrix) -> Result<ElementaryWord> {
    y.require_unimodular()?;
    let modulus = y.modulus().clone();
    let locals = modulus.local_moduli();
    if locals.len() == 1 {
        return decompose_local(y);
    }
    let big_n = modulus.value();
    let mut gens = Vec::new();
    for q in &locals {
        let local = mod_reduce(&y.to_int(), q);
        let word = decompose_local(&local)?;
        let others = big_n / q.value();
        for g in word.gens() {
            let residue = g.a.to_u64().expect("local coefficient is reduced");
            let combined = crt_combine(&[(residue, q.value()), (0, others)]);
            gens.push(ElementaryGen::new(g.i, g.j, combined));
        }
    }
    ElementaryWord::new(y.dim(), Ring::Modular(modulus), gens)
}

/// An integer matrix of determinant 1 reducing to `y`: every generator of
/// [`decompose_mod`] is lifted with its representative in `[0, N)`.
pub fn lift_to_int(y: &ModMatrix) -> Result<IntMatrix> {
    Ok(decompose_mod(y)?.eval_over_integers())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::sample_sl;
    use crate::modular::enumerate_sl;

    fn int(text: &str) -> IntMatrix {
        text.parse().unwrap()
    }

    fn modm(text: &str) -> ModMatrix {
        text.parse().unwrap()
    }

    #[test]
    fn evaluation_basics() {
        let empty = ElementaryWord::empty(3, Ring::Integers);
        assert_eq!(empty.eval_over_integers(), IntMatrix::identity(3));
        let w = ElementaryWord::new(2, Ring::Integers, vec![ElementaryGen::new(1, 2, 5)]).unwrap();
        assert_eq!(eval_word(&w), WordValue::Integer(int("1,5;0,1")));
    }

    #[test]
    fn invalid_generators_rejected() {
        assert!(ElementaryWord::new(2, Ring::Integers, vec![ElementaryGen::new(1, 1, 2)]).is_err());
        assert!(ElementaryWord::new(2, Ring::Integers, vec![ElementaryGen::new(1, 3, 2)]).is_err());
    }

    #[test]
    fn signed_swap_prefix() {
        let swap = SignedSwap { i: 1, j: 2 };
        let w = ElementaryWord::with_prefix(2, Ring::Integers, vec![swap], vec![]).unwrap();
        assert_eq!(w.eval_over_integers(), int("0,1;-1,0"));
        assert_eq!(w.len(), 3);
    }

    #[test]
    fn text_round_trip() {
        let w = ElementaryWord::parse("E(1,2,5);E(2,1,-1) | Z", 2).unwrap();
        assert_eq!(w.to_string(), "E(1,2,5);E(2,1,-1) | Z");
        let m = ElementaryWord::parse(" E(1, 2, 3) |Z/6", 2).unwrap();
        assert_eq!(m.ring(), &Ring::Modular(Modulus::new(6).unwrap()));
        assert_eq!(ElementaryWord::empty(2, Ring::Integers).to_string(), "| Z");
        assert!(ElementaryWord::parse("| Z", 2).unwrap().is_empty());
        assert!(ElementaryWord::parse("E(1,2) | Z", 2).is_err());
        assert!(ElementaryWord::parse("E(1,2,1)", 2).is_err());
        assert!(ElementaryWord::parse("E(1,2,1) | Q", 2).is_err());
    }

    #[test]
    fn integer_decomposition_examples() {
        assert!(decompose_int(&IntMatrix::identity(3)).unwrap().is_empty());
        let w = decompose_int(&int("1,5;0,1")).unwrap();
        assert_eq!(w.gens(), &[ElementaryGen::new(1, 2, 5)]);
        let s = int("0,-1;1,0");
        assert_eq!(decompose_int(&s).unwrap().eval_over_integers(), s);
        assert!(matches!(
            decompose_int(&int("2,0;0,1")),
            Err(Error::NotUnimodular { .. })
        ));
        assert_eq!(decompose_int(&int("1")).unwrap().len(), 0);
    }

    #[test]
    fn negative_diagonal_cleanup() {
        let x = int("-1,0,0;0,-1,0;0,0,1");
        assert_eq!(decompose_int(&x).unwrap().eval_over_integers(), x);
        let y = int("-1,0,0;0,1,0;0,0,-1");
        assert_eq!(decompose_int(&y).unwrap().eval_over_integers(), y);
    }

    #[test]
    fn integer_round_trip_and_bound() {
        for n in [2usize, 3, 4] {
            for seed in 0..150 {
                let x = sample_sl(n, 30, seed);
                let d = decompose_int_with_bound(&x).unwrap();
                assert_eq!(d.word.eval_over_integers(), x);
                assert!(d.word.len() <= d.length_bound, "{} > {}", d.word.len(), d.length_bound);
                assert!(d.word.permutation_prefix().is_empty());
            }
        }
    }

    #[test]
    fn local_examples() {
        let id = ModMatrix::identity(2, Modulus::new(4).unwrap());
        assert!(decompose_local(&id).unwrap().is_empty());
        let y = modm("0,1;3,0 mod 4");
        assert_eq!(decompose_local(&y).unwrap().eval_mod(y.modulus()), y);
        assert_eq!(
            decompose_local(&modm("1,0;0,1 mod 6")).unwrap_err(),
            Error::NotPrimePower(6)
        );
        assert!(matches!(
            decompose_local(&modm("2,0;0,1 mod 5")),
            Err(Error::NotUnimodular { .. })
        ));
    }

    #[test]
    fn local_exhaustive_small() {
        for (n, q) in [(2usize, 3u64), (2, 4), (2, 8), (2, 9), (3, 2), (3, 3)] {
            for y in enumerate_sl(n, q).unwrap() {
                let w = decompose_local(&y).unwrap();
                assert_eq!(w.eval_mod(y.modulus()), y);
                assert!(w.len() <= local_length_bound(n));
            }
        }
    }

    #[test]
    fn modular_agrees_with_local_at_primes() {
        for p in [2u64, 3, 5, 7] {
            for y in enumerate_sl(2, p).unwrap() {
                assert_eq!(decompose_mod(&y).unwrap(), decompose_local(&y).unwrap());
            }
        }
    }

    #[test]
    fn modular_composite() {
        assert!(decompose_mod(&modm("1,0;0,1 mod 6")).unwrap().is_empty());
        let all = enumerate_sl(2, 6).unwrap();
        assert_eq!(all.len(), 144);
        for y in all {
            let w = decompose_mod(&y).unwrap();
            assert_eq!(w.ring(), &Ring::Modular(Modulus::new(6).unwrap()));
            assert!(w.gens().iter().all(|g| g.a >= BigInt::zero() && g.a < BigInt::from(6)));
            assert_eq!(w.eval_mod(y.modulus()), y);
        }
    }

    #[test]
    fn lifting() {
        let five = Modulus::new(5).unwrap();
        assert_eq!(lift_to_int(&ModMatrix::identity(2, five.clone())).unwrap(), IntMatrix::identity(2));
        let y = modm("0,1;4,0 mod 5");
        let x = lift_to_int(&y).unwrap();
        assert!(x.det().is_one());
        assert_eq!(mod_reduce(&x, &five), y);
        for big_n in 2..=12u64 {
            for y in enumerate_sl(2, big_n).unwrap() {
                let x = lift_to_int(&y).unwrap();
                assert!(x.det().is_one());
                assert_eq!(mod_reduce(&x, y.modulus()), y);
            }
        }
    }
}
