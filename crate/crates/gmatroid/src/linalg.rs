//! Exact and modular dense linear algebra.
//!
//! Every dimension, rank, injectivity, and membership claim made elsewhere in
//! this crate bottoms out here. The ground truth is arithmetic over the
//! rationals ([`ExactMatrix`], fraction-free elimination on cleared integer
//! rows); arithmetic modulo a word-sized prime ([`ModMatrix`]) is a fast path
//! with one-sided certification: a full-rank answer mod p certifies full rank
//! over the rationals, while rank drops mod p must be confirmed exactly.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use num_integer::Integer;

/// Scalar for exact computations: arbitrary-precision rational, always kept
/// in lowest terms with positive denominator (the `num` crate maintains the
/// canonical form on every operation).
pub type Rational = BigRational;

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Dense row-major matrix over the rationals.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from rows. All rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ExactMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_int_rows(rows: &[Vec<i64>]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// Stacks `extra` below `self` (column counts must match).
    pub fn vstack(&self, extra: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, extra.cols, "column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&extra.data);
        ExactMatrix { rows: self.rows + extra.rows, cols: self.cols, data }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = Rational::zero();
                for c in 0..self.cols {
                    let e = self.at(r, c);
                    if !e.is_zero() && !v[c].is_zero() {
                        acc += e * &v[c];
                    }
                }
                acc
            })
            .collect()
    }

    /// Clears denominators row by row and strips row contents. Row scaling
    /// preserves rank, pivot columns, and the null space.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let mut lcm = BigInt::one();
                for e in row {
                    lcm = lcm.lcm(e.denom());
                }
                let ints: Vec<BigInt> = row.iter().map(|e| e.numer() * (&lcm / e.denom())).collect();
                strip_content(ints)
            })
            .collect()
    }

    /// Rank over the rationals via fraction-free elimination.
    pub fn rank(&self) -> usize {
        integer_echelon(self.integer_rows()).pivot_cols.len()
    }

    /// Pivot columns of a left-to-right row echelon reduction. Deterministic
    /// for a fixed column order: each pivot column is the first column not in
    /// the span of the columns chosen before it.
    pub fn pivot_columns(&self) -> Vec<usize> {
        integer_echelon(self.integer_rows()).pivot_cols
    }

    /// A basis of the right null space; empty when the matrix has full column
    /// rank. Every returned vector `v` satisfies `self * v = 0` exactly, with
    /// a 1 in the free column it corresponds to.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let ech = integer_echelon(self.integer_rows());
        let mut kernel = Vec::new();
        for f in 0..self.cols {
            if ech.pivot_cols.binary_search(&f).is_ok() {
                continue;
            }
            kernel.push(ech.back_substitute(f, self.cols));
        }
        kernel
    }
}

/// Row echelon form of integer rows (pivot entries not normalized).
pub(crate) struct IntegerEchelon {
    /// Nonzero rows in pivot order; `rows[k]` has its first nonzero entry at
    /// `pivot_cols[k]`.
    pub rows: Vec<Vec<BigInt>>,
    pub pivot_cols: Vec<usize>,
}

impl IntegerEchelon {
    /// Kernel vector with a 1 at free column `f`, solved bottom-up.
    fn back_substitute(&self, f: usize, cols: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); cols];
        v[f] = Rational::one();
        for (k, &pc) in self.pivot_cols.iter().enumerate().rev() {
            let row = &self.rows[k];
            let mut acc = Rational::zero();
            for c in pc + 1..cols {
                if !row[c].is_zero() && !v[c].is_zero() {
                    acc += Rational::from_integer(row[c].clone()) * &v[c];
                }
            }
            v[pc] = -acc / Rational::from_integer(row[pc].clone());
        }
        v
    }
}

fn strip_content(mut row: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for e in &row {
        if !e.is_zero() {
            g = g.gcd(e);
        }
        if g.is_one() {
            return row;
        }
    }
    if g > BigInt::one() {
        for e in &mut row {
            *e /= &g;
        }
    }
    row
}

/// Fraction-free row echelon: cross-multiplication elimination with content
/// stripping after each update, so entries stay bounded by minors of the
/// input. First-nonzero pivoting, columns processed left to right.
pub(crate) fn integer_echelon(mut work: Vec<Vec<BigInt>>) -> IntegerEchelon {
    let cols = work.first().map_or(0, Vec::len);
    let mut pivot_cols = Vec::new();
    let mut next = 0usize;
    for c in 0..cols {
        let Some(p) = (next..work.len()).find(|&r| !work[r][c].is_zero()) else {
            continue;
        };
        work.swap(next, p);
        let (head, tail) = work.split_at_mut(next + 1);
        let pivot_row = &head[next];
        let piv = pivot_row[c].clone();
        for row in tail.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let factor = std::mem::replace(&mut row[c], BigInt::zero());
            for j in c + 1..cols {
                let t = &piv * &row[j] - &factor * &pivot_row[j];
                row[j] = t;
            }
            let stripped = strip_content(std::mem::take(row));
            *row = stripped;
        }
        pivot_cols.push(c);
        next += 1;
        if next == work.len() {
            break;
        }
    }
    work.truncate(next);
    IntegerEchelon { rows: work, pivot_cols }
}

/// Dense matrix over F_p for a word-sized prime p, mirroring an integer or
/// rational matrix.
#[derive(Clone, Debug)]
pub struct ModMatrix {
    modulus: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl ModMatrix {
    pub fn from_int_rows(rows: &[Vec<i64>], modulus: u64) -> Self {
        assert!(is_prime(modulus), "modulus must be prime");
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let m = modulus as i128;
        let data = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| (((x as i128) % m + m) % m) as u64))
            .collect();
        ModMatrix { modulus, rows: r, cols: c, data }
    }

    /// Reduces an exact matrix mod p. Returns `None` when some denominator
    /// vanishes mod p (the reduction is undefined for that prime).
    pub fn from_exact(m: &ExactMatrix, modulus: u64) -> Option<Self> {
        assert!(is_prime(modulus), "modulus must be prime");
        let mut data = Vec::with_capacity(m.rows * m.cols);
        for e in &m.data {
            data.push(reduce_rational(e, modulus)?);
        }
        Some(ModMatrix { modulus, rows: m.rows, cols: m.cols, data })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rank(&self) -> usize {
        self.echelon_pivots().len()
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        self.echelon_pivots()
    }

    fn echelon_pivots(&self) -> Vec<usize> {
        let p = self.modulus;
        let mut work: Vec<Vec<u64>> =
            (0..self.rows).map(|r| self.data[r * self.cols..(r + 1) * self.cols].to_vec()).collect();
        let mut pivots = Vec::new();
        let mut next = 0usize;
        for c in 0..self.cols {
            let Some(r) = (next..work.len()).find(|&r| work[r][c] != 0) else {
                continue;
            };
            work.swap(next, r);
            let inv = inv_mod(work[next][c], p);
            for j in c..self.cols {
                work[next][j] = mul_mod(work[next][j], inv, p);
            }
            let (head, tail) = work.split_at_mut(next + 1);
            let pivot_row = &head[next];
            for row in tail.iter_mut() {
                let f = row[c];
                if f != 0 {
                    for j in c..self.cols {
                        row[j] = sub_mul_mod(row[j], pivot_row[j], f, p);
                    }
                }
            }
            pivots.push(c);
            next += 1;
            if next == work.len() {
                break;
            }
        }
        pivots
    }
}

pub(crate) fn reduce_rational(x: &Rational, p: u64) -> Option<u64> {
    let num = reduce_int(x.numer(), p);
    let den = reduce_int(x.denom(), p);
    if den == 0 {
        return None;
    }
    Some(mul_mod(num, inv_mod(den, p), p))
}

pub(crate) fn reduce_int(x: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    let r = ((x % &m) + &m) % &m;
    let (_, digits) = r.to_u64_digits();
    digits.first().copied().unwrap_or(0)
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// a - b*f mod p
#[inline]
pub(crate) fn sub_mul_mod(a: u64, b: u64, f: u64, p: u64) -> u64 {
    let t = (b as u128 * f as u128) % p as u128;
    let a = a as u128;
    ((a + p as u128 - t) % p as u128) as u64
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0, "inverse of zero");
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller-Rabin, valid for all u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Next 31-bit prime drawn from the word stream, for the modular fast path.
pub fn random_prime_31(words: &mut impl FnMut() -> u64) -> u64 {
    loop {
        let candidate = (words() % (1 << 30)) | (1 << 30) | 1;
        if is_prime(candidate) {
            return candidate;
        }
    }
}
