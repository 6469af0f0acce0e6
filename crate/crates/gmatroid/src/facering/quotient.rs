//! The reduced presentation of a face-ring quotient.
//!
//! Quotienting `k[x_1..x_n]` by s independent one-forms is a linear change of
//! variables: pick s pivot variables whose coefficient block is invertible,
//! solve for them, and substitute. The quotient becomes `k[z_1..z_{n-s}] / J`
//! where J is generated by the substituted minimal non-face monomials. All
//! graded pieces then live in at most `n - s` variables, which keeps exact
//! arithmetic cheap at every degree that matters here.
//!
//! The same engine runs over two scalar rings: content-stripped big integers
//! (exact; row scaling is irrelevant to ranks, memberships, and dimensions)
//! and a prime field (the fast path, with one-sided certification: full rank
//! mod p certifies full rank over the rationals).

use num::bigint::BigInt;
use num::{One, Signed, Zero};
use num_integer::Integer;

use super::{Exponents, FaceRingError, LinearForms, MonomialTable};
use crate::complex::SimplicialComplex;
use crate::linalg::{reduce_rational, ExactMatrix, Rational};

pub(crate) trait ScalarOps: Clone {
    type Elem: Clone + PartialEq + std::fmt::Debug;
    /// Converts a rational row, scaling or reducing as the ring demands.
    /// `None` when the conversion is undefined (denominator divisible by p).
    fn row_from_rationals(&self, row: &[Rational]) -> Option<Vec<Self::Elem>>;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, e: &Self::Elem) -> bool;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn add_assign(&self, a: &mut Self::Elem, b: Self::Elem);
    /// Zeroes `target[col]` using `row` (whose leading nonzero sits at
    /// `col`), replacing `target` by an equivalent combination that keeps
    /// every column left of `col` that was already zero at zero.
    fn eliminate(&self, target: &mut Vec<Self::Elem>, row: &[Self::Elem], col: usize);
    /// Canonicalizes a row (content stripping / leading-one scaling).
    fn normalize(&self, row: &mut Vec<Self::Elem>);
}

/// Exact arithmetic on integer rows; scale factors are stripped away, so
/// entries stay bounded by minors of the data.
#[derive(Clone, Debug)]
pub(crate) struct BigIntOps;

impl ScalarOps for BigIntOps {
    type Elem = BigInt;

    fn row_from_rationals(&self, row: &[Rational]) -> Option<Vec<BigInt>> {
        let mut lcm = BigInt::one();
        for e in row {
            lcm = lcm.lcm(e.denom());
        }
        let mut ints: Vec<BigInt> = row.iter().map(|e| e.numer() * (&lcm / e.denom())).collect();
        self.normalize(&mut ints);
        Some(ints)
    }

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn one(&self) -> BigInt {
        BigInt::one()
    }

    fn is_zero(&self, e: &BigInt) -> bool {
        e.is_zero()
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn add_assign(&self, a: &mut BigInt, b: BigInt) {
        *a += b;
    }

    fn eliminate(&self, target: &mut Vec<BigInt>, row: &[BigInt], col: usize) {
        let pivot = row[col].clone();
        let factor = std::mem::replace(&mut target[col], BigInt::zero());
        for j in 0..target.len() {
            if j == col {
                continue;
            }
            let t = &pivot * &target[j] - &factor * &row[j];
            target[j] = t;
        }
        self.normalize(target);
    }

    fn normalize(&self, row: &mut Vec<BigInt>) {
        let mut g = BigInt::zero();
        let mut leading_negative = false;
        let mut saw_nonzero = false;
        for e in row.iter() {
            if !e.is_zero() {
                if !saw_nonzero {
                    leading_negative = e.is_negative();
                    saw_nonzero = true;
                }
                g = g.gcd(e);
                if g.is_one() && !leading_negative {
                    return;
                }
            }
        }
        if !saw_nonzero {
            return;
        }
        if leading_negative {
            g = -g;
        }
        if !g.is_one() {
            for e in row.iter_mut() {
                *e /= &g;
            }
        }
    }
}

/// Arithmetic in F_p for a 31-bit prime, rows kept with leading entry 1.
#[derive(Clone, Debug)]
pub(crate) struct PrimeOps {
    pub p: u64,
}

impl ScalarOps for PrimeOps {
    type Elem = u64;

    fn row_from_rationals(&self, row: &[Rational]) -> Option<Vec<u64>> {
        row.iter().map(|e| reduce_rational(e, self.p)).collect()
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn is_zero(&self, e: &u64) -> bool {
        *e == 0
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        crate::linalg::mul_mod(*a, *b, self.p)
    }

    fn add_assign(&self, a: &mut u64, b: u64) {
        *a = (*a + b) % self.p;
    }

    fn eliminate(&self, target: &mut Vec<u64>, row: &[u64], col: usize) {
        let factor = std::mem::take(&mut target[col]);
        if factor == 0 {
            return;
        }
        for j in 0..target.len() {
            if j == col {
                continue;
            }
            target[j] = crate::linalg::sub_mul_mod(target[j], row[j], factor, self.p);
        }
    }

    fn normalize(&self, row: &mut Vec<u64>) {
        let Some(lead) = row.iter().position(|&e| e != 0) else {
            return;
        };
        let inv = crate::linalg::inv_mod(row[lead], self.p);
        for e in row.iter_mut() {
            *e = crate::linalg::mul_mod(*e, inv, self.p);
        }
    }
}

/// Incremental row echelon structure with rows ordered by pivot column.
#[derive(Clone)]
pub(crate) struct Echelon<S: ScalarOps> {
    ops: S,
    cols: usize,
    rows: Vec<Vec<S::Elem>>,
    pivots: Vec<usize>,
}

impl<S: ScalarOps> Echelon<S> {
    pub fn new(ops: S, cols: usize) -> Self {
        Echelon { ops, cols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<S::Elem>] {
        &self.rows
    }

    /// Forward-reduces a vector against the echelon rows. The result is a
    /// scalar multiple of the true normal form; it vanishes exactly on ideal
    /// members and is supported on non-pivot columns.
    pub fn reduce(&self, mut v: Vec<S::Elem>) -> Vec<S::Elem> {
        debug_assert_eq!(v.len(), self.cols);
        for (k, &pc) in self.pivots.iter().enumerate() {
            if !self.ops.is_zero(&v[pc]) {
                self.ops.eliminate(&mut v, &self.rows[k], pc);
            }
        }
        v
    }

    /// Reduces and inserts; returns true when the vector enlarged the span.
    pub fn insert(&mut self, v: Vec<S::Elem>) -> bool {
        let mut v = self.reduce(v);
        let Some(lead) = v.iter().position(|e| !self.ops.is_zero(e)) else {
            return false;
        };
        self.ops.normalize(&mut v);
        let at = self.pivots.partition_point(|&pc| pc < lead);
        self.pivots.insert(at, lead);
        self.rows.insert(at, v);
        true
    }

    pub fn is_member(&self, v: Vec<S::Elem>) -> bool {
        self.reduce(v).iter().all(|e| self.ops.is_zero(e))
    }
}

/// The solved change of variables: pivot variables are expressed as rational
/// combinations of the free ones.
#[derive(Clone, Debug)]
pub(crate) struct Substitution {
    pub free: Vec<usize>,
    pub pivot: Vec<usize>,
    /// Image of each original variable as a one-form over the free
    /// variables (free variable q maps to the unit vector e_q).
    pub forms: Vec<Vec<Rational>>,
}

pub(crate) fn substitution(
    c: &SimplicialComplex,
    forms: &LinearForms,
) -> Result<Substitution, FaceRingError> {
    let n = c.n_vertices();
    let s = forms.num_forms();
    if s == 0 {
        let forms = (0..n)
            .map(|q| {
                let mut row = vec![Rational::zero(); n];
                row[q] = Rational::one();
                row
            })
            .collect();
        return Ok(Substitution { free: (0..n).collect(), pivot: Vec::new(), forms });
    }
    let k = ExactMatrix::from_int_rows(forms.theta());
    let pivot = k.pivot_columns();
    if pivot.len() < s {
        return Err(FaceRingError::NotLsop);
    }
    let free: Vec<usize> = (0..n).filter(|v| pivot.binary_search(v).is_err()).collect();
    // Solve K_P x_P = -K_F x_F by Gauss-Jordan on [K_P | K_F].
    let mut aug: Vec<Vec<Rational>> = (0..s)
        .map(|r| {
            pivot
                .iter()
                .chain(free.iter())
                .map(|&c| Rational::from_integer(forms.theta()[r][c].into()))
                .collect()
        })
        .collect();
    for col in 0..s {
        let row = (col..s)
            .find(|&r| !aug[r][col].is_zero())
            .expect("pivot block is invertible");
        aug.swap(col, row);
        let inv = aug[col][col].clone();
        for e in aug[col].iter_mut() {
            *e /= &inv;
        }
        for r in 0..s {
            if r != col && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for j in 0..aug[r].len() {
                    let t = &aug[col][j] * &f;
                    aug[r][j] -= t;
                }
            }
        }
    }
    let mut images = vec![vec![Rational::zero(); free.len()]; n];
    for (q, &v) in free.iter().enumerate() {
        images[v][q] = Rational::one();
    }
    for (t, &v) in pivot.iter().enumerate() {
        for q in 0..free.len() {
            images[v][q] = -aug[t][s + q].clone();
        }
    }
    Ok(Substitution { free, pivot, forms: images })
}

pub(crate) enum BuildError {
    NotLsop,
    /// The prime divides a denominator of the substitution; pick another.
    BadPrime,
}

struct DegreeData<S: ScalarOps> {
    echelon: Echelon<S>,
    quotient_basis: Vec<usize>,
    dim: usize,
}

/// The quotient engine over one scalar ring.
pub(crate) struct Engine<S: ScalarOps> {
    ops: S,
    n_free: usize,
    /// σ(x_i) for every original variable, in engine scalars.
    sigma: Vec<Vec<S::Elem>>,
    /// Substituted minimal non-face generators, by degree.
    gens: Vec<(usize, Vec<S::Elem>)>,
    tables: Vec<MonomialTable>,
    data: Vec<DegreeData<S>>,
}

impl<S: ScalarOps> Engine<S> {
    pub fn build(
        ops: S,
        c: &SimplicialComplex,
        forms: &LinearForms,
    ) -> Result<Engine<S>, BuildError> {
        let subst = match substitution(c, forms) {
            Ok(s) => s,
            Err(_) => return Err(BuildError::NotLsop),
        };
        Self::build_with(ops, c, &subst)
    }

    pub fn build_with(
        ops: S,
        c: &SimplicialComplex,
        subst: &Substitution,
    ) -> Result<Engine<S>, BuildError> {
        let n_free = subst.free.len();
        let mut sigma = Vec::with_capacity(subst.forms.len());
        for row in &subst.forms {
            sigma.push(ops.row_from_rationals(row).ok_or(BuildError::BadPrime)?);
        }
        let mut engine = Engine {
            ops,
            n_free,
            sigma,
            gens: Vec::new(),
            tables: vec![MonomialTable::full(n_free, 0)],
            data: Vec::new(),
        };
        let mut gens = Vec::new();
        for nonface in c.minimal_nonfaces() {
            let degree = nonface.len();
            let mut poly = vec![engine.ops.one()];
            for (d, &v) in nonface.iter().enumerate() {
                engine.ensure_tables(d + 1);
                poly = engine.mul_linear(d, &poly, v);
            }
            gens.push((degree, poly));
        }
        engine.gens = gens;
        Ok(engine)
    }

    fn ensure_tables(&mut self, degree: usize) {
        while self.tables.len() <= degree {
            self.tables.push(MonomialTable::full(self.n_free, self.tables.len()));
        }
    }

    /// Multiplies a degree-d coefficient vector by σ(x_var).
    fn mul_linear(&self, d: usize, v: &[S::Elem], var: usize) -> Vec<S::Elem> {
        let form = &self.sigma[var];
        let (lo, hi) = (&self.tables[d], &self.tables[d + 1]);
        let mut out = vec![self.ops.zero(); hi.len()];
        for (i, coeff) in v.iter().enumerate() {
            if self.ops.is_zero(coeff) {
                continue;
            }
            for q in 0..self.n_free {
                if self.ops.is_zero(&form[q]) {
                    continue;
                }
                let target = lo.shift_up(i, q, hi).expect("full tables are closed");
                let term = self.ops.mul(coeff, &form[q]);
                self.ops.add_assign(&mut out[target], term);
            }
        }
        out
    }

    /// Builds degree data up to and including `degree`. The ideal in degree
    /// d is spanned by the variable shifts of its degree-(d-1) echelon basis
    /// plus the generators of degree exactly d.
    pub fn ensure_degree(&mut self, degree: usize) {
        while self.data.len() <= degree {
            let d = self.data.len();
            self.ensure_tables(d);
            let cols = self.tables[d].len();
            let mut echelon = Echelon::new(self.ops.clone(), cols);
            if d >= 1 {
                let prev_rows: Vec<Vec<S::Elem>> = self.data[d - 1].echelon.rows().to_vec();
                for q in 0..self.n_free {
                    for row in &prev_rows {
                        let mut lifted = vec![self.ops.zero(); cols];
                        for (i, e) in row.iter().enumerate() {
                            if !self.ops.is_zero(e) {
                                let t = self.tables[d - 1]
                                    .shift_up(i, q, &self.tables[d])
                                    .expect("full tables are closed");
                                self.ops.add_assign(&mut lifted[t], e.clone());
                            }
                        }
                        echelon.insert(lifted);
                    }
                }
            }
            for (gdeg, poly) in &self.gens {
                if *gdeg == d {
                    echelon.insert(poly.clone());
                }
            }
            let pivots = echelon.pivots().to_vec();
            let quotient_basis: Vec<usize> =
                (0..cols).filter(|i| pivots.binary_search(i).is_err()).collect();
            let dim = quotient_basis.len();
            self.data.push(DegreeData { echelon, quotient_basis, dim });
        }
    }

    pub fn dim(&mut self, degree: usize) -> usize {
        self.ensure_degree(degree);
        self.data[degree].dim
    }

    pub fn rank(&mut self, degree: usize) -> usize {
        self.ensure_degree(degree);
        self.data[degree].echelon.rank()
    }

    pub fn monomial_count(&mut self, degree: usize) -> usize {
        self.ensure_tables(degree);
        self.tables[degree].len()
    }

    /// Quotient-basis monomials (free-variable exponents) in this degree.
    pub fn quotient_basis(&mut self, degree: usize) -> Vec<Exponents> {
        self.ensure_degree(degree);
        self.data[degree]
            .quotient_basis
            .iter()
            .map(|&i| self.tables[degree].mons[i].clone())
            .collect()
    }

    /// Last degree with a nonzero quotient. Once a degree vanishes, all
    /// higher degrees vanish (the ideal contains everything one degree up).
    pub fn top_nonzero_degree(&mut self, cap: usize) -> usize {
        let mut top = 0;
        for d in 0..=cap {
            if self.dim(d) > 0 {
                top = d;
            } else {
                return top;
            }
        }
        panic!("quotient did not vanish by degree {cap}; parameter system is not an lsop");
    }

    /// The substituted image of an original-variables monomial, as a dense
    /// coefficient vector in its degree.
    pub fn class_of_monomial(&mut self, mono: &[u8]) -> Vec<S::Elem> {
        let mut poly = vec![self.ops.one()];
        let mut d = 0;
        for (v, &e) in mono.iter().enumerate() {
            for _ in 0..e {
                self.ensure_tables(d + 1);
                poly = self.mul_linear(d, &poly, v);
                d += 1;
            }
        }
        poly
    }

    /// Membership of a degree-d vector in the ideal's degree-d piece.
    pub fn is_ideal_member(&mut self, degree: usize, v: Vec<S::Elem>) -> bool {
        self.ensure_degree(degree);
        self.data[degree].echelon.is_member(v)
    }

    /// Multiplies by a one-form given over the free variables.
    pub fn mul_by_free_form(
        &mut self,
        degree: usize,
        v: &[S::Elem],
        form: &[S::Elem],
    ) -> Vec<S::Elem> {
        self.ensure_tables(degree + 1);
        let (lo, hi) = (&self.tables[degree], &self.tables[degree + 1]);
        let mut out = vec![self.ops.zero(); hi.len()];
        for (i, coeff) in v.iter().enumerate() {
            if self.ops.is_zero(coeff) {
                continue;
            }
            for q in 0..self.n_free {
                if self.ops.is_zero(&form[q]) {
                    continue;
                }
                let target = lo.shift_up(i, q, hi).expect("full tables are closed");
                let term = self.ops.mul(coeff, &form[q]);
                self.ops.add_assign(&mut out[target], term);
            }
        }
        out
    }

    /// The image of an original-variables one-form under the substitution.
    pub fn free_form_of(&self, omega: &[i64]) -> Vec<S::Elem> {
        let mut out = vec![self.ops.zero(); self.n_free];
        for (v, &coeff) in omega.iter().enumerate() {
            if coeff == 0 {
                continue;
            }
            // coeff * sigma(x_v)
            let c = self
                .ops
                .row_from_rationals(&[Rational::from_integer(coeff.into())])
                .expect("integer scalars always reduce")[0]
                .clone();
            for q in 0..self.n_free {
                let term = self.ops.mul(&c, &self.sigma[v][q]);
                self.ops.add_assign(&mut out[q], term);
            }
        }
        out
    }

    /// Tests whether multiplication by `form`, iterated `power` times, is
    /// injective from the degree-i quotient into degree i+power: the images
    /// of the degree-i quotient basis must stay independent modulo the ideal
    /// in the target degree.
    pub fn multiplication_injective(
        &mut self,
        from: usize,
        power: usize,
        form: &[S::Elem],
    ) -> (bool, usize, usize, usize) {
        let to = from + power;
        self.ensure_degree(to);
        let dim_from = self.data[from].dim;
        let base_rank = self.data[to].echelon.rank();
        if dim_from == 0 || power == 0 {
            return (true, dim_from, base_rank, base_rank + dim_from.min(usize::MAX));
        }
        let basis = self.data[from].quotient_basis.clone();
        let mut augmented = self.data[to].echelon.clone();
        let mut independent = 0usize;
        for &bi in &basis {
            let mut v = vec![self.ops.zero(); self.tables[from].len()];
            v[bi] = self.ops.one();
            let mut d = from;
            for _ in 0..power {
                v = self.mul_by_free_form(d, &v, form);
                d += 1;
                // Keep vectors reduced; scaling does not affect membership.
                if d <= to {
                    self.ensure_degree(d);
                    v = self.data[d].echelon.reduce(v);
                }
            }
            if augmented.insert(v) {
                independent += 1;
            }
        }
        let aug_rank = augmented.rank();
        (independent == dim_from, dim_from, base_rank, aug_rank)
    }
}

/// How a reported dimension was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DimSource {
    /// Exact integer elimination.
    Exact,
    /// Full rank modulo a prime, which certifies full rank exactly (the
    /// dimension is zero in both worlds).
    ModularCertified,
    /// Agreement of independent primes without an exact confirmation.
    ModularAgreement,
}

#[derive(Clone, Debug)]
pub struct DimRecord {
    pub degree: usize,
    pub dim: usize,
    pub source: DimSource,
}

/// The exact reduced-presentation quotient ring: the public face of the
/// engine.
pub struct QuotientRing {
    engine: Engine<BigIntOps>,
}

impl QuotientRing {
    pub fn new(c: &SimplicialComplex, forms: &LinearForms) -> Result<Self, FaceRingError> {
        if !lsop_ok(c, forms)? {
            return Err(FaceRingError::NotLsop);
        }
        match Engine::build(BigIntOps, c, forms) {
            Ok(engine) => Ok(QuotientRing { engine }),
            Err(_) => Err(FaceRingError::NotLsop),
        }
    }

    pub fn dim(&mut self, degree: usize) -> usize {
        self.engine.dim(degree)
    }

    pub fn dims_through(&mut self, degree: usize) -> Vec<usize> {
        (0..=degree).map(|d| self.engine.dim(d)).collect()
    }

    pub fn top_nonzero_degree(&mut self, cap: usize) -> usize {
        self.engine.top_nonzero_degree(cap)
    }

    pub(crate) fn engine_mut(&mut self) -> &mut Engine<BigIntOps> {
        &mut self.engine
    }
}

fn lsop_ok(c: &SimplicialComplex, forms: &LinearForms) -> Result<bool, FaceRingError> {
    super::lsop_verify(c, forms)
}

/// Dimensions of the quotient in degrees `0..=upto`, each labeled with how
/// it was certified. Small pieces are computed exactly; larger ones run
/// mod the given primes and are upgraded to exact certificates when the
/// relation space has full rank mod a single prime.
pub fn certified_dims(
    c: &SimplicialComplex,
    forms: &LinearForms,
    upto: usize,
    primes: &[u64],
) -> Result<Vec<DimRecord>, FaceRingError> {
    // Above this column count, exact echelon entries (minors of the scaled
    // substitution data) grow into the tens of kilobits and dominate the
    // runtime; the modular path takes over, with one-prime full-rank
    // certificates still exact. The gated slow test in this module removes
    // the cap entirely.
    const EXACT_COLUMN_CAP: usize = 64;
    if !lsop_ok(c, forms)? {
        return Err(FaceRingError::NotLsop);
    }
    let subst = substitution(c, forms)?;
    let mut exact = Engine::build_with(BigIntOps, c, &subst)
        .ok()
        .expect("exact build cannot fail after lsop check");
    let mut modular: Vec<Engine<PrimeOps>> = primes
        .iter()
        .filter_map(|&p| Engine::build_with(PrimeOps { p }, c, &subst).ok())
        .collect();
    let mut out = Vec::with_capacity(upto + 1);
    let mut exact_alive = true;
    for d in 0..=upto {
        let mons = exact.monomial_count(d);
        if exact_alive && mons <= EXACT_COLUMN_CAP {
            out.push(DimRecord { degree: d, dim: exact.dim(d), source: DimSource::Exact });
            continue;
        }
        exact_alive = false; // inductive data would be missing above the cap
        let dims: Vec<usize> = modular.iter_mut().map(|e| e.dim(d)).collect();
        assert!(!dims.is_empty(), "no usable primes for modular dimensions");
        let dim = dims[0];
        assert!(
            dims.iter().all(|&x| x == dim),
            "primes disagree on quotient dimension in degree {d}: {dims:?}"
        );
        let source = if dim == 0 { DimSource::ModularCertified } else { DimSource::ModularAgreement };
        out.push(DimRecord { degree: d, dim, source });
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct HilbertCheck {
    /// (degree, quotient dimension, expected h entry, matches)
    pub rows: Vec<(usize, usize, i64, bool)>,
    pub ok: bool,
}

/// Compares quotient dimensions against the h-vector of the complex in every
/// degree `0..=s+1` (the extra degree must vanish).
pub fn hilbert_check(
    c: &SimplicialComplex,
    forms: &LinearForms,
    primes: &[u64],
) -> Result<HilbertCheck, FaceRingError> {
    let h = c.h_vector();
    let s = c.max_face_size();
    let dims = certified_dims(c, forms, s + 1, primes)?;
    let rows: Vec<(usize, usize, i64, bool)> = dims
        .iter()
        .map(|r| {
            let expected = h.get(r.degree);
            (r.degree, r.dim, expected, r.dim as i64 == expected)
        })
        .collect();
    let ok = rows.iter().all(|r| r.3);
    Ok(HilbertCheck { rows, ok })
}
