//! Graded pieces of Artinian face-ring quotients, built without Gröbner
//! bases.
//!
//! The face ring of a complex is the polynomial ring modulo the monomial
//! ideal of non-faces, so reduction mod the ideal is projection onto face
//! monomials. Quotienting by a verified linear system of parameters is plain
//! linear algebra degree by degree: the degree-d relations are the reduced
//! products `θ_j · m` over the degree-(d-1) face monomials, and the quotient
//! basis is read off the non-pivot columns of their row echelon form.
//!
//! Two presentations of the same quotient are implemented and cross-checked:
//! the direct one above ([`GradedPiece`]), and a reduced presentation in
//! `n - s` variables obtained by eliminating the parameter forms
//! ([`quotient::QuotientRing`]), which stays small enough for exact
//! arithmetic at every degree used here.

mod counterexample;
mod gelement;
mod quotient;

pub use counterexample::{verify_theta_counterexample, CounterexampleReport, CounterexampleTrial};
pub use gelement::{
    g_element_search, g_element_verify, mult_injective, ArithmeticMode, GWitness,
    InjectivityCheck, SearchOptions, VerifyOutcome,
};
pub use quotient::{certified_dims, hilbert_check, DimRecord, DimSource, HilbertCheck, QuotientRing};

use std::cmp::Ordering;
use std::collections::HashMap;

use rand_core::RngCore;
use thiserror::Error;

use crate::complex::{ComplexError, SimplicialComplex};
use crate::linalg::{ExactMatrix, ModMatrix, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FaceRingError {
    #[error("expected {expected} parameter forms for this complex, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("the given forms are not a linear system of parameters")]
    NotLsop,
    #[error("no linear system of parameters found in {attempts} attempts (bound too small or degenerate complex)")]
    LsopNotFound { attempts: usize },
    #[error("matroid has coloops {0:?}")]
    HasColoops(Vec<usize>),
    #[error("no g-element witness found in {trials} trials")]
    WitnessNotFound { trials: usize },
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// An s×n integer coefficient matrix interpreted as s one-forms (row i gives
/// the coefficients of θ_i), with an optional extra one-form ω.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForms {
    theta: Vec<Vec<i64>>,
    omega: Option<Vec<i64>>,
    n: usize,
}

impl LinearForms {
    pub fn new(theta: Vec<Vec<i64>>) -> Self {
        let n = theta.first().map_or(0, Vec::len);
        assert!(theta.iter().all(|r| r.len() == n), "ragged coefficient rows");
        LinearForms { theta, omega: None, n }
    }

    pub fn with_omega(theta: Vec<Vec<i64>>, omega: Vec<i64>) -> Self {
        let mut lf = Self::new(theta);
        if lf.theta.is_empty() {
            lf.n = omega.len();
        }
        assert_eq!(omega.len(), lf.n, "omega length mismatch");
        lf.omega = Some(omega);
        lf
    }

    pub fn num_forms(&self) -> usize {
        self.theta.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn theta(&self) -> &[Vec<i64>] {
        &self.theta
    }

    pub fn omega(&self) -> Option<&[i64]> {
        self.omega.as_deref()
    }
}

/// Exponent vector of a monomial; index = variable.
pub type Exponents = Vec<u8>;

pub(crate) fn total_degree(m: &[u8]) -> usize {
    m.iter().map(|&e| e as usize).sum()
}

/// Graded reverse-lexicographic comparison (x_0 largest): higher total degree
/// wins; on ties the vector whose last nonzero difference entry is negative
/// is the larger monomial.
pub(crate) fn grevlex_cmp(a: &[u8], b: &[u8]) -> Ordering {
    match total_degree(a).cmp(&total_degree(b)) {
        Ordering::Equal => {}
        other => return other,
    }
    for k in (0..a.len()).rev() {
        match a[k].cmp(&b[k]) {
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
            Ordering::Equal => {}
        }
    }
    Ordering::Equal
}

/// Degree-d monomials over a fixed variable set, grevlex-descending, with an
/// index for constant-time lookup.
#[derive(Clone, Debug)]
pub(crate) struct MonomialTable {
    pub degree: usize,
    pub mons: Vec<Exponents>,
    index: HashMap<Exponents, usize>,
}

impl MonomialTable {
    fn from_mons(degree: usize, mut mons: Vec<Exponents>) -> Self {
        mons.sort_by(|a, b| grevlex_cmp(b, a));
        let index = mons.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        MonomialTable { degree, mons, index }
    }

    pub fn len(&self) -> usize {
        self.mons.len()
    }

    pub fn position(&self, m: &[u8]) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Index of `mons[i] * x_var` in the table one degree up.
    pub fn shift_up(&self, i: usize, var: usize, up: &MonomialTable) -> Option<usize> {
        let mut m = self.mons[i].clone();
        m[var] += 1;
        up.position(&m)
    }

    /// All degree-d monomials in `vars` variables.
    pub fn full(vars: usize, degree: usize) -> Self {
        let mut mons = Vec::new();
        let mut prefix = vec![0u8; vars];
        enumerate_compositions(vars, degree, 0, &mut prefix, &mut |m| mons.push(m.to_vec()));
        if vars == 0 && degree == 0 {
            mons.push(Vec::new());
        }
        Self::from_mons(degree, mons)
    }

    /// Degree-d monomials whose support is a face of the complex.
    pub fn faces(c: &SimplicialComplex, degree: usize) -> Self {
        let n = c.n_vertices();
        let mut mons = Vec::new();
        let mut prefix = vec![0u8; n];
        enumerate_face_monomials(c, degree, 0, 0, &mut prefix, &mut |m| mons.push(m.to_vec()));
        if n == 0 && degree == 0 {
            mons.push(Vec::new());
        }
        Self::from_mons(degree, mons)
    }
}

fn enumerate_compositions(
    vars: usize,
    remaining: usize,
    at: usize,
    prefix: &mut Vec<u8>,
    emit: &mut impl FnMut(&[u8]),
) {
    if vars == 0 {
        return;
    }
    if at == vars - 1 {
        prefix[at] = remaining as u8;
        emit(prefix);
        prefix[at] = 0;
        return;
    }
    for e in 0..=remaining {
        prefix[at] = e as u8;
        enumerate_compositions(vars, remaining - e, at + 1, prefix, emit);
    }
    prefix[at] = 0;
}

fn enumerate_face_monomials(
    c: &SimplicialComplex,
    remaining: usize,
    at: usize,
    support: u32,
    prefix: &mut Vec<u8>,
    emit: &mut impl FnMut(&[u8]),
) {
    if remaining == 0 {
        emit(prefix);
        return;
    }
    if at >= c.n_vertices() {
        return;
    }
    // Exponent 0 first, then positive exponents if the support stays a face.
    enumerate_face_monomials(c, remaining, at + 1, support, prefix, emit);
    let with_v = support | (1 << at);
    if c.is_face_mask(with_v) {
        for e in 1..=remaining {
            prefix[at] = e as u8;
            enumerate_face_monomials(c, remaining - e, at + 1, with_v, prefix, emit);
        }
        prefix[at] = 0;
    }
}

/// Degree-d monomials of the face ring: exponent vectors of total degree d
/// whose support is a face, in grevlex-descending order.
pub fn face_monomials(c: &SimplicialComplex, degree: usize) -> Vec<Exponents> {
    MonomialTable::faces(c, degree).mons
}

/// Projects a homogeneous polynomial onto the face monomials of its degree:
/// coefficients of non-face monomials are dropped (they lie in the face
/// ideal), the rest are returned in face-monomial order.
pub fn reduce_mod_ideal(
    c: &SimplicialComplex,
    terms: &[(Exponents, Rational)],
) -> (usize, Vec<Rational>) {
    let degree = terms.first().map_or(0, |(m, _)| total_degree(m));
    assert!(
        terms.iter().all(|(m, _)| total_degree(m) == degree),
        "reduce_mod_ideal expects a homogeneous polynomial"
    );
    let table = MonomialTable::faces(c, degree);
    let mut out = vec![Rational::from_integer(0.into()); table.len()];
    for (m, coeff) in terms {
        if let Some(i) = table.position(m) {
            out[i] += coeff;
        }
    }
    (degree, out)
}

/// Checks the parameter condition: for every facet, the columns of the
/// coefficient matrix indexed by the facet are linearly independent. Facets
/// suffice since sub-faces inherit independence. Errors when the number of
/// forms differs from 1 + dim.
pub fn lsop_verify(c: &SimplicialComplex, forms: &LinearForms) -> Result<bool, FaceRingError> {
    let s = c.max_face_size();
    if forms.num_forms() != s {
        return Err(FaceRingError::DimensionMismatch { expected: s, got: forms.num_forms() });
    }
    if s > 0 && forms.n() != c.n_vertices() {
        return Err(FaceRingError::DimensionMismatch {
            expected: c.n_vertices(),
            got: forms.n(),
        });
    }
    for facet in c.facets() {
        let cols: Vec<Vec<i64>> = forms
            .theta()
            .iter()
            .map(|row| facet.iter().map(|&v| row[v]).collect())
            .collect();
        if ExactMatrix::from_int_rows(&cols).rank() < facet.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Samples uniform integer coefficient matrices in `[-bound, bound]` until
/// one passes [`lsop_verify`], giving up after `attempts` tries.
///
/// Sampling is defined directly on the 64-bit word stream of the caller's
/// generator (`entry = (word mod (2B+1)) - B`), so a seeded ChaCha8 stream
/// reproduces the same forms on any platform.
pub fn lsop_random(
    c: &SimplicialComplex,
    bound: i64,
    rng: &mut impl RngCore,
    attempts: usize,
) -> Result<(LinearForms, usize), FaceRingError> {
    let s = c.max_face_size();
    let n = c.n_vertices();
    for attempt in 1..=attempts {
        let theta: Vec<Vec<i64>> =
            (0..s).map(|_| (0..n).map(|_| sample_coefficient(rng, bound)).collect()).collect();
        let forms = LinearForms::new(theta);
        let forms = if forms.theta().is_empty() {
            LinearForms { theta: Vec::new(), omega: None, n }
        } else {
            forms
        };
        if lsop_verify(c, &forms)? {
            return Ok((forms, attempt));
        }
    }
    Err(FaceRingError::LsopNotFound { attempts })
}

/// Uniform draw from `[-bound, bound]` via one generator word.
pub(crate) fn sample_coefficient(rng: &mut impl RngCore, bound: i64) -> i64 {
    let width = (2 * bound + 1) as u64;
    (rng.next_u64() % width) as i64 - bound
}

/// One graded piece of the quotient by a parameter system, in the direct
/// presentation: rows of `relations` are the reduced products `θ_j · m` over
/// the degree-(d-1) face monomials, columns follow `monomials`.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    pub degree: usize,
    pub monomials: Vec<Exponents>,
    pub relations: ExactMatrix,
    pub rank: usize,
    /// Indices into `monomials` at the non-pivot columns: their classes form
    /// a basis of the quotient in this degree.
    pub quotient_basis: Vec<usize>,
    pub quotient_dim: usize,
}

impl GradedPiece {
    /// Builds the piece in exact arithmetic. The caller is expected to have
    /// verified the parameter condition.
    pub fn build(
        c: &SimplicialComplex,
        forms: &LinearForms,
        degree: usize,
    ) -> Result<GradedPiece, FaceRingError> {
        let s = c.max_face_size();
        if forms.num_forms() != s {
            return Err(FaceRingError::DimensionMismatch { expected: s, got: forms.num_forms() });
        }
        let table = MonomialTable::faces(c, degree);
        let rows = relation_rows(c, forms, degree, &table);
        let relations = ExactMatrix::from_int_rows(&rows);
        let pivots =
            if rows.is_empty() { Vec::new() } else { relations.pivot_columns() };
        let rank = pivots.len();
        let quotient_basis: Vec<usize> =
            (0..table.len()).filter(|i| pivots.binary_search(i).is_err()).collect();
        Ok(GradedPiece {
            degree,
            quotient_dim: table.len() - rank,
            monomials: table.mons,
            relations,
            rank,
            quotient_basis,
        })
    }

    /// Rank of the relation matrix modulo a prime, for the fast path and for
    /// arithmetic-agreement checks.
    pub fn modular_rank(
        c: &SimplicialComplex,
        forms: &LinearForms,
        degree: usize,
        prime: u64,
    ) -> (usize, usize) {
        let table = MonomialTable::faces(c, degree);
        let rows = relation_rows(c, forms, degree, &table);
        if rows.is_empty() {
            return (table.len(), 0);
        }
        (table.len(), ModMatrix::from_int_rows(&rows, prime).rank())
    }
}

/// Rows of the degree-d relation space: for every degree-(d-1) face monomial
/// m and every form θ_j, the face-monomial coordinates of θ_j · m.
pub(crate) fn relation_rows(
    c: &SimplicialComplex,
    forms: &LinearForms,
    degree: usize,
    table: &MonomialTable,
) -> Vec<Vec<i64>> {
    if degree == 0 {
        return Vec::new();
    }
    let below = MonomialTable::faces(c, degree - 1);
    let n = c.n_vertices();
    let mut rows = Vec::with_capacity(below.len() * forms.num_forms());
    for mi in 0..below.len() {
        let shifts: Vec<Option<usize>> = (0..n).map(|v| below.shift_up(mi, v, table)).collect();
        for theta in forms.theta() {
            let mut row = vec![0i64; table.len()];
            let mut nonzero = false;
            for (v, &coeff) in theta.iter().enumerate() {
                if coeff != 0 {
                    if let Some(ti) = shifts[v] {
                        row[ti] += coeff;
                        nonzero = true;
                    }
                }
            }
            if nonzero {
                rows.push(row);
            }
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::independence_complex;
    use crate::linalg::rat;
    use crate::matroid::Matroid;
    use num::Zero;
    use rand_chacha::ChaCha8Rng;
    use rand_core::SeedableRng;

    fn u24_complex() -> SimplicialComplex {
        independence_complex(&Matroid::uniform(2, 4)).0
    }

    #[test]
    fn grevlex_degree_two_in_three_vars() {
        let table = MonomialTable::full(3, 2);
        let named: Vec<Vec<u8>> = vec![
            vec![2, 0, 0], // x0^2
            vec![1, 1, 0], // x0 x1
            vec![0, 2, 0], // x1^2
            vec![1, 0, 1], // x0 x2
            vec![0, 1, 1], // x1 x2
            vec![0, 0, 2], // x2^2
        ];
        assert_eq!(table.mons, named);
    }

    #[test]
    fn face_monomial_counts_for_u24() {
        let c = u24_complex();
        assert_eq!(face_monomials(&c, 0), vec![Vec::<u8>::new(); 1].iter().map(|_| vec![0u8; 4]).collect::<Vec<_>>());
        assert_eq!(face_monomials(&c, 1).len(), 4);
        // 4 squares + 6 products: every pair is a face.
        assert_eq!(face_monomials(&c, 2).len(), 10);
        // Degree 3 on supports of size <= 2: 4 cubes + 2 * 6 mixed.
        assert_eq!(face_monomials(&c, 3).len(), 16);
    }

    #[test]
    fn reduce_mod_ideal_projects() {
        let c = u24_complex();
        // x0 x1 is a face monomial; x0 x1 x2 has non-face support.
        let (deg, v) = reduce_mod_ideal(&c, &[(vec![1, 1, 0, 0], rat(1))]);
        assert_eq!(deg, 2);
        assert_eq!(v.iter().filter(|x| !x.is_zero()).count(), 1);
        let (_, w) = reduce_mod_ideal(&c, &[(vec![1, 1, 1, 0], rat(5))]);
        assert!(w.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn lsop_verify_full_simplex_identity() {
        let c = SimplicialComplex::from_facets(2, &[vec![0, 1]]).unwrap();
        let id = LinearForms::new(vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(lsop_verify(&c, &id), Ok(true));
        let degenerate = LinearForms::new(vec![vec![1, 0], vec![2, 0]]);
        assert_eq!(lsop_verify(&c, &degenerate), Ok(false));
    }

    #[test]
    fn lsop_verify_rejects_zero_column_on_a_facet_vertex() {
        let c = u24_complex();
        let forms = LinearForms::new(vec![vec![1, 1, 1, 0], vec![1, 2, 3, 0]]);
        assert_eq!(lsop_verify(&c, &forms), Ok(false));
    }

    #[test]
    fn lsop_verify_dimension_mismatch() {
        let c = u24_complex();
        let forms = LinearForms::new(vec![vec![1, 1, 1, 1]]);
        assert!(matches!(
            lsop_verify(&c, &forms),
            Err(FaceRingError::DimensionMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn lsop_random_is_seeded_and_deterministic() {
        let c = u24_complex();
        let mut rng1 = ChaCha8Rng::seed_from_u64(7);
        let mut rng2 = ChaCha8Rng::seed_from_u64(7);
        let (f1, a1) = lsop_random(&c, 97, &mut rng1, 64).unwrap();
        let (f2, a2) = lsop_random(&c, 97, &mut rng2, 64).unwrap();
        assert_eq!(f1, f2);
        assert_eq!(a1, a2);
    }

    #[test]
    fn lsop_random_rejects_zero_bound() {
        let c = u24_complex();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(matches!(
            lsop_random(&c, 0, &mut rng, 8),
            Err(FaceRingError::LsopNotFound { attempts: 8 })
        ));
    }

    #[test]
    fn random_forms_pass_with_overwhelming_probability() {
        let c = u24_complex();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut first_try = 0;
        for _ in 0..20 {
            let (_, attempts) = lsop_random(&c, 97, &mut rng, 64).unwrap();
            if attempts == 1 {
                first_try += 1;
            }
        }
        assert!(first_try >= 19, "generic sampling should almost never retry");
    }

    #[test]
    fn graded_piece_degree_zero() {
        let c = u24_complex();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (forms, _) = lsop_random(&c, 97, &mut rng, 64).unwrap();
        let piece = GradedPiece::build(&c, &forms, 0).unwrap();
        assert_eq!(piece.quotient_dim, 1);
        assert_eq!(piece.quotient_basis, vec![0]);
    }

    #[test]
    fn graded_dims_match_h_vector_for_u24() {
        let c = u24_complex();
        let h = c.h_vector();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let (forms, _) = lsop_random(&c, 97, &mut rng, 64).unwrap();
        for d in 0..=3 {
            let piece = GradedPiece::build(&c, &forms, d).unwrap();
            assert_eq!(piece.quotient_dim as i64, h.get(d), "degree {d}");
            assert_eq!(piece.quotient_basis.len(), piece.quotient_dim);
        }
    }

    #[test]
    fn modular_rank_agrees_with_exact_on_u24() {
        let c = u24_complex();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let (forms, _) = lsop_random(&c, 97, &mut rng, 64).unwrap();
        for d in 0..=3 {
            let piece = GradedPiece::build(&c, &forms, d).unwrap();
            for p in [1073741827u64, 2147483647, 1073741831] {
                let (mons, rank) = GradedPiece::modular_rank(&c, &forms, d, p);
                assert_eq!(mons, piece.monomials.len());
                assert_eq!(rank, piece.rank, "degree {d} mod {p}");
            }
        }
    }
}
