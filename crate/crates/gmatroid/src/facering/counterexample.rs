//! The broken-circuit obstruction for subdivided parallel edges.
//!
//! For the cycle matroid of s once-subdivided parallel edges (s ≥ 5), the
//! broken-circuit h-vector passes all three inequality families, yet for
//! every parameter system the quotient has no g-element: the class of
//! `x_i x_j` — the two halves of the last subdivided edge to assemble under
//! the chosen order — spans a one-dimensional ideal in degree 2 that every
//! one-form annihilates. This module identifies the pair, reproduces the
//! kernel across seeded trials in exact arithmetic, and records that the
//! failure is algebraic rather than combinatorial.

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

use super::quotient::{BigIntOps, Engine};
use super::{
    lsop_random, relation_rows, sample_coefficient, FaceRingError, LinearForms, MonomialTable,
};
use crate::complex::{broken_circuit_complex, g_vector, HVector};
use crate::linalg::ExactMatrix;
use crate::macaulay::{check_h_inequalities, is_o_sequence, HInequalities, OSequenceVerdict};
use crate::matroid::{ElementOrder, Matroid};

/// One seeded (Θ, ω) trial. Both verdicts are established in exact
/// arithmetic; `direct_checked` marks trials additionally confirmed against
/// the direct relation-matrix presentation.
#[derive(Clone, Debug)]
pub struct CounterexampleTrial {
    pub trial: usize,
    pub lsop_attempts: usize,
    pub theta: Vec<Vec<i64>>,
    pub omega: Vec<i64>,
    /// The class of x_i x_j is nonzero in degree 2.
    pub class_nonzero: bool,
    /// ω · x_i x_j falls into the degree-3 relation space.
    pub annihilated: bool,
    /// For ranks where the g-element power from degree 2 exceeds one: does
    /// ω^(r-m-4) also annihilate the class into degree r-m-2?
    pub def_power_annihilated: Option<bool>,
    pub direct_checked: bool,
}

#[derive(Clone, Debug)]
pub struct CounterexampleReport {
    pub s: usize,
    pub order: Vec<usize>,
    /// The subdivision pair {e_i, e_j} whose product spans the kernel.
    pub pair: (usize, usize),
    pub h: HVector,
    pub g: Vec<i64>,
    /// Index of the last nonzero h entry (rank minus component count).
    pub top_degree: usize,
    pub inequalities: HInequalities,
    pub o_sequence: OSequenceVerdict,
    /// True for s < 5: the kernel exists but contradicts nothing, since the
    /// relevant multiplication power from degree 2 is trivial.
    pub below_threshold: bool,
    pub trials: Vec<CounterexampleTrial>,
    pub all_trials_annihilate: bool,
    pub seed: u64,
    pub bound: i64,
}

/// The first subdivision pair completed when scanning elements from the
/// order-greatest down: with 2s halves in s pairs, a pair completes within
/// s+1 steps.
pub(crate) fn obstruction_pair(s: usize, order: &ElementOrder) -> (usize, usize) {
    assert_eq!(order.len(), 2 * s);
    let mut seen = vec![false; 2 * s];
    for &e in &order.descending() {
        let partner = e ^ 1;
        if seen[partner] {
            return (e.min(partner), e.max(partner));
        }
        seen[e] = true;
    }
    unreachable!("a pair completes after at most s+1 elements");
}

/// Runs the seeded trial battery for the rank-(s+1) subdivided-parallel
/// matroid under the given element order.
pub fn verify_theta_counterexample(
    s: usize,
    order: &ElementOrder,
    trials: usize,
    bound: i64,
    seed: u64,
) -> Result<CounterexampleReport, FaceRingError> {
    assert!(s >= 2, "the construction needs at least two parallel edges");
    let m = Matroid::theta(s);
    let complex = broken_circuit_complex(&m, order)?;
    let pair = obstruction_pair(s, order);
    let h = complex.h_vector();
    let top_degree = m.rank() - m.components();
    let inequalities = check_h_inequalities(&h, top_degree);
    let o_sequence = is_o_sequence(h.trimmed());
    let g = g_vector(&h, top_degree);

    let mut product_monomial = vec![0u8; 2 * s];
    product_monomial[pair.0] = 1;
    product_monomial[pair.1] = 1;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out_trials = Vec::with_capacity(trials);
    for trial in 1..=trials {
        let (forms, lsop_attempts) = lsop_random(&complex, bound, &mut rng, 64)?;
        let omega: Vec<i64> =
            (0..2 * s).map(|_| sample_coefficient(&mut rng, bound)).collect();
        let mut engine = Engine::build(BigIntOps, &complex, &forms)
            .ok()
            .expect("verified parameter system");
        let class = engine.class_of_monomial(&product_monomial);
        let class_nonzero = !engine.is_ideal_member(2, class.clone());
        let omega_form = engine.free_form_of(&omega);
        let product = engine.mul_by_free_form(2, &class, &omega_form);
        let annihilated = engine.is_ideal_member(3, product);
        let def_power_annihilated = if top_degree >= 6 {
            // Definition power r-m-4 > 1: iterate the multiplication up to
            // degree r-m-2 and test membership there.
            let mut v = class.clone();
            let mut d = 2;
            for _ in 0..top_degree - 4 {
                v = engine.mul_by_free_form(d, &v, &omega_form);
                d += 1;
            }
            Some(engine.is_ideal_member(top_degree - 2, v))
        } else {
            None
        };
        let direct_checked = trial == 1 && s <= 5;
        if direct_checked {
            direct_presentation_check(
                &complex,
                &forms,
                &omega,
                &product_monomial,
                class_nonzero,
                annihilated,
            );
        }
        out_trials.push(CounterexampleTrial {
            trial,
            lsop_attempts,
            theta: forms.theta().to_vec(),
            omega,
            class_nonzero,
            annihilated,
            def_power_annihilated,
            direct_checked,
        });
    }
    let all_trials_annihilate =
        out_trials.iter().all(|t| t.class_nonzero && t.annihilated);
    Ok(CounterexampleReport {
        s,
        order: order.as_slice().to_vec(),
        pair,
        h,
        g,
        top_degree,
        inequalities,
        o_sequence,
        below_threshold: s < 5,
        trials: out_trials,
        all_trials_annihilate,
        seed,
        bound,
    })
}

/// Re-establishes both verdicts on the direct presentation: appending the
/// unit row of x_i x_j to the degree-2 relation rows must raise the rank
/// (nonzero class), and appending the reduced row of ω·x_i x_j to the
/// degree-3 relation rows must not (membership). Exact arithmetic.
fn direct_presentation_check(
    complex: &crate::complex::SimplicialComplex,
    forms: &LinearForms,
    omega: &[i64],
    product_monomial: &[u8],
    expect_nonzero: bool,
    expect_member: bool,
) {
    let table2 = MonomialTable::faces(complex, 2);
    let rows2 = relation_rows(complex, forms, 2, &table2);
    let rel2 = ExactMatrix::from_int_rows(&rows2);
    let mut unit = vec![0i64; table2.len()];
    unit[table2.position(product_monomial).expect("the pair is a face")] = 1;
    let augmented2 = rel2.vstack(&ExactMatrix::from_int_rows(&[unit]));
    assert_eq!(
        augmented2.rank() == rel2.rank() + 1,
        expect_nonzero,
        "direct and reduced presentations disagree on the degree-2 class"
    );

    let table3 = MonomialTable::faces(complex, 3);
    let rows3 = relation_rows(complex, forms, 3, &table3);
    let rel3 = ExactMatrix::from_int_rows(&rows3);
    let mut image = vec![0i64; table3.len()];
    for (v, &coeff) in omega.iter().enumerate() {
        if coeff == 0 {
            continue;
        }
        let mut mono = product_monomial.to_vec();
        mono[v] += 1;
        if let Some(idx) = table3.position(&mono) {
            image[idx] += coeff;
        }
    }
    let augmented3 = rel3.vstack(&ExactMatrix::from_int_rows(&[image]));
    assert_eq!(
        augmented3.rank() == rel3.rank(),
        expect_member,
        "direct and reduced presentations disagree on the degree-3 membership"
    );
}
