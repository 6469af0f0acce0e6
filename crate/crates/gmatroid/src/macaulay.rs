//! The Macaulay pseudopower operator and the inequality families it bounds.
//!
//! For integers `j, i > 0` there is a unique expansion
//! `j = C(a_i, i) + C(a_{i-1}, i-1) + ... + C(a_l, l)` with
//! `a_i > a_{i-1} > ... > a_l >= l >= 1`; the pseudopower
//! `j^<i> = C(a_i+1, i+1) + ... + C(a_l+1, l+1)` is the largest possible
//! Hilbert-function value in degree i+1 of a standard graded algebra whose
//! degree-i component has dimension j. O-sequences are exactly the integer
//! sequences respecting that growth bound in every degree.

use num::bigint::ToBigUint;
use num::BigUint;
use num::{One, Zero};
use thiserror::Error;

use crate::complex::HVector;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MacaulayError {
    #[error("expansion requires j >= 1 and i >= 1 (got j = {j}, i = {i})")]
    InvalidDegree { j: u64, i: u32 },
}

/// The unique strictly-decreasing binomial expansion of `j` in degree `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MacaulayExpansion {
    degree: u32,
    /// Pairs `(a_k, k)` with k descending from `degree` and `a_k` strictly
    /// decreasing, `a_k >= k >= 1`.
    terms: Vec<(u64, u32)>,
}

impl MacaulayExpansion {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &[(u64, u32)] {
        &self.terms
    }

    /// Reassembles the expanded integer.
    pub fn value(&self) -> u64 {
        let sum: BigUint =
            self.terms.iter().map(|&(a, k)| binomial_big(a, k as u64)).sum();
        u64::try_from(&sum).expect("expansion value fits u64 by construction")
    }
}

fn binomial_big(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for j in 0..k {
        acc = acc * (n - j).to_biguint().unwrap() / (j + 1).to_biguint().unwrap();
    }
    acc
}

/// Greedy binomial expansion: `a_i` is the largest `a` with `C(a, i) <= j`,
/// then recurse on the remainder in degree i-1.
pub fn expand(j: u64, i: u32) -> Result<MacaulayExpansion, MacaulayError> {
    if j < 1 || i < 1 {
        return Err(MacaulayError::InvalidDegree { j, i });
    }
    let big_j = j.to_biguint().unwrap();
    let mut remainder = big_j;
    let mut terms = Vec::new();
    let mut k = i;
    while !remainder.is_zero() {
        debug_assert!(k >= 1, "greedy expansion exhausted degrees");
        let mut a = k as u64;
        let mut value = BigUint::one(); // C(k, k)
        if value > remainder {
            // C(k,k) = 1 <= remainder >= 1 always; unreachable.
            unreachable!("remainder below 1");
        }
        loop {
            // C(a+1, k) = C(a, k) * (a+1) / (a+1-k)
            let next = &value * (a + 1).to_biguint().unwrap() / (a + 1 - k as u64).to_biguint().unwrap();
            if next <= remainder {
                a += 1;
                value = next;
            } else {
                break;
            }
        }
        remainder -= value;
        terms.push((a, k));
        k -= 1;
    }
    debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0), "a_k must strictly decrease");
    let expansion = MacaulayExpansion { degree: i, terms };
    debug_assert_eq!(expansion.value(), j);
    Ok(expansion)
}

/// `j^<i>`: each term `C(a_k, k)` of the expansion becomes `C(a_k+1, k+1)`.
/// By convention `0^<i> = 0`, so growth from dimension zero stays zero.
pub fn pseudopower(j: u64, i: u32) -> u64 {
    assert!(i >= 1, "pseudopower needs i >= 1");
    if j == 0 {
        return 0;
    }
    let expansion = expand(j, i).expect("j >= 1 here");
    let sum: BigUint = expansion
        .terms
        .iter()
        .map(|&(a, k)| binomial_big(a + 1, k as u64 + 1))
        .sum();
    u64::try_from(&sum).expect("pseudopower exceeds u64; inputs are far beyond desk scale")
}

/// Verdict of an O-sequence check: where the first growth violation sits, if
/// any, and whether the sequence starts at 1 as a Hilbert function must.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OSequenceVerdict {
    pub ok: bool,
    /// Index `i+1` of the first entry violating `h_{i+1} <= h_i^<i>` (or 0
    /// when `h_0 != 1`, or the index of a negative entry).
    pub first_violation: Option<usize>,
    pub starts_at_one: bool,
}

/// Checks `h_{i+1} <= h_i^<i>` for all i >= 1, plus nonnegativity and
/// `h_0 = 1`.
pub fn is_o_sequence(h: &[i64]) -> OSequenceVerdict {
    let starts_at_one = h.first().copied().unwrap_or(1) == 1;
    if !starts_at_one {
        return OSequenceVerdict { ok: false, first_violation: Some(0), starts_at_one };
    }
    if let Some(neg) = h.iter().position(|&x| x < 0) {
        return OSequenceVerdict { ok: false, first_violation: Some(neg), starts_at_one };
    }
    for i in 1..h.len().saturating_sub(1) {
        let bound = pseudopower(h[i] as u64, i as u32);
        if (h[i + 1] as u64) > bound {
            return OSequenceVerdict { ok: false, first_violation: Some(i + 1), starts_at_one };
        }
    }
    OSequenceVerdict { ok: true, first_violation: None, starts_at_one }
}

/// One inequality family: whether it holds, and the first violating index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyVerdict {
    pub holds: bool,
    pub first_violation: Option<usize>,
}

impl FamilyVerdict {
    fn ok() -> Self {
        FamilyVerdict { holds: true, first_violation: None }
    }

    fn fail(at: usize) -> Self {
        FamilyVerdict { holds: false, first_violation: Some(at) }
    }
}

/// The three h-vector inequality families for a rank-r matroid complex:
///
/// 1. `h_0 <= h_1 <= ... <= h_{⌊r/2⌋}`;
/// 2. `h_i <= h_{r-i}` for all `i <= r/2`;
/// 3. `g_{i+1} <= g_i^<i>` for all `i < r/2`, where `g_i = h_i - h_{i-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HInequalities {
    pub nondecreasing_first_half: FamilyVerdict,
    pub tail_dominates: FamilyVerdict,
    pub g_growth: FamilyVerdict,
}

impl HInequalities {
    pub fn all_hold(&self) -> bool {
        self.nondecreasing_first_half.holds && self.tail_dominates.holds && self.g_growth.holds
    }
}

/// Evaluates the three families on `h` padded with zeros up to index `r`.
pub fn check_h_inequalities(h: &HVector, r: usize) -> HInequalities {
    let at = |i: usize| h.get(i);
    let nondecreasing_first_half = (1..=r / 2)
        .find(|&i| at(i - 1) > at(i))
        .map_or(FamilyVerdict::ok(), FamilyVerdict::fail);
    let tail_dominates = (0..=r / 2)
        .find(|&i| at(i) > at(r - i))
        .map_or(FamilyVerdict::ok(), FamilyVerdict::fail);
    let g = |i: usize| if i == 0 { 1 } else { at(i) - at(i - 1) };
    let mut g_growth = FamilyVerdict::ok();
    for i in 1..=r {
        if 2 * i >= r {
            break;
        }
        let gi = g(i);
        let violated = if gi < 0 {
            true
        } else {
            g(i + 1) > pseudopower(gi as u64, i as u32) as i64
        };
        if violated {
            g_growth = FamilyVerdict::fail(i);
            break;
        }
    }
    HInequalities { nondecreasing_first_half, tail_dominates, g_growth }
}
