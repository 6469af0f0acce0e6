//! Matroids with an explicit basis family, plus the minor and structural
//! operations (deletion, contraction, direct sums, series classes) that the
//! h-vector recursions need.
//!
//! Ground sets are small by design (at most [`MAX_GROUND`] elements, labeled
//! `0..n`), so subsets are bitmasks and every derived quantity is computed by
//! honest enumeration against the stored bases.

use std::collections::{HashMap, HashSet};

use thiserror::Error;

use crate::bits::{mask_of, unmask, Mask};

/// Hard cap on the ground-set size. Everything in this crate is desk scale;
/// explicit bases on more than 16 elements would be the wrong representation.
pub const MAX_GROUND: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatroidError {
    #[error("basis family is empty")]
    EmptyFamily,
    #[error("element {element} out of range for ground set of size {n}")]
    OutOfRange { element: usize, n: usize },
    #[error("ground set of size {0} exceeds the supported maximum {MAX_GROUND}")]
    TooLarge(usize),
    #[error("bases have unequal sizes: {0:?} and {1:?}")]
    UnequalBasisSizes(Vec<usize>, Vec<usize>),
    #[error("exchange axiom fails for bases {b1:?}, {b2:?} removing {removed}")]
    ExchangeFailure { b1: Vec<usize>, b2: Vec<usize>, removed: usize },
    #[error("circuit family violates {0}")]
    BadCircuits(String),
    #[error("graph edge ({0}, {1}) has an endpoint out of range")]
    BadEdge(usize, usize),
}

/// A matroid on ground set `0..n`, stored as its full basis family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matroid {
    n: usize,
    rank: usize,
    /// Sorted, duplicate-free basis bitmasks.
    bases: Vec<Mask>,
}

impl Matroid {
    /// Validates and builds a matroid from an explicit basis family. Runs the
    /// full exchange-axiom check and reports a witness on failure.
    pub fn from_bases(n: usize, bases: &[Vec<usize>]) -> Result<Self, MatroidError> {
        if n > MAX_GROUND {
            return Err(MatroidError::TooLarge(n));
        }
        if bases.is_empty() {
            return Err(MatroidError::EmptyFamily);
        }
        for b in bases {
            for &e in b {
                if e >= n {
                    return Err(MatroidError::OutOfRange { element: e, n });
                }
            }
        }
        let rank = bases[0].len();
        for b in bases {
            let m = mask_of(b);
            if m.count_ones() as usize != b.len() || b.len() != rank {
                return Err(MatroidError::UnequalBasisSizes(bases[0].clone(), b.clone()));
            }
        }
        let mut masks: Vec<Mask> = bases.iter().map(|b| mask_of(b)).collect();
        masks.sort_unstable();
        masks.dedup();
        let set: HashSet<Mask> = masks.iter().copied().collect();
        for &b1 in &masks {
            for &b2 in &masks {
                if b1 == b2 {
                    continue;
                }
                let mut out = b1 & !b2;
                while out != 0 {
                    let e = out.trailing_zeros();
                    out &= out - 1;
                    let stripped = b1 & !(1 << e);
                    let mut candidates = b2 & !b1;
                    let mut found = false;
                    while candidates != 0 {
                        let f = candidates.trailing_zeros();
                        candidates &= candidates - 1;
                        if set.contains(&(stripped | (1 << f))) {
                            found = true;
                            break;
                        }
                    }
                    if !found {
                        return Err(MatroidError::ExchangeFailure {
                            b1: unmask(b1),
                            b2: unmask(b2),
                            removed: e as usize,
                        });
                    }
                }
            }
        }
        Ok(Matroid { n, rank, bases: masks })
    }

    /// Builds a matroid from its circuit family after checking the circuit
    /// axioms (incomparability and elimination). Independent sets are the
    /// circuit-free subsets; bases are the maximal ones.
    pub fn from_circuits(n: usize, circuits: &[Vec<usize>]) -> Result<Self, MatroidError> {
        if n > MAX_GROUND {
            return Err(MatroidError::TooLarge(n));
        }
        for c in circuits {
            if c.is_empty() {
                return Err(MatroidError::BadCircuits("the empty set cannot be a circuit".into()));
            }
            for &e in c {
                if e >= n {
                    return Err(MatroidError::OutOfRange { element: e, n });
                }
            }
        }
        let mut masks: Vec<Mask> = circuits.iter().map(|c| mask_of(c)).collect();
        masks.sort_unstable();
        masks.dedup();
        for &a in &masks {
            for &b in &masks {
                if a != b && a & b == a {
                    return Err(MatroidError::BadCircuits(format!(
                        "incomparability: {:?} contained in {:?}",
                        unmask(a),
                        unmask(b)
                    )));
                }
            }
        }
        for &a in &masks {
            for &b in &masks {
                if a == b {
                    continue;
                }
                let mut common = a & b;
                while common != 0 {
                    let e = common.trailing_zeros();
                    common &= common - 1;
                    let goal = (a | b) & !(1 << e);
                    if !masks.iter().any(|&c| c & goal == c) {
                        return Err(MatroidError::BadCircuits(format!(
                            "elimination fails for {:?}, {:?} at {}",
                            unmask(a),
                            unmask(b),
                            e
                        )));
                    }
                }
            }
        }
        let free = |s: Mask| masks.iter().all(|&c| c & s != c);
        let mut best = 0usize;
        let mut bases = Vec::new();
        for s in 0..(1u32 << n) {
            if !free(s) {
                continue;
            }
            let k = s.count_ones() as usize;
            if k > best {
                best = k;
                bases.clear();
            }
            if k == best {
                bases.push(s);
            }
        }
        Ok(Matroid { n, rank: best, bases })
    }

    /// The uniform matroid U_{r,n}: every r-subset is a basis.
    pub fn uniform(r: usize, n: usize) -> Self {
        assert!(r <= n && n <= MAX_GROUND, "uniform({r}, {n}) out of range");
        let mut bases = Vec::new();
        for s in 0..(1u32 << n) {
            if s.count_ones() as usize == r {
                bases.push(s);
            }
        }
        Matroid { n, rank: r, bases }
    }

    /// The circuit matroid C(j) on j elements: a single circuit consisting of
    /// the whole ground set, i.e. U_{j-1,j}.
    pub fn circuit(j: usize) -> Self {
        assert!(j >= 1, "circuit needs at least one element");
        Matroid::uniform(j - 1, j)
    }

    /// Cycle matroid of a multigraph. Elements are edge indices; a subset is
    /// independent exactly when it is a forest. Loops (u, u) and parallel
    /// edges are allowed.
    pub fn from_graph(vertices: usize, edges: &[(usize, usize)]) -> Result<Self, MatroidError> {
        if edges.len() > MAX_GROUND {
            return Err(MatroidError::TooLarge(edges.len()));
        }
        for &(a, b) in edges {
            if a >= vertices || b >= vertices {
                return Err(MatroidError::BadEdge(a, b));
            }
        }
        let n = edges.len();
        let is_forest = |s: Mask| {
            let mut parent: Vec<usize> = (0..vertices).collect();
            fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
                while parent[x] != x {
                    parent[x] = parent[parent[x]];
                    x = parent[x];
                }
                x
            }
            let mut m = s;
            while m != 0 {
                let e = m.trailing_zeros() as usize;
                m &= m - 1;
                let (a, b) = edges[e];
                let ra = find(&mut parent, a);
                let rb = find(&mut parent, b);
                if ra == rb {
                    return false;
                }
                parent[ra] = rb;
            }
            true
        };
        let mut best = 0usize;
        let mut bases = Vec::new();
        for s in 0..(1u32 << n) {
            if !is_forest(s) {
                continue;
            }
            let k = s.count_ones() as usize;
            if k > best {
                best = k;
                bases.clear();
            }
            if k == best {
                bases.push(s);
            }
        }
        Ok(Matroid { n, rank: best, bases })
    }

    /// Cycle matroid of s parallel edges between two hub vertices, each
    /// subdivided once: 2s elements, rank s+1. Edges 2t and 2t+1 are the two
    /// halves of the t-th subdivided edge.
    pub fn theta(s: usize) -> Self {
        assert!(s >= 1, "theta needs at least one parallel edge");
        let mut edges = Vec::with_capacity(2 * s);
        for t in 0..s {
            edges.push((0, 2 + t));
            edges.push((2 + t, 1));
        }
        Matroid::from_graph(2 + s, &edges).expect("theta graph is well formed")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_bases(&self) -> usize {
        self.bases.len()
    }

    /// The basis family as sorted index lists, lexicographically ordered.
    pub fn bases(&self) -> Vec<Vec<usize>> {
        self.bases.iter().map(|&b| unmask(b)).collect()
    }

    pub(crate) fn basis_masks(&self) -> &[Mask] {
        &self.bases
    }

    fn rank_of_mask(&self, s: Mask) -> usize {
        self.bases.iter().map(|&b| (b & s).count_ones() as usize).max().unwrap_or(0)
    }

    /// Rank of a subset: the size of a largest independent subset of it.
    pub fn rank_of(&self, subset: &[usize]) -> usize {
        self.check_range(subset);
        self.rank_of_mask(mask_of(subset))
    }

    pub fn is_independent(&self, subset: &[usize]) -> bool {
        self.check_range(subset);
        let m = mask_of(subset);
        self.rank_of_mask(m) == m.count_ones() as usize
    }

    fn check_range(&self, subset: &[usize]) {
        for &e in subset {
            assert!(e < self.n, "element {e} out of range");
        }
    }

    /// Elements lying in no basis.
    pub fn loops(&self) -> Vec<usize> {
        let union = self.bases.iter().fold(0, |m, &b| m | b);
        unmask(!union & ((1 << self.n) - 1))
    }

    /// Elements lying in every basis.
    pub fn coloops(&self) -> Vec<usize> {
        let inter = self.bases.iter().fold((1 << self.n) - 1, |m: Mask, &b| m & b);
        unmask(inter)
    }

    /// Deletes `a`, relabeling the survivors to a dense ground set. Returns
    /// the minor and the map from new labels to old elements.
    pub fn delete(&self, a: &[usize]) -> (Matroid, Vec<usize>) {
        self.check_range(a);
        let keep = !mask_of(a) & ((1u32 << self.n) - 1);
        let map = unmask(keep);
        let new_rank = self.rank_of_mask(keep);
        let minor = self.collect_minor(&map, new_rank, |s| {
            self.rank_of_mask(s) == s.count_ones() as usize
        });
        (minor, map)
    }

    /// Contracts `a`: fixes a maximal independent subset of `a` (greedy in
    /// ascending element order) and keeps the sets independent jointly with
    /// it. Survivors are relabeled densely; the label map is returned.
    pub fn contract(&self, a: &[usize]) -> (Matroid, Vec<usize>) {
        self.check_range(a);
        let a_mask = mask_of(a);
        let mut fixed: Mask = 0;
        for e in 0..self.n {
            let bit = 1u32 << e;
            if a_mask & bit != 0 {
                let candidate = fixed | bit;
                if self.rank_of_mask(candidate) == candidate.count_ones() as usize {
                    fixed = candidate;
                }
            }
        }
        let map = unmask(!a_mask & ((1u32 << self.n) - 1));
        let new_rank = self.rank - fixed.count_ones() as usize;
        let minor = self.collect_minor(&map, new_rank, |s| {
            let joint = s | fixed;
            self.rank_of_mask(joint) == joint.count_ones() as usize
        });
        (minor, map)
    }

    fn collect_minor(
        &self,
        map: &[usize],
        rank: usize,
        independent: impl Fn(Mask) -> bool,
    ) -> Matroid {
        let k = map.len();
        let mut bases = Vec::new();
        for s in 0..(1u32 << k) {
            if s.count_ones() as usize != rank {
                continue;
            }
            let lifted = unmask(s).iter().fold(0u32, |m, &i| m | (1 << map[i]));
            if independent(lifted) {
                bases.push(s);
            }
        }
        debug_assert!(!bases.is_empty());
        Matroid { n: k, rank, bases }
    }

    /// Direct sum; the second summand is relabeled to start at `self.n()`.
    pub fn direct_sum(&self, other: &Matroid) -> Matroid {
        assert!(self.n + other.n <= MAX_GROUND, "direct sum too large");
        let mut bases = Vec::with_capacity(self.bases.len() * other.bases.len());
        for &b1 in &self.bases {
            for &b2 in &other.bases {
                bases.push(b1 | (b2 << self.n));
            }
        }
        bases.sort_unstable();
        Matroid { n: self.n + other.n, rank: self.rank + other.rank, bases }
    }

    /// All minimal dependent sets, each sorted, the family ordered
    /// lexicographically.
    pub fn circuits(&self) -> Vec<Vec<usize>> {
        let mut circuit_masks: Vec<Mask> = Vec::new();
        let full: Mask = (1u32 << self.n) - 1;
        for size in 1..=self.rank + 1 {
            for s in 0..=full {
                if s.count_ones() as usize != size {
                    continue;
                }
                if self.rank_of_mask(s) == size {
                    continue; // independent
                }
                if circuit_masks.iter().any(|&c| c & s == c) {
                    continue; // contains a smaller circuit
                }
                circuit_masks.push(s);
            }
        }
        let mut out: Vec<Vec<usize>> = circuit_masks.iter().map(|&c| unmask(c)).collect();
        out.sort();
        out
    }

    /// Series classes: maximal sets of elements such that every circuit
    /// containing one contains all. Loops are excluded, as are elements lying
    /// in no circuit (coloops in particular). Classes are sorted by their
    /// least element.
    pub fn series_classes(&self) -> Vec<Vec<usize>> {
        let circuits = self.circuits();
        let loop_mask = mask_of(&self.loops());
        let mut signature: HashMap<Vec<bool>, Vec<usize>> = HashMap::new();
        for e in 0..self.n {
            if loop_mask & (1 << e) != 0 {
                continue;
            }
            let sig: Vec<bool> = circuits.iter().map(|c| c.binary_search(&e).is_ok()).collect();
            if sig.iter().any(|&b| b) {
                signature.entry(sig).or_default().push(e);
            }
        }
        let mut classes: Vec<Vec<usize>> = signature.into_values().collect();
        classes.sort();
        classes
    }

    /// Number of connected components. Loops and coloops are singleton
    /// components; other elements are joined when a chain of circuits links
    /// them.
    pub fn components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for c in self.circuits() {
            for w in c.windows(2) {
                let a = find(&mut parent, w[0]);
                let b = find(&mut parent, w[1]);
                if a != b {
                    parent[a] = b;
                }
            }
        }
        (0..self.n).filter(|&e| find(&mut parent, e) == e).count()
    }
}

/// A linear order on the ground set: `perm[k]` is the element with priority
/// k, so earlier positions are smaller elements of the order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementOrder {
    perm: Vec<usize>,
    position: Vec<usize>,
}

impl ElementOrder {
    /// The identity order: element i has priority i.
    pub fn natural(n: usize) -> Self {
        ElementOrder { perm: (0..n).collect(), position: (0..n).collect() }
    }

    pub fn new(perm: Vec<usize>) -> Result<Self, MatroidError> {
        let n = perm.len();
        let mut position = vec![usize::MAX; n];
        for (k, &e) in perm.iter().enumerate() {
            if e >= n {
                return Err(MatroidError::OutOfRange { element: e, n });
            }
            if position[e] != usize::MAX {
                return Err(MatroidError::BadCircuits(format!("order repeats element {e}")));
            }
            position[e] = k;
        }
        Ok(ElementOrder { perm, position })
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.perm
    }

    /// Priority of an element (0 = least).
    pub fn position(&self, e: usize) -> usize {
        self.position[e]
    }

    pub fn least_of(&self, set: &[usize]) -> usize {
        *set.iter().min_by_key(|&&e| self.position[e]).expect("nonempty set")
    }

    pub fn greatest_of(&self, set: &[usize]) -> usize {
        *set.iter().max_by_key(|&&e| self.position[e]).expect("nonempty set")
    }

    /// The order induced on a minor: `map[new] = old` gives the surviving
    /// elements, which keep their relative priorities.
    pub fn induced(&self, map: &[usize]) -> ElementOrder {
        let mut new_labels: Vec<usize> = (0..map.len()).collect();
        new_labels.sort_by_key(|&i| self.position[map[i]]);
        ElementOrder::new(new_labels).expect("induced order is a permutation")
    }

    /// Elements listed from greatest to least.
    pub fn descending(&self) -> Vec<usize> {
        self.perm.iter().rev().copied().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_triples_except(n: usize, excluded: &[Vec<usize>]) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let t = vec![a, b, c];
                    if !excluded.contains(&t) {
                        out.push(t);
                    }
                }
            }
        }
        out
    }

    #[test]
    fn twin_matroids_are_valid() {
        let m1 = Matroid::from_bases(6, &all_triples_except(6, &[vec![0, 1, 2], vec![3, 4, 5]]));
        let m2 = Matroid::from_bases(6, &all_triples_except(6, &[vec![0, 1, 2], vec![0, 4, 5]]));
        assert_eq!(m1.unwrap().num_bases(), 18);
        assert_eq!(m2.unwrap().num_bases(), 18);
    }

    #[test]
    fn exchange_failure_is_detected() {
        // Two disjoint pairs with no mixed basis cannot satisfy exchange.
        let err = Matroid::from_bases(4, &[vec![0, 1], vec![2, 3]]).unwrap_err();
        match err {
            MatroidError::ExchangeFailure { .. } => {}
            other => panic!("expected exchange failure, got {other:?}"),
        }
    }

    #[test]
    fn parallel_pair_plus_coloop_is_a_matroid() {
        // {0,2} parallel, 1 a coloop: bases {0,1} and {1,2}. The exchange
        // axiom quantifies over e in B1 \ B2, so this family is valid.
        let m = Matroid::from_bases(3, &[vec![0, 1], vec![1, 2]]).unwrap();
        assert_eq!(m.coloops(), vec![1]);
        assert_eq!(m.circuits(), vec![vec![0, 2]]);
    }

    #[test]
    fn empty_family_rejected() {
        assert_eq!(Matroid::from_bases(3, &[]), Err(MatroidError::EmptyFamily));
    }

    #[test]
    fn from_circuits_single_big_circuit() {
        let m = Matroid::from_circuits(4, &[vec![0, 1, 2, 3]]).unwrap();
        assert_eq!(m, Matroid::uniform(3, 4));
    }

    #[test]
    fn from_circuits_all_loops() {
        let m = Matroid::from_circuits(2, &[vec![0], vec![1]]).unwrap();
        assert_eq!(m.rank(), 0);
        assert_eq!(m.bases(), vec![Vec::<usize>::new()]);
        assert_eq!(m.loops(), vec![0, 1]);
    }

    #[test]
    fn from_circuits_matches_graph_construction() {
        let g = Matroid::theta(3);
        let via_circuits = Matroid::from_circuits(6, &g.circuits()).unwrap();
        assert_eq!(g, via_circuits);
    }

    #[test]
    fn circuit_axiom_violations_rejected() {
        assert!(Matroid::from_circuits(3, &[vec![0], vec![0, 1]]).is_err());
        // {0,1} and {1,2} sharing 1 demand a circuit inside {0,2}.
        assert!(Matroid::from_circuits(3, &[vec![0, 1], vec![1, 2]]).is_err());
    }

    #[test]
    fn uniform_counts() {
        assert_eq!(Matroid::uniform(2, 4).num_bases(), 6);
        assert_eq!(Matroid::uniform(0, 3).bases(), vec![Vec::<usize>::new()]);
        assert_eq!(Matroid::uniform(3, 4), Matroid::circuit(4));
    }

    #[test]
    fn graph_triangle_is_u23() {
        let m = Matroid::from_graph(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(m, Matroid::uniform(2, 3));
    }

    #[test]
    fn graph_loop_edge_is_matroid_loop() {
        let m = Matroid::from_graph(2, &[(0, 0), (0, 1)]).unwrap();
        assert_eq!(m.loops(), vec![0]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn theta_shape() {
        let m = Matroid::theta(5);
        assert_eq!(m.n(), 10);
        assert_eq!(m.rank(), 6);
        let m2 = Matroid::theta(2);
        assert_eq!(m2.n(), 4);
        assert_eq!(m2.rank(), 3);
        assert_eq!(m2.circuits(), vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn theta_circuits_are_path_pairs() {
        // Independent oracle: enumerate simple cycles of the underlying graph
        // directly. Each cycle uses the four edges of two subdivided paths.
        for s in 2..=5 {
            let m = Matroid::theta(s);
            let mut expected = Vec::new();
            for t1 in 0..s {
                for t2 in t1 + 1..s {
                    expected.push(vec![2 * t1, 2 * t1 + 1, 2 * t2, 2 * t2 + 1]);
                }
            }
            expected.sort();
            assert_eq!(m.circuits(), expected, "s = {s}");
            assert!(m.circuits().iter().all(|c| c.len() == 4));
        }
    }

    #[test]
    fn rank_of_basics() {
        let m = Matroid::uniform(2, 4);
        assert_eq!(m.rank_of(&[]), 0);
        assert_eq!(m.rank_of(&[0, 1, 2, 3]), 2);
        assert_eq!(m.rank_of(&[0, 1, 2]), 2);
    }

    #[test]
    fn loops_and_coloops() {
        let u = Matroid::uniform(2, 4);
        assert!(u.loops().is_empty());
        assert!(u.coloops().is_empty());
        let m = Matroid::from_circuits(2, &[vec![0]]).unwrap();
        assert_eq!(m.loops(), vec![0]);
        assert_eq!(m.coloops(), vec![1]);
        for s in 2..=5 {
            let t = Matroid::theta(s);
            assert!(t.loops().is_empty() && t.coloops().is_empty(), "s = {s}");
        }
    }

    #[test]
    fn delete_and_contract_uniform() {
        let u24 = Matroid::uniform(2, 4);
        let (d, dmap) = u24.delete(&[3]);
        assert_eq!(d, Matroid::uniform(2, 3));
        assert_eq!(dmap, vec![0, 1, 2]);
        let (c, cmap) = u24.contract(&[3]);
        assert_eq!(c, Matroid::uniform(1, 3));
        assert_eq!(cmap, vec![0, 1, 2]);
    }

    #[test]
    fn direct_sum_of_coloops() {
        let one = Matroid::uniform(1, 1);
        let m = one.direct_sum(&one);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.coloops(), vec![0, 1]);
    }

    #[test]
    fn direct_sum_of_circuits() {
        let m = Matroid::circuit(2).direct_sum(&Matroid::circuit(3));
        assert_eq!(m.rank(), 3);
        assert_eq!(m.n(), 5);
        assert_eq!(m.num_bases(), 2 * 3);
    }

    #[test]
    fn series_classes_of_theta_pair_up() {
        for s in 3..=5 {
            let m = Matroid::theta(s);
            let classes = m.series_classes();
            let expected: Vec<Vec<usize>> = (0..s).map(|t| vec![2 * t, 2 * t + 1]).collect();
            assert_eq!(classes, expected, "s = {s}");
        }
        // theta(2) is the 4-cycle: its one circuit is the whole ground set,
        // so all four elements fall in a single series class.
        assert_eq!(Matroid::theta(2).series_classes(), vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn series_classes_of_uniform_are_singletons() {
        let m = Matroid::uniform(2, 4);
        let classes = m.series_classes();
        assert_eq!(classes, vec![vec![0], vec![1], vec![2], vec![3]]);
    }

    #[test]
    fn series_class_of_circuit_is_everything() {
        for s in 2..=5 {
            let m = Matroid::circuit(s);
            assert_eq!(m.series_classes(), vec![(0..s).collect::<Vec<_>>()]);
        }
    }

    #[test]
    fn component_counts() {
        assert_eq!(Matroid::theta(5).components(), 1);
        assert_eq!(Matroid::circuit(3).direct_sum(&Matroid::circuit(3)).components(), 2);
        assert_eq!(Matroid::from_circuits(2, &[vec![0], vec![1]]).unwrap().components(), 2);
    }

    #[test]
    fn circuits_of_uniform() {
        let c = Matroid::uniform(2, 4).circuits();
        assert_eq!(c, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]);
    }

    #[test]
    fn circuits_of_twin_matroid() {
        // Minimal dependent sets of the first twin: the two excluded triples
        // and every 4-subset meeting both of them.
        let m1 = Matroid::from_bases(6, &all_triples_except(6, &[vec![0, 1, 2], vec![3, 4, 5]]))
            .unwrap();
        let circuits = m1.circuits();
        assert!(circuits.contains(&vec![0, 1, 2]));
        assert!(circuits.contains(&vec![3, 4, 5]));
        for c in &circuits {
            if c.len() == 4 {
                let in_first = c.iter().filter(|&&e| e < 3).count();
                assert!(in_first == 2, "4-circuit {c:?} must straddle the excluded triples");
            }
        }
        assert_eq!(circuits.len(), 2 + 9);
    }

    #[test]
    fn contracting_full_non_circuit_series_class_drops_rank_by_its_size() {
        let m = Matroid::theta(3);
        for class in m.series_classes() {
            let class_rank = m.rank_of(&class);
            let is_circuit = class_rank < class.len();
            if !is_circuit {
                let (c, _) = m.contract(&class);
                assert_eq!(c.rank(), m.rank() - class.len());
            }
        }
    }

    #[test]
    fn round_trip_bases() {
        let m = Matroid::theta(3);
        let again = Matroid::from_bases(m.n(), &m.bases()).unwrap();
        assert_eq!(m, again);
    }

    #[test]
    fn order_basics() {
        let o = ElementOrder::natural(4);
        assert_eq!(o.least_of(&[2, 1, 3]), 1);
        assert_eq!(o.greatest_of(&[2, 1, 3]), 3);
        let rev = ElementOrder::new(vec![3, 2, 1, 0]).unwrap();
        assert_eq!(rev.least_of(&[0, 1]), 1);
        let induced = rev.induced(&[0, 2]); // survivors: old 0 and old 2
        // Old 2 has higher priority than old 0 under rev.
        assert_eq!(induced.as_slice(), &[1, 0]);
        assert!(ElementOrder::new(vec![0, 0]).is_err());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arbitrary_small_matroid() -> impl Strategy<Value = Matroid> {
            prop_oneof![
                (0usize..=3, 3usize..=6).prop_map(|(r, n)| Matroid::uniform(r.min(n), n)),
                (2usize..=4).prop_map(Matroid::theta),
                (1usize..=4, 0usize..=20).prop_map(|(v, seed)| {
                    // Random multigraph on v+1 vertices with up to 7 edges.
                    let mut s = seed as u64 + 1;
                    let mut next = move || {
                        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                        s
                    };
                    let edges: Vec<(usize, usize)> = (0..7)
                        .map(|_| {
                            ((next() % (v as u64 + 1)) as usize, (next() % (v as u64 + 1)) as usize)
                        })
                        .collect();
                    Matroid::from_graph(v + 1, &edges).unwrap()
                }),
            ]
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn rank_function_is_monotone_and_submodular(m in arbitrary_small_matroid()) {
                let n = m.n();
                prop_assume!(n <= 7);
                let rank = |s: u32| {
                    let elems: Vec<usize> = (0..n).filter(|&e| s & (1 << e) != 0).collect();
                    m.rank_of(&elems)
                };
                let full = (1u32 << n) - 1;
                for a in 0..=full {
                    let ra = rank(a);
                    for e in 0..n {
                        let bit = 1 << e;
                        if a & bit != 0 {
                            continue;
                        }
                        // Monotone with unit increments.
                        let rae = rank(a | bit);
                        prop_assert!(rae == ra || rae == ra + 1);
                    }
                }
                // Submodularity on a deterministic sample of pairs.
                for a in (0..=full).step_by(3) {
                    for b in (0..=full).step_by(5) {
                        prop_assert!(rank(a | b) + rank(a & b) <= rank(a) + rank(b));
                    }
                }
            }

            #[test]
            fn deletions_compose(m in arbitrary_small_matroid()) {
                prop_assume!(m.n() >= 2);
                let a = vec![0usize];
                let b_old = m.n() - 1;
                let (d1, map1) = m.delete(&a);
                // Position of b_old inside d1's labels.
                let b_new = map1.iter().position(|&e| e == b_old).unwrap();
                let (d12, _) = d1.delete(&[b_new]);
                let (d_both, _) = m.delete(&[0, b_old]);
                prop_assert_eq!(d12, d_both);
            }

            #[test]
            fn from_bases_round_trips(m in arbitrary_small_matroid()) {
                let again = Matroid::from_bases(m.n(), &m.bases()).unwrap();
                prop_assert_eq!(m, again);
            }

            #[test]
            fn circuits_regenerate_the_matroid(m in arbitrary_small_matroid()) {
                let circuits = m.circuits();
                let again = Matroid::from_circuits(m.n(), &circuits).unwrap();
                prop_assert_eq!(&again.circuits(), &circuits);
                prop_assert_eq!(again, m);
            }

            #[test]
            fn series_classes_partition_circuit_support(m in arbitrary_small_matroid()) {
                let classes = m.series_classes();
                let mut seen = vec![false; m.n()];
                for class in &classes {
                    for &e in class {
                        prop_assert!(!seen[e], "element {} in two classes", e);
                        seen[e] = true;
                    }
                    prop_assert!(!class.is_empty());
                }
                // Every class member lies in some circuit.
                let circuits = m.circuits();
                for class in &classes {
                    for &e in class {
                        prop_assert!(circuits.iter().any(|c| c.contains(&e)));
                    }
                }
            }
        }
    }
}
