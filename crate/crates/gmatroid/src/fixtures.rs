//! Small named matroids used across tests, docs, and examples.

use crate::matroid::Matroid;

/// Two non-isomorphic rank-3 matroids on six elements whose broken-circuit
/// complexes (under the natural order) coincide. The first excludes the
/// triples {0,1,2} and {3,4,5} from the bases, the second {0,1,2} and
/// {0,4,5}.
pub fn broken_circuit_twins() -> (Matroid, Matroid) {
    let a = all_triples_except(6, &[vec![0, 1, 2], vec![3, 4, 5]]);
    let b = all_triples_except(6, &[vec![0, 1, 2], vec![0, 4, 5]]);
    (
        Matroid::from_bases(6, &a).expect("twin A is a matroid"),
        Matroid::from_bases(6, &b).expect("twin B is a matroid"),
    )
}

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

/// The standard fixture set: uniform matroids, small circuits, a direct sum,
/// the broken-circuit twins, and the subdivided parallel-edge family.
pub fn all() -> Vec<(&'static str, Matroid)> {
    let (twin_a, twin_b) = broken_circuit_twins();
    vec![
        ("U(2,4)", Matroid::uniform(2, 4)),
        ("U(3,5)", Matroid::uniform(3, 5)),
        ("C(3)", Matroid::circuit(3)),
        ("C(4)", Matroid::circuit(4)),
        ("C(2)+C(3)", Matroid::circuit(2).direct_sum(&Matroid::circuit(3))),
        ("twin-A", twin_a),
        ("twin-B", twin_b),
        ("theta(2)", Matroid::theta(2)),
        ("theta(3)", Matroid::theta(3)),
        ("theta(4)", Matroid::theta(4)),
        ("theta(5)", Matroid::theta(5)),
    ]
}

/// The fixtures without coloops (all of them, as it happens); callers that
/// need the hypothesis spelled out should still filter.
pub fn coloop_free() -> Vec<(&'static str, Matroid)> {
    all().into_iter().filter(|(_, m)| m.coloops().is_empty()).collect()
}
