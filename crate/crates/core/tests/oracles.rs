//! Frozen values: published ones checked against an independent computation,
//! and derived ones pinned after being confirmed by a second route.

use num_bigint::{BigInt, BigUint};

use deviant_core::betti::{betti_cycle, betti_path, betti_table, block_decompose, restricted_ideal_betti};
use deviant_core::deviations::{deviations_graded, deviations_multigraded, gamma_alpha};
use deviant_core::ideals::{cycle_graph, edge_ideal, hilbert_graded, hilbert_multigraded, path_graph, Graph};
use deviant_core::koszul::homology;
use deviant_core::linalg::Rationals;
use deviant_core::series::{extract_deviations_multi, uni_inv, uni_mul, ExponentVector, MultiSeries, UniSeries};
use deviant_core::verify::REFERENCE_TABLE;

fn ev(c: &[u32]) -> ExponentVector {
    ExponentVector::new(c.to_vec())
}

fn ints(s: &UniSeries) -> Vec<i64> {
    s.coeffs().iter().map(|c| i64::try_from(c).unwrap()).collect()
}

#[test]
fn series_arithmetic() {
    let a = UniSeries::from_i64s(&[1, -3, 4], 2);
    let b = UniSeries::from_i64s(&[1, 3, 5], 2);
    assert_eq!(ints(&uni_mul(&a, &b).unwrap()), [1, 0, 0]);
    let hs = UniSeries::from_i64s(&[1, -3, 4, -5], 3);
    assert_eq!(ints(&uni_inv(&hs).unwrap()), [1, 3, 5, 8]);
    assert!(uni_inv(&UniSeries::from_i64s(&[2, 1], 3)).is_err());
}

#[test]
fn hilbert_series_of_small_graphs() {
    assert_eq!(ints(&hilbert_graded(&path_graph(3).unwrap(), 3)), [1, 3, 4, 5]);
    assert_eq!(ints(&hilbert_graded(&cycle_graph(3).unwrap(), 3)), [1, 3, 3, 3]);
}

#[test]
fn truncated_multivariate_product() {
    let cap = ev(&[1, 1, 1]);
    let f = |v: &[u32]| MultiSeries::from_terms(cap.clone(), 3, [(ev(&[0, 0, 0]), BigInt::from(1)), (ev(v), BigInt::from(-1))]);
    let p = f(&[1, 1, 0]).mul(&f(&[0, 1, 1])).unwrap();
    assert_eq!(p.len(), 3);
    assert_eq!(p.coeff(&ev(&[1, 1, 0])), BigInt::from(-1));
    assert_eq!(p.coeff(&ev(&[1, 2, 1])), BigInt::from(0));
}

#[test]
fn multigraded_deviations_of_p3_and_c3() {
    let one = BigUint::from(1u32);
    let t = extract_deviations_multi(&hilbert_multigraded(&path_graph(3).unwrap(), &ev(&[1, 1, 1]), 3)).unwrap();
    for v in [[1, 1, 0], [0, 1, 1], [1, 1, 1]] {
        assert_eq!(t.epsilon_at(&ev(&v)), Some(&one));
    }
    assert_eq!(t.epsilon_at(&ev(&[1, 0, 1])), Some(&BigUint::from(0u32)));
    let t = deviations_multigraded(&cycle_graph(3).unwrap(), &ev(&[1, 1, 1]), 3).unwrap();
    assert_eq!(t.epsilon_at(&ev(&[1, 1, 1])), Some(&BigUint::from(2u32)));
    let t = deviations_multigraded(&cycle_graph(4).unwrap(), &ev(&[1, 1, 1, 1]), 4).unwrap();
    assert_eq!(t.epsilon_at(&ev(&[1, 1, 1, 1])), Some(&BigUint::from(3u32)));
    assert_eq!(t.epsilon_at(&ev(&[1, 0, 1, 0])), Some(&BigUint::from(0u32)));
    assert_eq!(t.nonzero().count(), 4 + 4 + 4 + 1);
}

#[test]
fn graded_deviations_and_reference_table() {
    let e = |g: Graph, s| -> Vec<u64> {
        deviations_graded(&g, s).unwrap().graded.values().map(|x| u64::try_from(x).unwrap()).collect()
    };
    assert_eq!(e(path_graph(3).unwrap(), 4), [3, 2, 1, 1]);
    assert_eq!(e(cycle_graph(3).unwrap(), 3), [3, 3, 2]);
    let pair = gamma_alpha(25).unwrap();
    for (s, (g, a)) in REFERENCE_TABLE.iter().enumerate() {
        assert_eq!((pair.gamma(s + 1), pair.alpha(s + 1)), (BigInt::from(*g), BigInt::from(*a)));
    }
    assert_eq!(REFERENCE_TABLE[6], (28, 100));
    assert_eq!(REFERENCE_TABLE[17], (1226550, 8309106));
}

#[test]
fn graph_constructors() {
    let p5: Vec<_> = path_graph(5).unwrap().edges().collect();
    assert_eq!(p5, [(1, 2), (2, 3), (3, 4), (4, 5)]);
    let mut c6: Vec<_> = cycle_graph(6).unwrap().edges().collect();
    c6.sort();
    assert_eq!(c6, [(1, 2), (1, 6), (2, 3), (3, 4), (4, 5), (5, 6)]);
}

#[test]
fn block_data_and_closed_form() {
    let v = ev(&[1, 1, 0, 0, 0, 1, 1, 0, 1]);
    let b = block_decompose(&v, false).unwrap();
    assert_eq!((b.tau, b.iota), (3, 2));
    let b = block_decompose(&v, true).unwrap();
    assert_eq!((b.tau, b.iota), (2, 3));
    assert_eq!(betti_path(9, &v).unwrap(), None);
    assert_eq!(betti_path(3, &ev(&[1, 1, 1])).unwrap(), Some((2, 1)));
    assert_eq!(betti_cycle(6, &ExponentVector::ones(6)).unwrap(), Some((4, 2)));
    assert_eq!(betti_cycle(7, &ExponentVector::ones(7)).unwrap(), Some((5, 1)));

    let graded = |g| betti_table(&g).unwrap().graded().into_iter().collect::<Vec<_>>();
    assert_eq!(graded(path_graph(3).unwrap()), [((0, 0), 1), ((1, 2), 2), ((2, 3), 1)]);
    assert_eq!(graded(cycle_graph(3).unwrap()), [((0, 0), 1), ((1, 2), 3), ((2, 3), 2)]);
}

#[test]
fn restriction_to_a_box() {
    // on C4, the generators below (1,1,1,0) are those of P3 on the first three vertices
    let a = ev(&[1, 1, 1, 0]);
    let restricted = restricted_ideal_betti(&cycle_graph(4).unwrap(), &a).unwrap();
    let p3 = Graph::new(4, &[(1, 2), (2, 3)]).unwrap();
    let h = homology(&edge_ideal(&p3), &ExponentVector::ones(4), &Rationals).unwrap();
    assert_eq!(restricted, h.betti());
    assert_eq!(restricted.graded(), betti_table(&path_graph(3).unwrap()).unwrap().graded());
}
