use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

use deviant_core::betti::{betti_cycle, betti_path, block_decompose};
use deviant_core::deviations::{deviations_graded, deviations_multigraded};
use deviant_core::dgmodel::{differential, FormalSum, ModelVariable};
use deviant_core::ideals::{cycle_graph, edge_ideal, path_graph, Graph};
use deviant_core::koszul::homology;
use deviant_core::linalg::{rank, rank_bareiss, Echelon, Field, PrimeField, Rationals};
use deviant_core::series::{extract_deviations_uni, product_expansion, uni_inv, uni_mul, ExponentVector, UniSeries};

fn matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
}

fn graph() -> impl Strategy<Value = Graph> {
    (2usize..=5).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|a| (a + 1..=n).map(move |b| (a, b))).collect();
        let k = pairs.len();
        prop::collection::vec(any::<bool>(), k).prop_map(move |keep| {
            let edges: Vec<(usize, usize)> = pairs.iter().zip(&keep).filter(|(_, k)| **k).map(|(e, _)| *e).collect();
            Graph::new(n, &edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bareiss_rank_matches_field_elimination(m in matrix()) {
        let big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let q: Vec<Vec<_>> = m.iter().map(|r| r.iter().map(|&x| Rationals.from_i64(x)).collect()).collect();
        let r = rank_bareiss(&big);
        prop_assert_eq!(r, rank(&Rationals, &q));
        let f = PrimeField::new(1_000_003).unwrap();
        let p: Vec<Vec<_>> = m.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect();
        prop_assert!(rank(&f, &p) <= r);
    }

    #[test]
    fn echelon_membership(m in matrix(), pick in prop::collection::vec(-2i64..=2, 6)) {
        let ncols = m[0].len();
        let mut e = Echelon::new(Rationals, ncols, 0);
        for row in &m {
            e.push(row.iter().map(|&x| Rationals.from_i64(x)).collect());
        }
        // any combination of inserted rows reduces to zero
        let mut combo = vec![Rationals.zero(); ncols];
        for (row, c) in m.iter().zip(&pick) {
            for (o, &x) in combo.iter_mut().zip(row) {
                *o = Rationals.add(o, &Rationals.from_i64(x * c));
            }
        }
        prop_assert!(e.contains(&combo));
        let (residual, _) = e.reduce(combo);
        prop_assert!(residual.iter().all(|x| Rationals.is_zero(x)));
    }

    #[test]
    fn series_inverse_roundtrip(tail in prop::collection::vec(-5i64..=5, 0..10), neg in any::<bool>()) {
        let mut c = vec![if neg { -1 } else { 1 }];
        c.extend(tail);
        let order = c.len() + 2;
        let a = UniSeries::from_i64s(&c, order);
        let b = uni_inv(&a).unwrap();
        prop_assert_eq!(uni_mul(&a, &b).unwrap(), UniSeries::one(order));
    }

    #[test]
    fn extraction_inverts_product_expansion(eps in prop::collection::vec(0u32..6, 1..9)) {
        let graded: BTreeMap<usize, BigUint> = eps.iter().enumerate().map(|(i, &e)| (i + 1, BigUint::from(e))).collect();
        let order = eps.len();
        let p = product_expansion(&graded, order).unwrap();
        let t = extract_deviations_uni(&p).unwrap();
        prop_assert_eq!(t.graded, graded);
    }

    #[test]
    fn exponent_vector_queries(c in prop::collection::vec(0u32..4, 1..8)) {
        let v = ExponentVector::new(c.clone());
        prop_assert_eq!(v.norm(), c.iter().map(|&x| x as u64).sum::<u64>());
        let support: Vec<usize> = (0..c.len()).filter(|&i| c[i] > 0).collect();
        prop_assert_eq!(v.support(), support);
        prop_assert_eq!(v.rotate(c.len()), v.clone());
    }

    #[test]
    fn multigraded_deviations_sum_to_graded(g in graph()) {
        let n = g.n();
        let s = 4usize;
        let cap = ExponentVector::new(vec![s as u32; n]);
        let multi = deviations_multigraded(&g, &cap, s as u64).unwrap();
        let graded = deviations_graded(&g, s).unwrap();
        for k in 1..=s {
            prop_assert_eq!(Some(&multi.norm_sum(k as u64)), graded.epsilon(k));
        }
    }

    #[test]
    fn closed_form_path_matches_cycle_off_the_seam(n in 3usize..12, mask in any::<u64>()) {
        let v = ExponentVector::from_mask(n, mask & ((1 << n) - 1) & !1);
        // v_1 = 0: the cycle restricted to v is the path restricted to v
        prop_assert_eq!(betti_path(n, &v).unwrap(), betti_cycle(n, &v).unwrap());
        let w = v.rotate(1);
        prop_assert_eq!(betti_cycle(n, &v).unwrap(), betti_cycle(n, &w).unwrap());
        prop_assert!(block_decompose(&v, true).unwrap().blocks.iter().all(|b| b.support_is_interval()));
    }

    #[test]
    fn variable_differentials_square_to_zero(n in 3usize..10, p in 1usize..10, q in 1usize..10) {
        if let Ok(x) = ModelVariable::cycle(n, p, q) {
            prop_assert!(differential(&x.differential()).is_zero());
        }
        if let Ok(x) = ModelVariable::path(p, q) {
            prop_assert!(differential(&x.differential()).is_zero());
        }
        if let Ok(w) = ModelVariable::w(n, p) {
            let mut s = FormalSum::zero();
            s.add(&w.differential(), 1);
            prop_assert!(differential(&s).is_zero());
        }
    }
}

/// Products of classes are graded commutative and do not depend on the
/// chosen representatives.
#[test]
fn koszul_products_are_well_defined_and_graded_commutative() {
    let field = Rationals;
    for g in [path_graph(6).unwrap(), cycle_graph(6).unwrap()] {
        let h = homology(&edge_ideal(&g), &ExponentVector::ones(6), &field).unwrap();
        let support = h.support();
        let mut checked = 0;
        for (i1, v1) in &support {
            for (i2, v2) in &support {
                if *i1 == 0 || *i2 == 0 || v1.add(v2).max_component() > 1 {
                    continue;
                }
                for a in h.basis_classes(*i1, v1) {
                    for b in h.basis_classes(*i2, v2) {
                        let ab = h.multiply(&a, &b).unwrap();
                        let ba = h.multiply(&b, &a).unwrap();
                        let sign = if (i1 * i2) % 2 == 0 { 1 } else { -1 };
                        let scaled: Vec<_> = ba.coords.iter().map(|x| field.mul(x, &field.from_i64(sign))).collect();
                        assert_eq!(ab.coords, scaled, "{} {} {} {}", i1, v1, i2, v2);

                        // perturb the first factor by a boundary
                        let s = &h.strands[v1].complex;
                        let mut rep = h.representative(&a).unwrap();
                        if let Some(rows) = s.differentials.get(i1 + 1) {
                            for row in rows {
                                for (o, x) in rep.iter_mut().zip(row) {
                                    *o = field.add(o, x);
                                }
                            }
                        }
                        let rb = h.representative(&b).unwrap();
                        let (i, v, z) = h.multiply_chains((*i1, v1, &rep), (*i2, v2, &rb)).unwrap();
                        assert_eq!(h.class_of(i, &v, &z).unwrap().coords, ab.coords);
                        checked += 1;
                    }
                }
            }
        }
        assert!(checked > 10);
    }
}
