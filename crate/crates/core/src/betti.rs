//! Closed-form multigraded Betti numbers of `S/I(P_n)` and `S/I(C_n)` through
//! the decomposition of a squarefree vector into interval blocks.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideals::{hilbert_graded, Graph, GraphKind};
use crate::report::CheckReport;
use crate::series::{ExponentVector, UniSeries};

/// The unique minimal splitting of a squarefree vector into blocks with
/// interval (or cyclic-interval) support, ordered by smallest support index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockDecomposition {
    pub blocks: Vec<ExponentVector>,
    pub cyclic: bool,
    /// Number of blocks.
    pub tau: usize,
    /// `sum_j floor(2 |v_j| / 3)`.
    pub iota: usize,
}

impl BlockDecomposition {
    pub fn block_norms(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().map(|b| b.norm() as usize)
    }

    fn no_norm_one_mod_three(&self) -> bool {
        self.block_norms().all(|k| k % 3 != 1)
    }
}

/// Maximal runs of consecutive support indices; with `cyclic` a run may wrap
/// from `n` back to `1`.
pub fn block_decompose(v: &ExponentVector, cyclic: bool) -> Result<BlockDecomposition> {
    if !v.is_squarefree() {
        return Err(Error::NotSquarefree(v.clone()));
    }
    let n = v.len();
    let on = |i: usize| v[i] > 0;
    let mut runs: Vec<Vec<usize>> = Vec::new();
    let mut i = 0;
    while i < n {
        if on(i) {
            let start = i;
            while i < n && on(i) {
                i += 1;
            }
            runs.push((start..i).collect());
        } else {
            i += 1;
        }
    }
    if cyclic && runs.len() > 1 && on(0) && on(n - 1) {
        // the last run continues into the first
        let last = runs.pop().expect("at least two runs");
        runs[0].extend(last);
    }
    let blocks: Vec<ExponentVector> = runs.into_iter().map(|r| ExponentVector::indicator(n, r)).collect();
    let iota = blocks.iter().map(|b| 2 * b.norm() as usize / 3).sum();
    Ok(BlockDecomposition { tau: blocks.len(), iota, blocks, cyclic })
}

fn check_ambient(n: usize, v: &ExponentVector) -> Result<()> {
    if v.len() != n {
        return Err(Error::AmbientMismatch { v: v.clone(), n });
    }
    Ok(())
}

/// `Some((i, beta_{i,v}))` for the unique homological degree carrying a nonzero
/// Betti number of `S/I(P_n)` in multidegree `v`, or `None`.
pub fn betti_path(n: usize, v: &ExponentVector) -> Result<Option<(usize, u64)>> {
    check_ambient(n, v)?;
    let b = block_decompose(v, false)?;
    Ok(b.no_norm_one_mod_three().then_some((b.iota, 1)))
}

/// Same for `S/I(C_n)`.
pub fn betti_cycle(n: usize, w: &ExponentVector) -> Result<Option<(usize, u64)>> {
    check_ambient(n, w)?;
    let b = block_decompose(w, true)?;
    if w.norm() as usize != n {
        return Ok(b.no_norm_one_mod_three().then_some((b.iota, 1)));
    }
    Ok(Some(match n % 3 {
        1 => ((2 * n).div_ceil(3), 1),
        2 => (b.iota, 1),
        _ => (b.iota, 2),
    }))
}

/// Multigraded Betti numbers, keyed by `(i, v)`; zero entries are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub n: usize,
    pub entries: BTreeMap<(usize, ExponentVector), u64>,
}

impl BettiTable {
    pub fn new(n: usize) -> Self {
        Self { n, entries: BTreeMap::new() }
    }

    pub fn insert(&mut self, i: usize, v: ExponentVector, beta: u64) {
        if beta > 0 {
            self.entries.insert((i, v), beta);
        }
    }

    pub fn get(&self, i: usize, v: &ExponentVector) -> u64 {
        self.entries.get(&(i, v.clone())).copied().unwrap_or(0)
    }

    /// `beta_{i,j} = sum_{|v| = j} beta_{i,v}`.
    pub fn graded(&self) -> BTreeMap<(usize, usize), u64> {
        let mut out = BTreeMap::new();
        for ((i, v), b) in &self.entries {
            *out.entry((*i, v.norm() as usize)).or_insert(0) += b;
        }
        out
    }

    /// Entries with `v <= a` componentwise.
    pub fn restrict(&self, a: &ExponentVector) -> Self {
        Self {
            n: self.n,
            entries: self
                .entries
                .iter()
                .filter(|((_, v), _)| v.divides(a))
                .map(|(k, b)| (k.clone(), *b))
                .collect(),
        }
    }

    /// Highest homological degree with a nonzero entry.
    pub fn projective_dimension(&self) -> usize {
        self.entries.keys().map(|(i, _)| *i).max().unwrap_or(0)
    }

    /// `sum_{|v| = j} sum_i (-1)^i beta_{i,v}` for `j = 0..=max`.
    pub fn k_polynomial(&self) -> Vec<i64> {
        let top = self.entries.keys().map(|(_, v)| v.norm() as usize).max().unwrap_or(0);
        let mut out = vec![0i64; top + 1];
        for ((i, v), b) in &self.entries {
            let s = if i % 2 == 0 { 1 } else { -1 };
            out[v.norm() as usize] += s * *b as i64;
        }
        out
    }

    /// The graded table as the polynomial `sum beta_{i,j} s^i t^j`.
    pub fn graded_polynomial(&self) -> BTreeMap<(usize, usize), u64> {
        self.graded()
    }
}

/// Product of two graded Betti polynomials.
pub fn polynomial_product(
    a: &BTreeMap<(usize, usize), u64>,
    b: &BTreeMap<(usize, usize), u64>,
) -> BTreeMap<(usize, usize), u64> {
    let mut out = BTreeMap::new();
    for ((i1, j1), x) in a {
        for ((i2, j2), y) in b {
            *out.entry((i1 + i2, j1 + j2)).or_insert(0) += x * y;
        }
    }
    out
}

/// Smallest rotation of a bitmask over `n` bits.
fn canonical_rotation(mask: u64, n: usize) -> u64 {
    let full = (1u64 << n) - 1;
    (0..n)
        .map(|k| ((mask << k) | (mask >> (n - k))) & full)
        .min()
        .unwrap_or(mask)
}

/// Full multigraded Betti table of a path or a cycle from the closed form.
///
/// For cycles only rotation-orbit representatives are evaluated; the other
/// members of each orbit copy the representative's value.
pub fn betti_table(g: &Graph) -> Result<BettiTable> {
    let n = g.n();
    let masks: Vec<u64> = match g.kind() {
        GraphKind::Path => (0..1u64 << n).collect(),
        GraphKind::Cycle => (0..1u64 << n).filter(|&m| canonical_rotation(m, n) == m).collect(),
        GraphKind::General => return Err(Error::KindMismatch { op: "betti_table" }),
    };
    let cyclic = g.kind() == GraphKind::Cycle;
    let values: Vec<(u64, Option<(usize, u64)>)> = masks
        .par_iter()
        .map(|&m| {
            let v = ExponentVector::from_mask(n, m);
            let b = if cyclic { betti_cycle(n, &v) } else { betti_path(n, &v) };
            b.map(|b| (m, b))
        })
        .collect::<Result<_>>()?;
    let mut t = BettiTable::new(n);
    for (m, b) in values {
        let Some((i, beta)) = b else { continue };
        let v = ExponentVector::from_mask(n, m);
        if cyclic {
            for k in 0..n {
                t.insert(i, v.rotate(k), beta);
            }
        } else {
            t.insert(i, v, beta);
        }
    }
    Ok(t)
}

/// Betti table of `S / I_{<= a}`, where `I_{<= a}` is generated by the
/// generators of multidegree at most `a`: the entries of the full table with
/// `v <= a`.
pub fn restricted_ideal_betti(g: &Graph, a: &ExponentVector) -> Result<BettiTable> {
    check_ambient(g.n(), a)?;
    Ok(betti_table(g)?.restrict(a))
}

/// `HS(t) (1 - t)^n` against the alternating sums of the Betti table.
pub fn check_k_polynomial(g: &Graph, table: &BettiTable) -> CheckReport {
    let n = g.n();
    let order = n + 2;
    let hs = hilbert_graded(g, order);
    let mut one_minus_t_n = UniSeries::one(order);
    let factor = UniSeries::from_i64s(&[1, -1], order);
    for _ in 0..n {
        one_minus_t_n = one_minus_t_n.mul(&factor).expect("same order");
    }
    let k = hs.mul(&one_minus_t_n).expect("same order");
    let from_betti = table.k_polynomial();
    let mut r = CheckReport::new(format!("K-polynomial, {} n={n}", g.kind()));
    for j in 0..=order {
        let want = BigInt::from(from_betti.get(j).copied().unwrap_or(0));
        r.check(k.coeff(j) == &want, || format!("t^{j}: {} vs {want}", k.coeff(j)));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::{cycle_graph, path_graph};

    fn ev(c: &[u32]) -> ExponentVector {
        ExponentVector::new(c.to_vec())
    }

    #[test]
    fn blocks_of_the_standard_example() {
        let v = ev(&[1, 1, 0, 0, 0, 1, 1, 0, 1]);
        let b = block_decompose(&v, false).unwrap();
        assert_eq!((b.tau, b.iota), (3, 2));
        let c = block_decompose(&v, true).unwrap();
        assert_eq!((c.tau, c.iota), (2, 3));
        assert_eq!(c.blocks[0], ev(&[1, 1, 0, 0, 0, 0, 0, 0, 1]));
        assert_eq!(c.blocks[1], ev(&[0, 0, 0, 0, 0, 1, 1, 0, 0]));
        let full = block_decompose(&ExponentVector::ones(6), true).unwrap();
        assert_eq!((full.tau, full.iota), (1, 4));
    }

    #[test]
    fn non_squarefree_is_rejected() {
        assert!(matches!(block_decompose(&ev(&[2, 0]), false), Err(Error::NotSquarefree(_))));
        assert!(betti_path(3, &ev(&[1, 2, 0])).is_err());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(betti_path(3, &ev(&[1, 1, 1])).unwrap(), Some((2, 1)));
        assert_eq!(betti_path(9, &ev(&[1, 1, 0, 0, 0, 1, 1, 0, 1])).unwrap(), None);
        assert_eq!(betti_cycle(6, &ExponentVector::ones(6)).unwrap(), Some((4, 2)));
        assert_eq!(betti_cycle(7, &ExponentVector::ones(7)).unwrap(), Some((5, 1)));
        assert_eq!(betti_cycle(5, &ExponentVector::ones(5)).unwrap(), Some((3, 1)));
    }

    #[test]
    fn small_tables() {
        let p3 = betti_table(&path_graph(3).unwrap()).unwrap().graded();
        let want: BTreeMap<_, _> = [((0, 0), 1), ((1, 2), 2), ((2, 3), 1)].into_iter().collect();
        assert_eq!(p3, want);
        let c3 = betti_table(&cycle_graph(3).unwrap()).unwrap().graded();
        let want: BTreeMap<_, _> = [((0, 0), 1), ((1, 2), 3), ((2, 3), 2)].into_iter().collect();
        assert_eq!(c3, want);
        let c7 = betti_table(&cycle_graph(7).unwrap()).unwrap().graded();
        assert!(c7.get(&(5, 7)).copied().unwrap_or(0) > 0);
    }

    #[test]
    fn general_graphs_are_rejected() {
        assert!(matches!(betti_table(&Graph::edgeless(3)), Err(Error::KindMismatch { .. })));
    }

    #[test]
    fn restriction_edge_cases() {
        let g = cycle_graph(4).unwrap();
        let full = betti_table(&g).unwrap();
        assert_eq!(restricted_ideal_betti(&g, &ExponentVector::ones(4)).unwrap(), full);
        let zero = restricted_ideal_betti(&g, &ExponentVector::zero(4)).unwrap();
        assert_eq!(zero.entries.len(), 1);
        assert_eq!(zero.get(0, &ExponentVector::zero(4)), 1);
    }

    #[test]
    fn rotation_orbits_fill_the_table() {
        let g = cycle_graph(6).unwrap();
        let t = betti_table(&g).unwrap();
        for m in 0..64u64 {
            let v = ExponentVector::from_mask(6, m);
            let want = betti_cycle(6, &v).unwrap();
            let got: Vec<_> = t.entries.iter().filter(|((_, w), _)| *w == v).map(|((i, _), b)| (*i, *b)).collect();
            assert_eq!(got, want.into_iter().collect::<Vec<_>>(), "{v}");
        }
    }

    #[test]
    fn k_polynomial_identity() {
        for n in 3..=8 {
            for g in [path_graph(n).unwrap(), cycle_graph(n).unwrap()] {
                let t = betti_table(&g).unwrap();
                assert!(check_k_polynomial(&g, &t).passed, "{} {n}", g.kind());
            }
        }
    }
}
