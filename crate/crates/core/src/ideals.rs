//! Graphs, edge ideals and the Hilbert series of `S/I(G)`.
//!
//! Vertices are numbered `1..=n` in the public surface (edge lists, rendering)
//! and `0..n` internally.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::{ExponentVector, MultiSeries, UniSeries};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Hash, PartialOrd, Ord)]
#[serde(rename_all = "snake_case")]
pub enum GraphKind {
    Path,
    Cycle,
    General,
}

impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphKind::Path => "path",
            GraphKind::Cycle => "cycle",
            GraphKind::General => "general",
        })
    }
}

/// A simple graph on `1..=n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    n: usize,
    /// zero-based `(i, j)` with `i < j`
    edges: BTreeSet<(usize, usize)>,
    kind: GraphKind,
}

impl Graph {
    /// A general graph from one-based edges.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut set = BTreeSet::new();
        for &(a, b) in edges {
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at vertex {a}")));
            }
            if a == 0 || b == 0 || a > n || b > n {
                return Err(Error::InvalidGraph(format!("edge {a} {b} out of range 1..={n}")));
            }
            let e = (a.min(b) - 1, a.max(b) - 1);
            if !set.insert(e) {
                return Err(Error::InvalidGraph(format!("repeated edge {a} {b}")));
            }
        }
        Ok(Self { n, edges: set, kind: GraphKind::General })
    }

    pub fn edgeless(n: usize) -> Self {
        Self { n, edges: BTreeSet::new(), kind: GraphKind::General }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    /// One-based edges in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().map(|&(a, b)| (a + 1, b + 1))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// True if the zero-based vertex set given as a bitmask contains no edge.
    pub fn is_independent_mask(&self, mask: u64) -> bool {
        self.edges.iter().all(|&(a, b)| (mask >> a) & 1 == 0 || (mask >> b) & 1 == 0)
    }

    pub fn is_independent(&self, support: &[usize]) -> bool {
        let set: BTreeSet<_> = support.iter().copied().collect();
        self.edges.iter().all(|(a, b)| !(set.contains(a) && set.contains(b)))
    }

    /// Disjoint union, with `other`'s vertices shifted past ours.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|&(a, b)| (a + self.n, b + self.n)));
        Graph { n: self.n + other.n, edges, kind: GraphKind::General }
    }

    /// Parses `n <count>` followed by one `i j` pair per line. Blank lines and
    /// `#` comments are ignored.
    pub fn from_edge_list(text: &str) -> Result<Self> {
        let mut n = None;
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parse_err = |msg: String| Error::Parse { line: lineno + 1, msg };
            let fields: Vec<&str> = line.split_whitespace().collect();
            match (n, fields.as_slice()) {
                (None, ["n", count]) => {
                    n = Some(count.parse::<usize>().map_err(|e| parse_err(format!("bad vertex count: {e}")))?);
                }
                (None, _) => return Err(parse_err("expected header `n <count>`".into())),
                (Some(_), [a, b]) => {
                    let a = a.parse::<usize>().map_err(|e| parse_err(format!("bad vertex: {e}")))?;
                    let b = b.parse::<usize>().map_err(|e| parse_err(format!("bad vertex: {e}")))?;
                    edges.push((a, b));
                }
                (Some(_), _) => return Err(parse_err("expected `i j`".into())),
            }
        }
        let n = n.ok_or(Error::Parse { line: 0, msg: "missing header `n <count>`".into() })?;
        Self::new(n, &edges)
    }

    pub fn to_edge_list(&self) -> String {
        let mut s = format!("n {}\n", self.n);
        for (a, b) in self.edges() {
            s.push_str(&format!("{a} {b}\n"));
        }
        s
    }

    /// Coefficients `i_k` of the independence polynomial `sum_k i_k x^k`.
    pub fn independence_polynomial(&self) -> Vec<BigInt> {
        match self.kind {
            GraphKind::Path => path_independence(self.n),
            GraphKind::Cycle => cycle_independence(self.n),
            GraphKind::General => self.independence_by_enumeration(),
        }
    }

    /// Counts independent sets by size over all `2^n` subsets.
    pub fn independence_by_enumeration(&self) -> Vec<BigInt> {
        assert!(self.n < 64, "enumeration needs n < 64");
        let mut counts = vec![0u64; self.n + 1];
        for mask in 0u64..(1u64 << self.n) {
            if self.is_independent_mask(mask) {
                counts[mask.count_ones() as usize] += 1;
            }
        }
        while counts.len() > 1 && *counts.last().unwrap() == 0 {
            counts.pop();
        }
        counts.into_iter().map(BigInt::from).collect()
    }
}

fn poly_add_shifted(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    // a + x * b
    let mut out = vec![BigInt::zero(); a.len().max(b.len() + 1)];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i + 1] += c;
    }
    while out.len() > 1 && out.last().unwrap().is_zero() {
        out.pop();
    }
    out
}

/// `I(P_n) = I(P_{n-1}) + x I(P_{n-2})`, `I(P_0) = 1`, `I(P_1) = 1 + x`.
fn path_independence(n: usize) -> Vec<BigInt> {
    let mut prev = vec![BigInt::one()];
    if n == 0 {
        return prev;
    }
    let mut cur = vec![BigInt::one(), BigInt::one()];
    for _ in 2..=n {
        let next = poly_add_shifted(&cur, &prev);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `I(C_n) = I(P_{n-1}) + x I(P_{n-3})`.
fn cycle_independence(n: usize) -> Vec<BigInt> {
    poly_add_shifted(&path_independence(n - 1), &path_independence(n - 3))
}

pub fn path_graph(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidGraph(format!("path needs n >= 2, got {n}")));
    }
    let edges = (0..n - 1).map(|i| (i, i + 1)).collect();
    Ok(Graph { n, edges, kind: GraphKind::Path })
}

pub fn cycle_graph(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidGraph(format!("cycle needs n >= 3, got {n}")));
    }
    let mut edges: BTreeSet<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
    edges.insert((0, n - 1));
    Ok(Graph { n, edges, kind: GraphKind::Cycle })
}

/// A monomial ideal given by its minimal generators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialIdeal {
    n: usize,
    generators: Vec<ExponentVector>,
}

impl MonomialIdeal {
    /// Keeps only the minimal generators, sorted.
    pub fn new(n: usize, generators: Vec<ExponentVector>) -> Result<Self> {
        for g in &generators {
            if g.len() != n {
                return Err(Error::AmbientMismatch { v: g.clone(), n });
            }
        }
        let mut gens: Vec<ExponentVector> = generators.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let all = gens.clone();
        gens.retain(|g| !all.iter().any(|h| h != g && h.divides(g)));
        Ok(Self { n, generators: gens })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    /// Whether the monomial `xi^v` lies in the ideal.
    pub fn contains(&self, v: &ExponentVector) -> bool {
        self.generators.iter().any(|g| g.divides(v))
    }

    pub fn is_quadratic(&self) -> bool {
        self.generators.iter().all(|g| g.norm() == 2)
    }

    /// The ideal generated by the generators of multidegree `<= a`.
    pub fn restrict(&self, a: &ExponentVector) -> Self {
        Self {
            n: self.n,
            generators: self.generators.iter().filter(|g| g.divides(a)).cloned().collect(),
        }
    }

    /// Coefficient of `xi^v` is 1 exactly when `xi^v` is a standard monomial.
    pub fn hilbert_multigraded(&self, cap: &ExponentVector, degree_bound: u64) -> MultiSeries {
        let terms = ExponentVector::enumerate_box(cap, degree_bound)
            .into_iter()
            .filter(|v| !self.contains(v))
            .map(|v| (v, BigInt::one()));
        MultiSeries::from_terms(cap.clone(), degree_bound, terms)
    }
}

pub fn edge_ideal(g: &Graph) -> MonomialIdeal {
    let generators = g
        .edges
        .iter()
        .map(|&(a, b)| ExponentVector::indicator(g.n, [a, b]))
        .collect();
    MonomialIdeal::new(g.n, generators).expect("edges live in the ambient ring")
}

/// Coefficient of `xi^v` is 1 iff `Supp(v)` is independent in `g`.
pub fn hilbert_multigraded(g: &Graph, cap: &ExponentVector, degree_bound: u64) -> MultiSeries {
    let terms = ExponentVector::enumerate_box(cap, degree_bound)
        .into_iter()
        .filter(|v| g.is_independent_mask(v.support_mask()))
        .map(|v| (v, BigInt::one()));
    MultiSeries::from_terms(cap.clone(), degree_bound, terms)
}

/// `sum_{A independent} (t / (1 - t))^{|A|}` truncated at `t^order`.
///
/// A `k`-set supports `C(d-1, k-1)` monomials of degree `d`.
pub fn hilbert_graded(g: &Graph, order: usize) -> UniSeries {
    let ip = g.independence_polynomial();
    let mut coeffs = vec![BigInt::zero(); order + 1];
    coeffs[0] = BigInt::one();
    for (d, slot) in coeffs.iter_mut().enumerate().skip(1) {
        let mut acc = BigInt::zero();
        let mut c = BigInt::one(); // C(d-1, 0)
        for k in 1..ip.len().min(d + 1) {
            acc += &ip[k] * &c;
            // C(d-1, k) = C(d-1, k-1) * (d-k) / k
            c = c * BigInt::from(d - k) / BigInt::from(k);
        }
        *slot = acc;
    }
    UniSeries::new(coeffs, order)
}
