//! Deviations of `S/I(P_n)` and `S/I(C_n)`, the sequences `gamma_s`, `alpha_s`
//! with `eps_s(P_n) = gamma_s n - alpha_s`, and checks of the structural
//! statements about them.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideals::{cycle_graph, hilbert_graded, hilbert_multigraded, path_graph, Graph, GraphKind};
use crate::report::CheckReport;
use crate::series::{extract_deviations_multi, extract_deviations_uni, DeviationTable, ExponentVector, TableSource, Truncation};

/// `eps_1, ..., eps_smax` of `S/I(g)` from `P(z) = 1 / HS(-z)`.
pub fn deviations_graded(g: &Graph, smax: usize) -> Result<DeviationTable> {
    let hs = hilbert_graded(g, smax);
    let p = hs.alternate().inv()?;
    let mut t = extract_deviations_uni(&p)?;
    t.source = TableSource { kind: g.kind().to_string(), n: g.n(), truncation: Truncation::Degree { order: smax } };
    Ok(t)
}

pub fn deviations_multigraded(g: &Graph, cap: &ExponentVector, degree_bound: u64) -> Result<DeviationTable> {
    if cap.len() != g.n() {
        return Err(Error::AmbientMismatch { v: cap.clone(), n: g.n() });
    }
    let hs = hilbert_multigraded(g, cap, degree_bound);
    let mut t = extract_deviations_multi(&hs)?;
    t.source.kind = g.kind().to_string();
    Ok(t)
}

fn graded_vec(t: &DeviationTable) -> Vec<BigInt> {
    // index 0 unused
    let mut v = vec![BigInt::zero()];
    v.extend(t.graded.values().map(|e| BigInt::from(e.clone())));
    v
}

/// The two sequences with `eps_s(P_n) = gamma_s n - alpha_s` for `s <= n + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequencePair {
    pub gamma: BTreeMap<usize, BigUint>,
    pub alpha: BTreeMap<usize, BigUint>,
    pub smax: usize,
}

impl SequencePair {
    pub fn gamma(&self, s: usize) -> BigInt {
        BigInt::from(self.gamma[&s].clone())
    }

    pub fn alpha(&self, s: usize) -> BigInt {
        BigInt::from(self.alpha[&s].clone())
    }

    /// `(s, gamma_s / gamma_{s-1}, alpha_s / alpha_{s-1})` for `s >= 2`, where defined.
    pub fn ratios(&self) -> Vec<(usize, Option<f64>, Option<f64>)> {
        let ratio = |a: &BigUint, b: &BigUint| -> Option<f64> {
            if b.is_zero() {
                return None;
            }
            Some(a.to_f64()? / b.to_f64()?)
        };
        (2..=self.smax)
            .map(|s| {
                (
                    s,
                    ratio(&self.gamma[&s], &self.gamma[&(s - 1)]),
                    ratio(&self.alpha[&s], &self.alpha[&(s - 1)]),
                )
            })
            .collect()
    }
}

/// Solves for `gamma_s`, `alpha_s` from two consecutive path lengths and
/// confirms the solution on a third.
pub fn gamma_alpha(smax: usize) -> Result<SequencePair> {
    if smax == 0 {
        return Err(Error::LinearityViolated { s: 0, detail: "smax must be positive".into() });
    }
    let n0 = smax.max(3);
    let eps: Vec<Vec<BigInt>> = [n0, n0 + 1, n0 + 2]
        .par_iter()
        .map(|&n| deviations_graded(&path_graph(n)?, smax).map(|t| graded_vec(&t)))
        .collect::<Result<_>>()?;
    let mut gamma = BTreeMap::new();
    let mut alpha = BTreeMap::new();
    let nb = BigInt::from(n0);
    for s in 1..=smax {
        let g = &eps[1][s] - &eps[0][s];
        let a = &g * &nb - &eps[0][s];
        let predicted = &g * BigInt::from(n0 + 2) - &a;
        if predicted != eps[2][s] {
            return Err(Error::LinearityViolated {
                s,
                detail: format!("n={} predicts {predicted}, computed {}", n0 + 2, eps[2][s]),
            });
        }
        let (Some(gu), Some(au)) = (g.to_biguint(), a.to_biguint()) else {
            return Err(Error::LinearityViolated { s, detail: format!("negative gamma {g} or alpha {a}") });
        };
        gamma.insert(s, gu);
        alpha.insert(s, au);
    }
    Ok(SequencePair { gamma, alpha, smax })
}

/// Linearity in `n`: `eps_s(P_n) = gamma_s n - alpha_s` for `s <= n + 1`,
/// `eps_s(C_n) = gamma_s n` for `s < n` and `eps_n(C_n) = gamma_n n - 1`, for
/// every `n` in the range. Also checks `eps_s(C_n) >= eps_s(P_n)` when `n > s`.
pub fn check_linearity(ns: std::ops::RangeInclusive<usize>, pair: &SequencePair) -> Result<CheckReport> {
    let rows: Vec<(usize, Vec<BigInt>, Vec<BigInt>)> = ns
        .clone()
        .into_par_iter()
        .map(|n| {
            let p = graded_vec(&deviations_graded(&path_graph(n)?, n + 1)?);
            let c = graded_vec(&deviations_graded(&cycle_graph(n)?, n)?);
            Ok((n, p, c))
        })
        .collect::<Result<_>>()?;
    let mut r = CheckReport::new("linearity in n of path and cycle deviations");
    for (n, p, c) in rows {
        if pair.smax < n + 1 {
            return Err(Error::OutOfRange(ExponentVector::new(vec![n as u32 + 1])));
        }
        let nb = BigInt::from(n);
        for s in 1..=n + 1 {
            let want = pair.gamma(s) * &nb - pair.alpha(s);
            r.check(p[s] == want, || format!("path n={n} s={s}: {} vs {want}", p[s]));
        }
        for s in 1..=n {
            let want = pair.gamma(s) * &nb - BigInt::from(u8::from(s == n));
            r.check(c[s] == want, || format!("cycle n={n} s={s}: {} vs {want}", c[s]));
            if s < n {
                r.check(c[s] >= p[s], || format!("n={n} s={s}: cycle below path"));
            }
        }
    }
    Ok(r.with_detail(format!("n in {}..={}", ns.start(), ns.end())))
}

fn kind_support_ok(kind: GraphKind, v: &ExponentVector) -> Result<bool> {
    match kind {
        GraphKind::Path => Ok(v.support_is_interval()),
        GraphKind::Cycle => Ok(v.support_is_cyclic_interval()),
        GraphKind::General => Err(Error::KindMismatch { op: "check_support_property" }),
    }
}

/// Every nonzero multigraded deviation has interval (path) or cyclic-interval
/// (cycle) support.
pub fn check_support_property(g: &Graph, table: &DeviationTable) -> Result<CheckReport> {
    let mut r = CheckReport::new(format!("support of nonzero deviations, {} n={}", g.kind(), g.n()));
    for (v, e) in table.nonzero() {
        let ok = kind_support_ok(g.kind(), v)?;
        r.check(ok, || format!("eps_{v} = {e}"));
    }
    Ok(r)
}

/// Appending a vertex: `eps_v(P_n) = eps_{v,0}(P_{n+1})`; when `v_1 = 0` or
/// `v_n = 0` also `eps_v(C_n) = eps_{v,0}(C_{n+1})` and `eps_v(P_n) = eps_v(C_n)`.
///
/// The tables for `n + 1` use a cap whose last component is nonzero, so the
/// comparison is made against a genuinely larger computation.
pub fn check_stability(n: usize, cap: &ExponentVector, degree_bound: u64) -> Result<CheckReport> {
    if cap.len() != n {
        return Err(Error::AmbientMismatch { v: cap.clone(), n });
    }
    let mut wide = cap.components().to_vec();
    wide.push(cap.max_component().max(1));
    let wide = ExponentVector::new(wide);
    let jobs: Vec<(Graph, &ExponentVector)> = vec![
        (path_graph(n)?, cap),
        (path_graph(n + 1)?, &wide),
        (cycle_graph(n)?, cap),
        (cycle_graph(n + 1)?, &wide),
    ];
    let t: Vec<DeviationTable> = jobs
        .par_iter()
        .map(|(g, c)| deviations_multigraded(g, c, degree_bound))
        .collect::<Result<_>>()?;
    let (pn, pn1, cn, cn1) = (&t[0], &t[1], &t[2], &t[3]);
    let mut r = CheckReport::new(format!("stability under appending a vertex, n={n}"));
    for (v, e) in &pn.multigraded {
        let va = v.append_zero();
        r.check(pn1.epsilon_at(&va) == Some(e), || format!("path {v}: {e} vs {:?}", pn1.epsilon_at(&va)));
        if v[0] == 0 || v[n - 1] == 0 {
            let c = &cn.multigraded[v];
            r.check(cn1.epsilon_at(&va) == Some(c), || format!("cycle {v}: {c} vs {:?}", cn1.epsilon_at(&va)));
            r.check(c == e, || format!("path vs cycle at {v}: {e} vs {c}"));
        }
    }
    Ok(r.with_detail(format!("cap {cap}, norm <= {degree_bound}")))
}

/// Squarefree multigraded deviations: `1` on interval (cyclic interval)
/// supports and `0` otherwise, except `eps_{1_n}(C_n) = n - 1`.
pub fn check_squarefree_deviations(g: &Graph) -> Result<CheckReport> {
    let n = g.n();
    let t = deviations_multigraded(g, &ExponentVector::ones(n), n as u64)?;
    let mut r = CheckReport::new(format!("squarefree deviations, {} n={n}", g.kind()));
    for (v, e) in &t.multigraded {
        let want = if g.kind() == GraphKind::Cycle && v.norm() == n as u64 {
            n - 1
        } else {
            usize::from(kind_support_ok(g.kind(), v)?)
        };
        r.check(*e == BigUint::from(want), || format!("eps_{v} = {e}, expected {want}"));
    }
    Ok(r)
}

/// For `C_n` and `s < n`, the deviations of norm `s` are constant on rotation
/// orbits and the number of nonzero ones is divisible by `n`. Also confirms that
/// they sum to the graded deviation.
pub fn check_orbit_structure(n: usize, smax: usize) -> Result<CheckReport> {
    let g = cycle_graph(n)?;
    let smax = smax.min(n - 1);
    let cap = ExponentVector::new(vec![smax as u32; n]);
    let t = deviations_multigraded(&g, &cap, smax as u64)?;
    let graded = deviations_graded(&g, smax)?;
    let mut r = CheckReport::new(format!("rotation orbits of cycle deviations, n={n}"));
    for s in 1..=smax {
        let mut nonzero = 0usize;
        for (v, e) in t.multigraded.iter().filter(|(v, _)| v.norm() == s as u64) {
            if !e.is_zero() {
                nonzero += 1;
            }
            let w = v.rotate(1);
            r.check(t.epsilon_at(&w) == Some(e), || format!("eps_{v} != eps_{w}"));
        }
        r.check(nonzero % n == 0, || format!("s={s}: {nonzero} nonzero multidegrees"));
        let sum = t.norm_sum(s as u64);
        r.check(graded.epsilon(s) == Some(&sum), || format!("s={s}: multigraded sum {sum}"));
    }
    Ok(r)
}

/// One of the observed formulas for deviations just past the range of
/// linearity.
#[derive(Clone, Debug, Serialize)]
pub struct PatternResult {
    pub name: String,
    pub formula: String,
    /// `(n, predicted, computed)`.
    pub rows: Vec<(usize, BigInt, BigInt)>,
    pub confirmed: bool,
}

type PatternFn = fn(usize, &SequencePair) -> (usize, BigInt);

fn g(s: usize, n: usize, p: &SequencePair) -> BigInt {
    p.gamma(s) * BigInt::from(n)
}

fn c(n: usize, k: usize) -> BigInt {
    binomial(BigInt::from(n), BigInt::from(k))
}

/// Evaluates the observed higher patterns for `3 <= n <= nmax`, plus a
/// sign-corrected variant of the last path formula. None of these are
/// theorems; the result is a report, never an error.
pub fn check_higher_patterns(nmax: usize) -> Result<Vec<PatternResult>> {
    let pair = gamma_alpha(nmax + 5)?;
    let ns: Vec<usize> = (3..=nmax).collect();
    let tables: Vec<(Vec<BigInt>, Vec<BigInt>)> = ns
        .par_iter()
        .map(|&n| {
            let p = graded_vec(&deviations_graded(&path_graph(n)?, n + 5)?);
            let c = graded_vec(&deviations_graded(&cycle_graph(n)?, n + 3)?);
            Ok((p, c))
        })
        .collect::<Result<_>>()?;

    let cycles: [(&str, &str, PatternFn); 3] = [
        ("cycle eps_{n+1}", "gamma_{n+1} n - n", |n, p| (n + 1, g(n + 1, n, p) - BigInt::from(n))),
        ("cycle eps_{n+2}", "gamma_{n+2} n - C(n+2,2) + 1", |n, p| {
            (n + 2, g(n + 2, n, p) - c(n + 2, 2) + 1)
        }),
        ("cycle eps_{n+3}", "gamma_{n+3} n - C(n+3,3) - C(n+1,2) + 1", |n, p| {
            (n + 3, g(n + 3, n, p) - c(n + 3, 3) - c(n + 1, 2) + 1)
        }),
    ];
    let paths: [(&str, &str, PatternFn); 5] = [
        ("path eps_{n+2}", "gamma_{n+2} n - alpha_{n+2} + 1", |n, p| {
            (n + 2, g(n + 2, n, p) - p.alpha(n + 2) + 1)
        }),
        ("path eps_{n+3}", "gamma_{n+3} n - alpha_{n+3} + n + 2", |n, p| {
            (n + 3, g(n + 3, n, p) - p.alpha(n + 3) + BigInt::from(n + 2))
        }),
        ("path eps_{n+4}", "gamma_{n+4} n - alpha_{n+4} + C(n+4,2) - 1", |n, p| {
            (n + 4, g(n + 4, n, p) - p.alpha(n + 4) + c(n + 4, 2) - 1)
        }),
        ("path eps_{n+5}", "gamma_{n+5} n - alpha_{n+5} + C(n+5,3) - C(n+3,2) - 1", |n, p| {
            (n + 5, g(n + 5, n, p) - p.alpha(n + 5) + c(n + 5, 3) - c(n + 3, 2) - 1)
        }),
        ("path eps_{n+5}, corrected sign", "gamma_{n+5} n - alpha_{n+5} + C(n+5,3) + C(n+3,2) - 1", |n, p| {
            (n + 5, g(n + 5, n, p) - p.alpha(n + 5) + c(n + 5, 3) + c(n + 3, 2) - 1)
        }),
    ];

    let mut out = Vec::new();
    let mut eval = |name: &str, formula: &str, f: PatternFn, cyc: bool| {
        let rows: Vec<(usize, BigInt, BigInt)> = ns
            .iter()
            .zip(&tables)
            .map(|(&n, (p, c))| {
                let (s, want) = f(n, &pair);
                let got = if cyc { c[s].clone() } else { p[s].clone() };
                (n, want, got)
            })
            .collect();
        let confirmed = rows.iter().all(|(_, a, b)| a == b);
        out.push(PatternResult { name: name.into(), formula: formula.into(), rows, confirmed });
    };
    for (name, formula, f) in cycles {
        eval(name, formula, f, true);
    }
    for (name, formula, f) in paths {
        eval(name, formula, f, false);
    }
    Ok(out)
}
