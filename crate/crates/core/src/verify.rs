//! The reproducibility suite: every computational claim checked on a finite
//! range, grouped into numbered criteria.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::betti::{betti_table, check_k_polynomial, polynomial_product, restricted_ideal_betti, BettiTable};
use crate::deviations::{
    check_higher_patterns, check_linearity, check_orbit_structure, check_squarefree_deviations,
    check_stability, check_support_property, deviations_multigraded, gamma_alpha, PatternResult,
};
use crate::dgmodel::{
    check_merge_coefficients, check_square_zero, check_star_monomials, check_w_cycles, model_homology,
    ModelKind, StarReading,
};
use crate::error::Result;
use crate::ideals::{cycle_graph, edge_ideal, path_graph, Graph};
use crate::koszul::{check_diagonals, check_generation, check_random_diagonals, homology};
use crate::linalg::{Field, PrimeField, Rationals};
use crate::report::CheckReport;
use crate::series::ExponentVector;

/// Reference values of `(gamma_s, alpha_s)` for `s = 1..=25`.
pub const REFERENCE_TABLE: [(u64, u64); 25] = [
    (1, 0),
    (1, 1),
    (1, 2),
    (2, 5),
    (5, 14),
    (12, 38),
    (28, 100),
    (68, 269),
    (174, 744),
    (450, 2064),
    (1166, 5720),
    (3068, 15974),
    (8190, 44940),
    (22022, 126854),
    (59585, 359118),
    (162360, 1020285),
    (445145, 2907950),
    (1226550, 8309106),
    (3394654, 23796520),
    (9434260, 68299612),
    (26317865, 196420246),
    (73662754, 565884418),
    (206809307, 1632972230),
    (582255448, 4719426574),
    (1643536725, 13658698734),
];

/// Seed for every randomized check.
pub const SEED: u64 = 20_240_601;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// `n <= 6`, and the reference table to `s = 15`.
    Quick,
    /// The stated ranges: `n <= 8` and the full table.
    Full,
}

impl Mode {
    fn nmax(self) -> usize {
        match self {
            Mode::Quick => 6,
            Mode::Full => 8,
        }
    }
}

/// Outcome of one numbered criterion.
#[derive(Clone, Debug, Serialize)]
pub struct Criterion {
    pub number: usize,
    pub title: String,
    /// Whether a failure here refutes a theorem. Conjectural patterns and
    /// characteristic 2 runs are informational.
    pub gating: bool,
    pub reports: Vec<CheckReport>,
    /// Findings printed next to the verdict without affecting it.
    pub notes: Vec<CheckReport>,
    pub elapsed: Duration,
    pub time_limit: Option<Duration>,
}

impl Criterion {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(|r| r.passed)
    }

    pub fn within_time(&self) -> bool {
        self.time_limit.is_none_or(|t| self.elapsed <= t)
    }

    pub fn checked(&self) -> usize {
        self.reports.iter().map(|r| r.checked).sum()
    }

    pub fn verdict(&self) -> &'static str {
        if self.passed() && self.within_time() {
            "PASS"
        } else {
            "FAIL"
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} criterion {}: {} ({} checks, {:.2?}",
            self.verdict(),
            self.number,
            self.title,
            self.checked(),
            self.elapsed
        )?;
        if let Some(t) = self.time_limit {
            write!(f, ", limit {t:?}")?;
        }
        write!(f, ")")?;
        if !self.gating {
            write!(f, " [informational]")?;
        }
        // informational criteria list every row, theorem criteria only failures
        for r in self.reports.iter().filter(|r| !self.gating || !r.passed) {
            write!(f, "\n    {r}")?;
        }
        for r in &self.notes {
            write!(f, "\n    note: {r}")?;
        }
        Ok(())
    }
}

fn timed(
    number: usize,
    title: &str,
    gating: bool,
    limit: Option<u64>,
    body: impl FnOnce() -> Result<(Vec<CheckReport>, Vec<CheckReport>)>,
) -> Result<Criterion> {
    let start = Instant::now();
    let (reports, notes) = body()?;
    Ok(Criterion {
        number,
        title: title.to_string(),
        gating,
        reports,
        notes,
        elapsed: start.elapsed(),
        time_limit: limit.map(Duration::from_secs),
    })
}

/// `(gamma_s, alpha_s)` against the reference table.
pub fn criterion_table(smax: usize) -> Result<Criterion> {
    timed(1, "reference table of gamma_s, alpha_s", true, Some(10), || {
        let pair = gamma_alpha(smax)?;
        let mut r = CheckReport::new(format!("gamma_alpha({smax}) against the reference table"));
        for (s, &(g, a)) in REFERENCE_TABLE.iter().enumerate().take(smax) {
            let s = s + 1;
            let got = (pair.gamma(s), pair.alpha(s));
            r.check(got == (BigInt::from(g), BigInt::from(a)), || format!("s={s}: {got:?} vs ({g}, {a})"));
        }
        Ok((vec![r], vec![]))
    })
}

pub fn criterion_linearity(nmax: usize) -> Result<Criterion> {
    timed(2, "linearity of path and cycle deviations in n", true, Some(30), || {
        let pair = gamma_alpha(nmax + 1)?;
        Ok((vec![check_linearity(3..=nmax, &pair)?], vec![]))
    })
}

fn path_and_cycles(nmax: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in 2..=nmax {
        out.push(path_graph(n)?);
        if n >= 3 {
            out.push(cycle_graph(n)?);
        }
    }
    Ok(out)
}

pub fn criterion_squarefree(nmax: usize) -> Result<Criterion> {
    timed(3, "squarefree multigraded deviations", true, Some(60), || {
        let graphs = path_and_cycles(nmax)?;
        let reports = graphs.par_iter().map(check_squarefree_deviations).collect::<Result<_>>()?;
        Ok((reports, vec![]))
    })
}

/// Support property over the box of norm at most `bound`, stability under
/// appending a vertex, and rotation orbits for cycles.
pub fn criterion_support(nmax: usize, bound: u64) -> Result<Criterion> {
    timed(4, "support and stability of multigraded deviations", true, None, || {
        let graphs = path_and_cycles(nmax)?;
        let mut reports: Vec<CheckReport> = graphs
            .par_iter()
            .map(|g| {
                let cap = ExponentVector::new(vec![bound as u32; g.n()]);
                let t = deviations_multigraded(g, &cap, bound)?;
                check_support_property(g, &t)
            })
            .collect::<Result<_>>()?;
        let stab: Vec<CheckReport> = (3..=nmax)
            .into_par_iter()
            .map(|n| check_stability(n, &ExponentVector::new(vec![bound as u32; n]), bound))
            .collect::<Result<_>>()?;
        reports.extend(stab);
        let orbits: Vec<CheckReport> =
            (3..=nmax).into_par_iter().map(|n| check_orbit_structure(n, n - 1)).collect::<Result<_>>()?;
        reports.extend(orbits);
        Ok((reports, vec![]))
    })
}

fn table_diff(a: &BettiTable, b: &BettiTable) -> Option<String> {
    let keys = a.entries.keys().chain(b.entries.keys());
    for (i, v) in keys {
        let (x, y) = (a.get(*i, v), b.get(*i, v));
        if x != y {
            return Some(format!("beta_({i},{v}): {x} vs {y}"));
        }
    }
    None
}

/// Closed form, Koszul homology and model homology agree on every squarefree
/// multidegree.
pub fn betti_agreement<F: Field>(g: &Graph, kind: ModelKind, field: &F) -> Result<CheckReport> {
    let n = g.n();
    let closed = betti_table(g)?;
    let koszul = homology(&edge_ideal(g), &ExponentVector::ones(n), field)?.betti();
    let model = model_homology(kind, n, field)?;
    let mut r = CheckReport::new(format!("three Betti computations, {} n={n}", g.kind()));
    r.check(closed.n == koszul.n, || "ambient".into());
    let d1 = table_diff(&closed, &koszul);
    r.check(d1.is_none(), || format!("closed form vs Koszul: {}", d1.clone().unwrap_or_default()));
    let d2 = table_diff(&closed, &model);
    r.check(d2.is_none(), || format!("closed form vs model: {}", d2.clone().unwrap_or_default()));
    r.checked += closed.entries.len();
    Ok(r)
}

pub fn criterion_betti<F: Field>(nmax: usize, field: &F, gating: bool) -> Result<Criterion> {
    timed(5, "Betti numbers three ways", gating, Some(300), || {
        let mut jobs = Vec::new();
        for n in 3..=nmax {
            jobs.push((path_graph(n)?, ModelKind::Path));
            jobs.push((cycle_graph(n)?, ModelKind::Cycle));
        }
        let mut reports: Vec<CheckReport> =
            jobs.par_iter().map(|(g, k)| betti_agreement(g, *k, field)).collect::<Result<_>>()?;
        // tensor factors: disjoint unions multiply graded Betti polynomials
        let unions = [
            (path_graph(2)?, path_graph(3)?),
            (cycle_graph(3)?, path_graph(2)?),
            (cycle_graph(4)?, path_graph(3)?),
        ];
        for (a, b) in &unions {
            let u = a.disjoint_union(b);
            let got = homology(&edge_ideal(&u), &ExponentVector::ones(u.n()), field)?.betti().graded();
            let want = polynomial_product(&betti_table(a)?.graded(), &betti_table(b)?.graded());
            let mut r = CheckReport::new(format!("disjoint union {} n={} and {} n={}", a.kind(), a.n(), b.kind(), b.n()));
            r.check(got == want, || format!("{got:?} vs {want:?}"));
            reports.push(r);
        }
        // restricted ideals: every squarefree bound on C4 and P5
        for g in [cycle_graph(4)?, path_graph(5)?] {
            let n = g.n();
            let mut r = CheckReport::new(format!("restricted ideals of {} n={n}", g.kind()));
            for m in 0..1u64 << n {
                let a = ExponentVector::from_mask(n, m);
                let want = restricted_ideal_betti(&g, &a)?;
                let got = homology(&edge_ideal(&g).restrict(&a), &ExponentVector::ones(n), field)?.betti();
                let d = table_diff(&want, &got);
                r.check(d.is_none(), || format!("a={a}: {}", d.clone().unwrap_or_default()));
            }
            reports.push(r);
        }
        for g in path_and_cycles(nmax)? {
            let t = betti_table(&g)?;
            reports.push(check_k_polynomial(&g, &t));
        }
        Ok((reports, vec![]))
    })
}

pub fn criterion_model<F: Field>(nmax: usize, field: &F) -> Result<Criterion> {
    timed(6, "model differentials and non-bounding monomials", true, None, || {
        let mut reports = Vec::new();
        for n in 2..=nmax {
            reports.push(check_square_zero(ModelKind::Path, n)?);
            if n >= 3 {
                reports.push(check_square_zero(ModelKind::Cycle, n)?);
            }
        }
        reports.push(check_star_monomials(ModelKind::Path, nmax, field, StarReading::Literal)?);
        reports.push(check_star_monomials(ModelKind::Cycle, nmax, field, StarReading::Cyclic)?);
        reports.push(check_merge_coefficients(ModelKind::Path, nmax, SEED)?);
        reports.push(check_merge_coefficients(ModelKind::Cycle, nmax, SEED)?);
        reports.push(check_w_cycles(nmax)?);
        // the same conditions read with the last block of a cycle exempt
        let literal = check_star_monomials(ModelKind::Cycle, nmax, field, StarReading::Literal)?;
        Ok((reports, vec![literal]))
    })
}

pub fn criterion_generation<F: Field>(nmax: usize, field: &F, gating: bool) -> Result<Criterion> {
    timed(7, "generation of the Koszul homology algebra", gating, Some(300), || {
        let mut graphs = Vec::new();
        for n in 2..=nmax {
            graphs.push(path_graph(n)?);
        }
        // C7 always: it carries the one exceptional generator
        for n in 3..=nmax.max(7) {
            graphs.push(cycle_graph(n)?);
        }
        let reports = graphs.par_iter().map(|g| check_generation(g, field)).collect::<Result<_>>()?;
        Ok((reports, vec![]))
    })
}

pub fn criterion_diagonals<F: Field>(nmax: usize, field: &F, gating: bool) -> Result<Criterion> {
    timed(8, "diagonals j = 2i and j = 2i - 1", gating, None, || {
        let graphs = path_and_cycles(nmax.min(7))?;
        let mut reports: Vec<CheckReport> = graphs
            .par_iter()
            .map(|g| {
                let h = homology(&edge_ideal(g), &ExponentVector::ones(g.n()), field)?;
                check_diagonals(&h, &format!("{} n={}", g.kind(), g.n()))
            })
            .collect::<Result<_>>()?;
        reports.push(check_random_diagonals(20, 5, SEED, field)?);
        Ok((reports, vec![]))
    })
}

/// Observed patterns past the linear range. A refuted formula is reported as
/// a failing check but never gates.
pub fn criterion_patterns(nmax: usize) -> Result<(Criterion, Vec<PatternResult>)> {
    let mut patterns = Vec::new();
    let c = timed(9, "observed higher deviation patterns", false, None, || {
        patterns = check_higher_patterns(nmax)?;
        let reports = patterns
            .iter()
            .map(|p| {
                let mut r = CheckReport::new(format!("{} = {}", p.name, p.formula));
                for (n, want, got) in &p.rows {
                    r.check(want == got, || format!("n={n}: predicted {want}, computed {got}"));
                }
                r
            })
            .collect();
        Ok((reports, vec![]))
    })?;
    Ok((c, patterns))
}

/// Every criterion over one field, at the sizes of `mode`.
pub fn run_all<F: Field>(mode: Mode, field: &F) -> Result<Vec<Criterion>> {
    let nmax = mode.nmax();
    let char2 = field.characteristic() == 2;
    let smax = if mode == Mode::Full { 25 } else { 15 };
    let mut out = Vec::new();
    if !char2 {
        out.push(criterion_table(smax)?);
        out.push(criterion_linearity(if mode == Mode::Full { 12 } else { 8 })?);
        out.push(criterion_squarefree(nmax)?);
        out.push(criterion_support(nmax, nmax as u64)?);
    }
    out.push(criterion_betti(nmax.min(if mode == Mode::Full { 8 } else { 6 }), field, !char2)?);
    if !char2 {
        out.push(criterion_model(nmax, field)?);
    }
    out.push(criterion_generation(nmax, field, !char2)?);
    out.push(criterion_diagonals(nmax, field, !char2)?);
    if !char2 {
        out.push(criterion_patterns(nmax)?.0);
    }
    Ok(out)
}

/// Runs the suite in characteristic `p` (0 for the rationals). Characteristic
/// 2 runs only the homology criteria and marks them informational.
pub fn run(mode: Mode, characteristic: u64) -> Result<Vec<Criterion>> {
    if characteristic == 0 {
        run_all(mode, &Rationals)
    } else {
        run_all(mode, &PrimeField::new(characteristic)?)
    }
}

/// Successive ratios of the reference sequences, for the growth report.
pub fn ratio_report(smax: usize) -> Result<Vec<(usize, Option<f64>, Option<f64>)>> {
    Ok(gamma_alpha(smax)?.ratios())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_prefix_matches() {
        let c = criterion_table(12).unwrap();
        assert!(c.passed(), "{c}");
        assert_eq!(c.checked(), 12);
    }

    #[test]
    fn small_betti_agreement() {
        let r = betti_agreement(&cycle_graph(5).unwrap(), ModelKind::Cycle, &Rationals).unwrap();
        assert!(r.passed, "{r}");
    }

    #[test]
    fn informational_flag_in_char_two() {
        let c = criterion_diagonals(4, &PrimeField::new(2).unwrap(), false).unwrap();
        assert!(!c.gating);
        assert!(c.to_string().contains("[informational]"));
    }
}
