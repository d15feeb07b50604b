//! The Koszul complex `K = R (x) Lambda(e_1, ..., e_n)` of `R = S/I` for a
//! monomial ideal `I`, one multidegree strand at a time: homology with explicit
//! representatives, the product on homology, and subalgebra spans.
//!
//! Conventions: `e_J` has `J` sorted ascending; `d(m e_J) = sum_j (-1)^pos(j) (m t_j) e_{J - j}`
//! where `pos(j)` is the number of elements of `J` below `j`; the product
//! `e_J e_K` carries the parity of the merge of `J` and `K`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::betti::BettiTable;
use crate::error::{Error, Result};
use crate::ideals::{edge_ideal, Graph, GraphKind, MonomialIdeal};
use crate::linalg::{left_kernel, rank, rank_bareiss, Echelon, Field};
use crate::report::CheckReport;
use crate::series::ExponentVector;

/// `m (x) e_J` with multidegree `m + chi_J`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct StrandBasisElement {
    pub monomial: ExponentVector,
    /// Bitmask of `J` over zero-based indices.
    pub wedge: u64,
}

impl StrandBasisElement {
    pub fn degree(&self) -> usize {
        self.wedge.count_ones() as usize
    }

    pub fn wedge_indices(&self) -> Vec<usize> {
        (0..64).filter(|&j| (self.wedge >> j) & 1 == 1).collect()
    }
}

fn below(mask: u64, j: usize) -> u32 {
    (mask & ((1u64 << j) - 1)).count_ones()
}

/// Parity of the shuffle that sorts `J ++ K`, for disjoint `J`, `K`.
pub fn merge_sign(j: u64, k: u64) -> i64 {
    let mut inversions = 0u32;
    let mut rest = k;
    while rest != 0 {
        let y = rest.trailing_zeros() as usize;
        inversions += (j >> (y + 1)).count_ones();
        rest &= rest - 1;
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// One multidegree strand of the Koszul complex.
#[derive(Clone, Debug)]
pub struct StrandComplex<F: Field> {
    pub v: ExponentVector,
    /// `bases[i]` spans homological degree `i`.
    pub bases: Vec<Vec<StrandBasisElement>>,
    index: Vec<HashMap<u64, usize>>,
    /// `differentials[i]` has one row per element of `bases[i]`, written in
    /// `bases[i - 1]`; `differentials[0]` is empty.
    pub differentials: Vec<Vec<Vec<F::Elem>>>,
    /// Same matrices with integer entries.
    pub integer_differentials: Vec<Vec<Vec<BigInt>>>,
}

impl<F: Field> StrandComplex<F> {
    pub fn top(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }

    pub fn position(&self, i: usize, wedge: u64) -> Option<usize> {
        self.index.get(i)?.get(&wedge).copied()
    }

    /// `d_{i-1} d_i = 0` for every `i`.
    pub fn is_complex(&self, field: &F) -> bool {
        (2..=self.top()).all(|i| {
            let a = &self.differentials[i];
            let b = &self.differentials[i - 1];
            a.iter().all(|row| {
                (0..self.bases[i - 2].len()).all(|c| {
                    let s = row
                        .iter()
                        .zip(b)
                        .fold(field.zero(), |acc, (x, brow)| field.add(&acc, &field.mul(x, &brow[c])));
                    field.is_zero(&s)
                })
            })
        })
    }
}

/// The strand of `K` in multidegree `v`.
pub fn strand<F: Field>(ideal: &MonomialIdeal, v: &ExponentVector, field: &F) -> StrandComplex<F> {
    let supp = v.support_mask();
    let top = supp.count_ones() as usize;
    let mut bases: Vec<Vec<StrandBasisElement>> = vec![Vec::new(); top + 1];
    // subsets of the support in increasing order of mask
    let mut sub = 0u64;
    loop {
        let chi = ExponentVector::from_mask(v.len(), sub);
        let m = v.checked_sub(&chi).expect("subset of the support");
        if !ideal.contains(&m) {
            bases[sub.count_ones() as usize].push(StrandBasisElement { monomial: m, wedge: sub });
        }
        if sub == supp {
            break;
        }
        sub = (sub.wrapping_sub(supp)) & supp;
    }
    for b in &mut bases {
        b.sort_by_key(|e| e.wedge);
    }
    let index: Vec<HashMap<u64, usize>> = bases
        .iter()
        .map(|b| b.iter().enumerate().map(|(k, e)| (e.wedge, k)).collect())
        .collect();

    let mut integer_differentials = vec![Vec::new()];
    for i in 1..=top {
        let rows = bases[i]
            .iter()
            .map(|e| {
                let mut row = vec![BigInt::from(0); bases[i - 1].len()];
                for j in e.wedge_indices() {
                    if let Some(&c) = index[i - 1].get(&(e.wedge & !(1u64 << j))) {
                        row[c] = BigInt::from(if below(e.wedge, j) % 2 == 0 { 1 } else { -1 });
                    }
                }
                row
            })
            .collect();
        integer_differentials.push(rows);
    }
    let differentials = integer_differentials
        .iter()
        .map(|m: &Vec<Vec<BigInt>>| {
            m.iter()
                .map(|row| row.iter().map(|x| field.from_i64(i64::try_from(x).expect("unit entry"))).collect())
                .collect()
        })
        .collect();
    StrandComplex { v: v.clone(), bases, index, differentials, integer_differentials }
}

/// `H_{i,v}` with a fixed basis of cycle representatives.
#[derive(Clone, Debug)]
pub struct HomologySpace<F: Field> {
    pub dim: usize,
    /// Representatives written in the strand basis of degree `i`.
    pub reps: Vec<Vec<F::Elem>>,
    reducer: Echelon<F>,
}

impl<F: Field> HomologySpace<F> {
    /// Coordinates of the class of the cycle `z`; errors if `z` is not a cycle
    /// (it then has a component outside boundaries plus representatives).
    pub fn coordinates(&self, z: &[F::Elem], field: &F) -> Option<Vec<F::Elem>> {
        let (res, tag) = self.reducer.reduce(z.to_vec());
        res.iter().all(|x| field.is_zero(x)).then_some(tag)
    }
}

fn homology_space<F: Field>(c: &StrandComplex<F>, i: usize, field: &F) -> HomologySpace<F> {
    let size = c.bases[i].len();
    let d_in = if i < c.top() { &c.differentials[i + 1] } else { &Vec::new() };
    let cycles = if i == 0 {
        (0..size)
            .map(|k| {
                let mut e = vec![field.zero(); size];
                e[k] = field.one();
                e
            })
            .collect()
    } else {
        left_kernel(field, &c.differentials[i], c.bases[i - 1].len())
    };
    let rank_in = if field.characteristic() == 0 {
        rank_bareiss(if i < c.top() { &c.integer_differentials[i + 1] } else { &[] })
    } else {
        rank(field, d_in)
    };
    let dim = cycles.len() - rank_in;
    let mut reducer = Echelon::new(field.clone(), size, dim);
    for row in d_in {
        reducer.push(row.clone());
    }
    let mut reps = Vec::new();
    for z in cycles {
        let (res, _) = reducer.reduce(z);
        if res.iter().all(|x| field.is_zero(x)) {
            continue;
        }
        let mut tag = vec![field.zero(); dim];
        tag[reps.len()] = field.one();
        reps.push(res.clone());
        reducer.insert(res, tag);
    }
    assert_eq!(reps.len(), dim, "representatives must certify the rank count");
    HomologySpace { dim, reps, reducer }
}

/// A homology class in bidegree `(i, v)` given by coordinates in the chosen
/// representatives.
#[derive(Clone, Debug, PartialEq)]
pub struct Class<F: Field> {
    pub i: usize,
    pub v: ExponentVector,
    pub coords: Vec<F::Elem>,
}

/// Complex plus homology for one multidegree.
#[derive(Clone, Debug)]
pub struct StrandHomology<F: Field> {
    pub complex: StrandComplex<F>,
    pub spaces: Vec<HomologySpace<F>>,
}

/// Koszul homology of `S/I` over every multidegree `v <= cap`.
#[derive(Clone, Debug)]
pub struct KoszulHomology<F: Field> {
    pub field: F,
    pub ideal: MonomialIdeal,
    pub cap: ExponentVector,
    pub strands: BTreeMap<ExponentVector, StrandHomology<F>>,
}

/// Computes every strand `v <= cap`, in parallel over `v`.
pub fn homology<F: Field>(ideal: &MonomialIdeal, cap: &ExponentVector, field: &F) -> Result<KoszulHomology<F>> {
    if cap.len() != ideal.n() {
        return Err(Error::AmbientMismatch { v: cap.clone(), n: ideal.n() });
    }
    let vs = ExponentVector::enumerate_box(cap, cap.norm());
    let strands = vs
        .into_par_iter()
        .map(|v| {
            let complex = strand(ideal, &v, field);
            let spaces = (0..=complex.top()).map(|i| homology_space(&complex, i, field)).collect();
            (v, StrandHomology { complex, spaces })
        })
        .collect();
    Ok(KoszulHomology { field: field.clone(), ideal: ideal.clone(), cap: cap.clone(), strands })
}

impl<F: Field> KoszulHomology<F> {
    pub fn n(&self) -> usize {
        self.ideal.n()
    }

    pub fn dim(&self, i: usize, v: &ExponentVector) -> usize {
        self.strands.get(v).and_then(|s| s.spaces.get(i)).map_or(0, |h| h.dim)
    }

    /// Nonzero `dim H_{i,v}` as a Betti table.
    pub fn betti(&self) -> BettiTable {
        let mut t = BettiTable::new(self.n());
        for (v, s) in &self.strands {
            for (i, h) in s.spaces.iter().enumerate() {
                t.insert(i, v.clone(), h.dim as u64);
            }
        }
        t
    }

    /// Bidegrees `(i, v)` with nonzero homology, in increasing `(i, v)`.
    pub fn support(&self) -> Vec<(usize, ExponentVector)> {
        let mut out: Vec<_> = self.betti().entries.into_keys().collect();
        out.sort();
        out
    }

    fn space(&self, i: usize, v: &ExponentVector) -> Result<&HomologySpace<F>> {
        self.strands
            .get(v)
            .and_then(|s| s.spaces.get(i))
            .ok_or_else(|| Error::OutOfRange(v.clone()))
    }

    pub fn basis_classes(&self, i: usize, v: &ExponentVector) -> Vec<Class<F>> {
        let d = self.dim(i, v);
        (0..d)
            .map(|k| {
                let mut coords = vec![self.field.zero(); d];
                coords[k] = self.field.one();
                Class { i, v: v.clone(), coords }
            })
            .collect()
    }

    /// All basis classes of bidegree `(i, j)`, i.e. `|v| = j`.
    pub fn classes_in_bidegree(&self, i: usize, j: u64) -> Vec<Class<F>> {
        self.strands
            .keys()
            .filter(|v| v.norm() == j)
            .flat_map(|v| self.basis_classes(i, v))
            .collect()
    }

    pub fn unit(&self) -> Class<F> {
        let z = ExponentVector::zero(self.n());
        Class { i: 0, v: z, coords: vec![self.field.one()] }
    }

    /// Chain-level representative of a class.
    pub fn representative(&self, c: &Class<F>) -> Result<Vec<F::Elem>> {
        let h = self.space(c.i, &c.v)?;
        let f = &self.field;
        let mut out = vec![f.zero(); self.strands[&c.v].complex.bases[c.i].len()];
        for (a, rep) in c.coords.iter().zip(&h.reps) {
            if f.is_zero(a) {
                continue;
            }
            for (o, r) in out.iter_mut().zip(rep) {
                *o = f.add(o, &f.mul(a, r));
            }
        }
        Ok(out)
    }

    /// Class of a chain that must be a cycle.
    pub fn class_of(&self, i: usize, v: &ExponentVector, z: &[F::Elem]) -> Result<Class<F>> {
        let h = self.space(i, v)?;
        let coords = h.coordinates(z, &self.field).ok_or_else(|| Error::NotACycle { i, v: v.clone() })?;
        Ok(Class { i, v: v.clone(), coords })
    }

    /// Product of two chains in `K`.
    pub fn multiply_chains(
        &self,
        (i1, v1, a): (usize, &ExponentVector, &[F::Elem]),
        (i2, v2, b): (usize, &ExponentVector, &[F::Elem]),
    ) -> Result<(usize, ExponentVector, Vec<F::Elem>)> {
        let v = v1.add(v2);
        let target = self.strands.get(&v).ok_or_else(|| Error::OutOfRange(v.clone()))?;
        let f = &self.field;
        let s1 = &self.strands[v1].complex.bases[i1];
        let s2 = &self.strands[v2].complex.bases[i2];
        let i = i1 + i2;
        let mut out = vec![f.zero(); target.complex.bases.get(i).map_or(0, Vec::len)];
        for (x, e1) in a.iter().zip(s1) {
            if f.is_zero(x) {
                continue;
            }
            for (y, e2) in b.iter().zip(s2) {
                if f.is_zero(y) || e1.wedge & e2.wedge != 0 {
                    continue;
                }
                if self.ideal.contains(&e1.monomial.add(&e2.monomial)) {
                    continue;
                }
                let k = target.complex.position(i, e1.wedge | e2.wedge).expect("product lies in the target strand");
                let term = f.mul(&f.from_i64(merge_sign(e1.wedge, e2.wedge)), &f.mul(x, y));
                out[k] = f.add(&out[k], &term);
            }
        }
        Ok((i, v, out))
    }

    pub fn multiply(&self, a: &Class<F>, b: &Class<F>) -> Result<Class<F>> {
        let ra = self.representative(a)?;
        let rb = self.representative(b)?;
        let (i, v, z) = self.multiply_chains((a.i, &a.v, &ra), (b.i, &b.v, &rb))?;
        if self.strands[&v].complex.bases.len() <= i {
            return Ok(Class { i, v, coords: Vec::new() });
        }
        self.class_of(i, &v, &z)
    }

    fn is_zero_class(&self, c: &Class<F>) -> bool {
        c.coords.iter().all(|x| self.field.is_zero(x))
    }
}

/// Dimensions of a subalgebra of `H`, per `(i, v)`.
#[derive(Clone, Debug)]
pub struct SubalgebraSpan<F: Field> {
    pub spans: BTreeMap<(usize, ExponentVector), Vec<Vec<F::Elem>>>,
}

impl<F: Field> SubalgebraSpan<F> {
    pub fn dim(&self, i: usize, v: &ExponentVector) -> usize {
        self.spans.get(&(i, v.clone())).map_or(0, Vec::len)
    }

    /// `(i, v, dim H, dim span)` wherever the two differ.
    pub fn gaps(&self, h: &KoszulHomology<F>) -> Vec<(usize, ExponentVector, usize, usize)> {
        h.support()
            .into_iter()
            .filter_map(|(i, v)| {
                let (full, got) = (h.dim(i, &v), self.dim(i, &v));
                (full != got).then_some((i, v, full, got))
            })
            .collect()
    }
}

/// The subalgebra generated by the given classes (and the unit), closed
/// degree by degree: the span at `(i, v)` is the span of `g * a` over
/// generators `g` and spanning classes `a` of lower bidegree.
pub fn subalgebra_span<F: Field>(h: &KoszulHomology<F>, gens: &[Class<F>]) -> Result<SubalgebraSpan<F>> {
    let f = &h.field;
    let zero = ExponentVector::zero(h.n());
    let mut spans: BTreeMap<(usize, ExponentVector), Vec<Vec<F::Elem>>> = BTreeMap::new();
    spans.insert((0, zero.clone()), vec![vec![f.one()]]);
    let gens: Vec<&Class<F>> = gens.iter().filter(|g| g.i > 0 && !h.is_zero_class(g)).collect();
    for (i, v) in h.support() {
        if i == 0 {
            continue;
        }
        let d = h.dim(i, &v);
        let mut ech = Echelon::new(f.clone(), d, 0);
        let mut basis = Vec::new();
        for g in &gens {
            if g.i > i || !g.v.divides(&v) {
                continue;
            }
            let rest = (i - g.i, v.checked_sub(&g.v).expect("divides"));
            let Some(lower) = spans.get(&rest) else { continue };
            for a in lower {
                let ac = Class { i: rest.0, v: rest.1.clone(), coords: a.clone() };
                let p = h.multiply(g, &ac)?;
                if ech.push(p.coords.clone()) {
                    basis.push(p.coords);
                }
                if basis.len() == d {
                    break;
                }
            }
        }
        if !basis.is_empty() {
            spans.insert((i, v), basis);
        }
    }
    Ok(SubalgebraSpan { spans })
}

/// Basis classes of every `(i, v)` with `i` and `|v|` matching one of the
/// listed bidegrees.
pub fn generators_in_bidegrees<F: Field>(h: &KoszulHomology<F>, bidegrees: &[(usize, u64)]) -> Vec<Class<F>> {
    bidegrees.iter().flat_map(|&(i, j)| h.classes_in_bidegree(i, j)).collect()
}

/// Per `(i, v)`, the dimension of the decomposables `sum H_{>0} * H_{>0}`.
pub fn decomposable_dims<F: Field>(h: &KoszulHomology<F>) -> Result<BTreeMap<(usize, ExponentVector), usize>> {
    let support = h.support();
    let nonzero: BTreeSet<(usize, ExponentVector)> = support.iter().cloned().collect();
    support
        .par_iter()
        .filter(|(i, _)| *i >= 2)
        .map(|(i, v)| {
            let mut ech = Echelon::new(h.field.clone(), h.dim(*i, v), 0);
            for (i1, v1) in nonzero.iter().filter(|(i1, v1)| *i1 >= 1 && 2 * i1 <= *i && v1.divides(v)) {
                let rest = (i - i1, v.checked_sub(v1).expect("divides"));
                if !nonzero.contains(&rest) {
                    continue;
                }
                for a in h.basis_classes(*i1, v1) {
                    for b in h.basis_classes(rest.0, &rest.1) {
                        ech.push(h.multiply(&a, &b)?.coords);
                    }
                }
            }
            Ok(((*i, v.clone()), ech.rank()))
        })
        .collect()
}

/// Bidegrees `(i, |v|)` where `H` is not spanned by products of classes of
/// positive degree, i.e. where minimal algebra generators live.
pub fn minimal_generator_bidegrees<F: Field>(h: &KoszulHomology<F>) -> Result<BTreeSet<(usize, u64)>> {
    let dec = decomposable_dims(h)?;
    Ok(h
        .support()
        .into_iter()
        .filter(|(i, v)| *i >= 1 && h.dim(*i, v) > dec.get(&(*i, v.clone())).copied().unwrap_or(0))
        .map(|(i, v)| (i, v.norm()))
        .collect())
}

/// Vanishing above `j = 2i`, `H_{i,2i} = (H_{1,2})^i` and
/// `H_{i,2i-1} = (H_{1,2})^{i-2} H_{2,3}`, compared as subspaces.
pub fn check_diagonals<F: Field>(h: &KoszulHomology<F>, label: &str) -> Result<CheckReport> {
    let linear = subalgebra_span(h, &generators_in_bidegrees(h, &[(1, 2)]))?;
    let second = subalgebra_span(h, &generators_in_bidegrees(h, &[(1, 2), (2, 3)]))?;
    let mut r = CheckReport::new(format!("diagonals j = 2i, 2i-1 of {label}"));
    for (v, s) in &h.strands {
        let j = v.norm() as usize;
        for (i, sp) in s.spaces.iter().enumerate() {
            if j > 2 * i {
                r.check(sp.dim == 0, || format!("H_({i},{v}) has dim {} above the diagonal", sp.dim));
            } else if j == 2 * i && i >= 1 {
                r.check(linear.dim(i, v) == sp.dim, || {
                    format!("(H_12)^{i} spans {} of {} at {v}", linear.dim(i, v), sp.dim)
                });
            } else if j + 1 == 2 * i && i >= 2 {
                r.check(second.dim(i, v) == sp.dim, || {
                    format!("(H_12)^{} H_23 spans {} of {} at {v}", i - 2, second.dim(i, v), sp.dim)
                });
            }
        }
    }
    Ok(r)
}

/// A random ideal generated by quadratic monomials (squares allowed) in `n`
/// variables.
pub fn random_quadratic_ideal(n: usize, rng: &mut impl Rng) -> MonomialIdeal {
    let mut all = Vec::new();
    for a in 0..n {
        for b in a..n {
            let mut v = vec![0u32; n];
            v[a] += 1;
            v[b] += 1;
            all.push(ExponentVector::new(v));
        }
    }
    let gens: Vec<ExponentVector> = all.into_iter().filter(|_| rng.gen_bool(0.4)).collect();
    MonomialIdeal::new(n, gens).expect("generators live in the ambient ring")
}

/// Diagonal checks over `count` random quadratic monomial ideals in at most
/// `max_vars` variables, seeded for reproducibility. Caps are `2 * 1_n`, which
/// contains every lcm of generators.
pub fn check_random_diagonals<F: Field>(count: usize, max_vars: usize, seed: u64, field: &F) -> Result<CheckReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ideals: Vec<MonomialIdeal> =
        (0..count).map(|_| random_quadratic_ideal(rng.gen_range(2..=max_vars), &mut rng)).collect();
    let reports: Vec<CheckReport> = ideals
        .par_iter()
        .map(|ideal| {
            let cap = ExponentVector::new(vec![2; ideal.n()]);
            let h = homology(ideal, &cap, field)?;
            let gens: Vec<String> = ideal.generators().iter().map(|g| g.to_string()).collect();
            check_diagonals(&h, &format!("ideal {}", gens.join(" ")))
        })
        .collect::<Result<_>>()?;
    let mut r = CheckReport::new(format!("diagonals of {count} random quadratic monomial ideals"));
    for x in &reports {
        r.absorb(x);
    }
    Ok(r.with_detail(format!("seed {seed}, at most {max_vars} variables")))
}

/// Generation of the Koszul homology algebra of a path or cycle by classes of
/// bidegree `(1,2)` and `(2,3)`. For a cycle with `n = 1 mod 3` exactly one
/// class is missing, at `(2n+1)/3` and `1_n`, and adding any nonzero class
/// there completes generation.
pub fn check_generation<F: Field>(g: &Graph, field: &F) -> Result<CheckReport> {
    let n = g.n();
    let h = homology(&edge_ideal(g), &ExponentVector::ones(n), field)?;
    let span = subalgebra_span(&h, &generators_in_bidegrees(&h, &[(1, 2), (2, 3)]))?;
    let gaps = span.gaps(&h);
    let mut r = CheckReport::new(format!("generation in bidegrees (1,2), (2,3), {} n={n}", g.kind()));
    let exceptional = match g.kind() {
        GraphKind::Path => false,
        GraphKind::Cycle => n % 3 == 1,
        GraphKind::General => return Err(Error::KindMismatch { op: "check_generation" }),
    };
    if !exceptional {
        for (i, v, want, got) in &gaps {
            r.check(false, || format!("H_({i},{v}): span {got} of {want}"));
        }
        r.check(true, String::new);
        return Ok(r);
    }
    let top = ((2 * n + 1) / 3, ExponentVector::ones(n));
    r.check(gaps.len() == 1, || format!("{} gaps, expected 1", gaps.len()));
    if let Some((i, v, want, got)) = gaps.first() {
        r.check((*i, v) == (top.0, &top.1) && want - got == 1, || format!("gap at H_({i},{v}): {got} of {want}"));
    }
    let extra = h.basis_classes(top.0, &top.1);
    r.check(extra.len() == 1, || format!("dim H_({},{}) = {}", top.0, top.1, extra.len()));
    // a class in that strand with every coordinate nonzero, plus each basis class
    let mut candidates = extra.clone();
    if let Some(first) = extra.first() {
        let coords = (0..first.coords.len()).map(|k| field.from_i64(k as i64 + 2)).collect();
        candidates.push(Class { i: first.i, v: first.v.clone(), coords });
    }
    let mut gens = generators_in_bidegrees(&h, &[(1, 2), (2, 3)]);
    for c in candidates {
        if c.coords.iter().all(|x| field.is_zero(x)) {
            continue;
        }
        gens.push(c);
        let full = subalgebra_span(&h, &gens)?;
        let left = full.gaps(&h);
        r.check(left.is_empty(), || format!("{} gaps remain after adding a class at the top", left.len()));
        gens.pop();
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::{cycle_graph, edge_ideal, path_graph};
    use crate::linalg::{PrimeField, Rationals};

    fn ev(c: &[u32]) -> ExponentVector {
        ExponentVector::new(c.to_vec())
    }

    #[test]
    fn merge_signs() {
        assert_eq!(merge_sign(0b01, 0b10), 1);
        assert_eq!(merge_sign(0b10, 0b01), -1);
        assert_eq!(merge_sign(0b101, 0b010), -1);
        assert_eq!(merge_sign(0b011, 0b100), 1);
        assert_eq!(merge_sign(0b110, 0b001), 1);
    }

    #[test]
    fn p3_full_strand() {
        let i = edge_ideal(&path_graph(3).unwrap());
        let c = strand(&i, &ExponentVector::ones(3), &Rationals);
        assert_eq!(c.sizes(), vec![0, 1, 3, 1]);
        assert!(c.is_complex(&Rationals));
        let dims: Vec<_> = (0..=3).map(|k| homology_space(&c, k, &Rationals).dim).collect();
        assert_eq!(dims, vec![0, 0, 1, 0]);
    }

    #[test]
    fn zero_strand_and_non_interval() {
        let i = edge_ideal(&path_graph(3).unwrap());
        let h = homology(&i, &ExponentVector::ones(3), &Rationals).unwrap();
        assert_eq!(h.dim(0, &ExponentVector::zero(3)), 1);
        for k in 1..=2 {
            assert_eq!(h.dim(k, &ev(&[1, 0, 1])), 0);
        }
    }

    #[test]
    fn cycle_examples() {
        let c3 = homology(&edge_ideal(&cycle_graph(3).unwrap()), &ExponentVector::ones(3), &Rationals).unwrap();
        assert_eq!(c3.dim(2, &ExponentVector::ones(3)), 2);
        let c7 = homology(&edge_ideal(&cycle_graph(7).unwrap()), &ExponentVector::ones(7), &Rationals).unwrap();
        assert_eq!(c7.dim(5, &ExponentVector::ones(7)), 1);
    }

    #[test]
    fn odd_squares_vanish() {
        let h = homology(&edge_ideal(&path_graph(4).unwrap()), &ExponentVector::new(vec![2; 4]), &Rationals).unwrap();
        let a = &h.basis_classes(1, &ev(&[1, 1, 0, 0]))[0];
        let sq = h.multiply(a, a).unwrap();
        assert!(h.is_zero_class(&sq));
    }

    #[test]
    fn disjoint_products_are_nonzero() {
        let two_edges = crate::ideals::Graph::new(4, &[(1, 2), (3, 4)]).unwrap();
        let h = homology(&edge_ideal(&two_edges), &ExponentVector::ones(4), &Rationals).unwrap();
        let a = &h.basis_classes(1, &ev(&[1, 1, 0, 0]))[0];
        let b = &h.basis_classes(1, &ev(&[0, 0, 1, 1]))[0];
        let ab = h.multiply(a, b).unwrap();
        assert_eq!((ab.i, ab.v.clone()), (2, ExponentVector::ones(4)));
        assert!(!h.is_zero_class(&ab));
        let ba = h.multiply(b, a).unwrap();
        let neg: Vec<_> = ba.coords.iter().map(|x| -x).collect();
        assert_eq!(ab.coords, neg);
        // on the path the same product dies: the block 1_4 has norm 4
        let p4 = homology(&edge_ideal(&path_graph(4).unwrap()), &ExponentVector::ones(4), &Rationals).unwrap();
        let a = &p4.basis_classes(1, &ev(&[1, 1, 0, 0]))[0];
        let b = &p4.basis_classes(1, &ev(&[0, 0, 1, 1]))[0];
        assert!(p4.is_zero_class(&p4.multiply(a, b).unwrap()));
    }

    #[test]
    fn linear_strand_times_second_diagonal_spans() {
        let h = homology(&edge_ideal(&path_graph(5).unwrap()), &ExponentVector::ones(5), &Rationals).unwrap();
        let span = subalgebra_span(&h, &generators_in_bidegrees(&h, &[(1, 2), (2, 3)])).unwrap();
        for v in h.strands.keys().filter(|v| v.norm() == 5) {
            assert_eq!(span.dim(3, v), h.dim(3, v), "{v}");
        }
        assert!(span.gaps(&h).is_empty());
    }

    #[test]
    fn generator_bidegrees() {
        let c7 = homology(&edge_ideal(&cycle_graph(7).unwrap()), &ExponentVector::ones(7), &Rationals).unwrap();
        let g = minimal_generator_bidegrees(&c7).unwrap();
        assert!(g.contains(&(5, 7)));
        let want: BTreeSet<_> = [(1, 2), (2, 3), (5, 7)].into_iter().collect();
        assert_eq!(g, want);
        let c5 = homology(&edge_ideal(&cycle_graph(5).unwrap()), &ExponentVector::ones(5), &Rationals).unwrap();
        assert!(minimal_generator_bidegrees(&c5).unwrap().is_subset(&[(1, 2), (2, 3)].into_iter().collect()));
    }

    #[test]
    fn generation_with_and_without_exception() {
        for g in [path_graph(5).unwrap(), cycle_graph(5).unwrap(), cycle_graph(6).unwrap(), cycle_graph(4).unwrap()] {
            let r = check_generation(&g, &Rationals).unwrap();
            assert!(r.passed, "{r}");
        }
    }

    #[test]
    fn diagonals_hold_for_p5_and_c6() {
        for g in [path_graph(5).unwrap(), cycle_graph(6).unwrap()] {
            let h = homology(&edge_ideal(&g), &ExponentVector::ones(g.n()), &Rationals).unwrap();
            assert!(check_diagonals(&h, "test").unwrap().passed);
        }
    }

    #[test]
    fn prime_field_agrees_on_small_cases() {
        let f = PrimeField::new(3).unwrap();
        let i = edge_ideal(&cycle_graph(6).unwrap());
        let a = homology(&i, &ExponentVector::ones(6), &f).unwrap().betti();
        let b = homology(&i, &ExponentVector::ones(6), &Rationals).unwrap().betti();
        assert_eq!(a, b);
    }

    #[test]
    fn non_cycles_are_rejected() {
        let h = homology(&edge_ideal(&path_graph(3).unwrap()), &ExponentVector::ones(3), &Rationals).unwrap();
        let v = ExponentVector::ones(3);
        let size = h.strands[&v].complex.bases[3].len();
        let z = vec![Rationals.one(); size];
        assert!(matches!(h.class_of(3, &v, &z), Err(Error::NotACycle { .. })));
    }
}
