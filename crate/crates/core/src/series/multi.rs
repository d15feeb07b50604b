use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::ExponentVector;
use crate::error::{Error, Result};

/// Sparse power series in `n` variables, truncated both componentwise (`cap`)
/// and by total degree (`degree_bound`).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiSeries {
    terms: BTreeMap<ExponentVector, BigInt>,
    cap: ExponentVector,
    degree_bound: u64,
}

impl MultiSeries {
    pub fn zero(cap: ExponentVector, degree_bound: u64) -> Self {
        Self { terms: BTreeMap::new(), cap, degree_bound }
    }

    pub fn one(cap: ExponentVector, degree_bound: u64) -> Self {
        let mut s = Self::zero(cap, degree_bound);
        let z = ExponentVector::zero(s.cap.len());
        s.terms.insert(z, BigInt::one());
        s
    }

    /// Builds a series from terms, silently dropping anything outside the truncation.
    pub fn from_terms<I>(cap: ExponentVector, degree_bound: u64, terms: I) -> Self
    where
        I: IntoIterator<Item = (ExponentVector, BigInt)>,
    {
        let mut s = Self::zero(cap, degree_bound);
        for (v, c) in terms {
            s.add_term(v, c);
        }
        s
    }

    pub fn cap(&self) -> &ExponentVector {
        &self.cap
    }

    pub fn degree_bound(&self) -> u64 {
        self.degree_bound
    }

    pub fn nvars(&self) -> usize {
        self.cap.len()
    }

    pub fn within(&self, v: &ExponentVector) -> bool {
        v.divides(&self.cap) && v.norm() <= self.degree_bound
    }

    /// Adds `c * xi^v`; ignored when `v` is beyond the truncation.
    pub fn add_term(&mut self, v: ExponentVector, c: BigInt) {
        if c.is_zero() || !self.within(&v) {
            return;
        }
        match self.terms.entry(v) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn coeff(&self, v: &ExponentVector) -> BigInt {
        self.terms.get(v).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_truncation(&self, other: &Self) -> Result<()> {
        if self.cap != other.cap || self.degree_bound != other.degree_bound {
            return Err(Error::TruncationMismatch(format!(
                "cap {} bound {} vs cap {} bound {}",
                self.cap, self.degree_bound, other.cap, other.degree_bound
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_truncation(other)?;
        let mut out = Self::zero(self.cap.clone(), self.degree_bound);
        for (u, a) in &self.terms {
            for (w, b) in &other.terms {
                let v = u.add(w);
                if out.within(&v) {
                    *out.terms.entry(v).or_insert_with(BigInt::zero) += a * b;
                }
            }
        }
        out.terms.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// Substitutes `x_i <- t` for every variable.
    pub fn specialize(&self) -> super::UniSeries {
        let d = self.degree_bound as usize;
        let mut c = vec![BigInt::zero(); d + 1];
        for (v, a) in &self.terms {
            c[v.norm() as usize] += a;
        }
        super::UniSeries::new(c, d)
    }
}

/// Dense working buffer over every exponent vector in a truncation box, used
/// for repeated in-place multiplication by binomial factors `(1 - xi^v)^e`.
pub(crate) struct BoxBuffer {
    pub(crate) monomials: Vec<ExponentVector>,
    index: HashMap<ExponentVector, usize>,
    pub(crate) coeffs: Vec<BigInt>,
    cap: ExponentVector,
    degree_bound: u64,
}

impl BoxBuffer {
    pub(crate) fn new(cap: &ExponentVector, degree_bound: u64) -> Self {
        let monomials = ExponentVector::enumerate_box(cap, degree_bound);
        let index = monomials.iter().enumerate().map(|(i, v)| (v.clone(), i)).collect();
        let coeffs = vec![BigInt::zero(); monomials.len()];
        Self { monomials, index, coeffs, cap: cap.clone(), degree_bound }
    }

    pub(crate) fn from_series(s: &MultiSeries) -> Self {
        let mut b = Self::new(&s.cap, s.degree_bound);
        for (v, c) in s.terms() {
            let i = b.index[v];
            b.coeffs[i] = c.clone();
        }
        b
    }

    pub(crate) fn set_one(&mut self) {
        for c in &mut self.coeffs {
            *c = BigInt::zero();
        }
        self.coeffs[0] = BigInt::one();
    }

    /// Multiplies in place by `(1 - xi^v)^e` for any integer `e`.
    pub(crate) fn mul_binomial(&mut self, v: &ExponentVector, e: &BigInt) {
        let vn = v.norm();
        if vn == 0 || e.is_zero() {
            return;
        }
        let Some(room) = self.cap.checked_sub(v) else { return };
        let kmax = (self.degree_bound / vn) as usize;
        // b_k = (-1)^k C(e, k)
        let mut b = vec![BigInt::one()];
        let mut binom = BigInt::one();
        for k in 1..=kmax {
            binom = binom * (e - BigInt::from(k - 1)) / BigInt::from(k);
            b.push(if k % 2 == 1 { -&binom } else { binom.clone() });
        }
        let rest = self.degree_bound - vn;
        // Targets u = v + w, processed from the top so sources u - k v are still old.
        let targets: Vec<usize> = self
            .monomials
            .iter()
            .filter(|w| w.norm() <= rest && w.divides(&room))
            .map(|w| self.index[&w.add(v)])
            .collect();
        for &ui in targets.iter().rev() {
            let mut acc = BigInt::zero();
            let mut u = self.monomials[ui].clone();
            for bk in b.iter().skip(1) {
                match u.checked_sub(v) {
                    Some(next) => {
                        let j = self.index[&next];
                        if !self.coeffs[j].is_zero() {
                            acc += bk * &self.coeffs[j];
                        }
                        u = next;
                    }
                    None => break,
                }
            }
            if !acc.is_zero() {
                self.coeffs[ui] += acc;
            }
        }
    }

    #[cfg(test)]
    pub(crate) fn into_series(self) -> MultiSeries {
        MultiSeries::from_terms(
            self.cap,
            self.degree_bound,
            self.monomials.into_iter().zip(self.coeffs),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(c: &[u32]) -> ExponentVector {
        ExponentVector::new(c.to_vec())
    }

    fn series(cap: &[u32], bound: u64, terms: &[(&[u32], i64)]) -> MultiSeries {
        MultiSeries::from_terms(
            ev(cap),
            bound,
            terms.iter().map(|(v, c)| (ev(v), BigInt::from(*c))),
        )
    }

    #[test]
    fn identity_product() {
        let a = series(&[1, 1, 1], 3, &[(&[0, 0, 0], 1), (&[1, 1, 0], -1)]);
        let one = MultiSeries::one(ev(&[1, 1, 1]), 3);
        assert_eq!(a.mul(&one).unwrap(), a);
    }

    #[test]
    fn product_of_two_binomials() {
        let a = series(&[1, 1], 2, &[(&[0, 0], 1), (&[1, 0], 1)]);
        let b = series(&[1, 1], 2, &[(&[0, 0], 1), (&[0, 1], 1)]);
        let want = series(&[1, 1], 2, &[(&[0, 0], 1), (&[1, 0], 1), (&[0, 1], 1), (&[1, 1], 1)]);
        assert_eq!(a.mul(&b).unwrap(), want);
    }

    #[test]
    fn product_beyond_cap_is_dropped() {
        let a = series(&[1, 1, 1], 3, &[(&[0, 0, 0], 1), (&[1, 1, 0], -1)]);
        let b = series(&[1, 1, 1], 3, &[(&[0, 0, 0], 1), (&[0, 1, 1], -1)]);
        let want = series(&[1, 1, 1], 3, &[(&[0, 0, 0], 1), (&[1, 1, 0], -1), (&[0, 1, 1], -1)]);
        assert_eq!(a.mul(&b).unwrap(), want);
    }

    #[test]
    fn cap_mismatch_is_rejected() {
        let a = MultiSeries::one(ev(&[1, 1]), 2);
        let b = MultiSeries::one(ev(&[1, 2]), 2);
        assert!(matches!(a.mul(&b), Err(Error::TruncationMismatch(_))));
    }

    #[test]
    fn writes_respect_both_limits() {
        let s = series(&[2, 2], 3, &[(&[2, 2], 5), (&[3, 0], 1), (&[2, 1], 7), (&[1, 1], 0)]);
        assert_eq!(s.len(), 1);
        assert_eq!(s.coeff(&ev(&[2, 1])), BigInt::from(7));
    }

    #[test]
    fn add_term_cancels_to_nothing() {
        let mut s = MultiSeries::one(ev(&[1, 1]), 2);
        s.add_term(ev(&[1, 0]), BigInt::from(2));
        s.add_term(ev(&[1, 0]), BigInt::from(-2));
        assert_eq!(s, MultiSeries::one(ev(&[1, 1]), 2));
    }

    #[test]
    fn box_buffer_binomial_matches_sparse_product() {
        let cap = ev(&[2, 2, 1]);
        let v = ev(&[1, 1, 0]);
        let mut buf = BoxBuffer::new(&cap, 4);
        buf.set_one();
        buf.mul_binomial(&ev(&[1, 0, 0]), &BigInt::from(-1));
        buf.mul_binomial(&v, &BigInt::from(2));
        // (1 - x1)^-1 (1 - x1 x2)^2 computed sparsely
        let geo = MultiSeries::from_terms(
            cap.clone(),
            4,
            (0..=2).map(|k| (ev(&[k, 0, 0]), BigInt::one())),
        );
        let sq = series(&[2, 2, 1], 4, &[(&[0, 0, 0], 1), (&[1, 1, 0], -2), (&[2, 2, 0], 1)]);
        assert_eq!(buf.into_series(), geo.mul(&sq).unwrap());
    }
}
