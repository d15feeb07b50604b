//! Exact linear algebra over `Q` and `F_p`.
//!
//! Ranks over the rationals go through fraction-free (Bareiss) elimination on
//! integer matrices. Everything that needs actual vectors (kernels, homology
//! representatives, coordinates of a class) uses [`Echelon`] over a [`Field`].

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A field whose elements are handed around by value. Arithmetic goes through
/// the field object so that `F_p` can carry its modulus.
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, a: i64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    /// `0` for the rationals.
    fn characteristic(&self) -> u64;
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, a: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(a))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "inverse of zero");
        a.recip()
    }
    fn characteristic(&self) -> u64 {
        0
    }
}

/// `Z/pZ` for a prime `p < 2^32`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..1 << 32).contains(&p) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = r * a % self.p;
            }
            a = a * a % self.p;
            e >>= 1;
        }
        r
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn from_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        self.pow(*a, self.p - 2)
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
}

/// Rank of an integer matrix by fraction-free elimination.
pub fn rank_bareiss(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, piv);
        for r in rank + 1..m.len() {
            for c in col + 1..ncols {
                // exact by Sylvester's identity
                let v = (&m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c]) / &prev;
                m[r][c] = v;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Rank over `field` by ordinary elimination.
pub fn rank<F: Field>(field: &F, rows: &[Vec<F::Elem>]) -> usize {
    let mut e = Echelon::new(field.clone(), rows.first().map_or(0, Vec::len), 0);
    for r in rows {
        e.insert(r.clone(), Vec::new());
    }
    e.rank()
}

/// A basis of the kernel of `x -> x * M` where `M` has the given rows, i.e.
/// all `x` with `sum_r x_r M[r] = 0`.
pub fn left_kernel<F: Field>(field: &F, rows: &[Vec<F::Elem>], ncols: usize) -> Vec<Vec<F::Elem>> {
    let nrows = rows.len();
    let mut e = Echelon::new(field.clone(), ncols, nrows);
    let mut out = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let mut tag = vec![field.zero(); nrows];
        tag[i] = field.one();
        if let Some(dep) = e.insert(r.clone(), tag) {
            out.push(dep);
        }
    }
    out
}

/// Incrementally built row echelon form whose rows carry a tag vector that
/// undergoes the same row operations.
///
/// Rows are reduced against earlier rows on insertion and normalized to a unit
/// pivot, so reducing a vector by the rows in insertion order clears every
/// pivot position.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    ncols: usize,
    ntags: usize,
    rows: Vec<(usize, Vec<F::Elem>, Vec<F::Elem>)>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, ncols: usize, ntags: usize) -> Self {
        Self { field, ncols, ntags, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Reduces `v` against the rows; returns the residual and the accumulated
    /// tag, so that `v = residual + sum(coefficient * row)` and the tag is
    /// `sum(coefficient * row_tag)`.
    pub fn reduce(&self, mut v: Vec<F::Elem>) -> (Vec<F::Elem>, Vec<F::Elem>) {
        let f = &self.field;
        let mut tag = vec![f.zero(); self.ntags];
        for (p, row, rtag) in &self.rows {
            if f.is_zero(&v[*p]) {
                continue;
            }
            let c = v[*p].clone();
            for (x, y) in v.iter_mut().zip(row).skip(*p) {
                if !f.is_zero(y) {
                    *x = f.sub(x, &f.mul(&c, y));
                }
            }
            for (t, y) in tag.iter_mut().zip(rtag) {
                if !f.is_zero(y) {
                    *t = f.add(t, &f.mul(&c, y));
                }
            }
        }
        (v, tag)
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let (r, _) = self.reduce(v.to_vec());
        r.iter().all(|x| self.field.is_zero(x))
    }

    /// Adds a row. If it is dependent on the existing rows nothing is stored and
    /// `Some(tag - reduced_tag)` is returned, which is the tag combination of a
    /// vanishing linear relation.
    pub fn insert(&mut self, v: Vec<F::Elem>, tag: Vec<F::Elem>) -> Option<Vec<F::Elem>> {
        debug_assert_eq!(v.len(), self.ncols);
        debug_assert_eq!(tag.len(), self.ntags);
        let f = self.field.clone();
        let (mut r, acc) = self.reduce(v);
        let mut tag: Vec<F::Elem> = tag.iter().zip(&acc).map(|(a, b)| f.sub(a, b)).collect();
        match r.iter().position(|x| !f.is_zero(x)) {
            None => Some(tag),
            Some(p) => {
                let s = f.inv(&r[p]);
                for x in r.iter_mut().skip(p) {
                    *x = f.mul(x, &s);
                }
                for t in tag.iter_mut() {
                    *t = f.mul(t, &s);
                }
                self.rows.push((p, r, tag));
                None
            }
        }
    }

    /// Like [`Echelon::insert`] but reports whether the rank grew.
    pub fn push(&mut self, v: Vec<F::Elem>) -> bool {
        let tags = vec![self.field.zero(); self.ntags];
        self.insert(v, tags).is_none()
    }
}

/// Integer matrix entry from a small signed coefficient.
pub fn int(a: i64) -> BigInt {
    BigInt::from(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&a| int(a)).collect()).collect()
    }

    fn rats(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
        rows.iter().map(|r| r.iter().map(|&a| Rationals.from_i64(a)).collect()).collect()
    }

    #[test]
    fn bareiss_ranks() {
        assert_eq!(rank_bareiss(&ints(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank_bareiss(&ints(&[&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]])), 3);
        assert_eq!(rank_bareiss(&ints(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank_bareiss(&[]), 0);
        assert_eq!(rank_bareiss(&ints(&[&[2, 4, 6], &[1, 3, 5], &[0, 1, 2], &[3, 7, 11]])), 2);
    }

    #[test]
    fn characteristic_matters() {
        let m = &[&[0, 1, 1][..], &[1, 0, 1], &[1, 1, 0]];
        let f2 = PrimeField::new(2).unwrap();
        let rows: Vec<Vec<u64>> = m.iter().map(|r| r.iter().map(|&a| f2.from_i64(a)).collect()).collect();
        assert_eq!(rank(&f2, &rows), 2);
        assert_eq!(rank(&Rationals, &rats(m)), 3);
    }

    #[test]
    fn left_kernel_relations() {
        let rows = rats(&[&[1, 2, 0], &[0, 1, 1], &[1, 3, 1]]);
        let k = left_kernel(&Rationals, &rows, 3);
        assert_eq!(k.len(), 1);
        let f = Rationals;
        for c in 0..3 {
            let s = (0..3).fold(f.zero(), |acc, r| f.add(&acc, &f.mul(&k[0][r], &rows[r][c])));
            assert!(s.is_zero());
        }
    }

    #[test]
    fn tags_track_coordinates() {
        let f = Rationals;
        let mut e = Echelon::new(f, 3, 2);
        e.insert(rats(&[&[1, 1, 0]]).remove(0), vec![f.one(), f.zero()]);
        e.insert(rats(&[&[0, 1, 1]]).remove(0), vec![f.zero(), f.one()]);
        // (2, 5, 3) = 2 (1,1,0) + 3 (0,1,1)
        let (r, tag) = e.reduce(rats(&[&[2, 5, 3]]).remove(0));
        assert!(r.iter().all(|x| x.is_zero()));
        assert_eq!(tag, vec![f.from_i64(2), f.from_i64(3)]);
    }

    #[test]
    fn primes() {
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(101).is_ok());
        assert!(matches!(PrimeField::new(9), Err(Error::NotPrime(9))));
        assert!(PrimeField::new(1).is_err());
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.mul(&f.inv(&3), &3), 1);
        assert_eq!(f.from_i64(-1), 6);
    }
}
