use std::fmt;

use serde::{Deserialize, Serialize};

/// A multidegree in `N^n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(components: Vec<u32>) -> Self {
        Self(components)
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn ones(n: usize) -> Self {
        Self(vec![1; n])
    }

    /// `e_i`, zero-based.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Self(v)
    }

    /// Squarefree vector with the given zero-based support.
    pub fn indicator<I: IntoIterator<Item = usize>>(n: usize, support: I) -> Self {
        let mut v = vec![0; n];
        for i in support {
            v[i] = 1;
        }
        Self(v)
    }

    /// Squarefree vector from a bitmask over zero-based indices.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        Self((0..n).map(|i| ((mask >> i) & 1) as u32).collect())
    }

    pub fn components(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn norm(&self) -> u64 {
        self.0.iter().map(|&c| c as u64).sum()
    }

    /// Zero-based indices of the positive components.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn support_mask(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .fold(0, |m, (i, _)| m | (1 << i))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&c| c <= 1)
    }

    /// Componentwise `self <= other`.
    pub fn divides(&self, other: &Self) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.len(), other.len());
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        if !other.divides(self) {
            return None;
        }
        Some(Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    /// `(v_1, ..., v_n, 0)`.
    pub fn append_zero(&self) -> Self {
        let mut v = self.0.clone();
        v.push(0);
        Self(v)
    }

    /// Cyclic shift by `k` places to the right: component `i` moves to `i + k mod n`.
    pub fn rotate(&self, k: usize) -> Self {
        let n = self.0.len();
        if n == 0 {
            return self.clone();
        }
        let mut v = vec![0; n];
        for (i, &c) in self.0.iter().enumerate() {
            v[(i + k) % n] = c;
        }
        Self(v)
    }

    /// Support is a nonempty run `{a, a+1, ..., b}`.
    pub fn support_is_interval(&self) -> bool {
        let s = self.support();
        !s.is_empty() && s[s.len() - 1] - s[0] + 1 == s.len()
    }

    /// Support is an interval or wraps around: `{1..a} u {b..n}`.
    pub fn support_is_cyclic_interval(&self) -> bool {
        let s = self.support();
        if s.is_empty() {
            return false;
        }
        if s.len() == self.len() {
            return true;
        }
        // exactly one gap when read cyclically
        let n = self.len();
        let gaps = (0..n).filter(|&i| self.0[i] > 0 && self.0[(i + 1) % n] == 0).count();
        gaps == 1
    }

    pub fn max_component(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Every vector `u <= cap` with `|u| <= degree_bound`, ordered by norm then lexicographically.
    pub fn enumerate_box(cap: &Self, degree_bound: u64) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; cap.len()];
        fn rec(i: usize, left: u64, cap: &[u32], cur: &mut Vec<u32>, out: &mut Vec<ExponentVector>) {
            if i == cap.len() {
                out.push(ExponentVector(cur.clone()));
                return;
            }
            let top = (cap[i] as u64).min(left);
            for c in 0..=top {
                cur[i] = c as u32;
                rec(i + 1, left - c, cap, cur, out);
            }
            cur[i] = 0;
        }
        rec(0, degree_bound, &cap.0, &mut cur, &mut out);
        out.sort_by(|a, b| a.norm().cmp(&b.norm()).then_with(|| a.cmp(b)));
        out
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

impl std::ops::Index<usize> for ExponentVector {
    type Output = u32;

    fn index(&self, i: usize) -> &u32 {
        &self.0[i]
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norm_and_support() {
        let v = ExponentVector::new(vec![1, 2, 0, 3]);
        assert_eq!(v.norm(), 6);
        assert_eq!(v.support(), vec![0, 1, 3]);
        assert!(!v.is_squarefree());
        assert_eq!(v.support_mask(), 0b1011);
    }

    #[test]
    fn rotation_is_cyclic() {
        let v = ExponentVector::new(vec![1, 0, 0, 2]);
        assert_eq!(v.rotate(1), ExponentVector::new(vec![2, 1, 0, 0]));
        assert_eq!(v.rotate(4), v);
    }

    #[test]
    fn intervals() {
        let iv = |c: &[u32]| ExponentVector::new(c.to_vec());
        assert!(iv(&[1, 2, 1, 0, 0]).support_is_interval());
        assert!(!iv(&[1, 0, 0, 1, 2]).support_is_interval());
        assert!(iv(&[1, 0, 0, 1, 2]).support_is_cyclic_interval());
        assert!(!iv(&[1, 0, 2, 0, 1]).support_is_cyclic_interval());
        assert!(iv(&[1, 1, 1]).support_is_cyclic_interval());
        assert!(!iv(&[0, 0, 0]).support_is_interval());
    }

    #[test]
    fn box_enumeration_is_ordered() {
        let b = ExponentVector::enumerate_box(&ExponentVector::new(vec![2, 1]), 2);
        let got: Vec<_> = b.iter().map(|v| v.components().to_vec()).collect();
        assert_eq!(got, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1], vec![2, 0]]);
    }
}
