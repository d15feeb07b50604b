//! Exact truncated power series and extraction of deviations from product
//! expansions.
//!
//! The univariate side recovers `eps_1, ..., eps_D` from a Poincaré series
//! written as `prod_{i odd} (1 + z^i)^eps_i / prod_{i even} (1 - z^i)^eps_i`.
//! The multivariate side recovers multigraded deviations `eps_v` of a Koszul
//! quotient from its multigraded Hilbert series through
//!
//! ```text
//! prod_{|v| odd} (1 - xi^v)^eps_v * HS(xi) = prod_{|v| even} (1 - xi^v)^eps_v
//! ```
//!
//! peeling one multidegree at a time in increasing norm.

mod exponent;
mod multi;
mod uni;

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::Zero;
use serde::Serialize;

pub use exponent::ExponentVector;
pub use multi::MultiSeries;
pub(crate) use multi::BoxBuffer;
pub use uni::{geometric, UniSeries};

use crate::error::{Error, Result};

/// How a [`DeviationTable`] was truncated.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Truncation {
    Degree { order: usize },
    Box { cap: ExponentVector, degree_bound: u64 },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct TableSource {
    /// `path`, `cycle`, `general` or `series`.
    pub kind: String,
    pub n: usize,
    pub truncation: Truncation,
}

/// Graded and/or multigraded deviations.
///
/// Multigraded entries are stored for every multidegree inside the truncation,
/// zeros included, so a missing key means "not computed".
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DeviationTable {
    pub graded: BTreeMap<usize, BigUint>,
    pub multigraded: BTreeMap<ExponentVector, BigUint>,
    pub source: TableSource,
}

impl DeviationTable {
    pub fn epsilon(&self, s: usize) -> Option<&BigUint> {
        self.graded.get(&s)
    }

    pub fn epsilon_at(&self, v: &ExponentVector) -> Option<&BigUint> {
        self.multigraded.get(v)
    }

    /// Nonzero multigraded entries.
    pub fn nonzero(&self) -> impl Iterator<Item = (&ExponentVector, &BigUint)> {
        self.multigraded.iter().filter(|(_, e)| !e.is_zero())
    }

    /// `sum_{|v| = s} eps_v` over the stored multigraded entries.
    pub fn norm_sum(&self, s: u64) -> BigUint {
        self.multigraded
            .iter()
            .filter(|(v, _)| v.norm() == s)
            .map(|(_, e)| e)
            .sum()
    }
}

fn to_nonnegative(value: BigInt, at: impl FnOnce() -> String) -> Result<BigUint> {
    match value.sign() {
        Sign::Minus => Err(Error::NotDeviationSequence { at: at(), value }),
        _ => Ok(value.magnitude().clone()),
    }
}

pub fn uni_mul(a: &UniSeries, b: &UniSeries) -> Result<UniSeries> {
    a.mul(b)
}

pub fn uni_inv(a: &UniSeries) -> Result<UniSeries> {
    a.inv()
}

pub fn multi_mul(a: &MultiSeries, b: &MultiSeries) -> Result<MultiSeries> {
    a.mul(b)
}

/// Peels `eps_1, ..., eps_D` off a Poincaré series with constant term 1.
pub fn extract_deviations_uni(p: &UniSeries) -> Result<DeviationTable> {
    let d = p.order();
    if p.coeff(0) != &BigInt::from(1) {
        return Err(Error::NotUnit(p.coeff(0).clone()));
    }
    // rest = P / (factors peeled so far); its z^i coefficient is eps_i.
    let mut rest = p.clone();
    let mut graded = BTreeMap::new();
    for i in 1..=d {
        let eps = rest.coeff(i).clone();
        let e = to_nonnegative(eps.clone(), || format!("s={i}"))?;
        if !eps.is_zero() {
            let inverse_factor = if i % 2 == 1 {
                UniSeries::binomial_factor(i, 1, &-&eps, d)
            } else {
                UniSeries::binomial_factor(i, -1, &eps, d)
            };
            rest = rest.mul(&inverse_factor)?;
        }
        graded.insert(i, e);
    }
    debug_assert!(rest == UniSeries::one(d));
    Ok(DeviationTable {
        graded,
        multigraded: BTreeMap::new(),
        source: TableSource { kind: "series".into(), n: 0, truncation: Truncation::Degree { order: d } },
    })
}

/// `prod_{i odd} (1 + z^i)^eps_i / prod_{i even} (1 - z^i)^eps_i` truncated at `order`.
pub fn product_expansion(graded: &BTreeMap<usize, BigUint>, order: usize) -> Result<UniSeries> {
    let mut out = UniSeries::one(order);
    for (&i, e) in graded {
        if i == 0 || i > order || e.is_zero() {
            continue;
        }
        let e = BigInt::from(e.clone());
        let f = if i % 2 == 1 {
            UniSeries::binomial_factor(i, 1, &e, order)
        } else {
            UniSeries::binomial_factor(i, -1, &-e, order)
        };
        out = out.mul(&f)?;
    }
    Ok(out)
}

/// Multigraded deviations of a Koszul quotient from its multigraded Hilbert series.
///
/// Peels in increasing norm, lexicographically within a norm. After peeling, the
/// product identity is re-expanded with nonnegative exponents only and compared
/// term by term; any discrepancy is an error.
pub fn extract_deviations_multi(hs: &MultiSeries) -> Result<DeviationTable> {
    let zero = ExponentVector::zero(hs.nvars());
    if hs.coeff(&zero) != BigInt::from(1) {
        return Err(Error::NotUnit(hs.coeff(&zero)));
    }
    let mut work = BoxBuffer::from_series(hs);
    let monomials = work.monomials.clone();
    let mut multigraded = BTreeMap::new();
    for (idx, v) in monomials.iter().enumerate().skip(1) {
        let c = work.coeffs[idx].clone();
        let odd = v.norm() % 2 == 1;
        let eps = if odd { c } else { -c };
        let e = to_nonnegative(eps.clone(), || format!("v={v}"))?;
        if !eps.is_zero() {
            // odd: multiply by (1 - xi^v)^eps; even: divide by it.
            let exp = if odd { eps } else { -eps };
            work.mul_binomial(v, &exp);
        }
        multigraded.insert(v.clone(), e);
    }

    check_multi_residual(hs, &multigraded)?;

    Ok(DeviationTable {
        graded: BTreeMap::new(),
        multigraded,
        source: TableSource {
            kind: "series".into(),
            n: hs.nvars(),
            truncation: Truncation::Box { cap: hs.cap().clone(), degree_bound: hs.degree_bound() },
        },
    })
}

/// Expands both sides of the multigraded product identity and compares them.
pub fn check_multi_residual(
    hs: &MultiSeries,
    eps: &BTreeMap<ExponentVector, BigUint>,
) -> Result<()> {
    let mut lhs = BoxBuffer::from_series(hs);
    let mut rhs = BoxBuffer::new(hs.cap(), hs.degree_bound());
    rhs.set_one();
    for (v, e) in eps {
        if e.is_zero() {
            continue;
        }
        let e = BigInt::from(e.clone());
        if v.norm() % 2 == 1 {
            lhs.mul_binomial(v, &e);
        } else {
            rhs.mul_binomial(v, &e);
        }
    }
    for (i, v) in lhs.monomials.iter().enumerate() {
        let r = &lhs.coeffs[i] - &rhs.coeffs[i];
        if !r.is_zero() {
            return Err(Error::NonzeroResidual { at: format!("v={v}"), value: r });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graded(t: &DeviationTable) -> Vec<u64> {
        t.graded.values().map(|e| e.try_into().unwrap()).collect()
    }

    #[test]
    fn p3_poincare_series() {
        // 1/HS(-z) for S/I(P_3), with HS = 1 + 3t + 4t^2 + 5t^3 + ...
        let hs = UniSeries::from_i64s(&[1, 3, 4, 5], 3);
        let p = hs.alternate().inv().unwrap();
        assert_eq!(p, UniSeries::from_i64s(&[1, 3, 5, 8], 3));
        assert_eq!(graded(&extract_deviations_uni(&p).unwrap()), vec![3, 2, 1]);
    }

    #[test]
    fn regular_ring_has_no_deviations() {
        let t = extract_deviations_uni(&UniSeries::one(5)).unwrap();
        assert!(t.graded.values().all(|e| e.is_zero()));
    }

    #[test]
    fn polynomial_ring_on_three_variables() {
        let p = UniSeries::from_i64s(&[1, 3, 3, 1], 6);
        assert_eq!(graded(&extract_deviations_uni(&p).unwrap()), vec![3, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn negative_deviation_is_an_error() {
        // 1 - z would need eps_1 = -1
        let p = UniSeries::from_i64s(&[1, -1], 3);
        assert!(matches!(
            extract_deviations_uni(&p),
            Err(Error::NotDeviationSequence { .. })
        ));
    }

    #[test]
    fn multigraded_polynomial_ring() {
        let cap = ExponentVector::new(vec![2, 2, 2]);
        // HS of S = prod 1/(1 - x_i)
        let terms = ExponentVector::enumerate_box(&cap, 4)
            .into_iter()
            .map(|v| (v, BigInt::from(1)));
        let hs = MultiSeries::from_terms(cap, 4, terms);
        let t = extract_deviations_multi(&hs).unwrap();
        for (v, e) in &t.multigraded {
            let want = u32::from(v.norm() == 1);
            assert_eq!(e, &BigUint::from(want), "at {v}");
        }
    }

    #[test]
    fn residual_detects_wrong_exponents() {
        let cap = ExponentVector::ones(2);
        let hs = MultiSeries::from_terms(
            cap.clone(),
            2,
            ExponentVector::enumerate_box(&cap, 2)
                .into_iter()
                .map(|v| (v, BigInt::from(1))),
        );
        let mut eps = BTreeMap::new();
        eps.insert(ExponentVector::unit(2, 0), BigUint::from(1u32));
        assert!(check_multi_residual(&hs, &eps).is_err());
        eps.insert(ExponentVector::unit(2, 1), BigUint::from(1u32));
        assert!(check_multi_residual(&hs, &eps).is_ok());
    }
}
