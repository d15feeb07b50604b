use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A power series in one variable, truncated at `z^order`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniSeries {
    coeffs: Vec<BigInt>,
}

impl UniSeries {
    /// Pads with zeros or drops coefficients so that exactly `order + 1` remain.
    pub fn new(mut coeffs: Vec<BigInt>, order: usize) -> Self {
        coeffs.resize(order + 1, BigInt::zero());
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64], order: usize) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect(), order)
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![BigInt::one()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &BigInt {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `f(-z)`.
    pub fn alternate(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
            .collect();
        Self { coeffs }
    }

    fn check_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::TruncationMismatch(format!(
                "orders {} and {}",
                self.order(),
                other.order()
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_order(other)?;
        let d = self.order();
        let mut out = vec![BigInt::zero(); d + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=d - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(Self { coeffs: out })
    }

    /// Multiplicative inverse; the constant term must be `1` or `-1`.
    pub fn inv(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if !(a0.is_one() || (-a0).is_one()) {
            return Err(Error::NotUnit(a0.clone()));
        }
        let d = self.order();
        let mut b = vec![BigInt::zero(); d + 1];
        b[0] = a0.clone();
        for k in 1..=d {
            let mut s = BigInt::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    s += &self.coeffs[j] * &b[k - j];
                }
            }
            // a0 = ±1 so dividing by a0 is multiplying by a0
            b[k] = -(s * a0);
        }
        Ok(Self { coeffs: b })
    }

    /// `(1 + sign * z^step)^exponent` for an arbitrary integer exponent.
    pub fn binomial_factor(step: usize, sign: i32, exponent: &BigInt, order: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); order + 1];
        coeffs[0] = BigInt::one();
        let mut binom = BigInt::one();
        let mut k = 1usize;
        while step * k <= order {
            binom = binom * (exponent - BigInt::from(k - 1)) / BigInt::from(k);
            let c = if sign < 0 && k % 2 == 1 { -&binom } else { binom.clone() };
            coeffs[step * k] = c;
            k += 1;
        }
        Self { coeffs }
    }
}

impl fmt::Display for UniSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if k == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

/// Convenience constructor for the truncation of the series `1 / (1 - z)`.
pub fn geometric(order: usize) -> UniSeries {
    UniSeries::new(vec![BigInt::one(); order + 1], order)
}
