//! Power series over the rationals, truncated after a fixed order.

use std::ops::Mul;

use num_traits::{One, Zero};

use crate::arith::{binomial, Rational};
use crate::error::{Error, Result};

/// `Σ_{i ≤ order} a_i x^i`, exact modulo `x^{order+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Pads with zeros or drops terms beyond `order`.
    pub fn from_coefficients(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order + 1, Rational::zero());
        Self { coeffs }
    }

    pub fn from_integers<I: IntoIterator<Item = i64>>(coeffs: I, order: usize) -> Self {
        let coeffs = coeffs.into_iter().map(|c| Rational::from_integer(c.into())).collect();
        Self::from_coefficients(coeffs, order)
    }

    pub fn one(order: usize) -> Self {
        Self::from_integers([1], order)
    }

    /// `(1 + x)^e` truncated at `order`.
    pub fn binomial_power(e: u64, order: usize) -> Self {
        let coeffs = (0..=order)
            .map(|i| Rational::from_integer(binomial(e, i as i64)))
            .collect();
        Self { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^n`, or `None` beyond the truncation order.
    pub fn coefficient_at(&self, n: usize) -> Option<&Rational> {
        self.coeffs.get(n)
    }

    /// Product truncated at the smaller of the two orders.
    pub fn multiply(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                out[i + j] += a * b;
            }
        }
        Self { coeffs: out }
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn invert(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return Err(Error::NotInvertible);
        }
        let inv0 = a0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for k in 1..self.coeffs.len() {
            let mut acc = Rational::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &out[k - j];
            }
            out.push(-acc * &inv0);
        }
        Ok(Self { coeffs: out })
    }

    /// Divides by `x^k`, assuming the first `k` coefficients vanish.
    /// The order drops by `k`.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        if self.coeffs.len() <= k {
            return Err(Error::Invalid(format!(
                "cannot shift order {} series by {k}",
                self.order()
            )));
        }
        if let Some(i) = self.coeffs[..k].iter().position(|c| !c.is_zero()) {
            return Err(Error::Invalid(format!("coefficient of x^{i} is nonzero")));
        }
        Ok(Self {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..e {
            acc = acc.multiply(self);
        }
        acc
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.multiply(rhs)
    }
}

impl std::ops::Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let coeffs = (0..=order).map(|i| &self.coeffs[i] - &rhs.coeffs[i]).collect();
        TruncatedSeries { coeffs }
    }
}
