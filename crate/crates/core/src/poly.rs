//! Dense univariate polynomials with big-integer coefficients.

use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Signed, Zero};

use crate::eulerian::binomial;

/// `coeffs[k]` is the coefficient of `t^k`. Trailing zeros are trimmed; the
/// zero polynomial is stored as the single coefficient `0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        IntPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        IntPolynomial::new(vec![])
    }

    pub fn one() -> Self {
        IntPolynomial::new(vec![BigInt::one()])
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Polynomial with coefficient `counts[k]` on `t^k`.
    pub fn from_counts(counts: &[u64]) -> Self {
        IntPolynomial::new(counts.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `[t^k]`, zero beyond the stored range.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn coeff_sum(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Coefficients as nonnegative integers, `None` if any is negative.
    pub fn to_biguints(&self) -> Option<Vec<BigUint>> {
        self.coeffs
            .iter()
            .map(|c| match c.sign() {
                Sign::Minus => None,
                _ => Some(c.magnitude().clone()),
            })
            .collect()
    }

    pub fn to_decimal_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_str_radix(10)).collect()
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        IntPolynomial::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// `(1 - t)^m`.
    pub fn one_minus_t_pow(m: usize) -> Self {
        let coeffs = (0..=m)
            .map(|k| {
                let b = BigInt::from(binomial(m as u64, k as i64));
                if k % 2 == 0 {
                    b
                } else {
                    -b
                }
            })
            .collect();
        IntPolynomial::new(coeffs)
    }

    /// The first `len` coefficients of the power series `self / (1 - t)^m`.
    ///
    /// `(1 - t)^(-m)` has coefficients `C(m + l - 1, l)`; the product is an
    /// exact truncated convolution.
    pub fn series_over_one_minus_t_pow(&self, m: usize, len: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); len];
        if m == 0 {
            for (o, c) in out.iter_mut().zip(&self.coeffs) {
                *o = c.clone();
            }
            return out;
        }
        let inverse: Vec<BigInt> = (0..len)
            .map(|l| BigInt::from(binomial((m + l - 1) as u64, l as i64)))
            .collect();
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            for (j, b) in inverse.iter().enumerate().take(len - i) {
                out[i + j] += a * b;
            }
        }
        out
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("t")?,
                (1, false) => write!(f, "{mag}t")?,
                (_, true) => write!(f, "t^{k}")?,
                (_, false) => write!(f, "{mag}t^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn trims_and_canonical_zero() {
        let p = IntPolynomial::from_i64s(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), 1);
        let z = IntPolynomial::from_i64s(&[0, 0]);
        assert!(z.is_zero());
        assert_eq!(z.coeffs(), ints(&[0]).as_slice());
        assert_eq!(IntPolynomial::zero(), IntPolynomial::new(vec![]));
    }

    #[test]
    fn arithmetic() {
        let a = IntPolynomial::from_i64s(&[1, 1]);
        let b = IntPolynomial::from_i64s(&[1, -1]);
        assert_eq!(&a * &b, IntPolynomial::from_i64s(&[1, 0, -1]));
        assert_eq!(&a + &b, IntPolynomial::from_i64s(&[2]));
        assert_eq!(a.scale(&BigInt::from(3)), IntPolynomial::from_i64s(&[3, 3]));
        assert_eq!(IntPolynomial::one_minus_t_pow(3), IntPolynomial::from_i64s(&[1, -3, 3, -1]));
        assert_eq!(IntPolynomial::one_minus_t_pow(0), IntPolynomial::one());
    }

    #[test]
    fn series_expansion() {
        // (1 + t) / (1 - t)^3 = sum (l + 1)^2 t^l
        let p = IntPolynomial::from_i64s(&[1, 1]);
        assert_eq!(p.series_over_one_minus_t_pow(3, 5), ints(&[1, 4, 9, 16, 25]));
        // 1 / (1 - t) = 1 + t + t^2 + ...
        assert_eq!(IntPolynomial::one().series_over_one_minus_t_pow(1, 4), ints(&[1, 1, 1, 1]));
        // m = 0 is plain truncation
        let q = IntPolynomial::from_i64s(&[2, 3, 4]);
        assert_eq!(q.series_over_one_minus_t_pow(0, 2), ints(&[2, 3]));
        assert_eq!(q.series_over_one_minus_t_pow(0, 4), ints(&[2, 3, 4, 0]));
    }

    #[test]
    fn series_inverts_polynomial_power() {
        // (1 - t)^m / (1 - t)^m = 1
        for m in 0..6 {
            let s = IntPolynomial::one_minus_t_pow(m).series_over_one_minus_t_pow(m, 8);
            let mut expected = ints(&[1, 0, 0, 0, 0, 0, 0, 0]);
            expected.truncate(8);
            assert_eq!(s, expected, "m = {m}");
        }
    }

    #[test]
    fn display() {
        assert_eq!(IntPolynomial::from_i64s(&[1, 4, 1]).to_string(), "1 + 4t + t^2");
        assert_eq!(IntPolynomial::from_i64s(&[0, -2, 0, 1]).to_string(), "-2t + t^3");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
    }
}
