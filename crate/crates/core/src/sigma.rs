//! Two closed forms for `Sigma(n, s)`, the componentwise sum of every
//! width-one tensor of shape `n` with nonnegative integer entries summing
//! to `s`.
//!
//! * [`sigma_entry_tableaux`] counts how often `x` occurs as the `j`-th
//!   column of a `d`-tuple of weakly increasing rows. Its cost grows with `s`.
//! * [`sigma_entry_hpoly`] weighs the coefficients of
//!   `A_{x-1}(t) * A_{n-x}(t)` by binomials. Its cost grows with the
//!   degree of that product, i.e. with `d` and the `n_i`, and is nearly
//!   independent of `s`.
//!
//! The two routes share nothing except [`binomial`].

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::eulerian::{binomial, eulerian_poly_closed, Multiplicity};
use crate::limits::Limits;
use crate::poly::IntPolynomial;
use crate::poset::{DenseTensor, DimVector, MultiIndex};

/// `sum_{j=1}^{s} prod_i C(x_i + j - 2, j - 1) * C(n_i - x_i + s - j, s - j)`.
pub fn sigma_entry_tableaux(n: &DimVector, s: usize, x: &MultiIndex) -> Result<BigUint> {
    n.check(x)?;
    let mut total = BigUint::zero();
    for j in 1..=s {
        let mut term = BigUint::from(1u32);
        for (&ni, &xi) in n.dims().iter().zip(x.coords()) {
            // left: j - 1 entries in [x_i]; right: s - j entries in [x_i, n_i]
            term *= binomial((xi + j - 2) as u64, (j - 1) as i64);
            term *= binomial((ni - xi + s - j) as u64, (s - j) as i64);
        }
        total += term;
    }
    Ok(total)
}

/// Full tensor via [`sigma_entry_tableaux`].
pub fn sigma_tableaux(n: &DimVector, s: usize, limits: &Limits) -> Result<DenseTensor> {
    let mut out = DenseTensor::zeros(n, limits)?;
    for x in n.points() {
        *out.get_mut(&x)? = sigma_entry_tableaux(n, s, &x)?;
    }
    Ok(out)
}

/// `|n| - max(x) - max(n - x) - d + 1`, the degree of `A_{x-1} * A_{n-x}`.
pub fn omega(n: &DimVector, x: &MultiIndex) -> Result<usize> {
    n.check(x)?;
    let upper_max = n
        .dims()
        .iter()
        .zip(x.coords())
        .map(|(&ni, &xi)| ni - xi)
        .max()
        .unwrap_or(0);
    Ok(n.total() + 1 - x.max_coord() - upper_max - n.rank())
}

/// Multiplicities `x - 1` and `n - x` of the lower and upper Eulerian factors.
pub fn split_multiplicities(n: &DimVector, x: &MultiIndex) -> Result<(Multiplicity, Multiplicity)> {
    n.check(x)?;
    let lower = Multiplicity::new(x.minus_ones())?;
    let upper = Multiplicity::new(
        n.dims()
            .iter()
            .zip(x.coords())
            .map(|(&ni, &xi)| ni - xi)
            .collect(),
    )?;
    Ok((lower, upper))
}

/// Memo of `A_p(t)` keyed by the sorted parts of `p`.
#[derive(Debug, Default)]
pub struct EulerianCache {
    polys: HashMap<Multiplicity, IntPolynomial>,
}

impl EulerianCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, p: &Multiplicity) -> &IntPolynomial {
        self.polys
            .entry(p.sorted())
            .or_insert_with_key(eulerian_poly_closed)
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }
}

/// `sum_{k=0}^{min(omega, s-1)} C(|n| - d + s - k, s - k - 1) * [t^k] A_{x-1}(t) A_{n-x}(t)`.
pub fn sigma_entry_hpoly(n: &DimVector, s: usize, x: &MultiIndex) -> Result<BigUint> {
    sigma_entry_hpoly_cached(n, s, x, &mut EulerianCache::new())
}

pub fn sigma_entry_hpoly_cached(
    n: &DimVector,
    s: usize,
    x: &MultiIndex,
    cache: &mut EulerianCache,
) -> Result<BigUint> {
    if s == 0 {
        n.check(x)?;
        return Ok(BigUint::zero());
    }
    let (lower, upper) = split_multiplicities(n, x)?;
    let lower_poly = cache.get(&lower).clone();
    let product = &lower_poly * cache.get(&upper);
    let top = omega(n, x)?.min(s - 1);
    debug_assert_eq!(product.degree(), omega(n, x)?);

    let free = n.total() - n.rank();
    let mut total = BigInt::zero();
    for k in 0..=top {
        let c = product.coeff(k);
        if c.is_zero() {
            continue;
        }
        total += BigInt::from(binomial((free + s - k) as u64, (s - k - 1) as i64)) * c;
    }
    if total.is_negative() {
        return Err(Error::domain(format!("negative component at {x}")));
    }
    Ok(total.magnitude().clone())
}

/// Full tensor via [`sigma_entry_hpoly`], sharing one Eulerian cache across entries.
pub fn sigma_hpoly(n: &DimVector, s: usize, limits: &Limits) -> Result<DenseTensor> {
    let mut out = DenseTensor::zeros(n, limits)?;
    let mut cache = EulerianCache::new();
    for x in n.points() {
        *out.get_mut(&x)? = sigma_entry_hpoly_cached(n, s, &x, &mut cache)?;
    }
    Ok(out)
}

/// `s * prod_i C(s + n_i - 1, s)`, the sum of all entries of `Sigma(n, s)`.
pub fn total_mass(n: &DimVector, s: usize) -> BigUint {
    let members: BigUint = n
        .dims()
        .iter()
        .map(|&ni| binomial((s + ni - 1) as u64, s as i64))
        .product();
    members * s
}
