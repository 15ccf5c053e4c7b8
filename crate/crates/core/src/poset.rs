//! The grid poset `[n1] x ... x [nd]` under the product order, lattice
//! points in it, and the dense big-integer tensor indexed by those points.

use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::limits::Limits;

/// Tensor shape `(n1, ..., nd)`, every `ni >= 1`, `d >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DimVector(Vec<usize>);

impl DimVector {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::domain("shape must have at least one dimension"));
        }
        if let Some(i) = dims.iter().position(|&n| n == 0) {
            return Err(Error::domain(format!(
                "dimension {} is 0; every dimension must be >= 1",
                i + 1
            )));
        }
        Ok(DimVector(dims))
    }

    pub fn dims(&self) -> &[usize] {
        &self.0
    }

    /// Number of dimensions `d`.
    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// `|n|`, the sum of the dimensions.
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn max_dim(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Number of lattice points, `None` on `u64` overflow.
    pub fn volume(&self) -> Option<u64> {
        self.0
            .iter()
            .try_fold(1u64, |acc, &n| acc.checked_mul(n as u64))
    }

    /// The top element `n` itself, as a point of the poset.
    pub fn top(&self) -> MultiIndex {
        MultiIndex(self.0.clone())
    }

    pub fn contains(&self, x: &MultiIndex) -> bool {
        self.check(x).is_ok()
    }

    pub(crate) fn check(&self, x: &MultiIndex) -> Result<()> {
        if x.rank() != self.rank() {
            return Err(Error::domain(format!(
                "index has {} coordinates but shape has {}",
                x.rank(),
                self.rank()
            )));
        }
        for (i, (&xi, &ni)) in x.0.iter().zip(&self.0).enumerate() {
            if xi < 1 || xi > ni {
                return Err(Error::domain(format!(
                    "coordinate {} is {}, outside 1..={}",
                    i + 1,
                    xi,
                    ni
                )));
            }
        }
        Ok(())
    }

    /// All points in row-major order (last coordinate fastest).
    pub fn points(&self) -> Points {
        Points {
            dims: self.0.clone(),
            next: Some(vec![1; self.0.len()]),
        }
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

/// A 1-based lattice point `(x1, ..., xd)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(coords: Vec<usize>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::domain("index must have at least one coordinate"));
        }
        if let Some(i) = coords.iter().position(|&c| c == 0) {
            return Err(Error::domain(format!(
                "coordinate {} is 0; coordinates are 1-based",
                i + 1
            )));
        }
        Ok(MultiIndex(coords))
    }

    /// The minimum element `(1, ..., 1)` of rank `d`.
    pub fn ones(d: usize) -> Self {
        MultiIndex(vec![1; d])
    }

    pub fn coords(&self) -> &[usize] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    /// `|x|`.
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn max_coord(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn min_coord(&self) -> usize {
        self.0.iter().copied().min().unwrap_or(0)
    }

    /// `x - 1`, componentwise.
    pub fn minus_ones(&self) -> Vec<usize> {
        self.0.iter().map(|&c| c - 1).collect()
    }

    /// `x + e_i` for a 1-based axis `i`.
    pub fn step(&self, axis: usize) -> MultiIndex {
        let mut c = self.0.clone();
        c[axis - 1] += 1;
        MultiIndex(c)
    }

    /// The image under the anti-automorphism `x -> n + 1 - x` of `Pi_n`.
    pub fn reflect(&self, shape: &DimVector) -> Result<MultiIndex> {
        shape.check(self)?;
        Ok(MultiIndex(
            self.0.iter().zip(shape.dims()).map(|(&x, &n)| n + 1 - x).collect(),
        ))
    }

    /// Coordinates permuted so that axis `i` of the result is axis `perm[i]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> MultiIndex {
        MultiIndex(perm.iter().map(|&p| self.0[p]).collect())
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

fn write_tuple(f: &mut fmt::Formatter<'_>, v: &[usize]) -> fmt::Result {
    f.write_str("(")?;
    for (i, c) in v.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{c}")?;
    }
    f.write_str(")")
}

/// Row-major iterator over the points of a shape.
pub struct Points {
    dims: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl Iterator for Points {
    type Item = MultiIndex;

    fn next(&mut self) -> Option<MultiIndex> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut axis = succ.len();
        while axis > 0 {
            axis -= 1;
            if succ[axis] < self.dims[axis] {
                succ[axis] += 1;
                self.next = Some(succ);
                break;
            }
            succ[axis] = 1;
        }
        Some(MultiIndex(current))
    }
}

/// Row-major position of `x` in a tensor of the given shape.
pub fn linear_offset(shape: &DimVector, x: &MultiIndex) -> Result<usize> {
    shape.check(x)?;
    Ok(x
        .0
        .iter()
        .zip(shape.dims())
        .fold(0usize, |acc, (&xi, &ni)| acc * ni + (xi - 1)))
}

/// Inverse of [`linear_offset`].
pub fn multi_index(shape: &DimVector, offset: usize) -> Result<MultiIndex> {
    let mut rest = offset;
    let mut coords = vec![0; shape.rank()];
    for (c, &n) in coords.iter_mut().zip(shape.dims()).rev() {
        *c = rest % n + 1;
        rest /= n;
    }
    if rest != 0 {
        return Err(Error::domain(format!(
            "offset {offset} is outside a tensor of shape {shape}"
        )));
    }
    Ok(MultiIndex(coords))
}

/// Product order: `a <= b` iff `a_i <= b_i` for every `i`.
pub fn product_leq(a: &MultiIndex, b: &MultiIndex) -> Result<bool> {
    if a.rank() != b.rank() {
        return Err(Error::domain(format!(
            "cannot compare indices of rank {} and {}",
            a.rank(),
            b.rank()
        )));
    }
    Ok(a.0.iter().zip(&b.0).all(|(x, y)| x <= y))
}

/// True iff the points are pairwise comparable (the set has width one).
pub fn is_chain(points: &[MultiIndex]) -> bool {
    // A chain sorted by coordinate sum must be increasing step by step, and
    // transitivity makes consecutive comparisons sufficient.
    let mut sorted: Vec<&MultiIndex> = points.iter().collect();
    sorted.sort_by_key(|p| p.total());
    sorted
        .windows(2)
        .all(|w| product_leq(w[0], w[1]).unwrap_or(false))
}

/// A dense tensor of nonnegative big integers, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenseTensor {
    shape: DimVector,
    entries: Vec<BigUint>,
}

impl DenseTensor {
    /// Zero tensor, rejecting shapes with more than `limits.max_entries` entries.
    pub fn zeros(shape: &DimVector, limits: &Limits) -> Result<Self> {
        let len = checked_len(shape, limits)?;
        Ok(DenseTensor {
            shape: shape.clone(),
            entries: vec![BigUint::zero(); len],
        })
    }

    /// The elementary tensor `E_x`.
    pub fn elementary(shape: &DimVector, x: &MultiIndex, limits: &Limits) -> Result<Self> {
        let mut t = DenseTensor::zeros(shape, limits)?;
        let off = linear_offset(shape, x)?;
        t.entries[off] = BigUint::from(1u32);
        Ok(t)
    }

    pub fn from_entries(shape: &DimVector, entries: Vec<BigUint>) -> Result<Self> {
        let expected = shape.volume();
        if expected != Some(entries.len() as u64) {
            return Err(Error::domain(format!(
                "shape {shape} needs {} entries, got {}",
                expected.map_or_else(|| "more than 2^64".into(), |v| v.to_string()),
                entries.len()
            )));
        }
        Ok(DenseTensor {
            shape: shape.clone(),
            entries,
        })
    }

    pub fn shape(&self) -> &DimVector {
        &self.shape
    }

    pub fn entries(&self) -> &[BigUint] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<BigUint> {
        self.entries
    }

    pub fn get(&self, x: &MultiIndex) -> Result<&BigUint> {
        Ok(&self.entries[linear_offset(&self.shape, x)?])
    }

    pub fn get_mut(&mut self, x: &MultiIndex) -> Result<&mut BigUint> {
        let off = linear_offset(&self.shape, x)?;
        Ok(&mut self.entries[off])
    }

    /// Entries paired with their 1-based indices, row-major.
    pub fn iter(&self) -> impl Iterator<Item = (MultiIndex, &BigUint)> + '_ {
        self.shape.points().zip(self.entries.iter())
    }

    /// Sum of all entries.
    pub fn total(&self) -> BigUint {
        self.entries.iter().sum()
    }

    /// Positions of the nonzero entries, row-major.
    pub fn support(&self) -> Vec<MultiIndex> {
        self.iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(x, _)| x)
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Adds `other` into `self` componentwise.
    pub fn accumulate(&mut self, other: &DenseTensor) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::domain(format!(
                "shape mismatch: {} vs {}",
                self.shape, other.shape
            )));
        }
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a += b;
        }
        Ok(())
    }

    pub fn to_decimal_strings(&self) -> Vec<String> {
        self.entries.iter().map(|v| v.to_str_radix(10)).collect()
    }
}

/// Componentwise sum `acc + t`.
pub fn tensor_accumulate(mut acc: DenseTensor, t: &DenseTensor) -> Result<DenseTensor> {
    acc.accumulate(t)?;
    Ok(acc)
}

fn checked_len(shape: &DimVector, limits: &Limits) -> Result<usize> {
    match shape.volume() {
        Some(v) if v <= limits.max_entries => Ok(v as usize),
        Some(v) => Err(Error::guard("tensor entries", v, limits.max_entries)),
        None => Err(Error::guard(
            "tensor entries",
            "more than 2^64",
            limits.max_entries,
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(d: &[usize]) -> DimVector {
        DimVector::new(d.to_vec()).unwrap()
    }

    fn mi(c: &[usize]) -> MultiIndex {
        MultiIndex::new(c.to_vec()).unwrap()
    }

    #[test]
    fn offsets() {
        assert_eq!(linear_offset(&dv(&[2, 2]), &mi(&[1, 1])).unwrap(), 0);
        assert_eq!(linear_offset(&dv(&[2, 2]), &mi(&[2, 2])).unwrap(), 3);
        assert_eq!(linear_offset(&dv(&[2, 3]), &mi(&[2, 1])).unwrap(), 3);
    }

    #[test]
    fn offset_out_of_range_names_coordinate() {
        let err = linear_offset(&dv(&[2, 3]), &mi(&[1, 4])).unwrap_err();
        assert!(err.to_string().contains("coordinate 2"), "{err}");
        assert!(multi_index(&dv(&[2, 3]), 6).is_err());
    }

    #[test]
    fn offsets_round_trip_exhaustively() {
        for shape in [dv(&[1]), dv(&[3, 1, 4]), dv(&[2, 3, 2, 5]), dv(&[10, 10, 10])] {
            let mut count = 0;
            for (i, x) in shape.points().enumerate() {
                assert_eq!(linear_offset(&shape, &x).unwrap(), i);
                assert_eq!(multi_index(&shape, i).unwrap(), x);
                count += 1;
            }
            assert_eq!(count as u64, shape.volume().unwrap());
        }
    }

    #[test]
    fn product_order() {
        assert!(product_leq(&mi(&[1, 1, 1]), &mi(&[3, 3, 3])).unwrap());
        assert!(!product_leq(&mi(&[1, 2]), &mi(&[2, 1])).unwrap());
        assert!(product_leq(&mi(&[3, 6, 4, 1]), &mi(&[3, 7, 4, 1])).unwrap());
        assert!(product_leq(&mi(&[1, 2]), &mi(&[1, 2, 3])).is_err());
    }

    #[test]
    fn chains() {
        assert!(is_chain(&[mi(&[1, 1]), mi(&[1, 2]), mi(&[2, 2])]));
        assert!(is_chain(&[mi(&[2, 2]), mi(&[1, 1]), mi(&[1, 2])]));
        assert!(!is_chain(&[mi(&[1, 2]), mi(&[2, 1])]));
        assert!(is_chain(&[]));
        assert!(is_chain(&[mi(&[2, 1])]));
        // equal coordinate sums but distinct points
        assert!(!is_chain(&[mi(&[1, 1]), mi(&[1, 3]), mi(&[2, 2])]));
    }

    #[test]
    fn accumulate() {
        let s = dv(&[2, 2]);
        let l = Limits::default();
        let z = DenseTensor::zeros(&s, &l).unwrap();
        let e = DenseTensor::elementary(&s, &mi(&[1, 1]), &l).unwrap();
        assert_eq!(tensor_accumulate(z, &e).unwrap(), e);
        let twice = tensor_accumulate(e.clone(), &e).unwrap();
        assert_eq!(twice.to_decimal_strings(), ["2", "0", "0", "0"]);
        let other = DenseTensor::zeros(&dv(&[4]), &l).unwrap();
        assert!(tensor_accumulate(twice, &other).is_err());
    }

    #[test]
    fn allocation_guard() {
        let l = Limits {
            max_entries: 100,
            ..Limits::default()
        };
        assert!(DenseTensor::zeros(&dv(&[10, 10]), &l).is_ok());
        let err = DenseTensor::zeros(&dv(&[10, 11]), &l).unwrap_err();
        assert!(err.is_guard());
        let huge = dv(&[usize::MAX, usize::MAX]);
        assert!(DenseTensor::zeros(&huge, &Limits::default()).unwrap_err().is_guard());
    }

    #[test]
    fn rejects_bad_shapes_and_indices() {
        assert!(DimVector::new(vec![]).is_err());
        assert!(DimVector::new(vec![2, 0]).is_err());
        assert!(MultiIndex::new(vec![0, 1]).is_err());
        assert!(!dv(&[2, 2]).contains(&mi(&[3, 1])));
    }

    #[test]
    fn reflect_is_involution() {
        let s = dv(&[3, 2, 4]);
        for x in s.points() {
            let r = x.reflect(&s).unwrap();
            assert!(s.contains(&r));
            assert_eq!(r.reflect(&s).unwrap(), x);
        }
    }
}
