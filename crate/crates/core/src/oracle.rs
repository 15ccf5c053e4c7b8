//! Definition-level ground truth for `Sigma(n, s)`.
//!
//! A width-one tensor with entry sum `s` is the same thing as a `d`-tuple of
//! weakly increasing rows of length `s` (row `i` drawn from `[n_i]`): reading
//! the columns left to right walks up a chain, and each column adds one to
//! the entry at that point. [`sigma_oracle`] enumerates those tuples and adds
//! the tensors up; no binomial coefficient or polynomial is involved.
//!
//! [`sigma_oracle_by_filter`] is slower still and does not trust the row-tuple
//! correspondence at all: it walks every nonnegative tensor with entry sum `s`
//! and keeps the ones whose support is a chain.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::eulerian::binomial;
use crate::limits::Limits;
use crate::poset::{is_chain, linear_offset, DenseTensor, DimVector, MultiIndex};

/// Weakly increasing sequences of a fixed length over `[bound]`, lexicographic.
#[derive(Debug, Clone)]
pub struct WeaklyIncreasingRows {
    bound: usize,
    next: Option<Vec<usize>>,
}

impl Iterator for WeaklyIncreasingRows {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        // bump the rightmost entry below `bound`, reset the tail to it
        if let Some(i) = current.iter().rposition(|&v| v < self.bound) {
            let mut succ = current.clone();
            let v = succ[i] + 1;
            succ[i..].iter_mut().for_each(|e| *e = v);
            self.next = Some(succ);
        }
        Some(current)
    }
}

pub fn weakly_increasing_rows(bound: usize, length: usize) -> WeaklyIncreasingRows {
    WeaklyIncreasingRows {
        bound,
        next: (bound >= 1 || length == 0).then(|| vec![1; length]),
    }
}

/// `d` weakly increasing rows of a common length `s`, row `i` in `[n_i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RowTuple {
    rows: Vec<Vec<usize>>,
}

impl RowTuple {
    pub fn new(rows: Vec<Vec<usize>>, n: &DimVector) -> Result<Self> {
        if rows.len() != n.rank() {
            return Err(Error::domain(format!(
                "{} rows given for a shape of rank {}",
                rows.len(),
                n.rank()
            )));
        }
        let len = rows[0].len();
        for (i, (row, &ni)) in rows.iter().zip(n.dims()).enumerate() {
            if row.len() != len {
                return Err(Error::domain(format!(
                    "row {} has length {}, expected {len}",
                    i + 1,
                    row.len()
                )));
            }
            if row.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::domain(format!("row {} is not weakly increasing", i + 1)));
            }
            if row.iter().any(|&v| v < 1 || v > ni) {
                return Err(Error::domain(format!("row {} has a value outside 1..={ni}", i + 1)));
            }
        }
        Ok(RowTuple { rows })
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// Common row length `s`.
    pub fn len(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Column `j` (0-based) as a lattice point.
    pub fn column(&self, j: usize) -> MultiIndex {
        MultiIndex::new(self.rows.iter().map(|r| r[j]).collect())
            .expect("row values are validated to be >= 1")
    }
}

/// `sum_j E_{column j}`.
pub fn row_tuple_to_tensor(rt: &RowTuple, n: &DimVector, limits: &Limits) -> Result<DenseTensor> {
    if rt.rows.len() != n.rank() {
        return Err(Error::domain("row tuple rank does not match shape"));
    }
    let mut t = DenseTensor::zeros(n, limits)?;
    for j in 0..rt.len() {
        *t.get_mut(&rt.column(j))? += 1u32;
    }
    Ok(t)
}

/// Inverse of [`row_tuple_to_tensor`]: columns are the support points in
/// ascending order, each repeated by its entry.
pub fn tensor_to_row_tuple(t: &DenseTensor) -> Result<RowTuple> {
    let mut support = t.support();
    if !is_chain(&support) {
        return Err(Error::domain("tensor support is not a chain"));
    }
    support.sort_by_key(MultiIndex::total);
    let n = t.shape();
    let mut rows = vec![Vec::new(); n.rank()];
    for x in &support {
        let reps = t
            .get(x)?
            .to_usize()
            .ok_or_else(|| Error::domain(format!("entry at {x} is too large to unfold")))?;
        for (row, &c) in rows.iter_mut().zip(x.coords()) {
            row.extend(std::iter::repeat_n(c, reps));
        }
    }
    RowTuple::new(rows, n)
}

/// `prod_i C(s + n_i - 1, s)`, the number of width-one tensors.
pub fn count_members(n: &DimVector, s: usize) -> BigUint {
    n.dims()
        .iter()
        .map(|&ni| binomial((s + ni - 1) as u64, s as i64))
        .product()
}

/// True iff `t` has entry sum `s` and its support is a chain.
pub fn is_member(t: &DenseTensor, s: usize) -> bool {
    t.total() == BigUint::from(s) && is_chain(&t.support())
}

/// Lexicographic stream of row tuples for `(n, s)`.
#[derive(Debug, Clone)]
pub struct RowTuples {
    choices: Vec<Vec<Vec<usize>>>,
    cursor: Option<Vec<usize>>,
}

impl Iterator for RowTuples {
    type Item = RowTuple;

    fn next(&mut self) -> Option<RowTuple> {
        let cursor = self.cursor.take()?;
        let rows = cursor
            .iter()
            .zip(&self.choices)
            .map(|(&c, opts)| opts[c].clone())
            .collect();
        let mut succ = cursor;
        let mut axis = succ.len();
        while axis > 0 {
            axis -= 1;
            if succ[axis] + 1 < self.choices[axis].len() {
                succ[axis] += 1;
                self.cursor = Some(succ);
                break;
            }
            succ[axis] = 0;
        }
        Some(RowTuple { rows })
    }
}

fn check_enum_guard(n: &DimVector, s: usize, limits: &Limits) -> Result<()> {
    let count = count_members(n, s);
    if count > BigUint::from(limits.max_enum) {
        return Err(Error::guard("width-one tensors", count, limits.max_enum));
    }
    Ok(())
}

pub fn enumerate_row_tuples(n: &DimVector, s: usize, limits: &Limits) -> Result<RowTuples> {
    check_enum_guard(n, s, limits)?;
    let choices: Vec<Vec<Vec<usize>>> = n
        .dims()
        .iter()
        .map(|&ni| weakly_increasing_rows(ni, s).collect())
        .collect();
    Ok(RowTuples {
        cursor: Some(vec![0; choices.len()]),
        choices,
    })
}

/// Every member of the width-one set for `(n, s)`, once each, in row-tuple order.
pub fn enumerate_width_one(
    n: &DimVector,
    s: usize,
    limits: &Limits,
) -> Result<impl Iterator<Item = Result<DenseTensor>>> {
    DenseTensor::zeros(n, limits)?;
    let n = n.clone();
    let limits = *limits;
    Ok(enumerate_row_tuples(&n, s, &limits)?.map(move |rt| row_tuple_to_tensor(&rt, &n, &limits)))
}

/// `Sigma(n, s)` by summing the enumerated tensors.
pub fn sigma_oracle(n: &DimVector, s: usize, limits: &Limits) -> Result<DenseTensor> {
    let mut acc = DenseTensor::zeros(n, limits)?;
    for t in enumerate_width_one(n, s, limits)? {
        acc.accumulate(&t?)?;
    }
    Ok(acc)
}

/// Largest shape volume accepted by [`sigma_oracle_by_filter`].
pub const FILTER_MAX_VOLUME: u64 = 9;
/// Largest entry sum accepted by [`sigma_oracle_by_filter`].
pub const FILTER_MAX_SUM: usize = 3;

/// `Sigma(n, s)` by filtering all nonnegative tensors with entry sum `s`.
/// Only for `prod n_i <= 9` and `s <= 3`.
pub fn sigma_oracle_by_filter(n: &DimVector, s: usize, limits: &Limits) -> Result<DenseTensor> {
    let volume = n.volume().unwrap_or(u64::MAX);
    if volume > FILTER_MAX_VOLUME {
        return Err(Error::guard("filter oracle volume", volume, FILTER_MAX_VOLUME));
    }
    if s > FILTER_MAX_SUM {
        return Err(Error::guard("filter oracle entry sum", s, FILTER_MAX_SUM as u64));
    }
    let len = volume as usize;
    let mut acc = DenseTensor::zeros(n, limits)?;
    let mut entries = vec![0usize; len];
    // walk weak compositions of s into `len` parts
    fill_compositions(&mut entries, 0, s, &mut |e| {
        let t = DenseTensor::from_entries(n, e.iter().map(|&v| BigUint::from(v)).collect())?;
        if is_member(&t, s) {
            acc.accumulate(&t)?;
        }
        Ok(())
    })?;
    Ok(acc)
}

fn fill_compositions(
    parts: &mut [usize],
    pos: usize,
    remaining: usize,
    visit: &mut dyn FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    if pos + 1 == parts.len() {
        parts[pos] = remaining;
        return visit(parts);
    }
    for v in 0..=remaining {
        parts[pos] = v;
        fill_compositions(parts, pos + 1, remaining - v, visit)?;
    }
    parts[pos] = 0;
    Ok(())
}

/// Number of times `x` appears as a column over all row tuples for `(n, s)`;
/// equals `Sigma(n, s)[x]` without materializing tensors.
pub fn column_occurrences(n: &DimVector, s: usize, x: &MultiIndex, limits: &Limits) -> Result<BigUint> {
    let target = linear_offset(n, x)?;
    let mut count = BigUint::zero();
    for rt in enumerate_row_tuples(n, s, limits)? {
        for j in 0..rt.len() {
            if linear_offset(n, &rt.column(j))? == target {
                count += 1u32;
            }
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn dv(d: &[usize]) -> DimVector {
        DimVector::new(d.to_vec()).unwrap()
    }

    fn mi(c: &[usize]) -> MultiIndex {
        MultiIndex::new(c.to_vec()).unwrap()
    }

    #[test]
    fn rows() {
        let r: Vec<_> = weakly_increasing_rows(2, 2).collect();
        assert_eq!(r, vec![vec![1, 1], vec![1, 2], vec![2, 2]]);
        let r: Vec<_> = weakly_increasing_rows(5, 0).collect();
        assert_eq!(r, vec![Vec::<usize>::new()]);
        let r: Vec<_> = weakly_increasing_rows(3, 2).collect();
        assert_eq!(r.len(), 6);
        assert_eq!(BigUint::from(r.len()), binomial(4, 2));
        assert_eq!(weakly_increasing_rows(1, 4).count(), 1);
    }

    #[test]
    fn row_counts_match_binomial() {
        for bound in 1..6 {
            for len in 0..6 {
                let rows: Vec<_> = weakly_increasing_rows(bound, len).collect();
                assert_eq!(BigUint::from(rows.len()), binomial((len + bound - 1) as u64, len as i64));
                assert!(rows.windows(2).all(|w| w[0] < w[1]), "lexicographic");
            }
        }
    }

    #[test]
    fn row_tuple_tensors() {
        let n = dv(&[2, 2]);
        let l = Limits::default();
        let rt = RowTuple::new(vec![vec![1, 1], vec![1, 2]], &n).unwrap();
        assert_eq!(row_tuple_to_tensor(&rt, &n, &l).unwrap().to_decimal_strings(), ["1", "1", "0", "0"]);
        let rt = RowTuple::new(vec![vec![1, 1], vec![1, 1]], &n).unwrap();
        assert_eq!(row_tuple_to_tensor(&rt, &n, &l).unwrap().to_decimal_strings(), ["2", "0", "0", "0"]);
        let rt = RowTuple::new(vec![vec![], vec![]], &n).unwrap();
        assert!(row_tuple_to_tensor(&rt, &n, &l).unwrap().is_zero());
    }

    #[test]
    fn malformed_row_tuples() {
        let n = dv(&[2, 2]);
        assert!(RowTuple::new(vec![vec![2, 1], vec![1, 1]], &n).is_err());
        assert!(RowTuple::new(vec![vec![1, 3], vec![1, 1]], &n).is_err());
        assert!(RowTuple::new(vec![vec![1], vec![1, 1]], &n).is_err());
        assert!(RowTuple::new(vec![vec![1]], &n).is_err());
    }

    #[test]
    fn enumeration_counts() {
        let l = Limits::default();
        assert_eq!(enumerate_width_one(&dv(&[2, 2]), 2, &l).unwrap().count(), 9);
        assert_eq!(enumerate_width_one(&dv(&[3, 3, 3]), 3, &l).unwrap().count(), 1000);
        let zero: Vec<_> = enumerate_width_one(&dv(&[3, 2]), 0, &l).unwrap().collect();
        assert_eq!(zero.len(), 1);
        assert!(zero[0].as_ref().unwrap().is_zero());
        assert_eq!(count_members(&dv(&[2, 2]), 2), BigUint::from(9u32));
        assert_eq!(count_members(&dv(&[3, 3, 3]), 3), BigUint::from(1000u32));
        assert_eq!(count_members(&dv(&[7, 1]), 0), BigUint::from(1u32));
    }

    #[test]
    fn enumeration_guard() {
        let l = Limits {
            max_enum: 8,
            ..Limits::default()
        };
        assert!(enumerate_width_one(&dv(&[2, 2]), 2, &l).is_err());
        assert!(sigma_oracle(&dv(&[2, 2]), 2, &l).unwrap_err().is_guard());
    }

    #[test]
    fn membership() {
        let n = dv(&[2, 2]);
        let l = Limits::default();
        for x in n.points() {
            assert!(is_member(&DenseTensor::elementary(&n, &x, &l).unwrap(), 1));
        }
        let mut t = DenseTensor::zeros(&n, &l).unwrap();
        *t.get_mut(&mi(&[1, 2])).unwrap() += 1u32;
        *t.get_mut(&mi(&[2, 1])).unwrap() += 1u32;
        assert!(!is_member(&t, 2));
        assert!(!is_member(&DenseTensor::elementary(&n, &mi(&[1, 1]), &l).unwrap(), 2));
    }

    #[test]
    fn enumeration_is_distinct_members_and_round_trips() {
        let l = Limits::default();
        for (n, s) in [(dv(&[2, 2]), 2), (dv(&[3, 2]), 3), (dv(&[2, 2, 2]), 2), (dv(&[4]), 3)] {
            let mut seen = HashSet::new();
            for (rt, t) in enumerate_row_tuples(&n, s, &l)
                .unwrap()
                .zip(enumerate_width_one(&n, s, &l).unwrap())
            {
                let t = t.unwrap();
                assert!(is_member(&t, s));
                assert_eq!(tensor_to_row_tuple(&t).unwrap(), rt);
                assert!(seen.insert(t.to_decimal_strings()));
            }
            assert_eq!(BigUint::from(seen.len()), count_members(&n, s));
        }
    }

    #[test]
    fn oracle_values() {
        let l = Limits::default();
        assert_eq!(sigma_oracle(&dv(&[2, 2]), 2, &l).unwrap().to_decimal_strings(), ["5", "4", "4", "5"]);
        let ones = sigma_oracle(&dv(&[2, 2, 2]), 1, &l).unwrap();
        assert!(ones.entries().iter().all(|v| *v == BigUint::from(1u32)));
        let line = sigma_oracle(&dv(&[4]), 3, &l).unwrap();
        assert!(line.entries().iter().all(|v| *v == BigUint::from(15u32)));
        assert_eq!(
            column_occurrences(&dv(&[2, 2]), 2, &mi(&[1, 1]), &l).unwrap(),
            BigUint::from(5u32)
        );
    }

    #[test]
    fn filter_oracle_agrees_with_row_tuples() {
        let l = Limits::default();
        for dims in [vec![1], vec![3], vec![2, 2], vec![3, 3], vec![2, 4], vec![9], vec![1, 2, 2]] {
            let n = dv(&dims);
            for s in 0..=3 {
                assert_eq!(
                    sigma_oracle_by_filter(&n, s, &l).unwrap(),
                    sigma_oracle(&n, s, &l).unwrap(),
                    "n = {n}, s = {s}"
                );
            }
        }
        assert!(sigma_oracle_by_filter(&dv(&[2, 5]), 1, &l).is_err());
        assert!(sigma_oracle_by_filter(&dv(&[2, 2]), 4, &l).is_err());
    }

    #[test]
    fn non_chain_tensor_has_no_row_tuple() {
        let n = dv(&[2, 2]);
        let t = DenseTensor::from_entries(&n, [0u32, 1, 1, 0].map(BigUint::from).to_vec()).unwrap();
        assert!(tensor_to_row_tuple(&t).is_err());
    }
}
