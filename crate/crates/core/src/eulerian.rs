//! Multiset Eulerian polynomials `A_p(t)`, the descent generating functions
//! of multiset permutations.
//!
//! Two independent routes are provided: brute-force enumeration of the
//! words of `{1^p1, ..., d^pd}` ([`eulerian_poly_brute`]) and the
//! Simon Newcomb alternating sum ([`eulerian_poly_closed`]). MacMahon's
//! generating function ties them to the product of binomials
//! `prod_i C(p_i + l, l)` ([`macmahon_check`]).

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::poly::IntPolynomial;

/// `C(m, k)`, zero when `k < 0` or `k > m`.
///
/// Running product `C(m, i + 1) = C(m, i) * (m - i) / (i + 1)` over
/// `min(k, m - k)` steps; every intermediate division is exact.
pub fn binomial(m: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > m {
        return BigUint::zero();
    }
    let k = (k as u64).min(m - k as u64);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= m - i;
        acc /= i + 1;
    }
    acc
}

/// Letter multiplicities `(p1, ..., pd)`. Zero parts are letters that do not
/// occur; the all-zero multiplicity has exactly one (empty) word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multiplicity(Vec<usize>);

impl Multiplicity {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::domain("multiplicity needs at least one part"));
        }
        Ok(Multiplicity(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Number of letters `d` (including letters with zero multiplicity).
    pub fn letters(&self) -> usize {
        self.0.len()
    }

    /// `|p|`, the word length.
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn max_part(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Parts in nondecreasing order. `A_p` depends only on this.
    pub fn sorted(&self) -> Multiplicity {
        let mut parts = self.0.clone();
        parts.sort_unstable();
        Multiplicity(parts)
    }

    /// `|p|! / prod p_i!`, the number of words.
    pub fn multinomial(&self) -> BigUint {
        let mut acc = BigUint::one();
        let mut running = 0usize;
        for &p in &self.0 {
            running += p;
            acc *= binomial(running as u64, p as i64);
        }
        acc
    }
}

impl fmt::Display for Multiplicity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A word over `{1, ..., d}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// 1-based positions `i` with `w_i > w_{i+1}`.
    pub fn descents(&self) -> Vec<usize> {
        self.0
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] > w[1])
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// How many times each letter `1..=d` occurs.
    pub fn content(&self, d: usize) -> Vec<usize> {
        let mut counts = vec![0; d];
        for &l in &self.0 {
            counts[l - 1] += 1;
        }
        counts
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.0.iter().any(|&l| l > 9) { "," } else { "" };
        let s: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        f.write_str(&s.join(sep))
    }
}

/// Number of descents of `w`.
pub fn descent_count(w: &[usize]) -> usize {
    w.windows(2).filter(|p| p[0] > p[1]).count()
}

/// Lexicographic stream over all multiset permutations of `p`.
#[derive(Debug, Clone)]
pub struct MultisetPermutations {
    next: Option<Vec<usize>>,
}

impl Iterator for MultisetPermutations {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(Word(current))
    }
}

/// Rearranges `v` into its lexicographic successor; false if `v` was the last.
fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Every word with letter `i` occurring `p_i` times, in lexicographic order.
pub fn multiset_permutations(p: &Multiplicity, limits: &Limits) -> Result<MultisetPermutations> {
    if p.total() > limits.max_word_len {
        return Err(Error::guard(
            "word length",
            p.total(),
            limits.max_word_len as u64,
        ));
    }
    let first: Vec<usize> = p
        .parts()
        .iter()
        .enumerate()
        .flat_map(|(i, &c)| std::iter::repeat_n(i + 1, c))
        .collect();
    Ok(MultisetPermutations { next: Some(first) })
}

/// `A_p(t)` by enumerating every word and counting descents.
pub fn eulerian_poly_brute(p: &Multiplicity, limits: &Limits) -> Result<IntPolynomial> {
    let mut counts = vec![0u64; p.total().max(1)];
    for w in multiset_permutations(p, limits)? {
        counts[descent_count(w.letters())] += 1;
    }
    Ok(IntPolynomial::from_counts(&counts))
}

/// Maximum number of descents over the words of `p`: `|p| - max(p)`.
pub fn eulerian_degree(p: &Multiplicity) -> usize {
    p.total() - p.max_part()
}

/// `[t^k] A_p(t) = sum_{l=0}^{k} (-1)^l C(|p|+1, l) prod_i C(p_i + k - l, k - l)`.
pub fn simon_newcomb(p: &Multiplicity, k: usize) -> BigInt {
    let n1 = p.total() as u64 + 1;
    let mut acc = BigInt::zero();
    for l in 0..=k {
        let r = (k - l) as u64;
        let mut term = BigInt::from(binomial(n1, l as i64));
        if term.is_zero() {
            continue;
        }
        for &pi in p.parts() {
            term *= BigInt::from(binomial(pi as u64 + r, r as i64));
        }
        if l % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// `A_p(t)` from the Simon Newcomb numbers, without enumeration.
pub fn eulerian_poly_closed(p: &Multiplicity) -> IntPolynomial {
    let deg = eulerian_degree(p);
    debug_assert!(
        simon_newcomb(p, deg + 1).is_zero(),
        "nonzero Simon Newcomb number beyond degree for {p}"
    );
    IntPolynomial::new((0..=deg).map(|k| simon_newcomb(p, k)).collect())
}

/// Both sides of MacMahon's identity up to `t^L`: the series
/// `A_p(t) / (1 - t)^(|p|+1)` and the products `prod_i C(p_i + l, l)`.
pub fn macmahon_sides(p: &Multiplicity, len: usize) -> (Vec<BigInt>, Vec<BigInt>) {
    let series = eulerian_poly_closed(p).series_over_one_minus_t_pow(p.total() + 1, len + 1);
    let products = (0..=len as u64)
        .map(|l| {
            p.parts()
                .iter()
                .map(|&pi| BigInt::from(binomial(pi as u64 + l, l as i64)))
                .product()
        })
        .collect();
    (series, products)
}

/// True iff MacMahon's generating function holds coefficientwise up to `t^L`.
pub fn macmahon_check(p: &Multiplicity, len: usize) -> bool {
    let (series, products) = macmahon_sides(p, len);
    series == products
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mult(p: &[usize]) -> Multiplicity {
        Multiplicity::new(p.to_vec()).unwrap()
    }

    fn words(p: &[usize]) -> Vec<String> {
        multiset_permutations(&mult(p), &Limits::default())
            .unwrap()
            .map(|w| w.to_string())
            .collect()
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), BigUint::from(6u32));
        for m in 0..10 {
            assert_eq!(binomial(m, 0), BigUint::one());
            assert_eq!(binomial(m, m as i64), BigUint::one());
        }
        assert_eq!(binomial(3, -1), BigUint::zero());
        assert_eq!(binomial(3, 4), BigUint::zero());
        assert_eq!(binomial(0, 0), BigUint::one());
        assert_eq!(
            binomial(100, 50).to_string(),
            "100891344545564193334812497256"
        );
    }

    #[test]
    fn binomial_pascal_rule() {
        for m in 1..40u64 {
            for k in 0..=m as i64 {
                assert_eq!(binomial(m, k), binomial(m - 1, k - 1) + binomial(m - 1, k));
            }
        }
    }

    #[test]
    fn permutation_streams() {
        assert_eq!(words(&[1, 1]), ["12", "21"]);
        assert_eq!(words(&[2, 1]), ["112", "121", "211"]);
        assert_eq!(words(&[0, 0, 0]), [""]);
        assert_eq!(words(&[0, 2]), ["22"]);
        assert_eq!(words(&[2, 2]).len(), 6);
    }

    #[test]
    fn permutation_guard() {
        let limits = Limits {
            max_word_len: 4,
            ..Limits::default()
        };
        assert!(multiset_permutations(&mult(&[2, 2]), &limits).is_ok());
        let err = multiset_permutations(&mult(&[3, 2]), &limits).unwrap_err();
        assert!(err.is_guard());
        assert!(eulerian_poly_brute(&mult(&[13]), &Limits::default()).is_err());
    }

    #[test]
    fn descents() {
        assert_eq!(descent_count(&[1, 1, 2, 2]), 0);
        assert_eq!(descent_count(&[2, 1, 2, 1]), 2);
        assert_eq!(descent_count(&[3, 2, 1, 2, 1, 3]), 3);
        assert_eq!(Word(vec![2, 1, 2, 1]).descents(), [1, 3]);
        assert_eq!(descent_count(&[]), 0);
    }

    #[test]
    fn brute_polynomials() {
        let l = Limits::default();
        assert_eq!(eulerian_poly_brute(&mult(&[1, 1, 1]), &l).unwrap(), IntPolynomial::from_i64s(&[1, 4, 1]));
        assert_eq!(eulerian_poly_brute(&mult(&[2, 1]), &l).unwrap(), IntPolynomial::from_i64s(&[1, 2]));
        assert_eq!(eulerian_poly_brute(&mult(&[2, 2]), &l).unwrap(), IntPolynomial::from_i64s(&[1, 4, 1]));
        assert_eq!(eulerian_poly_brute(&mult(&[0]), &l).unwrap(), IntPolynomial::one());
    }

    #[test]
    fn closed_polynomials() {
        assert_eq!(simon_newcomb(&mult(&[2, 1]), 1), BigInt::from(2));
        assert_eq!(eulerian_poly_closed(&mult(&[5])), IntPolynomial::one());
        assert_eq!(eulerian_poly_closed(&mult(&[0, 0, 0])), IntPolynomial::one());
        assert_eq!(eulerian_poly_closed(&mult(&[1, 1, 1])), IntPolynomial::from_i64s(&[1, 4, 1]));
        // classical Eulerian numbers for d = 5
        assert_eq!(
            eulerian_poly_closed(&mult(&[1, 1, 1, 1, 1])),
            IntPolynomial::from_i64s(&[1, 26, 66, 26, 1])
        );
    }

    #[test]
    fn degrees() {
        assert_eq!(eulerian_degree(&mult(&[2, 2, 2])), 4);
        assert_eq!(eulerian_degree(&mult(&[5])), 0);
        assert_eq!(eulerian_degree(&mult(&[1, 1, 1, 1])), 3);
        assert_eq!(eulerian_degree(&mult(&[0, 0])), 0);
    }

    #[test]
    fn macmahon() {
        let (series, _) = macmahon_sides(&mult(&[1, 1]), 4);
        let expect: Vec<BigInt> = [1, 4, 9, 16, 25].iter().map(|&v| BigInt::from(v)).collect();
        assert_eq!(series, expect);
        assert!(macmahon_check(&mult(&[1, 1]), 4));
        let (series, _) = macmahon_sides(&mult(&[0]), 3);
        assert!(series.iter().all(One::is_one));
        assert!(macmahon_check(&mult(&[0]), 3));
        assert!(macmahon_check(&mult(&[2, 1]), 6));
    }

    #[test]
    fn multinomials() {
        assert_eq!(mult(&[2, 2, 2]).multinomial(), BigUint::from(90u32));
        assert_eq!(mult(&[0, 0]).multinomial(), BigUint::one());
        assert_eq!(mult(&[1, 1, 1, 1]).multinomial(), BigUint::from(24u32));
    }
}
