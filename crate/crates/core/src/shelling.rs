//! The order complex of the grid poset `Pi_x`, shelled lexicographically by
//! the edge labeling `lambda(a, a + e_i) = i`.
//!
//! A facet (maximal chain `1 < ... < x`) is identified with its label
//! sequence, a multiset permutation of `{1^(x1-1), ..., d^(xd-1)}`. Under the
//! lexicographic shelling the restriction of a facet is its set of descent
//! points, so the h-polynomial is the descent generating function of those
//! words.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::eulerian::{binomial, descent_count, eulerian_poly_closed, multiset_permutations, Multiplicity, Word};
use crate::limits::Limits;
use crate::oracle::count_members;
use crate::poly::IntPolynomial;
use crate::poset::{linear_offset, product_leq, DimVector, MultiIndex};
use crate::sigma::split_multiplicities;

/// Label sequence of a facet of the order complex of `Pi_x`: contains
/// exactly `x_i - 1` copies of label `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelSequence {
    top: MultiIndex,
    word: Word,
}

impl LabelSequence {
    pub fn new(top: &MultiIndex, word: Word) -> Result<Self> {
        let d = top.rank();
        if let Some(&bad) = word.letters().iter().find(|&&l| l < 1 || l > d) {
            return Err(Error::domain(format!("label {bad} outside 1..={d}")));
        }
        if word.content(d) != top.minus_ones() {
            return Err(Error::domain(format!(
                "word {word} does not contain x_i - 1 copies of each label for x = {top}"
            )));
        }
        Ok(LabelSequence {
            top: top.clone(),
            word,
        })
    }

    pub fn top(&self) -> &MultiIndex {
        &self.top
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn descent_count(&self) -> usize {
        descent_count(self.word.letters())
    }
}

/// A saturated chain `1 = p_0 < p_1 < ... < p_m = x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FacetChain {
    points: Vec<MultiIndex>,
}

impl FacetChain {
    pub fn points(&self) -> &[MultiIndex] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: &MultiIndex) -> bool {
        self.points.contains(x)
    }
}

/// Face counts `(f_{-1}, f_0, ..., f_{a-1})`, `f_i` counting faces with `i + 1` points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FVector {
    counts: Vec<BigUint>,
}

impl FVector {
    pub fn new(counts: Vec<BigUint>) -> Result<Self> {
        if counts.first().is_none_or(|c| !c.is_one()) {
            return Err(Error::domain("f-vector must start with f_-1 = 1"));
        }
        Ok(FVector { counts })
    }

    pub fn from_u64s(counts: &[u64]) -> Result<Self> {
        FVector::new(counts.iter().map(|&c| BigUint::from(c)).collect())
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    /// Number of vertices of a facet (`dim + 1`).
    pub fn facet_size(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn to_decimal_strings(&self) -> Vec<String> {
        self.counts.iter().map(|c| c.to_str_radix(10)).collect()
    }
}

fn check_word_guard(x: &MultiIndex, limits: &Limits) -> Result<()> {
    let len = x.total() - x.rank();
    if len > limits.max_word_len {
        return Err(Error::guard("facet length", len, limits.max_word_len as u64));
    }
    Ok(())
}

/// All facets of the order complex of `Pi_x`, lexicographic (the shelling order).
pub fn facets(x: &MultiIndex, limits: &Limits) -> Result<impl Iterator<Item = LabelSequence>> {
    check_word_guard(x, limits)?;
    let top = x.clone();
    let p = Multiplicity::new(x.minus_ones())?;
    Ok(multiset_permutations(&p, limits)?.map(move |word| LabelSequence {
        top: top.clone(),
        word,
    }))
}

/// `(|x| - d)! / prod (x_i - 1)!`.
pub fn facet_count(x: &MultiIndex) -> BigUint {
    Multiplicity::new(x.minus_ones())
        .map(|p| p.multinomial())
        .unwrap_or_default()
}

/// The chain whose `j`-th step adds `e_{w_j}`.
pub fn labels_to_chain(w: &LabelSequence) -> FacetChain {
    let mut points = Vec::with_capacity(w.word.len() + 1);
    let mut current = MultiIndex::ones(w.top.rank());
    for &label in w.word.letters() {
        let next = current.step(label);
        points.push(current);
        current = next;
    }
    points.push(current);
    FacetChain { points }
}

/// Inverse of [`labels_to_chain`].
pub fn chain_to_labels(chain: &FacetChain) -> Result<LabelSequence> {
    let first = chain
        .points
        .first()
        .ok_or_else(|| Error::domain("empty chain"))?;
    if *first != MultiIndex::ones(first.rank()) {
        return Err(Error::domain(format!("chain starts at {first}, not at 1")));
    }
    let mut labels = Vec::with_capacity(chain.points.len() - 1);
    for pair in chain.points.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        if a.rank() != b.rank() {
            return Err(Error::domain("chain mixes ranks"));
        }
        let diffs: Vec<usize> = (0..a.rank())
            .filter(|&i| a.coords()[i] != b.coords()[i])
            .collect();
        match diffs[..] {
            [i] if b.coords()[i] == a.coords()[i] + 1 => labels.push(i + 1),
            _ => return Err(Error::domain(format!("{a} -> {b} is not a cover relation"))),
        }
    }
    let top = chain.points.last().expect("nonempty").clone();
    LabelSequence::new(&top, Word(labels))
}

/// Descent points of the facet: `p_j` for every `j` with `w_j > w_{j+1}`.
pub fn restriction_set(w: &LabelSequence) -> Vec<MultiIndex> {
    let chain = labels_to_chain(w);
    w.word
        .descents()
        .into_iter()
        .map(|j| chain.points[j].clone())
        .collect()
}

/// `sum_F t^{#R(F)}` over all facets.
pub fn h_poly_shelling(x: &MultiIndex, limits: &Limits) -> Result<IntPolynomial> {
    let mut counts = vec![0u64; x.total() - x.rank() + 1];
    for f in facets(x, limits)? {
        counts[restriction_set(&f).len()] += 1;
    }
    Ok(IntPolynomial::from_counts(&counts))
}

/// Chains of `Pi_x` counted by cardinality, by dynamic programming over
/// "chains whose largest point is p".
pub fn f_vector(x: &MultiIndex, limits: &Limits) -> Result<FVector> {
    let shape = DimVector::new(x.coords().to_vec())?;
    let volume = shape.volume().unwrap_or(u64::MAX);
    if volume > limits.max_entries {
        return Err(Error::guard("poset size", volume, limits.max_entries));
    }
    let longest = x.total() - x.rank() + 1;
    // row-major order is a linear extension of the product order
    let points: Vec<MultiIndex> = shape.points().collect();
    let mut ending: Vec<Vec<BigUint>> = Vec::with_capacity(points.len());
    let mut totals = vec![BigUint::zero(); longest + 1];
    totals[0] = BigUint::one();
    for (pi, p) in points.iter().enumerate() {
        let mut row = vec![BigUint::zero(); longest + 1];
        row[1] = BigUint::one();
        for (q, qrow) in points[..pi].iter().zip(&ending) {
            if product_leq(q, p)? {
                for c in 2..=longest {
                    if !qrow[c - 1].is_zero() {
                        row[c] += &qrow[c - 1];
                    }
                }
            }
        }
        for (t, v) in totals.iter_mut().zip(&row) {
            *t += v;
        }
        ending.push(row);
    }
    FVector::new(totals)
}

/// `sum_{i=0}^{a} f_{i-1} t^i (1 - t)^{a-i}` with `a` the facet size.
pub fn h_from_f(f: &FVector) -> IntPolynomial {
    let a = f.facet_size();
    let mut h = IntPolynomial::zero();
    for (i, fi) in f.counts.iter().enumerate() {
        let mut term = IntPolynomial::one_minus_t_pow(a - i);
        // multiply by t^i
        let mut shifted = vec![BigInt::zero(); i];
        shifted.extend(term.coeffs().iter().cloned());
        term = IntPolynomial::new(shifted).scale(&BigInt::from(fi.clone()));
        h = &h + &term;
    }
    h
}

/// Three-way agreement: the shelling h-polynomial, `A_{x-1}(t)`, and the
/// h-polynomial derived from the f-vector.
pub fn verify_lemma_hpoly(x: &MultiIndex, limits: &Limits) -> Result<bool> {
    let shelled = h_poly_shelling(x, limits)?;
    let eulerian = eulerian_poly_closed(&Multiplicity::new(x.minus_ones())?);
    let from_f = h_from_f(&f_vector(x, limits)?);
    Ok(shelled == eulerian && eulerian == from_f)
}

/// Facets of the order complex of `Pi_n` that pass through `x`, built by
/// concatenating a facet of `Pi_x` with a facet of the translated interval
/// `[x, n]`.
pub fn facets_through(n: &DimVector, x: &MultiIndex, limits: &Limits) -> Result<Vec<LabelSequence>> {
    n.check(x)?;
    let (_, upper) = split_multiplicities(n, x)?;
    let upper_top = MultiIndex::new(upper.parts().iter().map(|&u| u + 1).collect())?;
    let pairs = facet_count(x) * facet_count(&upper_top);
    if pairs > BigUint::from(limits.max_enum) {
        return Err(Error::guard("facets through a point", pairs, limits.max_enum));
    }
    let top = n.top();
    let uppers: Vec<LabelSequence> = facets(&upper_top, limits)?.collect();
    let mut out = Vec::new();
    for lower in facets(x, limits)? {
        for up in &uppers {
            let mut word = lower.word.0.clone();
            word.extend_from_slice(up.word.letters());
            out.push(LabelSequence::new(&top, Word(word))?);
        }
    }
    Ok(out)
}

/// Histogram over `k` of facets `F` through `x` with `#(R(F) \ {x}) = k`.
pub fn facet_restriction_histogram(n: &DimVector, x: &MultiIndex, limits: &Limits) -> Result<Vec<u64>> {
    let mut hist = Vec::new();
    for f in facets_through(n, x, limits)? {
        let k = restriction_set(&f).iter().filter(|p| *p != x).count();
        if hist.len() <= k {
            hist.resize(k + 1, 0);
        }
        hist[k] += 1;
    }
    Ok(hist)
}

/// `[t^k] A_{x-1}(t) A_{n-x}(t)` equals the number of facets `F` through `x`
/// with `#(R(F) \ {x}) = k`.
pub fn verify_facet_coeff(n: &DimVector, x: &MultiIndex, k: usize, limits: &Limits) -> Result<bool> {
    let (lower, upper) = split_multiplicities(n, x)?;
    let product = &eulerian_poly_closed(&lower) * &eulerian_poly_closed(&upper);
    let hist = facet_restriction_histogram(n, x, limits)?;
    let count = hist.get(k).copied().unwrap_or(0);
    Ok(product.coeff(k) == BigInt::from(count))
}

/// Sum of `(c_1 + 1)` over weak compositions `c` of `total` into `parts`
/// parts, by enumeration.
pub fn composition_exponent_sum(total: usize, parts: usize, limits: &Limits) -> Result<BigUint> {
    if parts == 0 {
        return Ok(BigUint::zero());
    }
    let count = binomial((total + parts - 1) as u64, (parts - 1) as i64);
    if count > BigUint::from(limits.max_enum) {
        return Err(Error::guard("weak compositions", count, limits.max_enum));
    }
    let mut sum = BigUint::zero();
    let mut c = vec![0usize; parts];
    walk_compositions(&mut c, 0, total, &mut |c| sum += c[0] + 1);
    Ok(sum)
}

fn walk_compositions(c: &mut [usize], pos: usize, remaining: usize, visit: &mut dyn FnMut(&[usize])) {
    if pos + 1 == c.len() {
        c[pos] = remaining;
        visit(c);
        return;
    }
    for v in 0..=remaining {
        c[pos] = v;
        walk_compositions(c, pos + 1, remaining - v, visit);
    }
}

/// `C(|n| - d + s - k, s - k - 1)` equals the total exponent of the
/// distinguished variable over all degree `s - k - 1` monomials in the
/// `|n| - d + 1` facet variables, times the extra factor for `x`.
pub fn verify_exponent_count(n: &DimVector, s: usize, k: usize, limits: &Limits) -> Result<bool> {
    let free = n.total() - n.rank();
    if k + 1 > s {
        // no monomials of negative degree; the binomial vanishes too
        return Ok(binomial((free + s).saturating_sub(k) as u64, s as i64 - k as i64 - 1).is_zero());
    }
    let lhs = binomial((free + s - k) as u64, (s - k - 1) as i64);
    let rhs = composition_exponent_sum(s - k - 1, free + 1, limits)?;
    Ok(lhs == rhs)
}

/// First `L + 1` coefficients of `A_{n-1}(t) / (1 - t)^(|n| - d + 1)`.
pub fn hilbert_series(n: &DimVector, len: usize) -> Result<Vec<BigInt>> {
    let p = Multiplicity::new(n.dims().iter().map(|&v| v - 1).collect())?;
    Ok(eulerian_poly_closed(&p).series_over_one_minus_t_pow(n.total() - n.rank() + 1, len + 1))
}

/// The Hilbert series matches `prod_i C(n_i + l - 1, l)` and its degree-`l`
/// coefficient counts the width-one tensors with entry sum `l`.
pub fn hilbert_series_check(n: &DimVector, len: usize) -> Result<bool> {
    let series = hilbert_series(n, len)?;
    Ok(series.iter().enumerate().all(|(l, coeff)| {
        let product: BigInt = n
            .dims()
            .iter()
            .map(|&ni| BigInt::from(binomial((ni + l - 1) as u64, l as i64)))
            .product();
        *coeff == product && *coeff == BigInt::from(count_members(n, l))
    }))
}

/// Restrictions computed straight from the shelling definition: walk the
/// facets in lexicographic order and return, for each, the unique minimal
/// face not contained in any earlier facet (`None` if no unique minimum
/// exists). Exponential in the facet size.
pub fn reference_restrictions(
    x: &MultiIndex,
    limits: &Limits,
) -> Result<Vec<(LabelSequence, Option<Vec<MultiIndex>>)>> {
    let shape = DimVector::new(x.coords().to_vec())?;
    if shape.volume().unwrap_or(u64::MAX) > 128 {
        return Err(Error::guard("reference poset size", shape.volume().unwrap_or(u64::MAX), 128));
    }
    let facet_size = x.total() - x.rank() + 1;
    if facet_size > 16 {
        return Err(Error::guard("reference facet size", facet_size, 16));
    }
    let mut earlier: Vec<u128> = Vec::new();
    let mut out = Vec::new();
    for f in facets(x, limits)? {
        let chain = labels_to_chain(&f);
        let bits: Vec<u128> = chain
            .points
            .iter()
            .map(|p| linear_offset(&shape, p).map(|o| 1u128 << o))
            .collect::<Result<_>>()?;
        let face_mask = |subset: u32| -> u128 {
            bits.iter()
                .enumerate()
                .filter(|(i, _)| subset >> i & 1 == 1)
                .fold(0, |acc, (_, b)| acc | b)
        };
        let is_new = |mask: u128| earlier.iter().all(|&e| mask & !e != 0);
        let mut meet: Option<u128> = None;
        for subset in 0..(1u32 << bits.len()) {
            let mask = face_mask(subset);
            if is_new(mask) {
                meet = Some(meet.map_or(mask, |m| m & mask));
            }
        }
        let restriction = meet.filter(|&m| is_new(m)).map(|m| {
            chain
                .points
                .iter()
                .zip(&bits)
                .filter(|(_, &b)| m & b != 0)
                .map(|(p, _)| p.clone())
                .collect()
        });
        earlier.push(bits.iter().fold(0, |acc, b| acc | b));
        out.push((f, restriction));
    }
    Ok(out)
}
