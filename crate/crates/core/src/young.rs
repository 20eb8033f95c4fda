//! Partitions, weakly decreasing integer sequences and the counting formulas
//! built on them.
//!
//! [`IntSeq`] is an element of the extended Young's lattice of `GL(k)`: a
//! weakly decreasing integer sequence of fixed length `k`, possibly with
//! negative parts, stored with all `k` entries. [`Partition`] is a
//! nonnegative sequence stored without trailing zeros, so `(2,1)` and
//! `(2,1,0)` are the same partition.
//!
//! Both types order themselves graded-lexicographically: by size first, then
//! lexicographically with larger parts first. That gives
//! `∅ < (1) < (2) < (1,1) < (3) < (2,1) < (1,1,1) < …`.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

use crate::linalg::Matrix;
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum YoungError {
    #[error("sequence {0:?} is not weakly decreasing")]
    NotWeaklyDecreasing(Vec<i64>),
    #[error("sequence {0:?} has a negative part")]
    NegativePart(Vec<i64>),
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("partition {partition} has more than {k} parts")]
    TooManyParts { partition: Partition, k: usize },
    #[error("{inner} is not contained in {outer}")]
    NotContained { inner: Partition, outer: Partition },
}

/// A weakly decreasing integer sequence of fixed length.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct IntSeq(Vec<i64>);

impl IntSeq {
    pub fn new(parts: Vec<i64>) -> Result<Self, YoungError> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(YoungError::NotWeaklyDecreasing(parts));
        }
        Ok(IntSeq(parts))
    }

    pub fn zero(k: usize) -> Self {
        IntSeq(vec![0; k])
    }

    /// The constant sequence `(a, …, a)`, i.e. `det^a`.
    pub fn constant(k: usize, a: i64) -> Self {
        IntSeq(vec![a; k])
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_partition(&self) -> bool {
        self.0.iter().all(|&p| p >= 0)
    }

    pub fn to_partition(&self) -> Option<Partition> {
        if !self.is_partition() {
            return None;
        }
        Some(Partition::from_trusted(self.0.iter().map(|&p| p as usize).collect()))
    }

    /// `self ⊆ other`, componentwise.
    pub fn contained_in(&self, other: &IntSeq) -> Result<bool, YoungError> {
        if self.len() != other.len() {
            return Err(YoungError::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(self.0.iter().zip(&other.0).all(|(a, b)| a <= b))
    }

    pub fn strictly_contained_in(&self, other: &IntSeq) -> Result<bool, YoungError> {
        Ok(self.contained_in(other)? && self != other)
    }

    pub fn det_twist(&self, a: i64) -> IntSeq {
        IntSeq(self.0.iter().map(|p| p + a).collect())
    }

    /// Smallest entry, or 0 for the empty sequence.
    pub fn last_part(&self) -> i64 {
        self.0.last().copied().unwrap_or(0)
    }
}

impl<'de> Deserialize<'de> for IntSeq {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let parts = Vec::<i64>::deserialize(d)?;
        IntSeq::new(parts).map_err(serde::de::Error::custom)
    }
}

fn graded_lex(a: &[i64], b: &[i64]) -> Ordering {
    let sa: i64 = a.iter().sum();
    let sb: i64 = b.iter().sum();
    sa.cmp(&sb).then_with(|| b.cmp(a))
}

impl Ord for IntSeq {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| graded_lex(&self.0, &other.0))
    }
}

impl PartialOrd for IntSeq {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for IntSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for IntSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A partition, stored without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self, YoungError> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(YoungError::NotWeaklyDecreasing(
                parts.iter().map(|&p| p as i64).collect(),
            ));
        }
        Ok(Self::from_trusted(parts))
    }

    fn from_trusted(mut parts: Vec<usize>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.0.len()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part `i` (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// The same partition as a length-`k` sequence with explicit zeros.
    pub fn padded(&self, k: usize) -> Result<IntSeq, YoungError> {
        if self.length() > k {
            return Err(YoungError::TooManyParts {
                partition: self.clone(),
                k,
            });
        }
        let mut v: Vec<i64> = self.0.iter().map(|&p| p as i64).collect();
        v.resize(k, 0);
        Ok(IntSeq(v))
    }

    pub fn contained_in(&self, other: &Partition) -> bool {
        self.length() <= other.length() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn fits_in_rectangle(&self, rows: usize, cols: usize) -> bool {
        self.length() <= rows && self.part(0) <= cols
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        Partition((0..width).map(|j| self.0.iter().filter(|&&p| p > j).count()).collect())
    }

    /// Boxes `(row, col)`, 0-based, in reading order.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
    }

    /// Boxes of the skew shape `self / inner`. Caller guarantees `inner ⊆ self`.
    pub fn skew_cells<'a>(&'a self, inner: &'a Partition) -> impl Iterator<Item = (usize, usize)> + 'a {
        self.cells().filter(move |&(r, c)| c >= inner.part(r))
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let parts = Vec::<usize>::deserialize(d)?;
        Partition::new(parts).map_err(serde::de::Error::custom)
    }
}

/// `λ ⊆ μ` for sequences of equal length.
pub fn contains(lambda: &IntSeq, mu: &IntSeq) -> Result<bool, YoungError> {
    lambda.contained_in(mu)
}

/// `λ ⊊ μ` for sequences of equal length.
pub fn strictly_contains(lambda: &IntSeq, mu: &IntSeq) -> Result<bool, YoungError> {
    lambda.strictly_contained_in(mu)
}

pub fn det_twist(lambda: &IntSeq, a: i64) -> IntSeq {
    lambda.det_twist(a)
}

/// All partitions of `size` with at most `max_parts` parts and parts at most
/// `max_part`, in graded-lexicographic order.
fn partitions_bounded(size: usize, max_parts: usize, max_part: usize) -> Vec<Partition> {
    fn go(remaining: usize, slots: usize, cap: usize, acc: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(acc.clone()));
            return;
        }
        if slots == 0 {
            return;
        }
        for p in (1..=cap.min(remaining)).rev() {
            acc.push(p);
            go(remaining - p, slots - 1, p, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(size, max_parts, max_part, &mut Vec::new(), &mut out);
    out
}

/// Partitions of exactly `size` with at most `max_parts` parts.
pub fn partitions_of(size: usize, max_parts: usize) -> Vec<Partition> {
    partitions_bounded(size, max_parts, size)
}

/// Partitions of size at most `max_size` with at most `max_parts` parts.
pub fn partitions_up_to(max_size: usize, max_parts: usize) -> Vec<Partition> {
    (0..=max_size)
        .flat_map(|s| partitions_of(s, max_parts))
        .collect()
}

/// Partitions fitting in a `k × w` box, in graded-lexicographic order.
/// There are `C(k + w, k)` of them.
pub fn rectangle_partitions(k: usize, w: usize) -> Vec<Partition> {
    (0..=k * w)
        .flat_map(|s| partitions_bounded(s, k, w))
        .collect()
}

/// All partitions `μ ⊆ λ`, in graded-lexicographic order.
pub fn subpartitions(lambda: &Partition) -> Vec<Partition> {
    fn go(lambda: &Partition, row: usize, cap: usize, acc: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if row == lambda.length() {
            out.push(Partition::from_trusted(acc.clone()));
            return;
        }
        for p in 0..=cap.min(lambda.part(row)) {
            acc.push(p);
            go(lambda, row + 1, p, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(lambda, 0, lambda.part(0), &mut Vec::new(), &mut out);
    out.sort();
    out.dedup();
    out
}

/// Number of standard Young tableaux of shape `λ`, by the hook length formula.
pub fn syt_count(lambda: &Partition) -> BigUint {
    let conj = lambda.conjugate();
    let hooks = lambda.cells().fold(BigUint::one(), |acc, (r, c)| {
        let arm = lambda.part(r) - c - 1;
        let leg = conj.part(c) - r - 1;
        acc * (arm + leg + 1)
    });
    rational::factorial(lambda.size() as u64) / hooks
}

/// Number of standard Young tableaux of the skew shape `λ/μ`, by Aitken's
/// determinant `|λ/μ|! · det[1 / (λ_i − μ_j − i + j)!]`.
pub fn skew_syt_count(lambda: &Partition, mu: &Partition) -> Result<BigUint, YoungError> {
    if !mu.contained_in(lambda) {
        return Err(YoungError::NotContained {
            inner: mu.clone(),
            outer: lambda.clone(),
        });
    }
    let l = lambda.length();
    if l == 0 {
        return Ok(BigUint::one());
    }
    let mut m = Matrix::zeros(l, l);
    for i in 0..l {
        for j in 0..l {
            let e = lambda.part(i) as i64 - mu.part(j) as i64 - i as i64 + j as i64;
            if e >= 0 {
                m[(i, j)] = Rational::one() / rational::from_biguint(&rational::factorial(e as u64));
            }
        }
    }
    let n = (lambda.size() - mu.size()) as u64;
    let count = m.determinant() * rational::from_biguint(&rational::factorial(n));
    debug_assert!(rational::is_integer(&count));
    Ok(count
        .to_integer()
        .to_biguint()
        .expect("tableau count is nonnegative"))
}

/// Dimension of the irreducible `GL(k)` representation with highest weight `λ`,
/// via the Weyl dimension formula. Twisting by `det` does not change it.
pub fn dim_gl(lambda: &IntSeq, k: usize) -> Result<BigUint, YoungError> {
    if lambda.len() != k {
        return Err(YoungError::LengthMismatch {
            left: lambda.len(),
            right: k,
        });
    }
    let normalized = lambda.det_twist(-lambda.last_part());
    let p = normalized.parts();
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        for j in i + 1..k {
            num *= (p[i] - p[j] + (j - i) as i64) as u64;
            den *= (j - i) as u64;
        }
    }
    Ok(num / den)
}

/// `d_λ(k)` for a partition, zero when `λ` has more than `k` parts.
pub fn schur_dim(lambda: &Partition, k: usize) -> BigUint {
    match lambda.padded(k) {
        Ok(seq) => dim_gl(&seq, k).expect("padded to length k"),
        Err(_) => BigUint::zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn s(v: &[i64]) -> IntSeq {
        IntSeq::new(v.to_vec()).unwrap()
    }

    #[test]
    fn containment_examples() {
        assert!(contains(&s(&[1, 0]), &s(&[2, 1])).unwrap());
        assert!(contains(&s(&[2, 1]), &s(&[2, 1])).unwrap());
        assert!(!strictly_contains(&s(&[2, 1]), &s(&[2, 1])).unwrap());
        assert!(!contains(&s(&[2, 0]), &s(&[1, 1])).unwrap());
        assert!(matches!(
            contains(&s(&[1]), &s(&[1, 0])),
            Err(YoungError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn rejects_increasing_sequences() {
        assert!(matches!(
            IntSeq::new(vec![1, 2]),
            Err(YoungError::NotWeaklyDecreasing(_))
        ));
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn rectangle_enumeration() {
        assert_eq!(rectangle_partitions(2, 1), vec![p(&[]), p(&[1]), p(&[1, 1])]);
        assert_eq!(rectangle_partitions(1, 0), vec![p(&[])]);
        assert_eq!(rectangle_partitions(2, 2).len(), 6);
        for n in 1..=7usize {
            for k in 1..=n {
                assert_eq!(
                    rectangle_partitions(k, n - k).len() as u64,
                    rational::binomial(n as u64, k as u64).try_into().unwrap_or(u64::MAX)
                );
            }
        }
    }

    #[test]
    fn graded_lex_order() {
        let got = partitions_up_to(3, 3);
        let want = vec![
            p(&[]),
            p(&[1]),
            p(&[2]),
            p(&[1, 1]),
            p(&[3]),
            p(&[2, 1]),
            p(&[1, 1, 1]),
        ];
        assert_eq!(got, want);
        let mut shuffled = want.clone();
        shuffled.reverse();
        shuffled.sort();
        assert_eq!(shuffled, want);
    }

    #[test]
    fn subpartitions_of_a_hook() {
        let got = subpartitions(&p(&[2, 1]));
        assert_eq!(got, vec![p(&[]), p(&[1]), p(&[2]), p(&[1, 1]), p(&[2, 1])]);
        assert_eq!(subpartitions(&p(&[])), vec![p(&[])]);
    }

    #[test]
    fn hook_lengths() {
        assert_eq!(syt_count(&p(&[3])), BigUint::from(1u32));
        assert_eq!(syt_count(&p(&[2, 1])), BigUint::from(2u32));
        assert_eq!(syt_count(&p(&[2, 2])), BigUint::from(2u32));
        assert_eq!(syt_count(&p(&[3, 2, 1])), BigUint::from(16u32));
        assert_eq!(syt_count(&p(&[])), BigUint::from(1u32));
    }

    #[test]
    fn aitken_examples() {
        assert_eq!(skew_syt_count(&p(&[2, 1]), &p(&[1])).unwrap(), BigUint::from(2u32));
        assert_eq!(skew_syt_count(&p(&[3, 2]), &p(&[])).unwrap(), syt_count(&p(&[3, 2])));
        assert_eq!(skew_syt_count(&p(&[3, 1]), &p(&[3, 1])).unwrap(), BigUint::from(1u32));
        assert!(matches!(
            skew_syt_count(&p(&[1]), &p(&[2])),
            Err(YoungError::NotContained { .. })
        ));
    }

    #[test]
    fn weyl_dimensions() {
        assert_eq!(dim_gl(&s(&[3, 1]), 2).unwrap(), BigUint::from(3u32));
        assert_eq!(dim_gl(&s(&[2, 1, 0]), 3).unwrap(), BigUint::from(8u32));
        for a in -3..=3 {
            assert_eq!(dim_gl(&IntSeq::constant(3, a), 3).unwrap(), BigUint::from(1u32));
        }
        assert_eq!(dim_gl(&s(&[0, -1]), 2).unwrap(), BigUint::from(2u32));
        assert!(dim_gl(&s(&[1, 0]), 3).is_err());
        assert_eq!(schur_dim(&p(&[1, 1, 1]), 2), BigUint::zero());
    }

    #[test]
    fn twist_is_invertible() {
        assert_eq!(det_twist(&s(&[2, 0]), 1), s(&[3, 1]));
        assert_eq!(det_twist(&s(&[0, 0]), -2), s(&[-2, -2]));
        let l = s(&[4, 1, -2]);
        assert_eq!(det_twist(&det_twist(&l, 5), -5), l);
    }

    #[test]
    fn padding_normalizes_partitions() {
        assert_eq!(p(&[2, 1, 0]), p(&[2, 1]));
        assert_eq!(p(&[2, 1]).padded(3).unwrap(), s(&[2, 1, 0]));
        assert!(p(&[1, 1, 1]).padded(2).is_err());
        assert_eq!(s(&[1, 0]).to_partition(), Some(p(&[1])));
        assert_eq!(s(&[1, -1]).to_partition(), None);
        assert_eq!(p(&[3, 1]).conjugate(), p(&[2, 1, 1]));
    }
}
