//! The equivariant Herzog-Kühl system and the substitution `t ↦ 1 − t`.
//!
//! For `M` an equivariant module over the coordinate ring of `k × n`
//! matrices, the sheaf of `M` on `Gr(k, n)` vanishes exactly when
//!
//! ```text
//! Σ_{i,λ} (−1)^i β_{i,λ} d_λ(k) f^{λ/μ} f^μ / f^λ C(|λ|, |μ|) = 0
//! ```
//!
//! for every partition `μ` in the `k × (n − k)` rectangle. The coefficient is
//! a rescaling of `b_{λμ}`, the coefficient of `s_μ(t)` in `s_λ(1 − t)`.
//!
//! Submodules: [`polynomial`] holds the monomial-expansion oracle, [`pure`]
//! the pure-table enumerator and the border-strip classifier.

pub mod polynomial;
pub mod pure;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::RwLock;

use crate::rational::{self, Rational};
use crate::tables::{BettiTable, SchurVector};
use crate::young::{self, IntSeq, Partition, YoungError};

pub use polynomial::{schur_expand_oracle, schur_polynomial, Polynomial};
pub use pure::{classify_border_strips, enumerate_pure_tables, BorderStripClass, PureTable};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HkError {
    #[error("label {0} has negative parts; twist by a power of det first")]
    NegativeParts(IntSeq),
    #[error("partition {partition} has more than {k} parts")]
    TooManyParts { partition: Partition, k: usize },
    #[error("polynomial is not symmetric: leading monomial {0:?} is not weakly decreasing")]
    NotSymmetric(Vec<u32>),
    #[error("shape with {size} boxes exceeds the enumeration cap {cap}")]
    ShapeTooLarge { size: usize, cap: usize },
    #[error("invalid (k, n) = ({k}, {n}); need 1 ≤ k ≤ n")]
    BadDimensions { k: usize, n: usize },
    #[error("table is over (k, n) = ({found_k}, {found_n}), system is over ({k}, {n})")]
    DimensionMismatch {
        k: usize,
        n: usize,
        found_k: usize,
        found_n: usize,
    },
    #[error("classifier needs λ ⊊ μ ⊊ ν")]
    NotAChain,
    #[error(transparent)]
    Young(#[from] YoungError),
}

fn big(v: &BigUint) -> Rational {
    rational::from_biguint(v)
}

/// `f^{λ/μ} f^μ / f^λ · C(|λ|, |μ|)`, the probability ratio attached to a
/// splitting of `λ` along `μ`. Zero when `μ ⊄ λ`.
pub fn split_ratio(lambda: &Partition, mu: &Partition) -> Rational {
    if !mu.contained_in(lambda) {
        return Rational::zero();
    }
    let skew = young::skew_syt_count(lambda, mu).expect("containment checked");
    let num = skew * young::syt_count(mu) * rational::binomial(lambda.size() as u64, mu.size() as u64);
    big(&num) / big(&young::syt_count(lambda))
}

/// `b_{λμ}`: the coefficient of `s_μ(t)` in `s_λ(1 − t)` for `k` variables,
/// computed as `(−1)^{|μ|} f^{λ/μ}/|λ/μ|! · ∏_{(r,c) ∈ λ/μ} (k + c − r)`.
///
/// In debug builds the result is checked against the equivalent form
/// `(−1)^{|μ|} f^{λ/μ} f^μ / f^λ · C(|λ|,|μ|) · d_λ(k)/d_μ(k)` whenever
/// `d_μ(k) ≠ 0`.
pub fn stanley_b(lambda: &Partition, mu: &Partition, k: usize) -> Rational {
    if !mu.contained_in(lambda) {
        return Rational::zero();
    }
    let b = stanley_b_content(lambda, mu, k);
    debug_assert!(
        stanley_b_dimension_form(lambda, mu, k).map_or(true, |alt| alt == b),
        "the two forms of b_{{λμ}} disagree at λ = {lambda}, μ = {mu}, k = {k}"
    );
    b
}

/// The content-product form of `b_{λμ}`. Caller guarantees `μ ⊆ λ`.
pub fn stanley_b_content(lambda: &Partition, mu: &Partition, k: usize) -> Rational {
    let skew = young::skew_syt_count(lambda, mu).expect("caller checks containment");
    let boxes = (lambda.size() - mu.size()) as u64;
    let content = lambda.skew_cells(mu).fold(Rational::one(), |acc, (r, c)| {
        acc * rational::int(k as i64 + c as i64 - r as i64)
    });
    rational::sign(mu.size() as i64) * big(&skew) / big(&rational::factorial(boxes)) * content
}

/// The dimension-ratio form of `b_{λμ}`, or `None` when `d_μ(k) = 0`
/// (`μ` has more than `k` parts) and the form is undefined.
pub fn stanley_b_dimension_form(lambda: &Partition, mu: &Partition, k: usize) -> Option<Rational> {
    if !mu.contained_in(lambda) {
        return Some(Rational::zero());
    }
    let d_mu = young::schur_dim(mu, k);
    if d_mu.is_zero() {
        return None;
    }
    let d_lambda = young::schur_dim(lambda, k);
    Some(rational::sign(mu.size() as i64) * split_ratio(lambda, mu) * big(&d_lambda) / big(&d_mu))
}

/// Lazily filled table of `b_{λμ}` for a fixed number of variables.
///
/// The cache sits behind a lock so one instance can be shared across threads.
#[derive(Debug)]
pub struct BasisChangeMatrix {
    k: usize,
    cache: RwLock<HashMap<(Partition, Partition), Rational>>,
}

impl BasisChangeMatrix {
    pub fn new(k: usize) -> Self {
        BasisChangeMatrix {
            k,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, lambda: &Partition, mu: &Partition) -> Rational {
        let key = (lambda.clone(), mu.clone());
        if let Some(v) = self.cache.read().expect("cache lock poisoned").get(&key) {
            return v.clone();
        }
        let v = stanley_b(lambda, mu, self.k);
        self.cache
            .write()
            .expect("cache lock poisoned")
            .insert(key, v.clone());
        v
    }

    /// The image of `s_λ` under `t ↦ 1 − t`.
    pub fn row(&self, lambda: &Partition) -> SchurVector {
        young::subpartitions(lambda)
            .into_iter()
            .map(|mu| {
                let b = self.get(lambda, &mu);
                (mu, b)
            })
            .collect()
    }
}

/// Applies `s_λ(t) ↦ s_λ(1 − t)` linearly to a Schur vector in `k` variables.
pub fn substitute_one_minus_t(f: &SchurVector, k: usize) -> Result<SchurVector, HkError> {
    substitute_with(&BasisChangeMatrix::new(k), f)
}

/// As [`substitute_one_minus_t`], reusing a coefficient cache.
pub fn substitute_with(matrix: &BasisChangeMatrix, f: &SchurVector) -> Result<SchurVector, HkError> {
    let mut out = SchurVector::zero();
    for (lambda, c) in f.terms() {
        if lambda.length() > matrix.k() {
            return Err(HkError::TooManyParts {
                partition: lambda.clone(),
                k: matrix.k(),
            });
        }
        out = out.plus(&matrix.row(lambda).scale(c));
    }
    Ok(out)
}

/// The Herzog-Kühl system for `Gr(k, n)`: one row per partition in the
/// `k × (n − k)` rectangle, in graded-lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HkSystem {
    k: usize,
    n: usize,
    rows: Vec<Partition>,
}

impl HkSystem {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Partition] {
        &self.rows
    }

    /// Coefficient of `β_{i,λ}` in the equation for `μ`.
    pub fn coefficient(&self, mu: &Partition, i: i64, lambda: &IntSeq) -> Result<Rational, HkError> {
        hk_coefficient(mu, i, lambda, self.k)
    }

    /// One residual per row; all zero iff `β` satisfies the system.
    pub fn residuals(&self, beta: &BettiTable) -> Result<Vec<Rational>, HkError> {
        if (beta.k(), beta.n()) != (self.k, self.n) {
            return Err(HkError::DimensionMismatch {
                k: self.k,
                n: self.n,
                found_k: beta.k(),
                found_n: beta.n(),
            });
        }
        let mut out = vec![Rational::zero(); self.rows.len()];
        for (i, lambda, v) in beta.entries() {
            for (slot, mu) in out.iter_mut().zip(&self.rows) {
                let c = self.coefficient(mu, i, lambda)?;
                if !c.is_zero() {
                    *slot += c * v;
                }
            }
        }
        Ok(out)
    }
}

/// `(−1)^i d_λ(k) f^{λ/μ} f^μ / f^λ C(|λ|,|μ|)` if `μ ⊆ λ`, else zero.
pub fn hk_coefficient(mu: &Partition, i: i64, lambda: &IntSeq, k: usize) -> Result<Rational, HkError> {
    let lp = lambda
        .to_partition()
        .ok_or_else(|| HkError::NegativeParts(lambda.clone()))?;
    if !mu.contained_in(&lp) {
        return Ok(Rational::zero());
    }
    let d = young::dim_gl(lambda, k)?;
    Ok(rational::sign(i) * big(&d) * split_ratio(&lp, mu))
}

pub fn hk_system(k: usize, n: usize) -> Result<HkSystem, HkError> {
    if k == 0 || k > n {
        return Err(HkError::BadDimensions { k, n });
    }
    Ok(HkSystem {
        k,
        n,
        rows: young::rectangle_partitions(k, n - k),
    })
}

/// Residuals of `β` against the Herzog-Kühl system for its own `(k, n)`.
pub fn hk_check(beta: &BettiTable) -> Result<Vec<Rational>, HkError> {
    hk_system(beta.k(), beta.n())?.residuals(beta)
}

/// The split-probability ratio computed by brute force over all `|λ|!`
/// fillings of `λ` by `1..|λ|`: the probability that a filling splits along
/// `μ` (entries `1..|μ|` occupy `μ`) given that it is standard, divided by the
/// unconditional probability of splitting.
pub fn split_probability_oracle(lambda: &Partition, mu: &Partition, cap: usize) -> Result<Rational, HkError> {
    if !mu.contained_in(lambda) {
        return Err(YoungError::NotContained {
            inner: mu.clone(),
            outer: lambda.clone(),
        }
        .into());
    }
    let size = lambda.size();
    if size > cap {
        return Err(HkError::ShapeTooLarge { size, cap });
    }
    let cells: Vec<(usize, usize)> = lambda.cells().collect();
    let index: HashMap<(usize, usize), usize> = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let in_mu: Vec<bool> = cells.iter().map(|&(r, c)| c < mu.part(r)).collect();
    let small = mu.size();

    let mut filling: Vec<usize> = (1..=size).collect();
    let (mut total, mut split, mut standard, mut both) = (0u64, 0u64, 0u64, 0u64);
    loop {
        total += 1;
        let is_split = filling
            .iter()
            .zip(&in_mu)
            .all(|(&v, &inside)| (v <= small) == inside);
        let is_standard = cells.iter().enumerate().all(|(i, &(r, c))| {
            let right_ok = index.get(&(r, c + 1)).map_or(true, |&j| filling[j] > filling[i]);
            let down_ok = index.get(&(r + 1, c)).map_or(true, |&j| filling[j] > filling[i]);
            right_ok && down_ok
        });
        split += is_split as u64;
        standard += is_standard as u64;
        both += (is_split && is_standard) as u64;
        if !next_permutation(&mut filling) {
            break;
        }
    }
    let given_standard = rational::ratio(both as i64, standard as i64);
    let unconditional = rational::ratio(split as i64, total as i64);
    Ok(given_standard / unconditional)
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).expect("pivot has a successor");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
