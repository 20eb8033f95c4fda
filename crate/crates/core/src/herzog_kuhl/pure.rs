//! Pure tables cut out by the Herzog-Kühl system, and the border-strip
//! hypothesis for simple `2 × 3` tables.
//!
//! A candidate support has one partition in each column `0..=n−k+1` plus at
//! most one extra entry in a single column. Every entry of column `i + 1`
//! must strictly contain every entry of column `i`. A support is kept when
//! the Herzog-Kühl system restricted to it has a one-dimensional solution
//! space spanned by a strictly positive vector.

use num_bigint::BigInt;
use num_traits::Signed;
use std::collections::BTreeSet;

use super::{hk_system, HkError};
use crate::linalg::Matrix;
use crate::rational::{self, Rational};
use crate::tables::BettiTable;
use crate::young::{self, IntSeq, Partition, YoungError};

/// A pure table found by [`enumerate_pure_tables`], scaled to the primitive
/// integer point on its ray.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PureTable {
    pub support: Vec<(i64, IntSeq)>,
    pub table: BettiTable,
}

impl PureTable {
    /// One entry per column.
    pub fn is_simple(&self) -> bool {
        let columns: BTreeSet<i64> = self.support.iter().map(|(i, _)| *i).collect();
        columns.len() == self.support.len()
    }

    pub fn values(&self) -> Vec<BigInt> {
        self.support
            .iter()
            .map(|(i, l)| self.table.get(*i, l).to_integer())
            .collect()
    }
}

fn strictly_inside(a: &Partition, b: &Partition) -> bool {
    a != b && a.contained_in(b)
}

fn columns_compatible(columns: &[Vec<Partition>]) -> bool {
    columns
        .windows(2)
        .all(|w| w[0].iter().all(|a| w[1].iter().all(|b| strictly_inside(a, b))))
}

/// All pure tables over `(k, n)` using partitions of size at most `max_size`,
/// in a deterministic order (by support).
pub fn enumerate_pure_tables(k: usize, n: usize, max_size: usize) -> Result<Vec<PureTable>, HkError> {
    let system = hk_system(k, n)?;
    let ncols = n - k + 2;
    let parts = young::partitions_up_to(max_size, k);

    let mut chains: Vec<Vec<Partition>> = Vec::new();
    grow_chains(&parts, ncols, &mut Vec::new(), &mut chains);

    let mut supports: BTreeSet<Vec<(usize, Partition)>> = BTreeSet::new();
    for chain in &chains {
        let base: Vec<Vec<Partition>> = chain.iter().map(|p| vec![p.clone()]).collect();
        supports.insert(flatten(&base));
        for col in 0..ncols {
            for extra in &parts {
                if base[col].contains(extra) {
                    continue;
                }
                let mut cols = base.clone();
                cols[col].push(extra.clone());
                if columns_compatible(&cols) {
                    supports.insert(flatten(&cols));
                }
            }
        }
    }

    let mut out = Vec::new();
    for support in supports {
        let labels: Vec<(i64, IntSeq)> = support
            .iter()
            .map(|(i, p)| (*i as i64, p.padded(k).expect("at most k parts")))
            .collect();
        let mut rows = Vec::with_capacity(system.rows().len());
        for mu in system.rows() {
            let row = labels
                .iter()
                .map(|(i, l)| system.coefficient(mu, *i, l))
                .collect::<Result<Vec<Rational>, HkError>>()?;
            rows.push(row);
        }
        let kernel = Matrix::from_rows(rows, labels.len()).kernel();
        if kernel.len() != 1 {
            continue;
        }
        let Some(mut v) = rational::primitive_integer_vector(&kernel[0]) else {
            continue;
        };
        if v.iter().all(Signed::is_negative) {
            v = v.into_iter().map(|x| -x).collect();
        }
        if !v.iter().all(Signed::is_positive) {
            continue;
        }
        let table = BettiTable::from_entries(
            k,
            n,
            labels
                .iter()
                .zip(&v)
                .map(|((i, l), c)| (*i, l.clone(), Rational::from_integer(c.clone()))),
        )
        .expect("labels have length k");
        out.push(PureTable { support: labels, table });
    }
    Ok(out)
}

fn grow_chains(parts: &[Partition], len: usize, acc: &mut Vec<Partition>, out: &mut Vec<Vec<Partition>>) {
    if acc.len() == len {
        out.push(acc.clone());
        return;
    }
    for p in parts {
        if acc.last().map_or(true, |last| strictly_inside(last, p)) {
            acc.push(p.clone());
            grow_chains(parts, len, acc, out);
            acc.pop();
        }
    }
}

fn flatten(columns: &[Vec<Partition>]) -> Vec<(usize, Partition)> {
    let mut v: Vec<(usize, Partition)> = columns
        .iter()
        .enumerate()
        .flat_map(|(i, col)| col.iter().map(move |p| (i, p.clone())))
        .collect();
    v.sort();
    v
}

/// Result of [`classify_border_strips`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BorderStripClass {
    /// `μ/λ` and `ν/μ` are border strips and `ν/μ` continues `μ/λ`.
    pub simple_hypothesis: bool,
    /// `ν₂ ≤ λ₁ + 1`.
    pub bound_ok: bool,
}

/// Nonempty, edge-connected and free of `2 × 2` squares.
pub fn is_border_strip(outer: &Partition, inner: &Partition) -> bool {
    let cells: BTreeSet<(usize, usize)> = outer.skew_cells(inner).collect();
    let Some(&first) = cells.iter().next() else {
        return false;
    };
    let square = cells.iter().any(|&(r, c)| {
        cells.contains(&(r + 1, c)) && cells.contains(&(r, c + 1)) && cells.contains(&(r + 1, c + 1))
    });
    if square {
        return false;
    }
    let mut seen = BTreeSet::from([first]);
    let mut stack = vec![first];
    while let Some((r, c)) = stack.pop() {
        let mut nbrs = vec![(r + 1, c), (r, c + 1)];
        if r > 0 {
            nbrs.push((r - 1, c));
        }
        if c > 0 {
            nbrs.push((r, c - 1));
        }
        for nb in nbrs {
            if cells.contains(&nb) && seen.insert(nb) {
                stack.push(nb);
            }
        }
    }
    seen.len() == cells.len()
}

/// Classifies a chain `λ ⊊ μ ⊊ ν`.
///
/// Rows are numbered from the top. A border strip runs from its start box
/// (lowest row, leftmost box there) up to its end box (highest row,
/// rightmost box there). `ν/μ` continues `μ/λ` when its start box sits in
/// the column just right of the end box of `μ/λ`, either in the same row or
/// one row higher.
pub fn classify_border_strips(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<BorderStripClass, HkError> {
    if !strictly_inside(lambda, mu) || !strictly_inside(mu, nu) {
        if !lambda.contained_in(mu) {
            return Err(YoungError::NotContained {
                inner: lambda.clone(),
                outer: mu.clone(),
            }
            .into());
        }
        if !mu.contained_in(nu) {
            return Err(YoungError::NotContained {
                inner: mu.clone(),
                outer: nu.clone(),
            }
            .into());
        }
        return Err(HkError::NotAChain);
    }
    let bound_ok = nu.part(1) <= lambda.part(0) + 1;
    let strips = is_border_strip(mu, lambda) && is_border_strip(nu, mu);
    let adjacent = strips && {
        let (er, ec) = end_box(mu, lambda);
        let (sr, sc) = start_box(nu, mu);
        sc == ec + 1 && (sr == er || sr + 1 == er)
    };
    Ok(BorderStripClass {
        simple_hypothesis: strips && adjacent,
        bound_ok,
    })
}

fn end_box(outer: &Partition, inner: &Partition) -> (usize, usize) {
    outer
        .skew_cells(inner)
        .min_by_key(|&(r, c)| (r, std::cmp::Reverse(c)))
        .expect("nonempty strip")
}

fn start_box(outer: &Partition, inner: &Partition) -> (usize, usize) {
    outer
        .skew_cells(inner)
        .min_by_key(|&(r, c)| (std::cmp::Reverse(r), c))
        .expect("nonempty strip")
}
