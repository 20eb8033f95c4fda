//! Polynomials in `k` commuting variables and a Schur-expansion oracle.
//!
//! This is deliberately naive: a Schur polynomial is the sum of `t^content`
//! over semistandard tableaux, and a symmetric polynomial is expanded by
//! repeatedly peeling off its lex-largest monomial. It exists to check the
//! closed-form coefficients in the parent module independently.

use num_traits::{One, Zero};
use std::collections::BTreeMap;

use super::HkError;
use crate::rational::Rational;
use crate::tables::SchurVector;
use crate::young::Partition;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The variable `t_i`, 0-based.
    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, Rational::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn coefficient(&self, exponent: &[u32]) -> Rational {
        self.terms.get(exponent).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, exponent: Vec<u32>, c: Rational) {
        assert_eq!(exponent.len(), self.nvars, "exponent length");
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exponent.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    pub fn plus(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn times(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let e = a.iter().zip(b).map(|(u, v)| u + v).collect();
                out.add_term(e, x * y);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        (0..e).fold(Polynomial::constant(self.nvars, Rational::one()), |acc, _| acc.times(self))
    }

    /// The polynomial `p(1 − t_1, …, 1 − t_k)`.
    pub fn substitute_one_minus(&self) -> Polynomial {
        let one = Polynomial::constant(self.nvars, Rational::one());
        let flipped: Vec<Polynomial> = (0..self.nvars)
            .map(|i| one.plus(&Polynomial::variable(self.nvars, i).scale(&-Rational::one())))
            .collect();
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut term = Polynomial::constant(self.nvars, c.clone());
            for (i, &d) in e.iter().enumerate() {
                if d > 0 {
                    term = term.times(&flipped[i].pow(d));
                }
            }
            out = out.plus(&term);
        }
        out
    }
}

/// `s_λ(t_1, …, t_k)` as a sum over semistandard tableaux with entries `1..k`.
pub fn schur_polynomial(lambda: &Partition, k: usize) -> Polynomial {
    let mut out = Polynomial::zero(k);
    if lambda.length() > k {
        return out;
    }
    let cells: Vec<(usize, usize)> = lambda.cells().collect();
    let mut grid: Vec<Vec<usize>> = lambda.parts().iter().map(|&len| vec![0; len]).collect();
    fill(0, &cells, &mut grid, k, &mut out);
    out
}

fn fill(pos: usize, cells: &[(usize, usize)], grid: &mut Vec<Vec<usize>>, k: usize, out: &mut Polynomial) {
    if pos == cells.len() {
        let mut e = vec![0u32; k];
        for row in grid.iter() {
            for &v in row {
                e[v - 1] += 1;
            }
        }
        out.add_term(e, Rational::one());
        return;
    }
    let (r, c) = cells[pos];
    // Rows weakly increase, columns strictly increase.
    let lo_row = if c > 0 { grid[r][c - 1] } else { 1 };
    let lo_col = if r > 0 { grid[r - 1][c] + 1 } else { 1 };
    for v in lo_row.max(lo_col)..=k {
        grid[r][c] = v;
        fill(pos + 1, cells, grid, k, out);
    }
    grid[r][c] = 0;
}

/// Expands a symmetric polynomial in the Schur basis by leading-monomial
/// elimination. Fails if the lex-largest remaining monomial is ever not a
/// weakly decreasing exponent, which cannot happen for symmetric input.
pub fn schur_expand_oracle(p: &Polynomial) -> Result<SchurVector, HkError> {
    let k = p.nvars();
    let mut rest = p.clone();
    let mut out = SchurVector::zero();
    while let Some((lead, c)) = rest.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
        if lead.windows(2).any(|w| w[0] < w[1]) {
            return Err(HkError::NotSymmetric(lead));
        }
        let lambda = Partition::new(lead.iter().map(|&e| e as usize).collect()).expect("checked decreasing");
        rest = rest.plus(&schur_polynomial(&lambda, k).scale(&-c.clone()));
        out.add_term(lambda, c);
    }
    Ok(out)
}
