//! The `E₁` graph of a double complex and the matching on it.
//!
//! For each cell `(p, q)` and label `λ`, the label-`λ` part `E^{p,q,λ}` is
//! split as `B ⊕ H ⊕ B*` with `B = im d_v`, `B ⊕ H = ker d_v` and
//! `d_v : B* → B` (one cell up) an isomorphism. `H` is a copy of the `E₁`
//! page. Replacing each `b = d_v(b*)` by `b̃ = d_tot(b*)` gives a basis of the
//! total complex in which the span of all `b*` and `b̃` is an acyclic
//! subcomplex; the quotient `Tot(H)` is exact whenever `Tot` is, and its
//! coefficient graph only has edges allowed in the `E₁` graph.

use num_traits::Zero;
use serde_json::{json, Value};
use std::collections::BTreeMap;

use super::{exact_sequence_matching, DoubleComplex, ExactComplex, MatcherError};
use crate::linalg::{extend_basis, unit_vector, Matrix};
use crate::rational::Rational;

/// One copy of a basis element of `E₁^{p,q,λ}`; `label` indexes the poset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct E1Vertex {
    pub p: i64,
    pub q: i64,
    pub label: usize,
    pub copy: usize,
}

impl E1Vertex {
    pub fn to_json(&self, dc: &DoubleComplex) -> Value {
        json!({"p": self.p, "q": self.q, "label": dc.poset().name(self.label), "copy": self.copy})
    }
}

/// Vertices in canonical order and directed edges `(from, to)` from total
/// degree `t` to `t − 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct E1Graph {
    pub vertices: Vec<E1Vertex>,
    pub edges: Vec<(usize, usize)>,
}

/// A matched pair `from → to` with `to` at `(p − r, q − r + 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct E1Edge {
    pub from: E1Vertex,
    pub to: E1Vertex,
    pub r: i64,
}

impl E1Edge {
    pub fn to_json(&self, dc: &DoubleComplex) -> Value {
        json!({"from": self.from.to_json(dc), "to": self.to.to_json(dc), "r": self.r})
    }
}

/// The splitting of one `E^{p,q,λ}`, in coordinates of its label-`λ` basis
/// vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Splitting {
    pub b: Vec<Vec<Rational>>,
    pub h: Vec<Vec<Rational>>,
    pub b_star: Vec<Vec<Rational>>,
}

/// Indices of the basis vectors of cell `(p, q)` carrying `label`.
fn block(dc: &DoubleComplex, p: i64, q: i64, label: usize) -> Vec<usize> {
    dc.labels(p, q)
        .iter()
        .enumerate()
        .filter(|(_, &l)| l == label)
        .map(|(i, _)| i)
        .collect()
}

fn cell_labels(dc: &DoubleComplex, p: i64, q: i64) -> Vec<usize> {
    let mut v = dc.labels(p, q).to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// `d_v` from `E^{p,q,λ}` to `E^{p,q+1,λ}`.
fn dv_block(dc: &DoubleComplex, p: i64, q: i64, label: usize) -> Matrix {
    dc.dv(p, q).select(&block(dc, p, q + 1, label), &block(dc, p, q, label))
}

/// Computes `B`, `H`, `B*` for every cell and label, in cell order.
///
/// `B` is `d_v` of the `B*` one cell down, `H` greedily extends `B` to a
/// basis of `ker d_v` using the kernel basis, and `B*` greedily extends that
/// to the whole space using unit vectors.
pub fn splitting(dc: &DoubleComplex) -> Result<BTreeMap<(i64, i64, usize), Splitting>, MatcherError> {
    let diags = dc.validate_structure();
    if !diags.is_empty() {
        return Err(MatcherError::Invalid(diags));
    }
    let mut out: BTreeMap<(i64, i64, usize), Splitting> = BTreeMap::new();
    let cells: Vec<(i64, i64)> = dc.cells().map(|(k, _)| k).collect();
    for (p, q) in cells {
        for label in cell_labels(dc, p, q) {
            let m = block(dc, p, q, label).len();
            let b: Vec<Vec<Rational>> = match out.get(&(p, q - 1, label)) {
                Some(below) => {
                    let d = dv_block(dc, p, q - 1, label);
                    below.b_star.iter().map(|v| d.apply(v)).collect()
                }
                None => Vec::new(),
            };
            let kernel = dv_block(dc, p, q, label).kernel();
            let h = extend_basis(&b, kernel, m);
            let mut ker_basis = b.clone();
            ker_basis.extend(h.iter().cloned());
            let b_star = extend_basis(&ker_basis, (0..m).map(|i| unit_vector(m, i)), m);
            debug_assert_eq!(b.len() + h.len() + b_star.len(), m);
            out.insert((p, q, label), Splitting { b, h, b_star });
        }
    }
    Ok(out)
}

fn vertices_of(splits: &BTreeMap<(i64, i64, usize), Splitting>) -> Vec<E1Vertex> {
    splits
        .iter()
        .flat_map(|(&(p, q, label), s)| (0..s.h.len()).map(move |copy| E1Vertex { p, q, label, copy }))
        .collect()
}

/// Whether `from → to` has the shape `(−r, −r+1)` with `r ≥ 1` and a
/// strictly smaller label. Returns `r` when it does.
fn edge_step(dc: &DoubleComplex, from: &E1Vertex, to: &E1Vertex) -> Option<i64> {
    let r = from.p - to.p;
    (r >= 1 && to.q == from.q - r + 1 && dc.poset().less(to.label, from.label)).then_some(r)
}

pub fn e1_graph(dc: &DoubleComplex) -> Result<E1Graph, MatcherError> {
    let vertices = vertices_of(&splitting(dc)?);
    let mut edges = Vec::new();
    for (a, u) in vertices.iter().enumerate() {
        for (b, w) in vertices.iter().enumerate() {
            if edge_step(dc, u, w).is_some() {
                edges.push((a, b));
            }
        }
    }
    Ok(E1Graph { vertices, edges })
}

/// A perfect matching on the `E₁` graph of a double complex with exact total
/// complex. Every returned edge is checked against the `E₁` edge rule; a
/// violation panics, as it would contradict the construction.
pub fn e1_matching(dc: &DoubleComplex) -> Result<Vec<E1Edge>, MatcherError> {
    let splits = splitting(dc)?;
    let not_exact = dc.tot_exactness();
    if !not_exact.is_empty() {
        return Err(MatcherError::NotExact(not_exact));
    }
    let degrees = dc.tot_degrees();
    let (Some(&lo), Some(&hi)) = (degrees.first(), degrees.last()) else {
        return Ok(Vec::new());
    };

    // New basis of each Tot_t, with the positions and vertices of H vectors.
    let lift = |p: i64, q: i64, label: usize, v: &[Rational]| -> Vec<Rational> {
        let mut cell = vec![Rational::zero(); dc.dim(p, q)];
        for (&i, x) in block(dc, p, q, label).iter().zip(v) {
            cell[i] = x.clone();
        }
        dc.embed(p, q, &cell)
    };
    let mut bases: BTreeMap<i64, Matrix> = BTreeMap::new();
    let mut h_slots: BTreeMap<i64, Vec<(usize, E1Vertex)>> = BTreeMap::new();
    for t in lo - 1..=hi + 1 {
        let dim = dc.tot_basis(t).len();
        let mut columns: Vec<Vec<Rational>> = Vec::with_capacity(dim);
        let mut slots = Vec::new();
        for (&(p, q, label), s) in splits.iter().filter(|((p, q, _), _)| p - q == t) {
            if let Some(below) = splits.get(&(p, q - 1, label)) {
                let d = dc.tot_differential(t + 1);
                for bs in &below.b_star {
                    columns.push(d.apply(&lift(p, q - 1, label, bs)));
                }
            }
            for (copy, h) in s.h.iter().enumerate() {
                slots.push((columns.len(), E1Vertex { p, q, label, copy }));
                columns.push(lift(p, q, label, h));
            }
            for bs in &s.b_star {
                columns.push(lift(p, q, label, bs));
            }
        }
        assert_eq!(columns.len(), dim, "splitting does not give a basis of Tot_{t}");
        bases.insert(t, Matrix::from_columns(&columns, dim));
        h_slots.insert(t, slots);
    }

    // The differential of Tot(H) from degree t + 1 to t, for t = lo − 1 ..= hi.
    let mut maps = Vec::new();
    for t in lo - 1..=hi {
        let upper = &h_slots[&(t + 1)];
        let lower = &h_slots[&t];
        let d = dc.tot_differential(t + 1);
        let mut m = Matrix::zeros(lower.len(), upper.len());
        for (c, (_, v)) in upper.iter().enumerate() {
            let s = &splits[&(v.p, v.q, v.label)];
            let image = d.apply(&lift(v.p, v.q, v.label, &s.h[v.copy]));
            let coords = bases[&t].solve(&image).expect("new basis is invertible");
            for (r, (row_pos, _)) in lower.iter().enumerate() {
                m[(r, c)] = coords[*row_pos].clone();
            }
        }
        maps.push(m);
    }
    let dims: Vec<usize> = (lo - 1..=hi + 1).map(|t| h_slots[&t].len()).collect();
    let complex = ExactComplex::new(dims, maps);
    let edges = exact_sequence_matching(&complex)?;

    let mut out = Vec::with_capacity(edges.len());
    for e in edges {
        let t = lo - 1 + e.space as i64;
        let from = h_slots[&(t + 1)][e.upper].1;
        let to = h_slots[&t][e.lower].1;
        let r = edge_step(dc, &from, &to).unwrap_or_else(|| {
            panic!("matched pair {from:?} → {to:?} breaks the E₁ edge rule")
        });
        out.push(E1Edge { from, to, r });
    }
    let matched = out.len() * 2;
    let total: usize = h_slots.values().map(Vec::len).sum();
    assert_eq!(matched, total, "E₁ matching is not perfect");
    out.sort();
    Ok(out)
}
