//! Perfect matchings read off from linear algebra.
//!
//! The coefficient graph of a map between spaces with chosen bases joins
//! `v` to `w` whenever the `w`-coordinate of the image of `v` is nonzero.
//! An isomorphism has a perfect matching inside its coefficient graph, a long
//! exact sequence has one on the disjoint union of its bases, and an exact
//! total complex of a filtered double complex has one on its `E₁` graph.
//! Each is constructed here from deterministic Gaussian elimination.

mod double;
mod e1;

pub use double::{CellMap, DoubleComplex, DoubleComplexDocument};
pub use e1::{e1_graph, e1_matching, splitting, E1Edge, E1Graph, E1Vertex, Splitting};

use std::collections::BTreeMap;

use crate::linalg::Matrix;
use crate::matching;
use crate::tables::Diagnostic;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatcherError {
    #[error("matrix is not square ({0} x {1})")]
    NotSquare(usize, usize),
    #[error("matrix is singular")]
    Singular,
    #[error("complex is invalid: {}", render(.0))]
    Invalid(Vec<Diagnostic>),
    #[error("total complex is not exact: {}", render(.0))]
    NotExact(Vec<Diagnostic>),
    #[error("poset relation is cyclic through {0}")]
    CyclicPoset(String),
    #[error("unknown poset element {0}")]
    UnknownLabel(String),
    #[error("duplicate poset element {0}")]
    DuplicateLabel(String),
    #[error("malformed document: {0}")]
    Format(String),
}

fn render(d: &[Diagnostic]) -> String {
    d.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

/// A finite poset on named elements, stored as its strict order relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledPoset {
    names: Vec<String>,
    index: BTreeMap<String, usize>,
    less: Vec<Vec<bool>>,
}

impl LabeledPoset {
    /// Builds the poset generated by `relations` (pairs `a < b`), taking the
    /// transitive closure. Rejects cycles.
    pub fn new(names: Vec<String>, relations: &[(String, String)]) -> Result<Self, MatcherError> {
        let mut index = BTreeMap::new();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(MatcherError::DuplicateLabel(n.clone()));
            }
        }
        let m = names.len();
        let mut less = vec![vec![false; m]; m];
        for (a, b) in relations {
            let ia = *index.get(a).ok_or_else(|| MatcherError::UnknownLabel(a.clone()))?;
            let ib = *index.get(b).ok_or_else(|| MatcherError::UnknownLabel(b.clone()))?;
            less[ia][ib] = true;
        }
        for k in 0..m {
            for i in 0..m {
                if less[i][k] {
                    for j in 0..m {
                        if less[k][j] {
                            less[i][j] = true;
                        }
                    }
                }
            }
        }
        if let Some(i) = (0..m).find(|&i| less[i][i]) {
            return Err(MatcherError::CyclicPoset(names[i].clone()));
        }
        Ok(LabeledPoset { names, index, less })
    }

    /// Partitions ordered by strict containment, named by their display form.
    pub fn from_partitions(parts: &[crate::young::Partition]) -> Self {
        let names: Vec<String> = parts.iter().map(ToString::to_string).collect();
        let mut rel = Vec::new();
        for a in parts {
            for b in parts {
                if a != b && a.contained_in(b) {
                    rel.push((a.to_string(), b.to_string()));
                }
            }
        }
        LabeledPoset::new(names, &rel).expect("containment is a partial order")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Strict order `a < b`.
    pub fn less(&self, a: usize, b: usize) -> bool {
        self.less[a][b]
    }

    /// All pairs `a < b`, in index order.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        let m = self.names.len();
        (0..m)
            .flat_map(|a| (0..m).map(move |b| (a, b)))
            .filter(|&(a, b)| self.less[a][b])
            .collect()
    }
}

/// A perfect matching `(row, column)` inside the nonzero pattern of an
/// invertible square matrix, sorted by row.
pub fn iso_matching(t: &Matrix) -> Result<Vec<(usize, usize)>, MatcherError> {
    if !t.is_square() {
        return Err(MatcherError::NotSquare(t.rows(), t.cols()));
    }
    if t.rank() != t.rows() {
        return Err(MatcherError::Singular);
    }
    let n = t.rows();
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|r| (0..n).filter(|&c| !num_traits::Zero::is_zero(&t[(r, c)])).collect())
        .collect();
    let m = matching::hopcroft_karp(&adj, n);
    assert!(m.is_perfect(), "an invertible matrix has a nonzero determinant monomial");
    Ok(m.pairs().collect())
}

/// `0 → V_m → … → V_1 → V_0 → 0` with `maps[i] = δ_i : V_{i+1} → V_i`
/// given as a `dim V_i × dim V_{i+1}` matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactComplex {
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

/// A matched pair: basis vector `upper` of `V_{space+1}` and basis vector
/// `lower` of `V_space`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct SequenceEdge {
    pub space: usize,
    pub upper: usize,
    pub lower: usize,
}

impl ExactComplex {
    /// `maps.len()` must be `dims.len() − 1`; shapes are checked by
    /// [`ExactComplex::validate`].
    pub fn new(dims: Vec<usize>, maps: Vec<Matrix>) -> Self {
        ExactComplex { dims, maps }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// Shape, `δ² = 0` and exactness at every position (including both ends).
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        if self.maps.len() + 1 != self.dims.len() && !(self.dims.is_empty() && self.maps.is_empty()) {
            out.push(Diagnostic::new("complex", format!("{} spaces need {} maps, got {}", self.dims.len(), self.dims.len().saturating_sub(1), self.maps.len())));
            return out;
        }
        for (i, d) in self.maps.iter().enumerate() {
            if (d.rows(), d.cols()) != (self.dims[i], self.dims[i + 1]) {
                out.push(Diagnostic::new(
                    format!("δ_{i}"),
                    format!("shape {}x{}, expected {}x{}", d.rows(), d.cols(), self.dims[i], self.dims[i + 1]),
                ));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for i in 0..self.maps.len().saturating_sub(1) {
            if !self.maps[i].mul(&self.maps[i + 1]).is_zero() {
                out.push(Diagnostic::new(format!("δ_{i} δ_{}", i + 1), "composite is nonzero"));
            }
        }
        let ranks: Vec<usize> = self.maps.iter().map(Matrix::rank).collect();
        for (i, &dim) in self.dims.iter().enumerate() {
            let out_rank = if i > 0 { ranks[i - 1] } else { 0 };
            let in_rank = ranks.get(i).copied().unwrap_or(0);
            if out_rank + in_rank != dim {
                out.push(Diagnostic::new(
                    format!("V_{i}"),
                    format!("not exact: rank out {out_rank} + rank in {in_rank} ≠ dim {dim}"),
                ));
            }
        }
        out
    }
}

/// A perfect matching on the coefficient graph of an exact complex.
///
/// `F_{i+1} ⊆ V_{i+1}` is the set of pivot columns of `δ_i` and `G_i` its
/// complement in `V_i`; `F_{i+1}` is matched to `G_i` inside the submatrix of
/// `δ_i` on rows `G_i` and columns `F_{i+1}`, which is invertible by exactness.
pub fn exact_sequence_matching(c: &ExactComplex) -> Result<Vec<SequenceEdge>, MatcherError> {
    let diags = c.validate();
    if !diags.is_empty() {
        return Err(MatcherError::NotExact(diags));
    }
    let pivots: Vec<Vec<usize>> = c.maps.iter().map(|d| d.echelon().pivots).collect();
    let mut edges = Vec::new();
    for (i, d) in c.maps.iter().enumerate() {
        // Basis vectors of V_i not hit as pivots of δ_{i−1}.
        let f_i: &[usize] = if i > 0 { &pivots[i - 1] } else { &[] };
        let g: Vec<usize> = (0..c.dims[i]).filter(|r| !f_i.contains(r)).collect();
        let f_up = &pivots[i];
        let sub = d.select(&g, f_up);
        for (r, col) in iso_matching(&sub)? {
            edges.push(SequenceEdge {
                space: i,
                upper: f_up[col],
                lower: g[r],
            });
        }
    }
    edges.sort();
    Ok(edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn iso_examples() {
        assert_eq!(iso_matching(&Matrix::identity(3)).unwrap(), vec![(0, 0), (1, 1), (2, 2)]);
        assert_eq!(iso_matching(&Matrix::from_i64(&[&[1, 1], &[0, 1]])).unwrap(), vec![(0, 0), (1, 1)]);
        let perm = Matrix::from_i64(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        assert_eq!(iso_matching(&perm).unwrap(), vec![(0, 2), (1, 0), (2, 1)]);
        assert_eq!(iso_matching(&Matrix::from_i64(&[&[1, 1], &[1, 1]])), Err(MatcherError::Singular));
        assert!(matches!(iso_matching(&Matrix::zeros(1, 2)), Err(MatcherError::NotSquare(1, 2))));
    }

    #[test]
    fn short_exact_sequence() {
        // 0 → ℚ → ℚ² → ℚ → 0 with V_2 = ℚ, V_1 = ℚ², V_0 = ℚ.
        let d0 = Matrix::from_i64(&[&[1, -1]]);
        let d1 = Matrix::from_i64(&[&[1], &[1]]);
        let c = ExactComplex::new(vec![1, 2, 1], vec![d0.clone(), d1.clone()]);
        let m = exact_sequence_matching(&c).unwrap();
        assert_eq!(m.len(), 2);
        for e in &m {
            assert_ne!(c.maps()[e.space][(e.lower, e.upper)], int(0));
        }
        let mut middle: Vec<usize> = m
            .iter()
            .map(|e| if e.space == 0 { e.upper } else { e.lower })
            .collect();
        middle.sort();
        assert_eq!(middle, vec![0, 1]);
    }

    #[test]
    fn degenerate_complexes() {
        assert!(exact_sequence_matching(&ExactComplex::new(vec![], vec![])).unwrap().is_empty());
        let id = ExactComplex::new(vec![2, 2], vec![Matrix::identity(2)]);
        let m = exact_sequence_matching(&id).unwrap();
        assert_eq!(
            m,
            vec![
                SequenceEdge { space: 0, upper: 0, lower: 0 },
                SequenceEdge { space: 0, upper: 1, lower: 1 }
            ]
        );
        let not_exact = ExactComplex::new(vec![1, 1], vec![Matrix::zeros(1, 1)]);
        assert!(matches!(exact_sequence_matching(&not_exact), Err(MatcherError::NotExact(_))));
    }

    #[test]
    fn poset_closure_and_cycles() {
        let names: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        let rel = vec![("a".to_string(), "b".to_string()), ("b".to_string(), "c".to_string())];
        let p = LabeledPoset::new(names.clone(), &rel).unwrap();
        assert!(p.less(0, 2));
        assert!(!p.less(2, 0));
        let cyc = vec![("a".to_string(), "b".to_string()), ("b".to_string(), "a".to_string())];
        assert!(matches!(LabeledPoset::new(names, &cyc), Err(MatcherError::CyclicPoset(_))));
    }
}
