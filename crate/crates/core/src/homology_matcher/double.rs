//! Poset-labeled double complexes and their total complexes.
//!
//! Cell `(p, q)` holds a space `E^{p,q}` with a basis, each basis vector
//! labeled by a poset element. `d_v : E^{p,q} → E^{p,q+1}` preserves labels,
//! `d_h : E^{p,q} → E^{p−1,q}` strictly lowers them, and the two
//! anticommute. The total complex in degree `t` is `⊕_{p−q=t} E^{p,q}` with
//! `d_tot = d_h + d_v`, which lowers `t` by one.
//!
//! Matrices are stored with rows indexed by the target basis and columns by
//! the source basis. Absent cells are zero-dimensional and absent maps are
//! zero.

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::{BTreeMap, BTreeSet};

use super::{LabeledPoset, MatcherError};
use crate::linalg::Matrix;
use crate::rational::{self, Rational};
use crate::tables::{Diagnostic, RawValue};
use crate::young::Partition;

/// A map out of cell `(p, q)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellMap {
    pub p: i64,
    pub q: i64,
    pub matrix: Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleComplex {
    poset: LabeledPoset,
    cells: BTreeMap<(i64, i64), Vec<usize>>,
    dv: BTreeMap<(i64, i64), Matrix>,
    dh: BTreeMap<(i64, i64), Matrix>,
}

impl DoubleComplex {
    /// Assembles a double complex, checking only that every matrix has the
    /// shape its source and target cells dictate.
    pub fn new(
        poset: LabeledPoset,
        cells: BTreeMap<(i64, i64), Vec<usize>>,
        dv: Vec<CellMap>,
        dh: Vec<CellMap>,
    ) -> Result<Self, MatcherError> {
        let mut dc = DoubleComplex {
            poset,
            cells,
            dv: BTreeMap::new(),
            dh: BTreeMap::new(),
        };
        let mut diags = Vec::new();
        for labels in dc.cells.values() {
            if let Some(&bad) = labels.iter().find(|&&l| l >= dc.poset.len()) {
                diags.push(Diagnostic::new("cells", format!("label index {bad} outside the poset")));
            }
        }
        for (kind, maps) in [("dv", dv), ("dh", dh)] {
            for m in maps {
                let (tp, tq) = if kind == "dv" { (m.p, m.q + 1) } else { (m.p - 1, m.q) };
                let want = (dc.dim(tp, tq), dc.dim(m.p, m.q));
                if (m.matrix.rows(), m.matrix.cols()) != want {
                    diags.push(Diagnostic::new(
                        format!("{kind} at ({}, {})", m.p, m.q),
                        format!("shape {}x{}, expected {}x{}", m.matrix.rows(), m.matrix.cols(), want.0, want.1),
                    ));
                    continue;
                }
                let slot = if kind == "dv" { &mut dc.dv } else { &mut dc.dh };
                if slot.insert((m.p, m.q), m.matrix).is_some() {
                    diags.push(Diagnostic::new(format!("{kind} at ({}, {})", m.p, m.q), "given twice"));
                }
            }
        }
        if diags.is_empty() {
            Ok(dc)
        } else {
            Err(MatcherError::Invalid(diags))
        }
    }

    pub fn poset(&self) -> &LabeledPoset {
        &self.poset
    }

    pub fn cells(&self) -> impl Iterator<Item = ((i64, i64), &[usize])> {
        self.cells.iter().map(|(k, v)| (*k, v.as_slice()))
    }

    pub fn dim(&self, p: i64, q: i64) -> usize {
        self.cells.get(&(p, q)).map_or(0, Vec::len)
    }

    pub fn labels(&self, p: i64, q: i64) -> &[usize] {
        self.cells.get(&(p, q)).map_or(&[], Vec::as_slice)
    }

    /// `d_v` out of `(p, q)`.
    pub fn dv(&self, p: i64, q: i64) -> Matrix {
        self.dv
            .get(&(p, q))
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.dim(p, q + 1), self.dim(p, q)))
    }

    /// `d_h` out of `(p, q)`.
    pub fn dh(&self, p: i64, q: i64) -> Matrix {
        self.dh
            .get(&(p, q))
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.dim(p - 1, q), self.dim(p, q)))
    }

    /// Squares, anticommutation and the label rules.
    pub fn validate_structure(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        let positions: BTreeSet<(i64, i64)> = self.cells.keys().copied().collect();
        for &(p, q) in &positions {
            let at = format!("({p}, {q})");
            if !self.dv(p, q + 1).mul(&self.dv(p, q)).is_zero() {
                out.push(Diagnostic::new(&at, "d_v² ≠ 0"));
            }
            if !self.dh(p - 1, q).mul(&self.dh(p, q)).is_zero() {
                out.push(Diagnostic::new(&at, "d_h² ≠ 0"));
            }
            let square = self.dh(p, q + 1).mul(&self.dv(p, q)).add(&self.dv(p - 1, q).mul(&self.dh(p, q)));
            if !square.is_zero() {
                out.push(Diagnostic::new(&at, "square does not anticommute: d_h d_v + d_v d_h ≠ 0"));
            }
            let src = self.labels(p, q);
            let dv = self.dv(p, q);
            let up = self.labels(p, q + 1);
            for (r, &tl) in up.iter().enumerate() {
                for (c, &sl) in src.iter().enumerate() {
                    if !dv[(r, c)].is_zero() && tl != sl {
                        out.push(Diagnostic::new(
                            &at,
                            format!("d_v does not preserve labels: {} ↦ {}", self.poset.name(sl), self.poset.name(tl)),
                        ));
                    }
                }
            }
            let dh = self.dh(p, q);
            let left = self.labels(p - 1, q);
            for (r, &tl) in left.iter().enumerate() {
                for (c, &sl) in src.iter().enumerate() {
                    if !dh[(r, c)].is_zero() && !self.poset.less(tl, sl) {
                        out.push(Diagnostic::new(
                            &at,
                            format!("filtration violated: d_h sends {} to {}, which is not strictly smaller", self.poset.name(sl), self.poset.name(tl)),
                        ));
                    }
                }
            }
        }
        out
    }

    /// Structural diagnostics plus exactness of the total complex.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = self.validate_structure();
        if out.is_empty() {
            out.extend(self.tot_exactness());
        }
        out
    }

    /// Total degrees `p − q` of nonempty cells, plus their neighbours.
    pub fn tot_degrees(&self) -> Vec<i64> {
        let set: BTreeSet<i64> = self
            .cells
            .iter()
            .filter(|(_, v)| !v.is_empty())
            .map(|((p, q), _)| p - q)
            .collect();
        set.into_iter().collect()
    }

    /// Basis of `Tot_t` as `(p, q, index)`, ordered by cell then index.
    pub fn tot_basis(&self, t: i64) -> Vec<(i64, i64, usize)> {
        self.cells
            .iter()
            .filter(|((p, q), _)| p - q == t)
            .flat_map(|((p, q), v)| (0..v.len()).map(move |i| (*p, *q, i)))
            .collect()
    }

    /// Position of `(p, q, i)` in [`DoubleComplex::tot_basis`] of degree `p − q`.
    pub(crate) fn tot_offset(&self, p: i64, q: i64) -> usize {
        self.cells
            .iter()
            .filter(|((a, b), _)| a - b == p - q && (*a, *b) < (p, q))
            .map(|(_, v)| v.len())
            .sum()
    }

    /// `d_tot : Tot_t → Tot_{t−1}`.
    pub fn tot_differential(&self, t: i64) -> Matrix {
        let rows = self.tot_basis(t - 1).len();
        let cols = self.tot_basis(t).len();
        let mut m = Matrix::zeros(rows, cols);
        for (&(p, q), labels) in &self.cells {
            if p - q != t || labels.is_empty() {
                continue;
            }
            let col0 = self.tot_offset(p, q);
            for (target, map) in [((p, q + 1), self.dv(p, q)), ((p - 1, q), self.dh(p, q))] {
                if self.dim(target.0, target.1) == 0 {
                    continue;
                }
                let row0 = self.tot_offset(target.0, target.1);
                for r in 0..map.rows() {
                    for c in 0..map.cols() {
                        if !map[(r, c)].is_zero() {
                            m[(row0 + r, col0 + c)] += map[(r, c)].clone();
                        }
                    }
                }
            }
        }
        m
    }

    /// Embeds a cell vector into `Tot_{p−q}` coordinates.
    pub(crate) fn embed(&self, p: i64, q: i64, v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.tot_basis(p - q).len()];
        let o = self.tot_offset(p, q);
        for (i, x) in v.iter().enumerate() {
            out[o + i] = x.clone();
        }
        out
    }

    pub fn tot_exactness(&self) -> Vec<Diagnostic> {
        let degrees = self.tot_degrees();
        let mut out = Vec::new();
        for &t in &degrees {
            let dim = self.tot_basis(t).len();
            let r_out = self.tot_differential(t).rank();
            let r_in = self.tot_differential(t + 1).rank();
            if r_out + r_in != dim {
                out.push(Diagnostic::new(
                    format!("Tot degree {t}"),
                    format!("not exact: rank out {r_out} + rank in {r_in} ≠ dim {dim}"),
                ));
            }
        }
        out
    }

    pub fn to_document(&self) -> DoubleComplexDocument {
        let name = |i: usize| Value::String(self.poset.name(i).to_string());
        let maps = |m: &BTreeMap<(i64, i64), Matrix>| {
            m.iter()
                .map(|((p, q), mat)| MapDocument {
                    p: *p,
                    q: *q,
                    matrix: (0..mat.rows())
                        .map(|r| mat.row(r).iter().map(|v| RawValue::Text(rational::render(v))).collect())
                        .collect(),
                })
                .collect()
        };
        DoubleComplexDocument {
            poset: PosetDocument {
                elements: (0..self.poset.len()).map(name).collect(),
                less: Some(self.poset.relations().into_iter().map(|(a, b)| (name(a), name(b))).collect()),
            },
            cells: self
                .cells
                .iter()
                .map(|((p, q), labels)| CellDocument {
                    p: *p,
                    q: *q,
                    basis: labels.iter().map(|&l| BasisDocument { label: name(l) }).collect(),
                })
                .collect(),
            dv: maps(&self.dv),
            dh: maps(&self.dh),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("documents serialize")
    }

    pub fn from_document(doc: &DoubleComplexDocument) -> Result<Self, MatcherError> {
        let names: Vec<String> = doc.poset.elements.iter().map(label_name).collect::<Result<_, _>>()?;
        let relations: Vec<(String, String)> = match &doc.poset.less {
            Some(pairs) => pairs
                .iter()
                .map(|(a, b)| Ok((label_name(a)?, label_name(b)?)))
                .collect::<Result<_, MatcherError>>()?,
            None if doc.poset.elements.iter().all(Value::is_array) => {
                let parts: Vec<Partition> = doc.poset.elements.iter().map(label_partition).collect::<Result<_, _>>()?;
                let mut rel = Vec::new();
                for (i, a) in parts.iter().enumerate() {
                    for (j, b) in parts.iter().enumerate() {
                        if a != b && a.contained_in(b) {
                            rel.push((names[i].clone(), names[j].clone()));
                        }
                    }
                }
                rel
            }
            None => Vec::new(),
        };
        let poset = LabeledPoset::new(names, &relations)?;
        let mut cells = BTreeMap::new();
        for c in &doc.cells {
            let labels = c
                .basis
                .iter()
                .map(|b| {
                    let n = label_name(&b.label)?;
                    poset.index(&n).ok_or(MatcherError::UnknownLabel(n))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if cells.insert((c.p, c.q), labels).is_some() {
                return Err(MatcherError::Format(format!("cell ({}, {}) given twice", c.p, c.q)));
            }
        }
        let dim = |p: i64, q: i64| cells.get(&(p, q)).map_or(0, Vec::len);
        let read = |maps: &[MapDocument]| -> Result<Vec<CellMap>, MatcherError> {
            maps.iter()
                .map(|m| {
                    let cols = m.matrix.first().map_or(dim(m.p, m.q), Vec::len);
                    let rows = m
                        .matrix
                        .iter()
                        .map(|row| {
                            if row.len() != cols {
                                return Err(MatcherError::Format(format!("ragged matrix at ({}, {})", m.p, m.q)));
                            }
                            row.iter()
                                .map(|v| v.parse().map_err(|e| MatcherError::Format(e.to_string())))
                                .collect()
                        })
                        .collect::<Result<Vec<Vec<Rational>>, _>>()?;
                    Ok(CellMap {
                        p: m.p,
                        q: m.q,
                        matrix: Matrix::from_rows(rows, cols),
                    })
                })
                .collect()
        };
        let dv = read(&doc.dv)?;
        let dh = read(&doc.dh)?;
        DoubleComplex::new(poset, cells, dv, dh)
    }

    pub fn from_json(s: &str) -> Result<Self, MatcherError> {
        let doc: DoubleComplexDocument = serde_json::from_str(s).map_err(|e| MatcherError::Format(e.to_string()))?;
        Self::from_document(&doc)
    }
}

/// Poset elements are strings, or integer arrays read as partitions.
fn label_name(v: &Value) -> Result<String, MatcherError> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Array(_) => Ok(label_partition(v)?.to_string()),
        other => Err(MatcherError::Format(format!("label {other} is neither a string nor an integer array"))),
    }
}

fn label_partition(v: &Value) -> Result<Partition, MatcherError> {
    serde_json::from_value::<Partition>(v.clone()).map_err(|e| MatcherError::Format(format!("label {v}: {e}")))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PosetDocument {
    pub elements: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub less: Option<Vec<(Value, Value)>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BasisDocument {
    pub label: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellDocument {
    pub p: i64,
    pub q: i64,
    pub basis: Vec<BasisDocument>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MapDocument {
    pub p: i64,
    pub q: i64,
    pub matrix: Vec<Vec<RawValue>>,
}

/// The JSON form of a [`DoubleComplex`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DoubleComplexDocument {
    pub poset: PosetDocument,
    pub cells: Vec<CellDocument>,
    #[serde(default)]
    pub dv: Vec<MapDocument>,
    #[serde(default)]
    pub dh: Vec<MapDocument>,
}
