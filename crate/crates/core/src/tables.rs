//! Betti tables, rank Betti tables, `GL`-cohomology tables and Schur vectors.
//!
//! A Betti table maps `(i, λ)` to a nonnegative rational, where `i` is the
//! homological index (boundary maps decrease it) and `λ` is a weakly
//! decreasing sequence of length `k`. The multiplicity table and the rank
//! table share one representation, [`GradedTable`], and are told apart by a
//! marker type so the pairing cannot be fed the wrong kind.
//!
//! Cohomology tables are truncations of an infinite object. They carry an
//! explicit `support`: a `λ` in the support with no entries is a row of known
//! zeros, a `λ` outside it is unknown.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::marker::PhantomData;

use crate::rational::{self, Rational};
use crate::young::{self, IntSeq, Partition, YoungError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TableError {
    #[error("label {label} has length {len}, expected k = {k}")]
    LabelLength { label: IntSeq, len: usize, k: usize },
    #[error("cohomological degree {q} outside [0, {max}]")]
    DegreeOutOfRange { q: i64, max: i64 },
    #[error("label {0} has negative parts; twist by a power of det first")]
    NegativeParts(IntSeq),
    #[error("table failed validation: {}", render_diagnostics(.0))]
    Invalid(Vec<Diagnostic>),
    #[error("expected a {expected} table, found {found}")]
    WrongKind { expected: TableKind, found: TableKind },
    #[error("malformed JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Young(#[from] YoungError),
}

fn render_diagnostics(d: &[Diagnostic]) -> String {
    d.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

/// One invariant violation found by validation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub location: String,
    pub message: String,
}

impl Diagnostic {
    pub fn new(location: impl Into<String>, message: impl Into<String>) -> Self {
        Diagnostic {
            location: location.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TableKind {
    Betti,
    RankBetti,
    Cohomology,
}

impl fmt::Display for TableKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TableKind::Betti => "betti",
            TableKind::RankBetti => "rank_betti",
            TableKind::Cohomology => "cohomology",
        })
    }
}

pub trait Kind: Clone + Copy + fmt::Debug + PartialEq + Eq + Default {
    const KIND: TableKind;
}

/// Marker: entries are multiplicities of irreducible representations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Multiplicity;

/// Marker: entries are ranks of isotypic components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rank;

impl Kind for Multiplicity {
    const KIND: TableKind = TableKind::Betti;
}

impl Kind for Rank {
    const KIND: TableKind = TableKind::RankBetti;
}

/// A finite-support table `(i, λ) ↦ value` over `(k, n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedTable<K: Kind> {
    k: usize,
    n: usize,
    entries: BTreeMap<(i64, IntSeq), Rational>,
    _kind: PhantomData<K>,
}

pub type BettiTable = GradedTable<Multiplicity>;
pub type RankBettiTable = GradedTable<Rank>;

impl<K: Kind> GradedTable<K> {
    pub fn new(k: usize, n: usize) -> Self {
        GradedTable {
            k,
            n,
            entries: BTreeMap::new(),
            _kind: PhantomData,
        }
    }

    /// Builds a table from `(i, λ, value)` triples; repeated keys add up.
    pub fn from_entries(
        k: usize,
        n: usize,
        entries: impl IntoIterator<Item = (i64, IntSeq, Rational)>,
    ) -> Result<Self, TableError> {
        let mut t = Self::new(k, n);
        for (i, lambda, v) in entries {
            t.add(i, lambda, v)?;
        }
        Ok(t)
    }

    /// Convenience constructor from integer data, labels given as partitions
    /// or arbitrary sequences of length `k` (shorter nonnegative ones are padded).
    pub fn from_ints(k: usize, n: usize, entries: &[(i64, &[i64], i64)]) -> Result<Self, TableError> {
        let mut t = Self::new(k, n);
        for &(i, lambda, v) in entries {
            t.add(i, label_from_slice(lambda, k)?, rational::int(v))?;
        }
        Ok(t)
    }

    pub fn kind(&self) -> TableKind {
        K::KIND
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check_label(&self, lambda: &IntSeq) -> Result<(), TableError> {
        if lambda.len() != self.k {
            return Err(TableError::LabelLength {
                label: lambda.clone(),
                len: lambda.len(),
                k: self.k,
            });
        }
        Ok(())
    }

    /// Adds `value` to entry `(i, λ)`; entries that become zero are dropped.
    pub fn add(&mut self, i: i64, lambda: IntSeq, value: Rational) -> Result<(), TableError> {
        self.check_label(&lambda)?;
        if value.is_zero() {
            return Ok(());
        }
        let key = (i, lambda);
        let slot = self.entries.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += value;
        if slot.is_zero() {
            self.entries.remove(&key);
        }
        Ok(())
    }

    pub fn set(&mut self, i: i64, lambda: IntSeq, value: Rational) -> Result<(), TableError> {
        self.check_label(&lambda)?;
        if value.is_zero() {
            self.entries.remove(&(i, lambda));
        } else {
            self.entries.insert((i, lambda), value);
        }
        Ok(())
    }

    pub fn get(&self, i: i64, lambda: &IntSeq) -> Rational {
        self.entries
            .get(&(i, lambda.clone()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Nonzero entries in `(i, graded-lex λ)` order.
    pub fn entries(&self) -> impl Iterator<Item = (i64, &IntSeq, &Rational)> {
        self.entries.iter().map(|((i, l), v)| (*i, l, v))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Homological indices with a nonzero entry.
    pub fn columns(&self) -> BTreeSet<i64> {
        self.entries.keys().map(|(i, _)| *i).collect()
    }

    /// Labels with a nonzero entry in column `i`.
    pub fn labels_in(&self, i: i64) -> Vec<IntSeq> {
        self.entries
            .keys()
            .filter(|(j, _)| *j == i)
            .map(|(_, l)| l.clone())
            .collect()
    }

    /// All labels appearing anywhere in the table.
    pub fn labels(&self) -> BTreeSet<IntSeq> {
        self.entries.keys().map(|(_, l)| l.clone()).collect()
    }

    /// Shifts every homological index by `by`.
    pub fn shift(&self, by: i64) -> Self {
        GradedTable {
            k: self.k,
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|((i, l), v)| ((i + by, l.clone()), v.clone()))
                .collect(),
            _kind: PhantomData,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::new(self.k, self.n);
        for ((i, l), v) in &self.entries {
            out.add(*i, l.clone(), v * c).expect("labels already checked");
        }
        out
    }

    /// Entrywise sum; both tables must share `(k, n)`.
    pub fn plus(&self, other: &Self) -> Self {
        assert_eq!((self.k, self.n), (other.k, other.n), "adding tables over different (k, n)");
        let mut out = self.clone();
        for ((i, l), v) in &other.entries {
            out.add(*i, l.clone(), v.clone()).expect("labels already checked");
        }
        out
    }

    pub fn is_integral(&self) -> bool {
        self.entries.values().all(rational::is_integer)
    }

    /// Reports negative values (the only invariant not enforced on insert).
    pub fn validate(&self) -> Vec<Diagnostic> {
        self.entries
            .iter()
            .filter(|(_, v)| v.is_negative())
            .map(|((i, l), v)| Diagnostic::new(format!("entry ({i}, {l})"), format!("negative value {}", rational::render(v))))
            .collect()
    }

    /// Diagnostics for the additional constraint `0 ≤ i ≤ n − k + 1`
    /// satisfied by resolutions of the modules of interest.
    pub fn check_resolution_range(&self) -> Vec<Diagnostic> {
        let top = (self.n - self.k + 1) as i64;
        self.entries
            .keys()
            .filter(|(i, _)| *i < 0 || *i > top)
            .map(|(i, l)| Diagnostic::new(format!("entry ({i}, {l})"), format!("homological index outside [0, {top}]")))
            .collect()
    }

    pub fn to_document(&self) -> TableDocument {
        TableDocument {
            kind: K::KIND,
            k: self.k as i64,
            n: self.n as i64,
            entries: self
                .entries
                .iter()
                .map(|((i, l), v)| EntryDocument {
                    i: *i,
                    lambda: l.parts().to_vec(),
                    value: RawValue::Text(rational::render(v)),
                })
                .collect(),
            support: None,
        }
    }

    pub fn to_json(&self) -> String {
        self.to_document().to_json()
    }

    pub fn from_document(doc: &TableDocument) -> Result<Self, TableError> {
        if doc.kind != K::KIND {
            return Err(TableError::WrongKind {
                expected: K::KIND,
                found: doc.kind,
            });
        }
        let diags = validate_document(doc);
        if !diags.is_empty() {
            return Err(TableError::Invalid(diags));
        }
        let k = doc.k as usize;
        let mut t = Self::new(k, doc.n as usize);
        for e in &doc.entries {
            t.add(e.i, label_from_slice(&e.lambda, k)?, e.value.parse().expect("validated"))?;
        }
        Ok(t)
    }

    pub fn from_json(s: &str) -> Result<Self, TableError> {
        Self::from_document(&TableDocument::from_json(s)?)
    }

    /// Text rendering with homological degrees across and labels down.
    pub fn pretty(&self) -> String {
        let symbol = match K::KIND {
            TableKind::Betti => "β",
            _ => "β~",
        };
        let cells: BTreeMap<(i64, IntSeq), String> = self
            .entries
            .iter()
            .map(|(key, v)| (key.clone(), rational::render(v)))
            .collect();
        render_grid(symbol, self.k, &cells, &self.labels())
    }
}

fn render_grid(symbol: &str, k: usize, cells: &BTreeMap<(i64, IntSeq), String>, labels: &BTreeSet<IntSeq>) -> String {
    let columns: BTreeSet<i64> = cells.keys().map(|(i, _)| *i).collect();
    let label_text = |l: &IntSeq| match l.to_partition() {
        Some(p) if k > 0 => p.to_string(),
        _ => l.to_string(),
    };
    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut header = vec![symbol.to_string()];
    header.extend(columns.iter().map(i64::to_string));
    rows.push(header);
    for l in labels {
        let mut row = vec![label_text(l)];
        for &i in &columns {
            row.push(cells.get(&(i, l.clone())).cloned().unwrap_or_else(|| "-".into()));
        }
        rows.push(row);
    }
    let ncols = rows[0].len();
    let widths: Vec<usize> = (0..ncols)
        .map(|c| rows.iter().map(|r| r[c].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for (ri, row) in rows.iter().enumerate() {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, s)| format!("{:>w$}", s, w = widths[c]))
            .collect();
        out.push_str(&format!("{} | {}\n", line[0], line[1..].join(" ")));
        if ri == 0 {
            let total: usize = widths.iter().sum::<usize>() + ncols + 1;
            out.push_str(&"-".repeat(total));
            out.push('\n');
        }
    }
    out
}

/// A `GL`-cohomology table `γ_{q,λ}` truncated to a declared set of `λ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyTable {
    k: usize,
    n: usize,
    entries: BTreeMap<(i64, IntSeq), Rational>,
    support: BTreeSet<IntSeq>,
}

impl CohomologyTable {
    pub fn new(k: usize, n: usize) -> Self {
        CohomologyTable {
            k,
            n,
            entries: BTreeMap::new(),
            support: BTreeSet::new(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `dim Gr(k, n) = k (n − k)`, the top cohomological degree.
    pub fn top_degree(&self) -> i64 {
        (self.k * (self.n - self.k)) as i64
    }

    /// Marks every entry of row `λ` as known (zero unless set).
    pub fn declare(&mut self, lambda: IntSeq) -> Result<(), TableError> {
        if lambda.len() != self.k {
            return Err(TableError::LabelLength {
                len: lambda.len(),
                label: lambda,
                k: self.k,
            });
        }
        self.support.insert(lambda);
        Ok(())
    }

    /// Adds to entry `(q, λ)`, declaring `λ` if needed.
    pub fn add(&mut self, q: i64, lambda: IntSeq, value: Rational) -> Result<(), TableError> {
        if q < 0 || q > self.top_degree() {
            return Err(TableError::DegreeOutOfRange {
                q,
                max: self.top_degree(),
            });
        }
        self.declare(lambda.clone())?;
        if value.is_zero() {
            return Ok(());
        }
        let key = (q, lambda);
        let slot = self.entries.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += value;
        if slot.is_zero() {
            self.entries.remove(&key);
        }
        Ok(())
    }

    /// `None` when `λ` is outside the declared support.
    pub fn get(&self, q: i64, lambda: &IntSeq) -> Option<Rational> {
        if !self.support.contains(lambda) {
            return None;
        }
        Some(
            self.entries
                .get(&(q, lambda.clone()))
                .cloned()
                .unwrap_or_else(Rational::zero),
        )
    }

    /// Nonzero entries of row `λ` as `(q, value)`, or `None` if `λ` is unknown.
    pub fn row(&self, lambda: &IntSeq) -> Option<Vec<(i64, Rational)>> {
        if !self.support.contains(lambda) {
            return None;
        }
        Some(
            self.entries
                .iter()
                .filter(|((_, l), _)| l == lambda)
                .map(|((q, _), v)| (*q, v.clone()))
                .collect(),
        )
    }

    pub fn support(&self) -> &BTreeSet<IntSeq> {
        &self.support
    }

    pub fn entries(&self) -> impl Iterator<Item = (i64, &IntSeq, &Rational)> {
        self.entries.iter().map(|((q, l), v)| (*q, l, v))
    }

    pub fn plus(&self, other: &CohomologyTable) -> CohomologyTable {
        assert_eq!((self.k, self.n), (other.k, other.n));
        let mut out = self.clone();
        for l in &other.support {
            out.support.insert(l.clone());
        }
        for ((q, l), v) in &other.entries {
            out.add(*q, l.clone(), v.clone()).expect("already validated");
        }
        out
    }

    pub fn validate(&self) -> Vec<Diagnostic> {
        self.entries
            .iter()
            .filter(|(_, v)| v.is_negative())
            .map(|((q, l), v)| Diagnostic::new(format!("entry ({q}, {l})"), format!("negative value {}", rational::render(v))))
            .collect()
    }

    pub fn to_document(&self) -> TableDocument {
        TableDocument {
            kind: TableKind::Cohomology,
            k: self.k as i64,
            n: self.n as i64,
            entries: self
                .entries
                .iter()
                .map(|((q, l), v)| EntryDocument {
                    i: *q,
                    lambda: l.parts().to_vec(),
                    value: RawValue::Text(rational::render(v)),
                })
                .collect(),
            support: Some(self.support.iter().map(|l| l.parts().to_vec()).collect()),
        }
    }

    pub fn to_json(&self) -> String {
        self.to_document().to_json()
    }

    pub fn from_document(doc: &TableDocument) -> Result<Self, TableError> {
        if doc.kind != TableKind::Cohomology {
            return Err(TableError::WrongKind {
                expected: TableKind::Cohomology,
                found: doc.kind,
            });
        }
        let diags = validate_document(doc);
        if !diags.is_empty() {
            return Err(TableError::Invalid(diags));
        }
        let k = doc.k as usize;
        let mut t = CohomologyTable::new(k, doc.n as usize);
        for l in doc.support.iter().flatten() {
            t.declare(label_from_slice(l, k)?)?;
        }
        for e in &doc.entries {
            t.add(e.i, label_from_slice(&e.lambda, k)?, e.value.parse().expect("validated"))?;
        }
        Ok(t)
    }

    pub fn from_json(s: &str) -> Result<Self, TableError> {
        Self::from_document(&TableDocument::from_json(s)?)
    }

    pub fn pretty(&self) -> String {
        let cells: BTreeMap<(i64, IntSeq), String> = self
            .entries
            .iter()
            .map(|(key, v)| (key.clone(), rational::render(v)))
            .collect();
        render_grid("γ", self.k, &cells, &self.support)
    }
}

/// A symmetric function written in the Schur basis, `Σ a_λ s_λ`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SchurVector(BTreeMap<Partition, Rational>);

impl SchurVector {
    pub fn zero() -> Self {
        SchurVector(BTreeMap::new())
    }

    pub fn single(lambda: Partition, coeff: Rational) -> Self {
        let mut v = Self::zero();
        v.add_term(lambda, coeff);
        v
    }

    pub fn add_term(&mut self, lambda: Partition, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.0.entry(lambda.clone()).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.0.remove(&lambda);
        }
    }

    pub fn coefficient(&self, lambda: &Partition) -> Rational {
        self.0.get(lambda).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &Rational)> {
        self.0.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn plus(&self, other: &SchurVector) -> SchurVector {
        let mut out = self.clone();
        for (l, c) in &other.0 {
            out.add_term(l.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> SchurVector {
        let mut out = SchurVector::zero();
        for (l, v) in &self.0 {
            out.add_term(l.clone(), v * c);
        }
        out
    }
}

impl FromIterator<(Partition, Rational)> for SchurVector {
    fn from_iter<I: IntoIterator<Item = (Partition, Rational)>>(iter: I) -> Self {
        let mut v = SchurVector::zero();
        for (l, c) in iter {
            v.add_term(l, c);
        }
        v
    }
}

impl fmt::Display for SchurVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .0
            .iter()
            .map(|(l, c)| format!("{}·s{}", rational::render(c), l))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Rescales every entry `β_{i,λ}` by `d_λ(k)`.
pub fn to_rank(beta: &BettiTable) -> RankBettiTable {
    let mut out = RankBettiTable::new(beta.k(), beta.n());
    for (i, l, v) in beta.entries() {
        let d = young::dim_gl(l, beta.k()).expect("labels have length k");
        out.add(i, l.clone(), v * rational::from_biguint(&d))
            .expect("labels have length k");
    }
    out
}

/// The equivariant K-class `Σ_{i,λ} (−1)^i β_{i,λ} s_λ`.
pub fn k_class(beta: &BettiTable) -> Result<SchurVector, TableError> {
    let mut v = SchurVector::zero();
    for (i, l, c) in beta.entries() {
        let p = l.to_partition().ok_or_else(|| TableError::NegativeParts(l.clone()))?;
        v.add_term(p, rational::sign(i) * c);
    }
    Ok(v)
}

/// A table value as written in JSON: a decimal string (`"3"`, `"3/2"`) or,
/// leniently, a bare integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawValue {
    Text(String),
    Integer(i64),
}

impl RawValue {
    pub fn parse(&self) -> Result<Rational, rational::ParseRationalError> {
        match self {
            RawValue::Text(s) => rational::parse(s),
            RawValue::Integer(v) => Ok(rational::int(*v)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryDocument {
    pub i: i64,
    pub lambda: Vec<i64>,
    pub value: RawValue,
}

/// The JSON document for any table kind, before validation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDocument {
    pub kind: TableKind,
    pub k: i64,
    pub n: i64,
    pub entries: Vec<EntryDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub support: Option<Vec<Vec<i64>>>,
}

impl TableDocument {
    pub fn from_json(s: &str) -> Result<Self, TableError> {
        serde_json::from_str(s).map_err(|e| TableError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table documents always serialize")
    }
}

/// Accepts a label of length `k`, or a shorter nonnegative one (a partition
/// written without trailing zeros, `[]` included), which is padded.
pub fn label_from_slice(parts: &[i64], k: usize) -> Result<IntSeq, TableError> {
    if parts.len() == k {
        return Ok(IntSeq::new(parts.to_vec())?);
    }
    if parts.len() < k && parts.iter().all(|&p| p >= 0) {
        let mut v = parts.to_vec();
        v.resize(k, 0);
        return Ok(IntSeq::new(v)?);
    }
    Err(TableError::LabelLength {
        label: IntSeq::new(parts.to_vec()).unwrap_or_else(|_| IntSeq::zero(0)),
        len: parts.len(),
        k,
    })
}

/// Reports every invariant violation in a raw document.
pub fn validate_document(doc: &TableDocument) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    if doc.k < 1 || doc.n < doc.k {
        out.push(Diagnostic::new("header", format!("need 1 ≤ k ≤ n, got k = {}, n = {}", doc.k, doc.n)));
        return out;
    }
    let k = doc.k as usize;
    let check_label = |parts: &[i64], loc: &str, out: &mut Vec<Diagnostic>| -> Option<IntSeq> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            out.push(Diagnostic::new(loc, format!("label {parts:?} is not weakly decreasing")));
            return None;
        }
        match label_from_slice(parts, k) {
            Ok(l) => Some(l),
            Err(_) => {
                out.push(Diagnostic::new(loc, format!("label {parts:?} does not have length k = {k}")));
                None
            }
        }
    };

    let mut support = BTreeSet::new();
    match (&doc.support, doc.kind) {
        (Some(s), TableKind::Cohomology) => {
            for (idx, parts) in s.iter().enumerate() {
                if let Some(l) = check_label(parts, &format!("support[{idx}]"), &mut out) {
                    support.insert(l);
                }
            }
        }
        (Some(_), kind) => out.push(Diagnostic::new("support", format!("a {kind} table has no support field"))),
        (None, _) => {}
    }

    let top = doc.k * (doc.n - doc.k);
    let mut seen = BTreeSet::new();
    for (idx, e) in doc.entries.iter().enumerate() {
        let loc = format!("entries[{idx}]");
        let label = check_label(&e.lambda, &loc, &mut out);
        match e.value.parse() {
            Ok(v) if v.is_negative() => out.push(Diagnostic::new(&loc, format!("negative value {}", rational::render(&v)))),
            Ok(_) => {}
            Err(err) => out.push(Diagnostic::new(&loc, err.to_string())),
        }
        if doc.kind == TableKind::Cohomology {
            if e.i < 0 || e.i > top {
                out.push(Diagnostic::new(&loc, format!("q out of range: {} not in [0, {top}]", e.i)));
            }
            if doc.support.is_some() {
                if let Some(l) = &label {
                    if !support.contains(l) {
                        out.push(Diagnostic::new(&loc, format!("label {l} outside the declared support")));
                    }
                }
            }
        }
        if let Some(l) = label {
            if !seen.insert((e.i, l.clone())) {
                out.push(Diagnostic::new(&loc, format!("duplicate entry ({}, {l})", e.i)));
            }
        }
    }
    out
}

/// Any table read from JSON, dispatched on its `kind` field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyTable {
    Betti(BettiTable),
    RankBetti(RankBettiTable),
    Cohomology(CohomologyTable),
}

impl AnyTable {
    pub fn from_document(doc: &TableDocument) -> Result<Self, TableError> {
        Ok(match doc.kind {
            TableKind::Betti => AnyTable::Betti(BettiTable::from_document(doc)?),
            TableKind::RankBetti => AnyTable::RankBetti(RankBettiTable::from_document(doc)?),
            TableKind::Cohomology => AnyTable::Cohomology(CohomologyTable::from_document(doc)?),
        })
    }

    pub fn from_json(s: &str) -> Result<Self, TableError> {
        Self::from_document(&TableDocument::from_json(s)?)
    }

    pub fn to_json(&self) -> String {
        match self {
            AnyTable::Betti(t) => t.to_json(),
            AnyTable::RankBetti(t) => t.to_json(),
            AnyTable::Cohomology(t) => t.to_json(),
        }
    }

    pub fn pretty(&self) -> String {
        match self {
            AnyTable::Betti(t) => t.pretty(),
            AnyTable::RankBetti(t) => t.pretty(),
            AnyTable::Cohomology(t) => t.pretty(),
        }
    }
}

/// Clears denominators: returns the table scaled by the lcm of its
/// denominators, together with that factor.
pub fn clear_denominators<K: Kind>(t: &GradedTable<K>) -> (GradedTable<K>, BigInt) {
    let den = rational::common_denominator(t.entries().map(|(_, _, v)| v));
    (t.scale(&Rational::from_integer(den.clone())), den)
}
