//! Betti graphs of rank tables over `(k, k)` and derived-cone membership.
//!
//! A rank table with nonnegative integer entries has one vertex per unit of
//! `β̃_{i,λ}` and an edge `(i,λ) ← (i+1,μ)` whenever `λ ⊊ μ`. The table lies
//! in the derived cone iff this graph has a perfect matching. A matching
//! edge is a homologically-shifted pure table summand; when there is no
//! perfect matching, a Hall violator on one parity class gives a violated
//! convexity inequality.
//!
//! Membership is decided on the label-level flow network (copies of one label
//! are interchangeable), which is equivalent to matching on the expanded
//! graph but does not materialize `β̃_{i,λ} × β̃_{i+1,μ}` edges.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::fmt::Write as _;

use crate::matching::{self, BipartiteMatching};
use crate::rational::{self, Rational};
use crate::tables::RankBettiTable;
use crate::young::IntSeq;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("entry ({i}, {label}) = {value} is not a nonnegative integer")]
    NotNonnegativeInteger { i: i64, label: IntSeq, value: String },
    #[error("entry ({i}, {label}) = {value} is negative")]
    Negative { i: i64, label: IntSeq, value: String },
    #[error("entry ({i}, {label}) is too large for the flow solver")]
    TooLarge { i: i64, label: IntSeq },
    #[error("antichain inequalities need a table in columns 0 and 1, found column {0}")]
    NotTwoColumn(i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(i: i64) -> Parity {
        if i.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn other(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

/// `λ ⊊ μ` for sequences known to share a length.
fn below(lambda: &IntSeq, mu: &IntSeq) -> bool {
    lambda.strictly_contained_in(mu).unwrap_or(false)
}

/// Whether the entries `(i, λ)` and `(j, μ)` may be joined by an edge.
pub fn adjacent(i: i64, lambda: &IntSeq, j: i64, mu: &IntSeq) -> bool {
    (j == i + 1 && below(lambda, mu)) || (i == j + 1 && below(mu, lambda))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub i: i64,
    pub label: IntSeq,
    pub copy: usize,
}

/// The Betti graph with vertices in canonical order `(i, λ, copy)`.
#[derive(Debug, Clone)]
pub struct BettiGraph {
    vertices: Vec<Vertex>,
    /// `(i, λ, first vertex index, count)` per nonzero entry.
    groups: Vec<(i64, IntSeq, usize, usize)>,
}

/// A matching on a Betti graph as pairs `(lower, upper)` of vertex indices,
/// where `lower` sits in column `i` and `upper` in column `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexMatching {
    pub pairs: Vec<(usize, usize)>,
    pub perfect: bool,
}

fn integer_entries(table: &RankBettiTable) -> Result<Vec<(i64, IntSeq, BigInt)>, GraphError> {
    table
        .entries()
        .map(|(i, l, v)| {
            if v < &Rational::zero() {
                return Err(GraphError::Negative {
                    i,
                    label: l.clone(),
                    value: rational::render(v),
                });
            }
            if !rational::is_integer(v) {
                return Err(GraphError::NotNonnegativeInteger {
                    i,
                    label: l.clone(),
                    value: rational::render(v),
                });
            }
            Ok((i, l.clone(), v.to_integer()))
        })
        .collect()
}

impl BettiGraph {
    /// Builds the graph of a table with nonnegative integer entries.
    pub fn build(table: &RankBettiTable) -> Result<BettiGraph, GraphError> {
        let mut vertices = Vec::new();
        let mut groups = Vec::new();
        for (i, label, count) in integer_entries(table)? {
            let count = count.to_usize().ok_or_else(|| GraphError::TooLarge { i, label: label.clone() })?;
            groups.push((i, label.clone(), vertices.len(), count));
            for copy in 0..count {
                vertices.push(Vertex {
                    i,
                    label: label.clone(),
                    copy,
                });
            }
        }
        Ok(BettiGraph { vertices, groups })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    /// Edges as `(lower, upper)` vertex index pairs in canonical order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, l, start, count) in &self.groups {
            for (j, m, s2, c2) in &self.groups {
                if *j == i + 1 && below(l, m) {
                    for a in *start..start + count {
                        for b in *s2..s2 + c2 {
                            out.push((a, b));
                        }
                    }
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    fn side(&self, parity: Parity) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&v| Parity::of(self.vertices[v].i) == parity)
            .collect()
    }

    /// Bipartite adjacency from the `parity` side to the other side, with
    /// both sides indexed by position in [`BettiGraph::side`].
    fn bipartite(&self, parity: Parity) -> (Vec<usize>, Vec<usize>, Vec<Vec<usize>>) {
        let left = self.side(parity);
        let right = self.side(parity.other());
        let pos: BTreeMap<usize, usize> = right.iter().enumerate().map(|(p, &v)| (v, p)).collect();
        let adj = left
            .iter()
            .map(|&u| {
                let a = &self.vertices[u];
                self.groups
                    .iter()
                    .filter(|(j, m, _, _)| adjacent(a.i, &a.label, *j, m))
                    .flat_map(|(_, _, s, c)| (*s..s + c).map(|v| pos[&v]))
                    .collect()
            })
            .collect();
        (left, right, adj)
    }

    /// Maximum matching by Hopcroft-Karp, deterministic in vertex order.
    pub fn max_matching(&self) -> VertexMatching {
        let (left, right, adj) = self.bipartite(Parity::Even);
        let m = matching::hopcroft_karp(&adj, right.len());
        let pairs = m
            .pairs()
            .map(|(a, b)| {
                let (u, v) = (left[a], right[b]);
                if self.vertices[u].i < self.vertices[v].i {
                    (u, v)
                } else {
                    (v, u)
                }
            })
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        VertexMatching {
            pairs,
            perfect: m.is_perfect(),
        }
    }

    /// A vertex set on the `parity` side with fewer neighbours than
    /// elements, as `(set, neighbourhood)` of vertex indices, if one exists.
    pub fn hall_violator(&self, parity: Parity) -> Option<(Vec<usize>, Vec<usize>)> {
        let (left, right, adj) = self.bipartite(parity);
        let m: BipartiteMatching = matching::hopcroft_karp(&adj, right.len());
        let (s, n) = matching::hall_violator(&adj, right.len(), &m)?;
        Some((s.into_iter().map(|u| left[u]).collect(), n.into_iter().map(|v| right[v]).collect()))
    }

    /// Graphviz rendering; vertices are named `v0, v1, …` in canonical order.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph betti {\n  node [shape=box];\n");
        for (idx, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "  v{idx} [label=\"{}: {} #{}\"];", v.i, v.label, v.copy);
        }
        for (a, b) in self.edges() {
            let _ = writeln!(out, "  v{a} -- v{b};");
        }
        out.push_str("}\n");
        out
    }
}

/// `c · β̃(i, λ ⊊ μ)`: ones at `(i, λ)` and `(i + 1, μ)`, scaled by `c`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PureTableSummand {
    pub i: i64,
    pub lambda: IntSeq,
    pub mu: IntSeq,
    pub coefficient: Rational,
}

impl PureTableSummand {
    pub fn to_json(&self) -> Value {
        json!({
            "i": self.i,
            "lambda": self.lambda.parts(),
            "mu": self.mu.parts(),
            "coefficient": rational::render(&self.coefficient),
        })
    }
}

/// Partitions print trimmed, other labels as their full sequence.
fn label_text(l: &IntSeq) -> String {
    match l.to_partition() {
        Some(p) => p.to_string(),
        None => l.to_string(),
    }
}

impl fmt::Display for PureTableSummand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}·β({},{},{})",
            rational::render(&self.coefficient),
            self.i,
            label_text(&self.lambda),
            label_text(&self.mu)
        )
    }
}

/// Sets `S_i` on the columns of one parity, the induced `Γ_i` on the others,
/// and the two sides of the inequality `Σ_Γ β̃ ≥ Σ_S β̃`, which fails here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexityCertificate {
    /// Parity of the columns carrying the `S_i`.
    pub side: Parity,
    pub sets: BTreeMap<i64, Vec<IntSeq>>,
    pub gammas: BTreeMap<i64, Vec<IntSeq>>,
    pub lhs: Rational,
    pub rhs: Rational,
}

impl ConvexityCertificate {
    /// The sets `Γ_i` induced by `sets`, restricted to labels present in `table`.
    pub fn induced_gammas(sets: &BTreeMap<i64, Vec<IntSeq>>, table: &RankBettiTable, side: Parity) -> BTreeMap<i64, Vec<IntSeq>> {
        let mut out: BTreeMap<i64, Vec<IntSeq>> = BTreeMap::new();
        for (i, l, _) in table.entries() {
            if Parity::of(i) == side {
                continue;
            }
            let from_below = sets.get(&(i - 1)).is_some_and(|s| s.iter().any(|m| below(m, l)));
            let from_above = sets.get(&(i + 1)).is_some_and(|s| s.iter().any(|m| below(l, m)));
            if from_below || from_above {
                out.entry(i).or_default().push(l.clone());
            }
        }
        out
    }

    /// Recomputes `(lhs, rhs)` against a table: `lhs = Σ_{Γ_i} β̃_{i,λ}` and
    /// `rhs = Σ_{S_i} β̃_{i,λ}`.
    pub fn evaluate(&self, table: &RankBettiTable) -> (Rational, Rational) {
        let gammas = Self::induced_gammas(&self.sets, table, self.side);
        let lhs = gammas
            .iter()
            .flat_map(|(i, ls)| ls.iter().map(move |l| table.get(*i, l)))
            .fold(Rational::zero(), |a, b| a + b);
        let rhs = self
            .sets
            .iter()
            .flat_map(|(i, ls)| ls.iter().map(move |l| table.get(*i, l)))
            .fold(Rational::zero(), |a, b| a + b);
        (lhs, rhs)
    }

    /// Each `S_i` is convex among the column-`i` labels of `table`.
    pub fn sets_are_convex(&self, table: &RankBettiTable) -> bool {
        self.sets.iter().all(|(i, s)| {
            table.labels_in(*i).iter().all(|l| {
                let between = s.iter().any(|a| a.contained_in(l).unwrap_or(false))
                    && s.iter().any(|b| l.contained_in(b).unwrap_or(false));
                !between || s.contains(l)
            })
        })
    }

    pub fn to_json(&self) -> Value {
        let labels = |m: &BTreeMap<i64, Vec<IntSeq>>| -> Value {
            Value::Array(
                m.iter()
                    .map(|(i, ls)| json!({"i": i, "labels": ls.iter().map(|l| l.parts().to_vec()).collect::<Vec<_>>()}))
                    .collect(),
            )
        };
        json!({
            "side": self.side.name(),
            "sets": labels(&self.sets),
            "gammas": labels(&self.gammas),
            "lhs": rational::render(&self.lhs),
            "rhs": rational::render(&self.rhs),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    Member(Vec<PureTableSummand>),
    NotMember(ConvexityCertificate),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipReport {
    /// Least common multiple of the entry denominators; the matching is
    /// computed on the table multiplied by this.
    pub scale: BigInt,
    pub rank: Rational,
    pub membership: Membership,
}

impl MembershipReport {
    pub fn is_member(&self) -> bool {
        matches!(self.membership, Membership::Member(_))
    }

    pub fn decomposition(&self) -> Option<&[PureTableSummand]> {
        match &self.membership {
            Membership::Member(d) => Some(d),
            Membership::NotMember(_) => None,
        }
    }

    pub fn certificate(&self) -> Option<&ConvexityCertificate> {
        match &self.membership {
            Membership::Member(_) => None,
            Membership::NotMember(c) => Some(c),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "member": self.is_member(),
            "scale": self.scale.to_string(),
            "rank_condition": rational::render(&self.rank),
        });
        match &self.membership {
            Membership::Member(d) => {
                v["decomposition"] = Value::Array(d.iter().map(PureTableSummand::to_json).collect());
            }
            Membership::NotMember(c) => v["certificate"] = c.to_json(),
        }
        v
    }
}

/// `Σ_{i,λ} (−1)^i β̃_{i,λ}`.
pub fn rank_condition(table: &RankBettiTable) -> Rational {
    table
        .entries()
        .fold(Rational::zero(), |acc, (i, _, v)| acc + rational::sign(i) * v)
}

struct FlowEdge {
    to: usize,
    cap: i128,
}

/// Dinic's algorithm on a small dense-ish network.
struct Flow {
    edges: Vec<FlowEdge>,
    graph: Vec<Vec<usize>>,
}

impl Flow {
    fn new(n: usize) -> Self {
        Flow {
            edges: Vec::new(),
            graph: vec![Vec::new(); n],
        }
    }

    fn add_edge(&mut self, a: usize, b: usize, cap: i128) -> usize {
        let id = self.edges.len();
        self.edges.push(FlowEdge { to: b, cap });
        self.edges.push(FlowEdge { to: a, cap: 0 });
        self.graph[a].push(id);
        self.graph[b].push(id + 1);
        id
    }

    fn levels(&self, s: usize) -> Vec<Option<usize>> {
        let mut level = vec![None; self.graph.len()];
        level[s] = Some(0);
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &e in &self.graph[u] {
                let v = self.edges[e].to;
                if self.edges[e].cap > 0 && level[v].is_none() {
                    level[v] = Some(level[u].unwrap() + 1);
                    q.push_back(v);
                }
            }
        }
        level
    }

    fn push(&mut self, u: usize, t: usize, f: i128, level: &[Option<usize>], it: &mut [usize]) -> i128 {
        if u == t {
            return f;
        }
        while it[u] < self.graph[u].len() {
            let e = self.graph[u][it[u]];
            let v = self.edges[e].to;
            if self.edges[e].cap > 0 && level[v] == level[u].map(|l| l + 1) {
                let d = self.push(v, t, f.min(self.edges[e].cap), level, it);
                if d > 0 {
                    self.edges[e].cap -= d;
                    self.edges[e ^ 1].cap += d;
                    return d;
                }
            }
            it[u] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> i128 {
        let mut total = 0;
        loop {
            let level = self.levels(s);
            if level[t].is_none() {
                return total;
            }
            let mut it = vec![0; self.graph.len()];
            loop {
                let f = self.push(s, t, i128::MAX, &level, &mut it);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
    }
}

/// Decides membership in the derived cone of square matrices.
///
/// Rational tables are first multiplied by the lcm of their denominators.
/// On success the decomposition sums exactly to the input table; otherwise
/// the certificate's `S_i` are support-convexified Hall violators taken on the
/// odd side when it has an unmatched vertex, else on the even side.
pub fn derived_cone_membership(table: &RankBettiTable) -> Result<MembershipReport, GraphError> {
    for (i, l, v) in table.entries() {
        if v < &Rational::zero() {
            return Err(GraphError::Negative {
                i,
                label: l.clone(),
                value: rational::render(v),
            });
        }
    }
    let (scaled, scale) = crate::tables::clear_denominators(table);
    let entries = integer_entries(&scaled)?;
    let rank = rank_condition(table);

    let mut caps = Vec::with_capacity(entries.len());
    for (i, l, v) in &entries {
        caps.push(v.to_i128().filter(|c| *c < i128::MAX / 4).ok_or_else(|| GraphError::TooLarge {
            i: *i,
            label: l.clone(),
        })?);
    }
    let total: i128 = caps.iter().sum();
    let infinite = total + 1;

    // Node 0 is the source, node 1 the sink, node 2 + e is entry e.
    let mut flow = Flow::new(entries.len() + 2);
    let mut terminal_edges = Vec::with_capacity(entries.len());
    for (e, (i, _, _)) in entries.iter().enumerate() {
        let id = if Parity::of(*i) == Parity::Even {
            flow.add_edge(0, e + 2, caps[e])
        } else {
            flow.add_edge(e + 2, 1, caps[e])
        };
        terminal_edges.push(id);
    }
    let mut middle = Vec::new();
    for (a, (i, l, _)) in entries.iter().enumerate() {
        if Parity::of(*i) != Parity::Even {
            continue;
        }
        for (b, (j, m, _)) in entries.iter().enumerate() {
            if adjacent(*i, l, *j, m) {
                let id = flow.add_edge(a + 2, b + 2, infinite);
                middle.push((a, b, id));
            }
        }
    }
    let value = flow.max_flow(0, 1);

    let even_total: i128 = entries
        .iter()
        .zip(&caps)
        .filter(|((i, _, _), _)| Parity::of(*i) == Parity::Even)
        .map(|(_, c)| c)
        .sum();
    let odd_total = total - even_total;

    if value == even_total && value == odd_total {
        let mut summands = Vec::new();
        for (a, b, id) in middle {
            let used = flow.edges[id ^ 1].cap;
            if used == 0 {
                continue;
            }
            let (lo, hi) = if entries[a].0 < entries[b].0 { (a, b) } else { (b, a) };
            summands.push(PureTableSummand {
                i: entries[lo].0,
                lambda: entries[lo].1.clone(),
                mu: entries[hi].1.clone(),
                coefficient: Rational::new(BigInt::from(used), scale.clone()),
            });
        }
        summands.sort();
        return Ok(MembershipReport {
            scale,
            rank,
            membership: Membership::Member(summands),
        });
    }

    // Labels reachable from an unsaturated terminal side in the residual
    // network form a Hall violator on that side. When both sides qualify the
    // smaller violator wins, odd on ties.
    let mut candidates = Vec::new();
    for (side, side_total) in [(Parity::Odd, odd_total), (Parity::Even, even_total)] {
        if value < side_total {
            candidates.push(certificate_from_cut(&flow, &entries, side, table));
        }
    }
    let cert = candidates
        .into_iter()
        .min_by(|a, b| a.rhs.cmp(&b.rhs))
        .expect("an imperfect flow leaves some side unsaturated");
    Ok(MembershipReport {
        scale,
        rank,
        membership: Membership::NotMember(cert),
    })
}

fn certificate_from_cut(flow: &Flow, entries: &[(i64, IntSeq, BigInt)], side: Parity, table: &RankBettiTable) -> ConvexityCertificate {
    let reached = residual_reach(flow, entries, side);
    let mut sets: BTreeMap<i64, Vec<IntSeq>> = BTreeMap::new();
    for (e, (i, l, _)) in entries.iter().enumerate() {
        if Parity::of(*i) == side && reached[e + 2] {
            sets.entry(*i).or_default().push(l.clone());
        }
    }
    let sets = convexify(sets, table);
    let gammas = ConvexityCertificate::induced_gammas(&sets, table, side);
    let mut cert = ConvexityCertificate {
        side,
        sets,
        gammas,
        lhs: Rational::zero(),
        rhs: Rational::zero(),
    };
    let (lhs, rhs) = cert.evaluate(table);
    assert!(rhs > lhs, "Hall violator did not yield a violated inequality");
    cert.lhs = lhs;
    cert.rhs = rhs;
    cert
}

/// Nodes reachable in the residual network from the source (even side) or,
/// reversing every arc, from the sink (odd side).
fn residual_reach(flow: &Flow, entries: &[(i64, IntSeq, BigInt)], side: Parity) -> Vec<bool> {
    let n = entries.len() + 2;
    let start = if side == Parity::Even { 0 } else { 1 };
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut q = VecDeque::from([start]);
    while let Some(u) = q.pop_front() {
        for &e in &flow.graph[u] {
            let v = flow.edges[e].to;
            // Forward residual arc u → v, or for the sink search the reverse
            // residual arc v → u, i.e. residual capacity on the paired edge.
            let usable = if side == Parity::Even {
                flow.edges[e].cap > 0
            } else {
                flow.edges[e ^ 1].cap > 0
            };
            if usable && !seen[v] {
                seen[v] = true;
                q.push_back(v);
            }
        }
    }
    seen
}

/// Adds to each `S_i` every column-`i` label of `table` lying between two of
/// its elements. This leaves the induced `Γ_i` unchanged.
fn convexify(sets: BTreeMap<i64, Vec<IntSeq>>, table: &RankBettiTable) -> BTreeMap<i64, Vec<IntSeq>> {
    sets.into_iter()
        .map(|(i, s)| {
            let hull: Vec<IntSeq> = table
                .labels_in(i)
                .into_iter()
                .filter(|l| {
                    s.iter().any(|a| a.contained_in(l).unwrap_or(false))
                        && s.iter().any(|b| l.contained_in(b).unwrap_or(false))
                })
                .collect();
            (i, hull)
        })
        .collect()
}

/// `(lhs, rhs)` of the antichain inequality for `S` on a table in columns 0
/// and 1: `lhs = Σ_{λ ∈ Γ} β̃_{0,λ}` with `Γ = {λ : λ ⊊ μ for some μ ∈ S}`,
/// `rhs = Σ_{λ ∈ S} β̃_{1,λ}`. `S` is taken as given; labels of `S` or `Γ`
/// absent from the table contribute nothing.
pub fn antichain_inequality(table: &RankBettiTable, s: &[IntSeq]) -> Result<(Rational, Rational), GraphError> {
    if let Some(i) = table.columns().into_iter().find(|i| *i != 0 && *i != 1) {
        return Err(GraphError::NotTwoColumn(i));
    }
    let lhs = table
        .labels_in(0)
        .iter()
        .filter(|l| s.iter().any(|m| below(l, m)))
        .fold(Rational::zero(), |acc, l| acc + table.get(0, l));
    let rhs = s.iter().fold(Rational::zero(), |acc, l| acc + table.get(1, l));
    Ok((lhs, rhs))
}

/// Checks every antichain inequality whose `S` is an order ideal of the
/// column-1 labels of a two-column table. Returns a violating `S` if any.
pub fn antichain_violation(table: &RankBettiTable) -> Result<Option<Vec<IntSeq>>, GraphError> {
    let top = table.labels_in(1);
    assert!(top.len() < 24, "too many labels for exhaustive order ideals");
    for mask in 0u32..(1 << top.len()) {
        let s: Vec<IntSeq> = (0..top.len()).filter(|b| mask >> b & 1 == 1).map(|b| top[b].clone()).collect();
        let closed = top
            .iter()
            .all(|l| s.contains(l) || !s.iter().any(|m| l.contained_in(m).unwrap_or(false)));
        if !closed {
            continue;
        }
        let (lhs, rhs) = antichain_inequality(table, &s)?;
        if rhs > lhs {
            return Ok(Some(s));
        }
    }
    Ok(None)
}
