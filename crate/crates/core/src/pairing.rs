//! The Betti × cohomology pairing and Borel-Weil-Bott probe bundles.
//!
//! `Φ̃(β, γ)_{i,λ} = Σ_{p−q=i} β_{p,λ} γ_{q,λ}` takes a multiplicity table over
//! `(k, n)` and a cohomology table over `(k, n)` to a rank table over
//! `(k, k)`. If `β` is realizable and `γ` comes from a vector bundle, the
//! result lies in the derived cone, so a failed membership test proves `β`
//! is not realizable.
//!
//! # Line bundle convention
//!
//! On `Gr(k, n)` with tautological sequence `0 → S → W → Q → 0`, a probe is a
//! sum of `S_δ(Q) ⊗ O(m)` with `O(1) = det S^*`. For `λ` of length `k` the
//! bundle `S_δ(Q) ⊗ O(m) ⊗ S_λ(S)` is handled by the weight
//! `(δ_1, …, δ_{n−k}, λ_1 − m, …, λ_k − m)`: add `ρ = (n−1, …, 1, 0)`; a
//! repeated entry means all cohomology vanishes; otherwise sort decreasingly,
//! let `ℓ` be the number of inversions, subtract `ρ`, and the result `w` gives
//! `H^ℓ` of dimension `dim_gl(w, n)`. With this convention `S = O(−1)` on
//! projective space, so on `ℙ¹ = Gr(1, 2)` the label `λ = (j)` gives
//! `H^•(ℙ¹, O(−j))`.

use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

use crate::graph::{self, ConvexityCertificate, GraphError};
use crate::rational::{self, Rational};
use crate::tables::{BettiTable, CohomologyTable, RankBettiTable, TableError};
use crate::young::{self, IntSeq, Partition, YoungError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PairingError {
    #[error("tables are over different (k, n): ({0}, {1}) and ({2}, {3})")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("cohomology row {0} is needed but not in the declared support")]
    MissingRow(IntSeq),
    #[error("quotient weight {delta} has more than n − k = {rank} parts")]
    QuotientWeightTooLong { delta: Partition, rank: usize },
    #[error("cannot parse bundle {input:?}: {reason}")]
    Parse { input: String, reason: String },
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Young(#[from] YoungError),
}

/// All products `β_{p,λ} γ_{q,λ}`, keyed by `(p, q, λ)`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PairingGrid {
    cells: BTreeMap<(i64, i64, IntSeq), Rational>,
}

impl PairingGrid {
    pub fn cells(&self) -> impl Iterator<Item = (i64, i64, &IntSeq, &Rational)> {
        self.cells.iter().map(|((p, q, l), v)| (*p, *q, l, v))
    }

    pub fn get(&self, p: i64, q: i64, lambda: &IntSeq) -> Rational {
        self.cells
            .get(&(p, q, lambda.clone()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// `Σ_{p−q=i} cell(p, q, λ)`.
    pub fn diagonal(&self, i: i64, lambda: &IntSeq) -> Rational {
        self.cells
            .iter()
            .filter(|((p, q, l), _)| p - q == i && l == lambda)
            .fold(Rational::zero(), |acc, (_, v)| acc + v)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.cells
                .iter()
                .map(|((p, q, l), v)| {
                    serde_json::json!({"p": p, "q": q, "lambda": l.parts(), "value": rational::render(v)})
                })
                .collect(),
        )
    }
}

/// Pairs a multiplicity table with a cohomology table over the same `(k, n)`.
pub fn pair(beta: &BettiTable, gamma: &CohomologyTable) -> Result<(RankBettiTable, PairingGrid), PairingError> {
    if (beta.k(), beta.n()) != (gamma.k(), gamma.n()) {
        return Err(PairingError::DimensionMismatch(beta.k(), beta.n(), gamma.k(), gamma.n()));
    }
    let mut grid = PairingGrid::default();
    let mut out = RankBettiTable::new(beta.k(), beta.k());
    for (p, lambda, b) in beta.entries() {
        let row = gamma
            .row(lambda)
            .ok_or_else(|| PairingError::MissingRow(lambda.clone()))?;
        for (q, g) in row {
            let v = b * &g;
            out.add(p - q, lambda.clone(), v.clone())?;
            grid.cells.insert((p, q, lambda.clone()), v);
        }
    }
    Ok((out, grid))
}

/// `multiplicity · S_δ(Q) ⊗ O(twist)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct BottComponent {
    pub twist: i64,
    pub delta: Partition,
    pub multiplicity: u64,
}

impl fmt::Display for BottComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors = Vec::new();
        if self.multiplicity != 1 {
            factors.push(self.multiplicity.to_string());
        }
        if !self.delta.is_empty() {
            let parts: Vec<String> = self.delta.parts().iter().map(usize::to_string).collect();
            factors.push(format!("Q[{}]", parts.join(",")));
        }
        if self.twist != 0 || self.delta.is_empty() {
            factors.push(if self.twist == 0 { "O".into() } else { format!("O({})", self.twist) });
        }
        write!(f, "{}", factors.join("*"))
    }
}

/// A formal sum of [`BottComponent`]s.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BottBundle {
    pub components: Vec<BottComponent>,
}

impl BottBundle {
    pub fn line(twist: i64) -> Self {
        BottBundle {
            components: vec![BottComponent {
                twist,
                delta: Partition::empty(),
                multiplicity: 1,
            }],
        }
    }

    pub fn quotient_power(delta: Partition, twist: i64) -> Self {
        BottBundle {
            components: vec![BottComponent {
                twist,
                delta,
                multiplicity: 1,
            }],
        }
    }

    pub fn plus(&self, other: &BottBundle) -> BottBundle {
        let mut components = self.components.clone();
        components.extend(other.components.iter().cloned());
        BottBundle { components }
    }

    /// Parses sums like `O(1)+O(-1)`, `Q[2,1]*O(-1)`, `3*O(2)+Q`, or `0`.
    pub fn parse(input: &str) -> Result<BottBundle, PairingError> {
        let err = |reason: &str| PairingError::Parse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty bundle"));
        }
        if compact == "0" {
            return Ok(BottBundle::default());
        }
        let mut components = Vec::new();
        for term in compact.split('+') {
            if term.is_empty() {
                return Err(err("empty summand"));
            }
            let mut multiplicity = 1u64;
            let mut twist = 0i64;
            let mut delta: Option<Partition> = None;
            for factor in term.split('*') {
                if let Ok(m) = factor.parse::<u64>() {
                    multiplicity *= m;
                } else if factor == "O" {
                } else if let Some(inner) = factor.strip_prefix("O(").and_then(|s| s.strip_suffix(')')) {
                    twist += inner.parse::<i64>().map_err(|_| err("bad twist in O(..)"))?;
                } else if factor == "Q" || factor.starts_with("Q[") {
                    if delta.is_some() {
                        return Err(err("at most one Q factor per summand"));
                    }
                    let parts: Vec<usize> = if factor == "Q" {
                        vec![1]
                    } else {
                        let inner = factor
                            .strip_prefix("Q[")
                            .and_then(|s| s.strip_suffix(']'))
                            .ok_or_else(|| err("unterminated Q[..]"))?;
                        if inner.is_empty() {
                            Vec::new()
                        } else {
                            inner
                                .split(',')
                                .map(|p| p.parse::<usize>().map_err(|_| err("bad part in Q[..]")))
                                .collect::<Result<_, _>>()?
                        }
                    };
                    delta = Some(Partition::new(parts).map_err(|_| err("Q[..] weight is not weakly decreasing"))?);
                } else {
                    return Err(err(&format!("unknown factor {factor:?}")));
                }
            }
            if multiplicity > 0 {
                components.push(BottComponent {
                    twist,
                    delta: delta.unwrap_or_default(),
                    multiplicity,
                });
            }
        }
        Ok(BottBundle { components })
    }
}

impl fmt::Display for BottBundle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.components.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join("+"))
    }
}

/// The single nonvanishing cohomology `(degree, dimension)` of the
/// irreducible homogeneous bundle with weight `weight`, if any.
pub fn bott_single(weight: &[i64]) -> Option<(i64, num_bigint::BigUint)> {
    let n = weight.len();
    let mut shifted: Vec<i64> = weight
        .iter()
        .enumerate()
        .map(|(j, w)| w + (n - 1 - j) as i64)
        .collect();
    let mut inversions = 0i64;
    for a in 0..n {
        for b in a + 1..n {
            match shifted[a].cmp(&shifted[b]) {
                std::cmp::Ordering::Equal => return None,
                std::cmp::Ordering::Less => inversions += 1,
                std::cmp::Ordering::Greater => {}
            }
        }
    }
    shifted.sort_unstable_by(|a, b| b.cmp(a));
    let dominant: Vec<i64> = shifted
        .iter()
        .enumerate()
        .map(|(j, w)| w - (n - 1 - j) as i64)
        .collect();
    let w = IntSeq::new(dominant).expect("sorted weight minus ρ is dominant");
    Some((inversions, young::dim_gl(&w, n).expect("length n")))
}

/// `γ_{q,λ}(E) = dim H^q(E ⊗ S_λ(S))` for every `λ` in `lambdas`.
pub fn bott_cohomology(k: usize, n: usize, bundle: &BottBundle, lambdas: &[IntSeq]) -> Result<CohomologyTable, PairingError> {
    let mut out = CohomologyTable::new(k, n);
    for lambda in lambdas {
        out.declare(lambda.clone())?;
    }
    for c in &bundle.components {
        let quotient = c.delta.padded(n - k).map_err(|_| PairingError::QuotientWeightTooLong {
            delta: c.delta.clone(),
            rank: n - k,
        })?;
        for lambda in lambdas {
            let mut weight = quotient.parts().to_vec();
            weight.extend(lambda.det_twist(-c.twist).parts());
            if let Some((q, d)) = bott_single(&weight) {
                out.add(q, lambda.clone(), rational::from_biguint(&d) * rational::int(c.multiplicity as i64))?;
            }
        }
    }
    Ok(out)
}

/// A probe whose pairing with `β` leaves the derived cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obstruction {
    pub probe_index: usize,
    pub probe: BottBundle,
    pub paired: RankBettiTable,
    pub certificate: ConvexityCertificate,
}

/// Pairs `β` against each probe in order and returns the first whose paired
/// table fails derived-cone membership.
pub fn realizability_obstruction(beta: &BettiTable, probes: &[BottBundle]) -> Result<Option<Obstruction>, PairingError> {
    let lambdas: Vec<IntSeq> = beta.labels().into_iter().collect();
    for (probe_index, probe) in probes.iter().enumerate() {
        let gamma = bott_cohomology(beta.k(), beta.n(), probe, &lambdas)?;
        let (paired, _) = pair(beta, &gamma)?;
        let report = graph::derived_cone_membership(&paired)?;
        if let Some(cert) = report.certificate() {
            return Ok(Some(Obstruction {
                probe_index,
                probe: probe.clone(),
                paired,
                certificate: cert.clone(),
            }));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn s(v: &[i64]) -> IntSeq {
        IntSeq::new(v.to_vec()).unwrap()
    }

    fn six_labels() -> Vec<IntSeq> {
        [[1, 0], [2, 0], [1, 1], [2, 1], [3, 1], [2, 2]].iter().map(|v| s(v)).collect()
    }

    #[test]
    fn calibration_on_gr23() {
        let e = BottBundle::parse("O(1)+O(-1)").unwrap();
        let g = bott_cohomology(2, 3, &e, &six_labels()).unwrap();
        let expect = [
            (0, [1, 0], 3),
            (1, [1, 0], 1),
            (1, [2, 0], 3),
            (0, [1, 1], 1),
            (1, [3, 1], 3),
            (2, [2, 2], 1),
        ];
        let got: Vec<(i64, IntSeq, Rational)> = g.entries().map(|(q, l, v)| (q, l.clone(), v.clone())).collect();
        assert_eq!(got.len(), expect.len());
        for (q, l, v) in expect {
            assert_eq!(g.get(q, &s(&l)), Some(int(v)));
        }
        assert_eq!(g.row(&s(&[2, 1])), Some(vec![]));
    }

    #[test]
    fn structure_sheaf_and_projective_line() {
        let o = BottBundle::line(0);
        let g = bott_cohomology(2, 4, &o, &[IntSeq::zero(2)]).unwrap();
        assert_eq!(g.row(&IntSeq::zero(2)), Some(vec![(0, int(1))]));
        for j in 0..=4i64 {
            let g = bott_cohomology(1, 2, &BottBundle::line(j), &[IntSeq::zero(1)]).unwrap();
            assert_eq!(g.get(0, &IntSeq::zero(1)), Some(int(j + 1)));
        }
    }

    #[test]
    fn parse_and_display() {
        let b = BottBundle::parse("Q[2,1]*O(-1)").unwrap();
        assert_eq!(b.components[0].delta, Partition::new(vec![2, 1]).unwrap());
        assert_eq!(b.components[0].twist, -1);
        assert_eq!(b.to_string(), "Q[2,1]*O(-1)");
        assert_eq!(BottBundle::parse("3*O(2) + Q").unwrap().to_string(), "3*O(2)+Q[1]");
        assert_eq!(BottBundle::parse("O").unwrap(), BottBundle::line(0));
        assert!(BottBundle::parse("O(x)").is_err());
        assert!(BottBundle::parse("Q[1,2]").is_err());
        assert!(BottBundle::parse("P(1)").is_err());
        assert!(BottBundle::parse("0").unwrap().components.is_empty());
    }

    #[test]
    fn pairing_single_entry_and_zero() {
        let beta = BettiTable::from_ints(2, 3, &[(2, &[1], 1)]).unwrap();
        let g = bott_cohomology(2, 3, &BottBundle::parse("O(1)+O(-1)").unwrap(), &[s(&[1, 0])]).unwrap();
        let (phi, grid) = pair(&beta, &g).unwrap();
        assert_eq!(phi.get(2, &s(&[1, 0])), int(3));
        assert_eq!(phi.get(1, &s(&[1, 0])), int(1));
        assert_eq!(grid.diagonal(1, &s(&[1, 0])), int(1));
        let zero = bott_cohomology(2, 3, &BottBundle::default(), &[s(&[1, 0])]).unwrap();
        assert!(pair(&beta, &zero).unwrap().0.is_empty());
        let missing = CohomologyTable::new(2, 3);
        assert!(matches!(pair(&beta, &missing), Err(PairingError::MissingRow(_))));
    }
}
