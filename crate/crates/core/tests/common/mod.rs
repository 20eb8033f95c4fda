//! Brute-force oracles and fixed inputs shared by the integration tests.
//!
//! Nothing here calls the closed-form counting code of the library: tableaux
//! are counted by peeling corners, dimensions by enumerating fillings and
//! matchings by simple augmenting paths.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use grassbs::linalg::Matrix;
use grassbs::rational::{self, int};
use grassbs::tables::{BettiTable, CohomologyTable, RankBettiTable};
use grassbs::{IntSeq, Partition, Rational};
use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::Rng;

pub fn part(p: &[usize]) -> Partition {
    Partition::new(p.to_vec()).unwrap()
}

pub fn seq(v: &[i64]) -> IntSeq {
    IntSeq::new(v.to_vec()).unwrap()
}

/// A partition as a length-`k` sequence.
pub fn label(p: &[usize], k: usize) -> IntSeq {
    part(p).padded(k).unwrap()
}

/// Standard fillings of `outer / inner`, counted by removing the largest
/// entry (always an outer corner) in every possible way.
pub fn brute_skew_syt(outer: &[usize], inner: &[usize]) -> BigUint {
    fn go(shape: &mut Vec<usize>, inner: &[usize], memo: &mut HashMap<Vec<usize>, BigUint>) -> BigUint {
        let inner_at = |r: usize| inner.get(r).copied().unwrap_or(0);
        if shape.iter().enumerate().all(|(r, &len)| len == inner_at(r)) {
            return BigUint::one();
        }
        if let Some(v) = memo.get(shape) {
            return v.clone();
        }
        let mut total = BigUint::zero();
        for r in 0..shape.len() {
            let len = shape[r];
            let below = shape.get(r + 1).copied().unwrap_or(0);
            if len > inner_at(r) && len > below {
                shape[r] -= 1;
                total += go(shape, inner, memo);
                shape[r] += 1;
            }
        }
        memo.insert(shape.clone(), total.clone());
        total
    }
    go(&mut outer.to_vec(), inner, &mut HashMap::new())
}

/// Semistandard fillings of `λ` with entries in `1..=k`, counted column by
/// column from the left.
pub fn brute_ssyt(lambda: &[usize], k: usize) -> BigUint {
    let conj: Vec<usize> = (0..lambda.first().copied().unwrap_or(0))
        .map(|c| lambda.iter().filter(|&&l| l > c).count())
        .collect();
    // A column is a strictly increasing tuple; rows weakly increase.
    fn columns(height: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(start: usize, height: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == height {
                out.push(cur.clone());
                return;
            }
            for v in start..=k {
                cur.push(v);
                rec(v + 1, height, k, cur, out);
                cur.pop();
            }
        }
        rec(1, height, k, &mut cur, &mut out);
        out
    }
    let mut counts: Vec<(Vec<usize>, BigUint)> = vec![(Vec::new(), BigUint::one())];
    for &h in &conj {
        let mut next: HashMap<Vec<usize>, BigUint> = HashMap::new();
        for col in columns(h, k) {
            let ways: BigUint = counts
                .iter()
                .filter(|(prev, _)| prev.is_empty() || col.iter().zip(prev).all(|(a, b)| a >= b))
                .map(|(_, c)| c.clone())
                .sum();
            if !ways.is_zero() {
                *next.entry(col).or_default() += ways;
            }
        }
        counts = next.into_iter().collect();
    }
    counts.into_iter().map(|(_, c)| c).sum()
}

/// Maximum bipartite matching by repeated depth-first augmentation.
pub fn kuhn_matching_size(adj: &[Vec<usize>], right: usize) -> usize {
    fn augment(u: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &v in &adj[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if owner[v].is_none() || augment(owner[v].unwrap(), adj, seen, owner) {
                owner[v] = Some(u);
                return true;
            }
        }
        false
    }
    let mut owner = vec![None; right];
    (0..adj.len())
        .filter(|&u| augment(u, adj, &mut vec![false; right], &mut owner))
        .count()
}

/// Whether some subset of the left side has fewer neighbours than elements,
/// by trying all subsets.
pub fn brute_hall_violated(adj: &[Vec<usize>]) -> bool {
    let n = adj.len();
    assert!(n <= 20, "too many subsets");
    (1u32..(1 << n)).any(|mask| {
        let nbrs: BTreeSet<usize> = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .flat_map(|i| adj[i].iter().copied())
            .collect();
        nbrs.len() < mask.count_ones() as usize
    })
}

/// Vertices of a rank table expanded by multiplicity, split by parity of
/// the column, and the containment edges between neighbouring columns.
pub struct ExpandedGraph {
    pub even: Vec<(i64, IntSeq)>,
    pub odd: Vec<(i64, IntSeq)>,
    /// Neighbours in `odd` of each even vertex.
    pub adj: Vec<Vec<usize>>,
}

pub fn expand(table: &RankBettiTable) -> ExpandedGraph {
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for (i, l, v) in table.entries() {
        let copies = v.to_integer().try_into().unwrap_or(0usize);
        let side = if i.rem_euclid(2) == 0 { &mut even } else { &mut odd };
        side.extend(std::iter::repeat((i, l.clone())).take(copies));
    }
    let strictly = |a: &IntSeq, b: &IntSeq| a != b && a.parts().iter().zip(b.parts()).all(|(x, y)| x <= y);
    let adj = even
        .iter()
        .map(|(i, l)| {
            odd.iter()
                .enumerate()
                .filter(|(_, (j, m))| (*j == i + 1 && strictly(l, m)) || (*j == i - 1 && strictly(m, l)))
                .map(|(x, _)| x)
                .collect()
        })
        .collect();
    ExpandedGraph { even, odd, adj }
}

pub fn transpose(adj: &[Vec<usize>], right: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); right];
    for (u, vs) in adj.iter().enumerate() {
        for &v in vs {
            out[v].push(u);
        }
    }
    out
}

/// Builds a table from `(i, partition, value)` triples.
pub fn betti(k: usize, n: usize, entries: &[(i64, &[usize], i64)]) -> BettiTable {
    let mut t = BettiTable::new(k, n);
    for (i, p, v) in entries {
        t.add(*i, label(p, k), int(*v)).unwrap();
    }
    t
}

pub fn rank(k: usize, entries: &[(i64, &[usize], i64)]) -> RankBettiTable {
    let mut t = RankBettiTable::new(k, k);
    for (i, p, v) in entries {
        t.add(*i, label(p, k), int(*v)).unwrap();
    }
    t
}

/// The six pure tables over `Gr(2, 3)` with labels of size at most 3.
pub fn extremal_tables() -> Vec<BettiTable> {
    vec![
        betti(2, 3, &[(0, &[], 3), (1, &[1], 3), (2, &[2], 1)]),
        betti(2, 3, &[(0, &[], 8), (1, &[1], 6), (2, &[3], 1)]),
        betti(2, 3, &[(0, &[], 1), (1, &[1, 1], 3), (2, &[2, 1], 1)]),
        betti(2, 3, &[(0, &[], 2), (1, &[2], 2), (2, &[3], 1)]),
        betti(2, 3, &[(0, &[1], 6), (1, &[2], 8), (2, &[3], 3)]),
        betti(2, 3, &[(0, &[1], 3), (1, &[2], 1), (1, &[1, 1], 9), (2, &[2, 1], 3)]),
    ]
}

/// The multiplicity table of the worked pairing example.
pub fn pairing_beta() -> BettiTable {
    betti(
        2,
        3,
        &[
            (0, &[1], 4),
            (1, &[2], 1),
            (1, &[1, 1], 9),
            (1, &[2, 1], 3),
            (2, &[2, 1], 3),
            (2, &[3, 1], 1),
            (2, &[2, 2], 1),
        ],
    )
}

pub fn pairing_labels() -> Vec<IntSeq> {
    [&[1][..], &[2], &[1, 1], &[2, 1], &[3, 1], &[2, 2]].iter().map(|p| label(p, 2)).collect()
}

/// The cohomology table of `O(1) ⊕ O(−1)` on `Gr(2, 3)` on the six labels
/// of the pairing example; the `(2,1)` row is empty.
pub fn pairing_gamma() -> CohomologyTable {
    let mut g = CohomologyTable::new(2, 3);
    for l in pairing_labels() {
        g.declare(l).unwrap();
    }
    for (q, p, v) in [(0, &[1][..], 3), (1, &[1], 1), (1, &[2], 3), (0, &[1, 1], 1), (1, &[3, 1], 3), (2, &[2, 2], 1)] {
        g.add(q, label(p, 2), int(v)).unwrap();
    }
    g
}

/// The rank table obtained by pairing the two tables above.
pub fn pairing_phi() -> RankBettiTable {
    rank(2, &[(-1, &[1], 4), (0, &[1], 12), (0, &[2], 3), (0, &[2, 2], 1), (1, &[1, 1], 9), (1, &[3, 1], 3)])
}

/// A random invertible matrix: a permuted product of random unit triangular
/// factors.
pub fn random_invertible(rng: &mut impl Rng, n: usize) -> Matrix {
    let mut lower = Matrix::identity(n);
    let mut upper = Matrix::identity(n);
    for r in 0..n {
        for c in 0..n {
            let v = int(rng.gen_range(-2..=2));
            if r > c {
                lower[(r, c)] = v;
            } else if r < c {
                upper[(r, c)] = v;
            }
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let mut p = Matrix::zeros(n, n);
    for (r, &c) in perm.iter().enumerate() {
        p[(r, c)] = int(1);
    }
    p.mul(&lower).mul(&upper)
}

/// A random exact complex `0 → V_m → … → V_0 → 0` of total dimension at most
/// `max_total`: a direct sum of copies of `0 → C → C → 0`, with each space
/// conjugated by a random change of basis. Returns `(dims, maps)` with
/// `maps[i] : V_{i+1} → V_i`.
pub fn random_exact_complex(rng: &mut impl Rng, max_total: usize) -> (Vec<usize>, Vec<Matrix>) {
    let spaces = rng.gen_range(2..=5usize);
    let pieces = rng.gen_range(0..=max_total / 2);
    // Each piece joins V_{j+1} to V_j.
    let mut dims = vec![0usize; spaces];
    let mut links = Vec::new();
    for _ in 0..pieces {
        let j = rng.gen_range(0..spaces - 1);
        links.push((j, dims[j + 1], dims[j]));
        dims[j + 1] += 1;
        dims[j] += 1;
    }
    let mut maps: Vec<Matrix> = (0..spaces - 1).map(|j| Matrix::zeros(dims[j], dims[j + 1])).collect();
    for (j, up, down) in links {
        maps[j][(down, up)] = int(1);
    }
    let changes: Vec<Matrix> = dims.iter().map(|&d| random_invertible(rng, d)).collect();
    let inverses: Vec<Matrix> = changes
        .iter()
        .map(|a| {
            let n = a.rows();
            let cols: Vec<Vec<Rational>> = (0..n)
                .map(|c| a.solve(&grassbs::linalg::unit_vector(n, c)).expect("invertible"))
                .collect();
            Matrix::from_columns(&cols, n)
        })
        .collect();
    let maps = maps
        .iter()
        .enumerate()
        .map(|(j, d)| changes[j].mul(d).mul(&inverses[j + 1]))
        .collect();
    (dims, maps)
}

pub fn render(q: &Rational) -> String {
    rational::render(q)
}
