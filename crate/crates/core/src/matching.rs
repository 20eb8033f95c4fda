//! Maximum bipartite matching (Hopcroft-Karp) and Hall violators.
//!
//! Left vertices are `0..left`, right vertices `0..right`, and `adj[u]` lists
//! the right neighbours of left vertex `u`. The result is deterministic for a
//! given adjacency list order.

use std::collections::VecDeque;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteMatching {
    pub size: usize,
    /// Partner of each left vertex.
    pub left_to_right: Vec<Option<usize>>,
    /// Partner of each right vertex.
    pub right_to_left: Vec<Option<usize>>,
}

impl BipartiteMatching {
    pub fn is_perfect(&self) -> bool {
        self.left_to_right.iter().all(Option::is_some) && self.right_to_left.iter().all(Option::is_some)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.left_to_right
            .iter()
            .enumerate()
            .filter_map(|(u, v)| v.map(|v| (u, v)))
    }
}

const INF: usize = usize::MAX;

pub fn hopcroft_karp(adj: &[Vec<usize>], right: usize) -> BipartiteMatching {
    let left = adj.len();
    let mut l2r: Vec<Option<usize>> = vec![None; left];
    let mut r2l: Vec<Option<usize>> = vec![None; right];
    let mut dist = vec![INF; left];

    loop {
        // Layered BFS from free left vertices.
        let mut queue = VecDeque::new();
        for u in 0..left {
            if l2r[u].is_none() {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = INF;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                match r2l[v] {
                    None => found = true,
                    Some(w) if dist[w] == INF => {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                    Some(_) => {}
                }
            }
        }
        if !found {
            break;
        }
        let mut it = vec![0usize; left];
        for u in 0..left {
            if l2r[u].is_none() {
                augment(u, adj, &mut dist, &mut it, &mut l2r, &mut r2l);
            }
        }
    }

    let size = l2r.iter().filter(|m| m.is_some()).count();
    BipartiteMatching {
        size,
        left_to_right: l2r,
        right_to_left: r2l,
    }
}

fn augment(
    u: usize,
    adj: &[Vec<usize>],
    dist: &mut [usize],
    it: &mut [usize],
    l2r: &mut [Option<usize>],
    r2l: &mut [Option<usize>],
) -> bool {
    // Iterative DFS along the BFS layers.
    let mut stack: Vec<usize> = vec![u];
    let mut path: Vec<(usize, usize)> = Vec::new();
    while let Some(&x) = stack.last() {
        if it[x] < adj[x].len() {
            let v = adj[x][it[x]];
            it[x] += 1;
            match r2l[v] {
                None => {
                    path.push((x, v));
                    for &(a, b) in &path {
                        l2r[a] = Some(b);
                        r2l[b] = Some(a);
                    }
                    return true;
                }
                Some(w) if dist[w] == dist[x].wrapping_add(1) => {
                    path.push((x, v));
                    stack.push(w);
                }
                Some(_) => {}
            }
        } else {
            dist[x] = INF;
            stack.pop();
            path.pop();
        }
    }
    false
}

/// Given a maximum matching, returns a left vertex set `S` with `|N(S)| < |S|`,
/// or `None` if every left vertex is matched. `S` is the set of left vertices
/// reachable from unmatched left vertices by alternating paths, and the
/// second component is `N(S)`, all of which are matched into `S`.
pub fn hall_violator(adj: &[Vec<usize>], right: usize, m: &BipartiteMatching) -> Option<(Vec<usize>, Vec<usize>)> {
    let left = adj.len();
    let mut seen_l = vec![false; left];
    let mut seen_r = vec![false; right];
    let mut queue: VecDeque<usize> = (0..left).filter(|&u| m.left_to_right[u].is_none()).collect();
    if queue.is_empty() {
        return None;
    }
    for &u in &queue {
        seen_l[u] = true;
    }
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if seen_r[v] {
                continue;
            }
            seen_r[v] = true;
            let w = m.right_to_left[v].expect("maximum matching leaves no augmenting path");
            if !seen_l[w] {
                seen_l[w] = true;
                queue.push_back(w);
            }
        }
    }
    let s: Vec<usize> = (0..left).filter(|&u| seen_l[u]).collect();
    let n: Vec<usize> = (0..right).filter(|&v| seen_r[v]).collect();
    debug_assert!(n.len() < s.len());
    Some((s, n))
}

/// Transposes an adjacency list so right vertices become left vertices.
pub fn transpose(adj: &[Vec<usize>], right: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new(); right];
    for (u, vs) in adj.iter().enumerate() {
        for &v in vs {
            out[v].push(u);
        }
    }
    out
}
