//! Acceptance run: one line per criterion, exit status 1 if any fails.
//!
//! Every comparison is exact. Runs without the libtest harness so the
//! verdict lines are always printed.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use grassbs::graph::{self, BettiGraph, Membership, Parity, PureTableSummand};
use grassbs::herzog_kuhl::{self, pure};
use grassbs::homology_matcher::{
    self, CellMap, DoubleComplex, E1Vertex, ExactComplex, LabeledPoset,
};
use grassbs::linalg::Matrix;
use grassbs::pairing::{self, BottBundle};
use grassbs::rational::int;
use grassbs::tables::{BettiTable, RankBettiTable, SchurVector};
use grassbs::young;
use grassbs::{IntSeq, Partition, Rational};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn criterion_pairing_example() -> Outcome {
    let start = Instant::now();
    let (phi, _) = pairing::pair(&pairing_beta(), &pairing_gamma()).map_err(|e| e.to_string())?;
    ensure!(phi == pairing_phi(), "paired table differs:\n{}", phi.pretty());
    let report = graph::derived_cone_membership(&phi).map_err(|e| e.to_string())?;
    let s = |p: &[usize]| label(p, 2);
    let want = vec![
        PureTableSummand { i: -1, lambda: s(&[1]), mu: s(&[2]), coefficient: int(3) },
        PureTableSummand { i: -1, lambda: s(&[1]), mu: s(&[2, 2]), coefficient: int(1) },
        PureTableSummand { i: 0, lambda: s(&[1]), mu: s(&[1, 1]), coefficient: int(9) },
        PureTableSummand { i: 0, lambda: s(&[1]), mu: s(&[3, 1]), coefficient: int(3) },
    ];
    ensure!(report.decomposition() == Some(want.as_slice()), "decomposition {:?}", report.to_json());
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!("4 summands in {elapsed:?}"))
}

fn criterion_hk_golden_set() -> Outcome {
    let labels: Vec<IntSeq> = young::partitions_up_to(3, 2).iter().map(|p| p.padded(2).unwrap()).collect();
    let mut perturbations = 0;
    for (t, table) in extremal_tables().iter().enumerate() {
        let r = herzog_kuhl::hk_check(table).map_err(|e| e.to_string())?;
        ensure!(r.iter().all(Zero::is_zero), "table {t} residuals {:?}", r);
        for i in 0..=2 {
            for l in &labels {
                let mut bumped = table.clone();
                bumped.add(i, l.clone(), int(1)).unwrap();
                let r = herzog_kuhl::hk_check(&bumped).map_err(|e| e.to_string())?;
                ensure!(r.iter().any(|x| !x.is_zero()), "table {t}: +1 at ({i}, {l}) undetected");
                perturbations += 1;
            }
        }
    }
    Ok(format!("6 tables, {perturbations} perturbations detected"))
}

fn criterion_coefficients() -> Outcome {
    let mut compared = 0;
    for k in 1..=4 {
        for lambda in young::partitions_up_to(8, 8) {
            for mu in young::subpartitions(&lambda) {
                let content = herzog_kuhl::stanley_b_content(&lambda, &mu, k);
                match herzog_kuhl::stanley_b_dimension_form(&lambda, &mu, k) {
                    Some(d) => {
                        ensure!(d == content, "b[{lambda},{mu}] k={k}: {} vs {}", render(&d), render(&content));
                        compared += 1;
                    }
                    None => ensure!(mu.length() > k, "dimension form undefined for {lambda}, {mu}, k={k}"),
                }
            }
        }
    }
    for k in 1..=6 {
        let shapes: Vec<Partition> = young::partitions_up_to(6, k);
        for lambda in &shapes {
            for nu in &shapes {
                let sum = young::subpartitions(lambda)
                    .iter()
                    .filter(|mu| mu.length() <= k)
                    .fold(Rational::zero(), |acc, mu| {
                        acc + herzog_kuhl::stanley_b(lambda, mu, k) * herzog_kuhl::stanley_b(mu, nu, k)
                    });
                let want = if lambda == nu { int(1) } else { int(0) };
                ensure!(sum == want, "b² at ({lambda}, {nu}), k={k} is {}", render(&sum));
            }
        }
    }
    let mut substitutions = 0;
    for k in 1..=3 {
        for lambda in young::partitions_up_to(5, k) {
            let fast = herzog_kuhl::substitute_one_minus_t(&SchurVector::single(lambda.clone(), int(1)), k)
                .map_err(|e| e.to_string())?;
            let poly = herzog_kuhl::schur_polynomial(&lambda, k).substitute_one_minus();
            let slow = herzog_kuhl::schur_expand_oracle(&poly).map_err(|e| e.to_string())?;
            ensure!(fast == slow, "s_{lambda}(1-t), k={k}: {fast} vs {slow}");
            substitutions += 1;
        }
    }
    Ok(format!("{compared} coefficient pairs, involution k≤6, {substitutions} substitutions"))
}

fn criterion_tableau_oracles() -> Outcome {
    let mut shapes = 0;
    for lambda in young::partitions_up_to(7, 7) {
        let hook = young::syt_count(&lambda);
        let brute = brute_skew_syt(lambda.parts(), &[]);
        ensure!(hook == brute, "f^{lambda}: {hook} vs {brute}");
        for mu in young::subpartitions(&lambda) {
            let aitken = young::skew_syt_count(&lambda, &mu).map_err(|e| e.to_string())?;
            let brute = brute_skew_syt(lambda.parts(), mu.parts());
            ensure!(aitken == brute, "f^{lambda}/{mu}: {aitken} vs {brute}");
            shapes += 1;
            if lambda.size() <= 6 {
                let oracle = herzog_kuhl::split_probability_oracle(&lambda, &mu, 6).map_err(|e| e.to_string())?;
                let ratio = herzog_kuhl::split_ratio(&lambda, &mu);
                ensure!(oracle == ratio, "split ratio {lambda}/{mu}: {} vs {}", render(&oracle), render(&ratio));
            }
        }
    }
    Ok(format!("{shapes} skew shapes"))
}

/// Tables over `k = 2` with labels of size at most 4 and at most 20 vertices.
fn random_rank_table(rng: &mut ChaCha8Rng) -> RankBettiTable {
    let labels: Vec<IntSeq> = young::partitions_up_to(4, 2).iter().map(|p| p.padded(2).unwrap()).collect();
    let mut t = RankBettiTable::new(2, 2);
    let mut vertices = 0;
    match rng.gen_range(0..3) {
        // Sums of two-entry pure tables, which always match.
        0 | 1 => {
            let perturb = rng.gen_bool(0.5);
            for _ in 0..rng.gen_range(1..=8) {
                let i = rng.gen_range(-1..=1);
                let a = &labels[rng.gen_range(0..labels.len())];
                let above: Vec<&IntSeq> = labels.iter().filter(|b| a.strictly_contained_in(b).unwrap()).collect();
                if above.is_empty() || vertices + 2 > 20 {
                    continue;
                }
                let b = above[rng.gen_range(0..above.len())];
                t.add(i, a.clone(), int(1)).unwrap();
                t.add(i + 1, b.clone(), int(1)).unwrap();
                vertices += 2;
            }
            if perturb && vertices < 20 {
                let l = &labels[rng.gen_range(0..labels.len())];
                t.add(rng.gen_range(-1..=2), l.clone(), int(1)).unwrap();
            }
        }
        _ => {
            for _ in 0..rng.gen_range(1..=6) {
                let v = rng.gen_range(1..=4);
                if vertices + v > 20 {
                    break;
                }
                let l = &labels[rng.gen_range(0..labels.len())];
                t.add(rng.gen_range(-1..=2), l.clone(), int(v as i64)).unwrap();
                vertices += v;
            }
        }
    }
    t
}

fn resum(k: usize, terms: &[PureTableSummand]) -> RankBettiTable {
    let mut t = RankBettiTable::new(k, k);
    for s in terms {
        t.add(s.i, s.lambda.clone(), s.coefficient.clone()).unwrap();
        t.add(s.i + 1, s.mu.clone(), s.coefficient.clone()).unwrap();
    }
    t
}

fn check_random_table(t: &RankBettiTable) -> Result<bool, String> {
    let g = expand(t);
    let matched = kuhn_matching_size(&g.adj, g.odd.len());
    let perfect = g.even.len() == g.odd.len() && matched == g.even.len();

    let rank_ok = graph::rank_condition(t).is_zero();
    let bg = BettiGraph::build(t).map_err(|e| e.to_string())?;
    let verts = bg.vertices();
    let mut violated = false;
    for side in [Parity::Even, Parity::Odd] {
        if let Some((s, n)) = bg.hall_violator(side) {
            ensure!(n.len() < s.len(), "claimed violator is not one");
            let nbrs: BTreeSet<usize> = s
                .iter()
                .flat_map(|&a| {
                    (0..verts.len()).filter(move |&b| graph::adjacent(verts[a].i, &verts[a].label, verts[b].i, &verts[b].label))
                })
                .collect();
            ensure!(nbrs.len() < s.len(), "violator has {} neighbours for {} vertices", nbrs.len(), s.len());
            violated = true;
        }
    }
    if g.even.len() <= 16 && g.odd.len() <= 16 {
        let brute = brute_hall_violated(&g.adj) || brute_hall_violated(&transpose(&g.adj, g.odd.len()));
        ensure!(brute == violated, "Hall search disagrees with brute force");
    }
    ensure!(perfect == (rank_ok && !violated), "matching {perfect} but rank {rank_ok}, violator {violated}");
    ensure!(bg.max_matching().perfect == perfect, "Hopcroft-Karp disagrees with augmenting paths");

    let report = graph::derived_cone_membership(t).map_err(|e| e.to_string())?;
    ensure!(report.is_member() == perfect, "membership {} but matching {perfect}", report.is_member());
    match &report.membership {
        Membership::Member(terms) => {
            ensure!(terms.iter().all(|s| s.coefficient > int(0)), "nonpositive coefficient");
            ensure!(&resum(2, terms) == t, "decomposition does not re-sum");
        }
        Membership::NotMember(c) => {
            let (lhs, rhs) = c.evaluate(t);
            ensure!(lhs < rhs && lhs == c.lhs && rhs == c.rhs, "certificate does not fail its inequality");
            ensure!(c.sets_are_convex(t), "certificate sets are not convex");
            // Recompute both sides from scratch.
            let other = |i: i64| Parity::of(i) != c.side;
            let mut gamma = Rational::zero();
            for (i, l, v) in t.entries() {
                let touches = c.sets.iter().any(|(j, s)| {
                    (j - i).abs() == 1 && s.iter().any(|m| graph::adjacent(*j, m, i, l))
                });
                if other(i) && touches {
                    gamma += v;
                }
            }
            let s_sum = c
                .sets
                .iter()
                .flat_map(|(i, ls)| ls.iter().map(move |l| t.get(*i, l)))
                .fold(Rational::zero(), |a, b| a + b);
            ensure!(gamma < s_sum, "independent sums {} ≥ {}", render(&gamma), render(&s_sum));
        }
    }
    Ok(perfect)
}

fn criterion_derived_cone() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut yes, mut no) = (0, 0);
    for n in 0..500 {
        let t = random_rank_table(&mut rng);
        match check_random_table(&t) {
            Ok(true) => yes += 1,
            Ok(false) => no += 1,
            Err(e) => return Err(format!("table {n}: {e}\n{}", t.pretty())),
        }
    }
    ensure!(yes > 0 && no > 0, "degenerate sample: {yes} matchable, {no} not");
    Ok(format!("{yes} matchable, {no} obstructed"))
}

fn criterion_bott() -> Outcome {
    let e = BottBundle::parse("O(1)+O(-1)").map_err(|e| e.to_string())?;
    let g = pairing::bott_cohomology(2, 3, &e, &pairing_labels()).map_err(|e| e.to_string())?;
    ensure!(g == pairing_gamma(), "Gr(2,3) table differs:\n{}", g.pretty());
    for j in -4i64..=4 {
        let g = pairing::bott_cohomology(1, 2, &BottBundle::line(j), &[IntSeq::zero(1)]).map_err(|e| e.to_string())?;
        let row: BTreeMap<i64, Rational> = g.row(&IntSeq::zero(1)).unwrap().into_iter().collect();
        let mut want = BTreeMap::new();
        if j >= 0 {
            want.insert(0, int(j + 1));
        }
        if j <= -2 {
            want.insert(1, int(-j - 1));
        }
        ensure!(row == want, "H(P1, O({j})) = {row:?}");
    }
    Ok("Gr(2,3) table and P1 for -4..4".into())
}

fn criterion_non_realizable() -> Outcome {
    let beta = betti(2, 3, &[(0, &[], 1), (0, &[2], 3), (1, &[2, 1], 8), (2, &[3, 2], 3)]);
    let r = herzog_kuhl::hk_check(&beta).map_err(|e| e.to_string())?;
    ensure!(r.iter().all(Zero::is_zero), "input fails HK: {r:?}");
    let labels: Vec<IntSeq> = beta.labels().into_iter().collect();
    let gamma = pairing::bott_cohomology(2, 3, &BottBundle::line(0), &labels).map_err(|e| e.to_string())?;
    let (phi, _) = pairing::pair(&beta, &gamma).map_err(|e| e.to_string())?;
    let want = rank(2, &[(0, &[], 1), (-1, &[2], 9), (0, &[2, 1], 8)]);
    ensure!(phi == want, "paired table differs:\n{}", phi.pretty());
    let report = graph::derived_cone_membership(&phi).map_err(|e| e.to_string())?;
    let cert = report.certificate().ok_or("paired table has a matching")?;
    let (lhs, rhs) = cert.evaluate(&phi);
    ensure!(lhs < rhs, "certificate holds: {} ≥ {}", render(&lhs), render(&rhs));
    let obstruction = pairing::realizability_obstruction(&beta, &[BottBundle::line(0)]).map_err(|e| e.to_string())?;
    ensure!(obstruction.is_some(), "no obstruction reported");
    Ok(format!("certificate {} < {}", render(&lhs), render(&rhs)))
}

fn criterion_pairing_cone() -> Outcome {
    let mut probes: Vec<BottBundle> = (-2..=2).map(BottBundle::line).collect();
    // Q has rank n − k = 1, so only one-row δ give nonzero Schur functors.
    for delta in young::partitions_up_to(2, 1) {
        probes.push(BottBundle::quotient_power(delta, 0));
    }
    let mut pairs = 0;
    for (t, beta) in extremal_tables().iter().enumerate() {
        let labels: Vec<IntSeq> = beta.labels().into_iter().collect();
        for probe in &probes {
            let gamma = pairing::bott_cohomology(2, 3, probe, &labels).map_err(|e| e.to_string())?;
            let (phi, _) = pairing::pair(beta, &gamma).map_err(|e| e.to_string())?;
            let report = graph::derived_cone_membership(&phi).map_err(|e| e.to_string())?;
            ensure!(report.is_member(), "table {t} with {probe}: {}", report.to_json());
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairings in the cone"))
}

fn cautionary() -> DoubleComplex {
    let parts = [part(&[1, 1]), part(&[2, 1]), part(&[1]), part(&[3, 1]), part(&[2]), part(&[3])];
    let poset = LabeledPoset::from_partitions(&parts);
    let cells = BTreeMap::from([
        ((0, 0), vec![0]),
        ((1, 0), vec![1]),
        ((1, 1), vec![1, 2]),
        ((2, 1), vec![3, 4]),
        ((2, 2), vec![4]),
        ((3, 2), vec![5]),
    ]);
    let m = |p, q, rows: &[&[i64]]| CellMap { p, q, matrix: Matrix::from_i64(rows) };
    let dv = vec![m(1, 0, &[&[1], &[0]]), m(2, 1, &[&[0, 1]])];
    let dh = vec![m(1, 0, &[&[1]]), m(2, 1, &[&[1, 0], &[-1, 1]]), m(3, 2, &[&[1]])];
    DoubleComplex::new(poset, cells, dv, dh).unwrap()
}

/// Whether the first-page differential `d₁ = [d_h]` is nonzero from `u` to `w`.
fn d1_nonzero(dc: &DoubleComplex, u: &E1Vertex, w: &E1Vertex) -> bool {
    let splits = homology_matcher::splitting(dc).unwrap();
    let block = |p: i64, q: i64, l: usize| -> Vec<usize> {
        dc.labels(p, q).iter().enumerate().filter(|(_, &x)| x == l).map(|(i, _)| i).collect()
    };
    let mut cell = vec![Rational::zero(); dc.dim(u.p, u.q)];
    for (&i, x) in block(u.p, u.q, u.label).iter().zip(&splits[&(u.p, u.q, u.label)].h[u.copy]) {
        cell[i] = x.clone();
    }
    let image = dc.dh(u.p, u.q).apply(&cell);
    let target: Vec<Rational> = block(w.p, w.q, w.label).iter().map(|&i| image[i].clone()).collect();
    let s = &splits[&(w.p, w.q, w.label)];
    let basis: Vec<Vec<Rational>> = s.b.iter().chain(&s.h).chain(&s.b_star).cloned().collect();
    let coords = Matrix::from_columns(&basis, target.len()).solve(&target).unwrap();
    !coords[s.b.len() + w.copy].is_zero()
}

fn criterion_matcher() -> Outcome {
    let dc = cautionary();
    let name = |v: &E1Vertex| dc.poset().name(v.label).to_string();
    let matching: BTreeSet<(String, String)> = homology_matcher::e1_matching(&dc)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|e| (name(&e.from), name(&e.to)))
        .collect();
    let want: BTreeSet<(String, String)> = [("(3)", "(1)"), ("(3,1)", "(1,1)")]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    ensure!(matching == want, "matching {matching:?}");

    // The spectral sequence kills (3,1) against (1) on the first page and
    // (3) against (1,1) on the third; keep the pairs the E₁ graph allows.
    let g = homology_matcher::e1_graph(&dc).map_err(|e| e.to_string())?;
    let find = |l: &str| g.vertices.iter().position(|v| name(v) == l).unwrap();
    let mut naive: Vec<(usize, usize)> = g
        .edges
        .iter()
        .filter(|&&(a, b)| g.vertices[a].p - g.vertices[b].p == 1 && d1_nonzero(&dc, &g.vertices[a], &g.vertices[b]))
        .copied()
        .collect();
    ensure!(naive == vec![(find("(3,1)"), find("(1)"))], "first-page differential {naive:?}");
    let d3 = (find("(3)"), find("(1,1)"));
    ensure!(!g.edges.contains(&d3), "third-page pair is an E₁ edge");
    naive.retain(|e| g.edges.contains(e));
    let sources: Vec<usize> = naive.iter().map(|e| e.0).collect::<BTreeSet<_>>().into_iter().collect();
    let adj: Vec<Vec<usize>> = [find("(3,1)"), find("(3)")]
        .iter()
        .map(|s| naive.iter().filter(|e| e.0 == *s).map(|e| e.1).collect())
        .collect();
    let size = kuhn_matching_size(&adj, g.vertices.len());
    ensure!(size < 2, "naive subgraph matches {size} of 2 sources {sources:?}");

    let mut rng = ChaCha8Rng::seed_from_u64(0xe1);
    for n in 0..200 {
        let (dims, maps) = random_exact_complex(&mut rng, 12);
        let c = ExactComplex::new(dims.clone(), maps.clone());
        let edges = homology_matcher::exact_sequence_matching(&c).map_err(|e| format!("complex {n}: {e}"))?;
        let mut covered: BTreeSet<(usize, usize)> = BTreeSet::new();
        for e in &edges {
            ensure!(!maps[e.space][(e.lower, e.upper)].is_zero(), "complex {n}: zero coefficient matched");
            ensure!(covered.insert((e.space + 1, e.upper)), "complex {n}: vector used twice");
            ensure!(covered.insert((e.space, e.lower)), "complex {n}: vector used twice");
        }
        ensure!(covered.len() == dims.iter().sum::<usize>(), "complex {n}: matching not perfect");
    }
    Ok("cautionary matching, naive pairing unmatchable, 200 random complexes".into())
}

fn criterion_enumeration() -> Outcome {
    let found: Vec<BettiTable> = pure::enumerate_pure_tables(2, 3, 3)
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|t| t.table)
        .collect();
    let want = extremal_tables();
    ensure!(
        found.len() == want.len() && want.iter().all(|t| found.contains(t)),
        "enumerated {} tables, expected the six",
        found.len()
    );
    let mut checked = 0;
    for t in pure::enumerate_pure_tables(2, 3, 8).map_err(|e| e.to_string())? {
        if !t.is_simple() {
            continue;
        }
        let chain: Vec<Partition> = t.support.iter().map(|(_, l)| l.to_partition().unwrap()).collect();
        let class = pure::classify_border_strips(&chain[0], &chain[1], &chain[2]).map_err(|e| e.to_string())?;
        if class.simple_hypothesis {
            ensure!(class.bound_ok, "{} ⊂ {} ⊂ {} breaks the bound", chain[0], chain[1], chain[2]);
            checked += 1;
        }
    }
    ensure!(checked > 0, "no simple triple satisfies the hypothesis");
    Ok(format!("six tables; {checked} strip triples within the bound"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("pairing example end to end", criterion_pairing_example),
        ("HK golden set and perturbations", criterion_hk_golden_set),
        ("coefficient cross-checks", criterion_coefficients),
        ("tableau oracles", criterion_tableau_oracles),
        ("derived-cone equivalence", criterion_derived_cone),
        ("Bott calibration", criterion_bott),
        ("non-realizability certificate", criterion_non_realizable),
        ("pairing lands in the cone", criterion_pairing_cone),
        ("homology matcher", criterion_matcher),
        ("pure-table enumeration", criterion_enumeration),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (n, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({detail}; {secs:.2}s)", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", n + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 10 criteria passed");
}
