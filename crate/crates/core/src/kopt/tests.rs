use super::*;
use crate::generate::{random_graph, random_tour, rng};
use crate::model::{OrderedPointSet, Point};
use proptest::prelude::*;
use rand::Rng;
use std::collections::BTreeSet;

fn sig(v: &[usize]) -> Signature {
    Signature::new(v.to_vec()).unwrap()
}

/// Traces the cycles of an explicit graph: a tour on `3k` vertices with
/// edges `3j, 3j+1` removed and the inserted edges of `π` added.
fn one_cycle_by_graph(k: usize, pi: &Signature) -> bool {
    let n = 3 * k;
    let mut adj: Vec<Vec<usize>> = vec![vec![]; n];
    let removed: BTreeSet<usize> = (0..k).map(|j| 3 * j).collect();
    for i in 0..n {
        if !removed.contains(&i) {
            let (u, v) = (i, (i + 1) % n);
            adj[u].push(v);
            adj[v].push(u);
        }
    }
    let vert = |a: usize| 3 * (a / 2) + a % 2;
    for a in 0..2 * k {
        let b = pi.images()[a] - 1;
        if a < b {
            adj[vert(a)].push(vert(b));
            adj[vert(b)].push(vert(a));
        }
    }
    if adj.iter().any(|l| l.len() != 2) {
        return false;
    }
    let (mut prev, mut cur, mut len) = (0, adj[0][0], 1);
    while cur != 0 {
        let next = if adj[cur][0] != prev { adj[cur][0] } else { adj[cur][1] };
        (prev, cur) = (cur, next);
        len += 1;
    }
    len == n
}

/// All fixed-point-free involutions via permutations, in lexicographic order.
fn involutions(k: usize) -> Vec<Signature> {
    let m = 2 * k;
    let mut out = vec![];
    let mut perm: Vec<usize> = (1..=m).collect();
    loop {
        if (0..m).all(|j| perm[j] != j + 1 && perm[perm[j] - 1] == j + 1) {
            out.push(Signature { pi: perm.clone() });
        }
        // next_permutation
        let Some(i) = (0..m - 1).rev().find(|&i| perm[i] < perm[i + 1]) else { break };
        let j = (i + 1..m).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    out
}

fn edge_set(order: &[usize]) -> BTreeSet<(usize, usize)> {
    let n = order.len();
    (0..n)
        .map(|i| {
            let (a, b) = (order[i], order[(i + 1) % n]);
            (a.min(b), a.max(b))
        })
        .collect()
}

/// Best strictly improving Δ over all Hamiltonian cycles sharing at least
/// `n - k` edges with `tour`.
fn oracle_best(g: &WeightedGraph, tour: &Tour, k: usize) -> Option<i64> {
    let n = g.n();
    let base = edge_set(tour.order());
    let c0 = tour.cost(g);
    let mut rest: Vec<usize> = (1..n).collect();
    let mut best = None;
    loop {
        let mut order = vec![0];
        order.extend(&rest);
        let e = edge_set(&order);
        if e.len() == n && base.difference(&e).count() <= k {
            let d = Tour::new(order).unwrap().cost(g) - c0;
            if d < 0 && best.is_none_or(|b| d < b) {
                best = Some(d);
            }
        }
        let m = rest.len();
        let Some(i) = (0..m.saturating_sub(1)).rev().find(|&i| rest[i] < rest[i + 1]) else { break };
        let j = (i + 1..m).rev().find(|&j| rest[j] > rest[i]).unwrap();
        rest.swap(i, j);
        rest[i + 1..].reverse();
    }
    best
}

#[test]
fn signature_validation() {
    assert!(Signature::new(vec![2, 1, 4]).is_err());
    assert!(Signature::new(vec![1, 2]).is_err());
    assert!(Signature::new(vec![2, 3, 1, 4]).is_err());
    assert!(Signature::new(vec![2, 5, 4, 3]).is_err());
    assert_eq!(Signature::identity(2).images(), &[2, 1, 4, 3]);
}

#[test]
fn four_move_with_e1_e4_free() {
    let s = sig(&[4, 5, 7, 1, 2, 8, 3, 6]);
    assert!(signature_is_feasible(4, &s).unwrap());
    assert_eq!(noninterfering_subset(4, &s).unwrap(), vec![0, 3]);
    assert!(signature_is_feasible(3, &s).is_err());
}

#[test]
fn two_opt_signatures() {
    assert!(signature_is_feasible(2, &sig(&[3, 4, 1, 2])).unwrap());
    assert!(!signature_is_feasible(2, &sig(&[4, 3, 2, 1])).unwrap());
    assert!(signature_is_feasible(2, &sig(&[2, 1, 4, 3])).unwrap());
    let all = enumerate_feasible_signatures(2).unwrap();
    assert_eq!(all, vec![sig(&[2, 1, 4, 3]), sig(&[3, 4, 1, 2])]);
}

#[test]
fn enumeration_matches_graph_oracle() {
    for k in 1..=5 {
        let want: Vec<Signature> = involutions(k).into_iter().filter(|s| one_cycle_by_graph(k, s)).collect();
        let got = enumerate_feasible_signatures(k).unwrap();
        assert_eq!(got, want, "k = {k}");
    }
    assert_eq!(enumerate_feasible_signatures(3).unwrap().len(), 8);
    assert!(enumerate_feasible_signatures(0).is_err());
    assert!(enumerate_feasible_signatures(MAX_K + 1).is_err());
}

fn interferes(s: &Signature, set: &[usize]) -> bool {
    s.pairs().iter().any(|&(a, b)| a / 2 != b / 2 && set.contains(&(a / 2)) && set.contains(&(b / 2)))
}

#[test]
fn noninterfering_sets_for_every_signature() {
    for k in 2..=MAX_K {
        for s in enumerate_feasible_signatures(k).unwrap() {
            let e = noninterfering_subset(k, &s).unwrap();
            assert!(e.len() >= k.div_ceil(3), "{:?} -> {e:?}", s.images());
            assert!(e.windows(2).all(|w| w[0] < w[1]));
            if k <= 6 {
                assert!(!interferes(&s, &e), "{:?} -> {e:?}", s.images());
            }
        }
    }
}

#[test]
fn six_cycle_signatures_give_one_edge() {
    let mut seen = 0;
    for s in enumerate_feasible_signatures(3).unwrap() {
        // One 6-cycle: no edge is reinserted and the walk meets all three.
        let reinsert = (0..3).any(|j| s.partner(2 * j) == 2 * j + 1);
        let mut b = s.partner(1);
        let mut len = 1;
        while b / 2 != 0 {
            b = s.partner(b ^ 1);
            len += 1;
        }
        if !reinsert && len == 3 {
            seen += 1;
            assert_eq!(noninterfering_subset(3, &s).unwrap().len(), 1, "{:?}", s.images());
        }
    }
    assert!(seen > 0);
    assert!(noninterfering_subset(2, &sig(&[4, 3, 2, 1])).is_err());
}

#[test]
fn embed_dp_examples() {
    assert_eq!(embed_dp(&[vec![5i64, 3]]).unwrap(), (3, vec![1]));
    let c = vec![vec![1i64, 9, 9], vec![9, 2, 9], vec![9, 9, 3]];
    assert_eq!(embed_dp(&c).unwrap(), (6, vec![0, 1, 2]));
    assert!(embed_dp(&[vec![1i64], vec![2]]).is_err());
    assert!(embed_dp(&[vec![1i64, 2], vec![2]]).is_err());
    assert_eq!(embed_dp::<i64>(&[]).unwrap(), (0, vec![]));
}

#[test]
fn embed_dp_matches_all_embeddings() {
    let mut r = rng(7);
    for _ in 0..200 {
        let c: Vec<Vec<i64>> = (0..3).map(|_| (0..7).map(|_| r.gen_range(-20..=20)).collect()).collect();
        let mut best = i64::MAX;
        for a in 0..7 {
            for b in a + 1..7 {
                for d in b + 1..7 {
                    best = best.min(c[0][a] + c[1][b] + c[2][d]);
                }
            }
        }
        let (v, at) = embed_dp(&c).unwrap();
        assert_eq!(v, best);
        assert!(at.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(at.iter().enumerate().map(|(x, &y)| c[x][y]).sum::<i64>(), v);
        // Adding a column never hurts.
        let mut wider = c.clone();
        for row in &mut wider {
            row.push(r.gen_range(-20..=20));
        }
        assert!(embed_dp(&wider).unwrap().0 <= v);
    }
}

fn square() -> OrderedPointSet {
    OrderedPointSet::new(vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.0, 1.0), Point::new(1.0, 1.0)])
        .unwrap()
}

#[test]
fn crossing_square() {
    let p = square();
    let t = Tour::identity(4);
    let (mv, d) = best_kmove_bruteforce(&p, &t, 2).unwrap().unwrap();
    assert!((d - (2.0 - 2.0 * 2f64.sqrt())).abs() <= 1e-12);
    let u = apply_kmove(&t, &mv).unwrap();
    assert!((u.cost(&p) - 4.0).abs() <= 1e-12);
    assert!((u.cost(&p) - t.cost(&p) - d).abs() <= 1e-12);
    // Integer mode at the geometry scale.
    let g = WeightedGraph::from_points_scaled(&p, crate::model::GEOMETRY_SCALE).unwrap();
    let (_, di) = best_kmove_bruteforce(&g, &t, 2).unwrap().unwrap();
    let s = crate::model::GEOMETRY_SCALE;
    assert_eq!(di, (2.0 * s) as i64 - 2 * ((2f64.sqrt() * s).round() as i64));
}

#[test]
fn convex_tour_has_no_improving_two_move() {
    let pts: Vec<Point> = (0..9)
        .map(|i| {
            let a = i as f64 * std::f64::consts::TAU / 9.0;
            Point::new(100.0 * a.cos(), 100.0 * a.sin())
        })
        .collect();
    let p = OrderedPointSet::new(pts).unwrap();
    let g = WeightedGraph::from_points_scaled(&p, 1024.0).unwrap();
    let t = Tour::identity(9);
    assert!(best_kmove_bruteforce(&g, &t, 2).unwrap().is_none());
    assert!(best_kmove_fast(&g, &t, 3).unwrap().is_none() == best_kmove_bruteforce(&g, &t, 3).unwrap().is_none());
}

#[test]
fn identity_move_keeps_tour() {
    let t = random_tour(9, 3);
    for k in 1..=4 {
        let mv = KMove { positions: vec![0, 2, 5, 8][..k].to_vec(), signature: Signature::identity(k) };
        assert_eq!(apply_kmove(&t, &mv).unwrap(), t);
    }
    // Adjacent positions too.
    let mv = KMove { positions: vec![3, 4, 5], signature: Signature::identity(3) };
    assert_eq!(apply_kmove(&t, &mv).unwrap(), t);
}

#[test]
fn invalid_moves_are_rejected() {
    let t = Tour::identity(6);
    let bad = KMove { positions: vec![2, 1], signature: Signature::identity(2) };
    assert!(apply_kmove(&t, &bad).is_err());
    let bad = KMove { positions: vec![1, 6], signature: Signature::identity(2) };
    assert!(apply_kmove(&t, &bad).is_err());
    let bad = KMove { positions: vec![1, 3], signature: sig(&[4, 3, 2, 1]) };
    assert!(apply_kmove(&t, &bad).is_err());
    let bad = KMove { positions: vec![1, 3, 4], signature: Signature::identity(2) };
    assert!(apply_kmove(&t, &bad).is_err());
}

#[test]
fn applied_moves_change_cost_by_delta() {
    let mut r = rng(11);
    for case in 0..100 {
        let k = 2 + case % 4;
        let n = k + r.gen_range(0..8);
        let g = random_graph(n, case as u64, -50, 50).unwrap();
        let t = random_tour(n, case as u64 + 1000);
        let sigs = enumerate_feasible_signatures(k).unwrap();
        let s = sigs[r.gen_range(0..sigs.len())].clone();
        let mut pos: Vec<usize> = (0..n).collect();
        for i in 0..k {
            let j = r.gen_range(i..n);
            pos.swap(i, j);
        }
        pos.truncate(k);
        pos.sort_unstable();
        let mv = KMove { positions: pos, signature: s };
        let u = apply_kmove(&t, &mv).unwrap();
        assert_eq!(u.cost(&g) - t.cost(&g), mv.delta(&g, &t).unwrap(), "case {case}: {mv:?}");
    }
}

#[test]
fn brute_force_matches_tour_enumeration() {
    for seed in 0..60 {
        let n = 5 + seed as usize % 3;
        let k = 2 + seed as usize % 3;
        let g = random_graph(n, seed, -20, 40).unwrap();
        let t = random_tour(n, seed + 7);
        let want = oracle_best(&g, &t, k);
        let got = best_kmove_bruteforce(&g, &t, k).unwrap();
        assert_eq!(got.as_ref().map(|x| x.1), want, "seed {seed} n {n} k {k}");
        if let Some((mv, d)) = got {
            assert_eq!(apply_kmove(&t, &mv).unwrap().cost(&g) - t.cost(&g), d);
        }
    }
}

#[test]
fn fast_matches_brute_force_on_fixed_cases() {
    for seed in 0..30 {
        let k = 3 + seed as usize % 3;
        let n = k + seed as usize % 9;
        let g = random_graph(n, seed, -30, 60).unwrap();
        let t = random_tour(n, seed + 99);
        let a = best_kmove_bruteforce(&g, &t, k).unwrap();
        let b = best_kmove_fast(&g, &t, k).unwrap();
        assert_eq!(a.as_ref().map(|x| x.1), b.as_ref().map(|x| x.1), "seed {seed} n {n} k {k}");
        if let Some((mv, d)) = b {
            assert_eq!(mv.delta(&g, &t).unwrap(), d);
            assert_eq!(apply_kmove(&t, &mv).unwrap().cost(&g) - t.cost(&g), d);
        }
    }
}

#[test]
fn absent_when_tour_edges_are_free() {
    let n = 10;
    let t = random_tour(n, 5);
    let on_tour = edge_set(t.order());
    let g = WeightedGraph::from_fn(n, |i, j| if on_tour.contains(&(i, j)) { 0 } else { 5 }).unwrap();
    for k in 2..=4 {
        assert!(best_kmove_bruteforce(&g, &t, k).unwrap().is_none());
        assert!(best_kmove_fast(&g, &t, k).unwrap().is_none());
    }
}

#[test]
fn input_errors() {
    let g = random_graph(5, 1, 0, 9).unwrap();
    assert!(best_kmove_fast(&g, &Tour::identity(5), 6).is_err());
    assert!(best_kmove_bruteforce(&g, &Tour::identity(4), 2).is_err());
    assert!(best_kmove_fast(&g, &Tour::identity(5), 1).is_err());
}

#[test]
fn subdivision_shape() {
    let g = WeightedGraph::from_upper(3, &[4, -7, 2]).unwrap();
    let t = Tour::new(vec![2, 0, 1]).unwrap();
    let s = subdivide(&g, &t, 3).unwrap();
    assert_eq!(s.graph.n(), 6);
    assert_eq!(s.split_weight, -42);
    assert_eq!(s.back, vec![2, 2, 0, 0, 1, 1]);
    for i in 0..3 {
        assert_eq!(s.graph.weight(2 * i, 2 * i + 1), -42);
    }
    // a_0 b_1 is d(v_0, v_1) = d(2, 0).
    assert_eq!(s.graph.weight(0, 3), -7);
    assert_eq!(s.graph.weight(0, 2), -7);
    assert_eq!(s.graph.weight(1, 3), -7);
    let m = 6 * g.max_abs_weight();
    assert!(s.graph.upper_triangle().iter().all(|&w| -m <= w && w <= g.max_abs_weight()));
    let huge = WeightedGraph::from_upper(2, &[MAX_ABS_WEIGHT]).unwrap();
    assert!(matches!(subdivide(&huge, &Tour::identity(2), 3), Err(Error::Overflow(_))));
}

#[test]
fn lift_rejects_split_edges() {
    let g = random_graph(5, 2, -9, 9).unwrap();
    let s = subdivide(&g, &Tour::identity(5), 2).unwrap();
    let mv = KMove { positions: vec![1, 4], signature: sig(&[3, 4, 1, 2]) };
    assert!(lift_move(&mv, &s).is_err());
    // A reinserted split edge is dropped and replaced by padding.
    let mv = KMove { positions: vec![0, 3, 7], signature: sig(&[2, 1, 5, 6, 3, 4]) };
    let l = lift_move(&mv, &s).unwrap();
    assert_eq!(l, KMove { positions: vec![0, 1, 3], signature: sig(&[2, 1, 5, 6, 3, 4]) });
    assert_eq!(l.delta(&g, &Tour::identity(5)).unwrap(), mv.delta(&s.graph, &s.tour).unwrap());
    let id = KMove { positions: vec![1, 5], signature: Signature::identity(2) };
    let l = lift_move(&id, &s).unwrap();
    assert_eq!(l, KMove { positions: vec![0, 2], signature: Signature::identity(2) });
}

#[test]
fn subdivision_preserves_best_value() {
    for seed in 0..20 {
        let n = 4 + seed as usize % 5;
        let g = random_graph(n, seed, -25, 25).unwrap();
        let t = random_tour(n, seed + 3);
        let s = subdivide(&g, &t, 3).unwrap();
        let a = best_kmove_bruteforce(&g, &t, 3).unwrap();
        let b = best_kmove_bruteforce(&s.graph, &s.tour, 3).unwrap();
        assert_eq!(a.as_ref().map(|x| x.1), b.as_ref().map(|x| x.1), "seed {seed}");
        if let Some((mv, d)) = b {
            assert!(mv.net_removed().iter().all(|p| p % 2 == 1));
            let l = lift_move(&mv, &s).unwrap();
            assert_eq!(l.delta(&g, &t).unwrap(), d);
            assert_eq!(apply_kmove(&t, &l).unwrap().cost(&g) - t.cost(&g), d);
        }
    }
}

#[test]
fn repeated_kopt_reaches_local_optimum() {
    let g = random_graph(12, 4, 1, 100).unwrap();
    let t = random_tour(12, 4);
    let (u, deltas) = repeated_kopt(&g, &t, 3, KoptAlgo::Fast, None).unwrap();
    assert!(deltas.iter().all(|&d| d < 0));
    assert_eq!(u.cost(&g), t.cost(&g) + deltas.iter().sum::<i64>());
    assert!(best_kmove_bruteforce(&g, &u, 3).unwrap().is_none());
    let (_, capped) = repeated_kopt(&g, &t, 3, KoptAlgo::Brute, Some(1)).unwrap();
    assert_eq!(capped.len(), 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn fast_equals_brute(k in 2usize..=4, extra in 0usize..9, seed in 0u64..10_000) {
        let n = k + extra;
        let g = random_graph(n, seed, -40, 40).unwrap();
        let t = random_tour(n, seed ^ 0x5a5a);
        let a = best_kmove_bruteforce(&g, &t, k).unwrap().map(|x| x.1);
        let b = best_kmove_fast(&g, &t, k).unwrap();
        prop_assert_eq!(a, b.as_ref().map(|x| x.1));
        if let Some((mv, d)) = b {
            prop_assert_eq!(apply_kmove(&t, &mv).unwrap().cost(&g) - t.cost(&g), d);
        }
    }

    #[test]
    fn random_signatures_have_noninterfering_sets(k in 2usize..=6, pick in 0usize..100_000) {
        let all = enumerate_feasible_signatures(k).unwrap();
        let s = &all[pick % all.len()];
        let e = noninterfering_subset(k, s).unwrap();
        prop_assert!(!interferes(s, &e));
        prop_assert!(e.len() >= k.div_ceil(3));
    }
}
