//! Deterministic instance generators.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{OrderedPointSet, Point, Tour, WeightedGraph, MAX_ABS_WEIGHT};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `n` points uniform in the unit square, in generation order.
pub fn random_points(n: usize, seed: u64) -> OrderedPointSet {
    let mut r = rng(seed);
    let pts = (0..n).map(|_| Point::new(r.gen::<f64>(), r.gen::<f64>())).collect();
    // Coincident draws have probability ~2^-100; treat as a bug.
    OrderedPointSet::new(pts).expect("random points are distinct")
}

/// `n` points uniform in the unit square, sorted by x.
pub fn random_points_sorted(n: usize, seed: u64) -> OrderedPointSet {
    let p = random_points(n, seed);
    OrderedPointSet::sorted_by_x(p.points().to_vec()).expect("random points are distinct")
}

/// Complete graph with weights drawn uniformly from `lo..=hi`.
pub fn random_graph(n: usize, seed: u64, lo: i64, hi: i64) -> Result<WeightedGraph> {
    if lo > hi || lo.abs() > MAX_ABS_WEIGHT || hi.abs() > MAX_ABS_WEIGHT {
        return Err(Error::InvalidArgument(format!("bad weight range [{lo}, {hi}]")));
    }
    let mut r = rng(seed);
    WeightedGraph::from_fn(n, |_, _| r.gen_range(lo..=hi))
}

pub fn random_tour(n: usize, seed: u64) -> Tour {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng(seed));
    Tour::new(order).expect("shuffle is a permutation")
}

/// Points for the set-disjointness lower bound: `p_i = (0, u_i)`,
/// `(0, B)`, `(B, B)`, `(B, v_i)` with `B = max(U ∪ V) + 1`. A pyramidal
/// tour with longest edge at most `B` exists iff `U` and `V` intersect.
///
/// The perturbed variant shifts the left points right by `iΔ` and the right
/// points left by at most `(n+1)Δ`, `Δ = 1 / (4B(n+1))`, so no two points
/// share an x-coordinate while every cross edge between distinct heights
/// stays longer than `B`.
pub fn disjointness_points(u: &[i64], v: &[i64], perturbed: bool) -> Result<(OrderedPointSet, f64)> {
    if u.is_empty() || u.len() != v.len() {
        return Err(Error::InvalidArgument("U and V must be non-empty and of equal size".into()));
    }
    if let Some(x) = u.iter().chain(v).find(|&&x| x <= 0) {
        return Err(Error::InvalidArgument(format!("non-positive element {x}")));
    }
    for (name, s) in [("U", u), ("V", v)] {
        let mut c = s.to_vec();
        c.sort_unstable();
        if c.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidArgument(format!("{name} has repeated elements")));
        }
    }
    let n = u.len();
    let m = *u.iter().chain(v).max().unwrap();
    let b = (m + 1) as f64;
    let delta = if perturbed { 1.0 / (4.0 * b * (n as f64 + 1.0)) } else { 0.0 };
    let mut pts = Vec::with_capacity(2 * n + 2);
    // 1-based index i: left side i <= n+1, right side beyond.
    for (k, &ui) in u.iter().enumerate() {
        pts.push(Point::new((k + 1) as f64 * delta, ui as f64));
    }
    pts.push(Point::new((n + 1) as f64 * delta, b));
    pts.push(Point::new(b - delta, b));
    for (k, &vi) in v.iter().enumerate() {
        pts.push(Point::new(b - (k + 2) as f64 * delta, vi as f64));
    }
    Ok((OrderedPointSet::new(pts)?, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Metric;

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(random_points(50, 7), random_points(50, 7));
        assert_ne!(random_points(50, 7), random_points(50, 8));
        assert_eq!(random_graph(9, 3, -5, 5).unwrap(), random_graph(9, 3, -5, 5).unwrap());
        assert_eq!(random_tour(30, 1), random_tour(30, 1));
    }

    #[test]
    fn disjointness_shape() {
        let (p, b) = disjointness_points(&[3, 1, 4], &[2, 7, 5], false).unwrap();
        assert_eq!(p.len(), 8);
        assert_eq!(b, 8.0);
        let mut xs: Vec<f64> = p.points().iter().map(|q| q.x).collect();
        xs.dedup();
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        assert_eq!(xs, vec![0.0, 8.0]);
    }

    #[test]
    fn perturbed_cross_edges_exceed_bound() {
        let u = [5, 1, 9, 2];
        let v = [3, 9, 6, 8];
        let (p, b) = disjointness_points(&u, &v, true).unwrap();
        let n = u.len();
        for i in 0..=n {
            for j in n + 1..2 * n + 2 {
                let d = p.dist(i, j);
                if p.point(i).y == p.point(j).y {
                    assert!(d <= b, "matching heights must stay within B");
                } else {
                    assert!(d > b, "cross edge {i}-{j} of length {d} within B = {b}");
                }
            }
        }
    }

    #[test]
    fn disjointness_rejects_bad_sets() {
        assert!(disjointness_points(&[0, 1], &[2, 3], false).is_err());
        assert!(disjointness_points(&[1, 1], &[2, 3], false).is_err());
        assert!(disjointness_points(&[1], &[2, 3], false).is_err());
    }
}
