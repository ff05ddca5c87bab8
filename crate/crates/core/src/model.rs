//! Instances, tours and the distance abstraction shared by every algorithm.

use std::fmt::Debug;
use std::ops::{Add, Neg, Sub};

use crate::error::{Error, Result};

/// Absolute tolerance for geometric comparisons.
pub const DEFAULT_EPS: f64 = 1e-9;

/// Graph weights stay within this magnitude so that sums of a few dozen
/// of them, and the big-M constants built from them, fit in `i64`.
pub const MAX_ABS_WEIGHT: i64 = 1 << 55;

/// Scale applied when Euclidean lengths are rounded to integers.
pub const GEOMETRY_SCALE: f64 = (1u64 << 20) as f64;

pub trait Cost:
    Copy + PartialOrd + Debug + Send + Sync + 'static + Add<Output = Self> + Sub<Output = Self> + Neg<Output = Self>
{
    const ZERO: Self;
    /// Larger than any tour-edge sum that can occur; `INFINITY + x` must not overflow.
    const INFINITY: Self;
    fn to_f64(self) -> f64;
}

impl Cost for f64 {
    const ZERO: f64 = 0.0;
    const INFINITY: f64 = f64::INFINITY;
    fn to_f64(self) -> f64 {
        self
    }
}

impl Cost for i64 {
    const ZERO: i64 = 0;
    const INFINITY: i64 = i64::MAX / 4;
    fn to_f64(self) -> f64 {
        self as f64
    }
}

/// A symmetric distance function on `0..size()`.
pub trait Metric: Sync {
    type Cost: Cost;
    fn size(&self) -> usize;
    fn dist(&self, i: usize, j: usize) -> Self::Cost;
}

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    #[inline]
    pub fn dist(self, o: Point) -> f64 {
        self.dist2(o).sqrt()
    }

    #[inline]
    pub fn dist2(self, o: Point) -> f64 {
        let dx = self.x - o.x;
        let dy = self.y - o.y;
        dx * dx + dy * dy
    }
}

/// Points in a fixed order; pyramidal tours are defined relative to it.
#[derive(Clone, Debug, PartialEq)]
pub struct OrderedPointSet {
    points: Vec<Point>,
}

impl OrderedPointSet {
    /// Rejects non-finite coordinates and repeated points.
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if let Some(i) = points.iter().position(|p| !p.x.is_finite() || !p.y.is_finite()) {
            return Err(Error::InvalidInstance(format!("point {i} has a non-finite coordinate")));
        }
        let mut sorted: Vec<(usize, Point)> = points.iter().copied().enumerate().collect();
        sorted.sort_by(|a, b| a.1.x.total_cmp(&b.1.x).then(a.1.y.total_cmp(&b.1.y)));
        for w in sorted.windows(2) {
            if w[0].1 == w[1].1 {
                return Err(Error::InvalidInstance(format!(
                    "points {} and {} coincide",
                    w[0].0.min(w[1].0),
                    w[0].0.max(w[1].0)
                )));
            }
        }
        Ok(OrderedPointSet { points })
    }

    /// Orders the points by x, then y.
    pub fn sorted_by_x(mut points: Vec<Point>) -> Result<Self> {
        points.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
        Self::new(points)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    #[inline]
    pub fn point(&self, i: usize) -> Point {
        self.points[i]
    }

    /// Sorted, deduplicated multiset of pairwise distances.
    pub fn pairwise_distances(&self) -> Vec<f64> {
        let n = self.len();
        let mut d = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                d.push(self.points[i].dist(self.points[j]));
            }
        }
        d.sort_by(f64::total_cmp);
        d.dedup();
        d
    }
}

impl Metric for OrderedPointSet {
    type Cost = f64;

    fn size(&self) -> usize {
        self.points.len()
    }

    #[inline]
    fn dist(&self, i: usize, j: usize) -> f64 {
        self.points[i].dist(self.points[j])
    }
}

/// Complete graph with symmetric integer weights and a zero diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGraph {
    n: usize,
    w: Vec<i64>,
}

impl WeightedGraph {
    /// Builds from the upper triangle in row-major order: (0,1), (0,2), ..., (n-2,n-1).
    pub fn from_upper(n: usize, upper: &[i64]) -> Result<Self> {
        let expected = n * n.saturating_sub(1) / 2;
        if upper.len() != expected {
            return Err(Error::SizeMismatch { expected, got: upper.len() });
        }
        let mut g = WeightedGraph { n, w: vec![0; n * n] };
        let mut it = upper.iter();
        for i in 0..n {
            for j in i + 1..n {
                g.set(i, j, *it.next().unwrap())?;
            }
        }
        Ok(g)
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> i64) -> Result<Self> {
        let mut g = WeightedGraph { n, w: vec![0; n * n] };
        for i in 0..n {
            for j in i + 1..n {
                g.set(i, j, f(i, j))?;
            }
        }
        Ok(g)
    }

    /// Euclidean lengths times `scale`, rounded to the nearest integer.
    pub fn from_points_scaled(points: &OrderedPointSet, scale: f64) -> Result<Self> {
        let n = points.len();
        let mut err = None;
        let g = Self::from_fn(n, |i, j| {
            let v = (points.dist(i, j) * scale).round();
            if !(v.abs() <= MAX_ABS_WEIGHT as f64) {
                err = Some(Error::Overflow(format!("scaled length {v} exceeds 2^55")));
                0
            } else {
                v as i64
            }
        })?;
        match err {
            Some(e) => Err(e),
            None => Ok(g),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, i: usize, j: usize, w: i64) -> Result<()> {
        if i == j {
            return Err(Error::InvalidInstance(format!("self-loop at {i}")));
        }
        if w.unsigned_abs() > MAX_ABS_WEIGHT as u64 {
            return Err(Error::Overflow(format!("|w({i},{j})| = {} exceeds 2^55", w.unsigned_abs())));
        }
        self.w[i * self.n + j] = w;
        self.w[j * self.n + i] = w;
        Ok(())
    }

    #[inline]
    pub fn weight(&self, i: usize, j: usize) -> i64 {
        self.w[i * self.n + j]
    }

    /// Largest absolute off-diagonal weight.
    pub fn max_abs_weight(&self) -> i64 {
        self.w.iter().map(|w| w.abs()).max().unwrap_or(0)
    }

    pub fn upper_triangle(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.n * self.n.saturating_sub(1) / 2);
        for i in 0..self.n {
            for j in i + 1..self.n {
                out.push(self.weight(i, j));
            }
        }
        out
    }
}

impl Metric for WeightedGraph {
    type Cost = i64;

    fn size(&self) -> usize {
        self.n
    }

    #[inline]
    fn dist(&self, i: usize, j: usize) -> i64 {
        self.w[i * self.n + j]
    }
}

/// A Hamiltonian cycle given as a vertex permutation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tour {
    order: Vec<usize>,
}

impl Tour {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &v in &order {
            if v >= n {
                return Err(Error::InvalidTour(format!("vertex {v} out of range 0..{n}")));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidTour(format!("vertex {v} repeated")));
            }
        }
        Ok(Tour { order })
    }

    pub fn identity(n: usize) -> Self {
        Tour { order: (0..n).collect() }
    }

    pub fn for_instance<M: Metric + ?Sized>(self, m: &M) -> Result<Self> {
        if self.order.len() != m.size() {
            return Err(Error::SizeMismatch { expected: m.size(), got: self.order.len() });
        }
        Ok(self)
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn into_order(self) -> Vec<usize> {
        self.order
    }

    /// Tour edge `i` joins `order[i]` and `order[i + 1 mod n]`.
    #[inline]
    pub fn edge(&self, i: usize) -> (usize, usize) {
        let n = self.order.len();
        (self.order[i], self.order[(i + 1) % n])
    }

    pub fn cost<M: Metric + ?Sized>(&self, m: &M) -> M::Cost {
        let mut total = M::Cost::ZERO;
        for i in 0..self.order.len() {
            let (a, b) = self.edge(i);
            total = total + m.dist(a, b);
        }
        total
    }

    /// Longest edge length.
    pub fn bottleneck(&self, m: &OrderedPointSet) -> f64 {
        (0..self.len())
            .map(|i| {
                let (a, b) = self.edge(i);
                m.dist(a, b)
            })
            .fold(0.0, f64::max)
    }

    /// True if the labels rise from the first vertex to the last label and
    /// then fall back, with the tour starting at vertex 0.
    pub fn is_pyramidal(&self) -> bool {
        let n = self.order.len();
        if n == 0 || self.order[0] != 0 {
            return n == 0;
        }
        let mut i = 1;
        while i < n && self.order[i] > self.order[i - 1] {
            i += 1;
        }
        if self.order[i - 1] != n - 1 {
            return false;
        }
        while i < n && self.order[i] < self.order[i - 1] {
            i += 1;
        }
        i == n
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_points_are_rejected() {
        let p = vec![Point::new(0.0, 0.0), Point::new(1.0, 0.0), Point::new(0.0, 0.0)];
        assert!(matches!(OrderedPointSet::new(p), Err(Error::InvalidInstance(_))));
    }

    #[test]
    fn upper_triangle_round_trips() {
        let g = WeightedGraph::from_upper(4, &[1, -2, 3, 4, -5, 6]).unwrap();
        assert_eq!(g.weight(2, 0), -2);
        assert_eq!(g.weight(3, 2), 6);
        assert_eq!(g.upper_triangle(), vec![1, -2, 3, 4, -5, 6]);
        assert_eq!(g.max_abs_weight(), 6);
    }

    #[test]
    fn oversized_weight_is_rejected() {
        assert!(matches!(WeightedGraph::from_upper(2, &[(1 << 55) + 1]), Err(Error::Overflow(_))));
    }

    #[test]
    fn tour_validation_and_cost() {
        assert!(Tour::new(vec![0, 2, 2]).is_err());
        assert!(Tour::new(vec![0, 3, 1]).is_err());
        let g = WeightedGraph::from_upper(3, &[1, 2, 3]).unwrap();
        assert_eq!(Tour::identity(3).cost(&g), 6);
    }

    #[test]
    fn pyramidal_shape() {
        assert!(Tour::new(vec![0, 2, 4, 3, 1]).unwrap().is_pyramidal());
        assert!(Tour::new(vec![0, 1, 2, 3, 4]).unwrap().is_pyramidal());
        assert!(Tour::new(vec![0, 4, 3, 2, 1]).unwrap().is_pyramidal());
        assert!(!Tour::new(vec![0, 3, 1, 4, 2]).unwrap().is_pyramidal());
        assert!(!Tour::new(vec![1, 0, 2, 3, 4]).unwrap().is_pyramidal());
    }
}
