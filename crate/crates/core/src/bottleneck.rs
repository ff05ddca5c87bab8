//! Bottleneck pyramidal tours: minimize the longest edge.
//!
//! The decision version keeps the list `L` of path ends `j` with a feasible
//! `(i, j)` partial tour and a [`DiskUnion`] of radius `B` around them, so
//! "some point of `L` is within `B` of `p_{i+1}`" is one membership query.
//!
//! The optimization version keeps row `i` of
//! `A[i+1][j] = max(A[i][j], |p_i p_{i+1}|)`,
//! `A[i+1][i] = min_k max(A[i][k], |p_k p_{i+1}|)` implicitly as site
//! weights of a [`BottleneckSet`]: the row shift is a bulk maximum and the
//! new entry a query for `min_k max(w_k, |p_k q|)`.

use crate::awnn::StaticBlock;
use crate::disk_union::DiskUnion;
use crate::error::{Error, Result};
use crate::model::{OrderedPointSet, Point, Tour};
use crate::pyramidal::witness;

#[derive(Clone, Debug, PartialEq)]
pub struct BottleneckSolution {
    pub value: f64,
    pub tour: Tour,
}

fn check(p: &OrderedPointSet) -> Result<usize> {
    match p.len() {
        n if n < 2 => Err(Error::TooSmall { need: 2, got: n }),
        n => Ok(n),
    }
}

#[inline]
fn d(p: &OrderedPointSet, a: usize, b: usize) -> f64 {
    p.point(a).dist(p.point(b))
}

/// Whether a pyramidal tour with every edge at most `b` exists.
pub fn bottleneck_decide(p: &OrderedPointSet, b: f64) -> bool {
    decide_observed(p, b, |_, _| {})
}

/// As [`bottleneck_decide`], calling `hook(i, list)` with the list for
/// every row `i` it builds (`1 <= i <= n-2`).
pub fn decide_observed(p: &OrderedPointSet, b: f64, mut hook: impl FnMut(usize, &[usize])) -> bool {
    let n = p.len();
    if n < 2 || b.is_nan() || b <= 0.0 {
        return false;
    }
    if n == 2 {
        return d(p, 0, 1) <= b;
    }
    if b == f64::INFINITY {
        return true;
    }
    let mut list: Vec<usize> = vec![];
    let mut union = DiskUnion::new(b);
    if d(p, 0, 1) <= b {
        list.push(0);
        union.insert(p.point(0));
    }
    hook(1, &list);
    for i in 1..n - 2 {
        let next = p.point(i + 1);
        let step = d(p, i, i + 1) <= b;
        let reach = union.contains(next);
        match (step, reach) {
            (true, true) => {}
            (true, false) => {
                hook(i + 1, &list);
                continue;
            }
            (false, true) => {
                list.clear();
                union.clear();
            }
            (false, false) => {
                list.clear();
                union.clear();
                hook(i + 1, &list);
                continue;
            }
        }
        list.push(i);
        union.insert(p.point(i));
        hook(i + 1, &list);
    }
    d(p, n - 2, n - 1) <= b && union.contains(p.point(n - 1))
}

/// Boolean table, one row at a time; `hook(i, row)` sees `row[j] = A[i][j]`.
pub fn decide_quadratic_observed(p: &OrderedPointSet, b: f64, mut hook: impl FnMut(usize, &[bool])) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut row = vec![false; n];
    row[0] = d(p, 0, 1) <= b;
    hook(1, &row[..1]);
    for i in 1..n - 1 {
        let new = (0..i).any(|k| row[k] && d(p, k, i + 1) <= b);
        let step = d(p, i, i + 1) <= b;
        for r in &mut row[..i] {
            *r &= step;
        }
        row[i] = new;
        hook(i + 1, &row[..i + 1]);
    }
    (0..n - 1).any(|k| row[k] && d(p, k, n - 1) <= b)
}

/// Boolean dynamic program in O(n^2).
pub fn decide_quadratic(p: &OrderedPointSet, b: f64) -> bool {
    decide_quadratic_observed(p, b, |_, _| {})
}

/// A pyramidal tour whose longest edge is at most `b`, if any.
pub fn tour_within(p: &OrderedPointSet, b: f64) -> Option<Tour> {
    let n = p.len();
    if n < 2 {
        return None;
    }
    let mut row = vec![false; n];
    let mut choice = vec![0; n];
    row[0] = d(p, 0, 1) <= b;
    for i in 1..n - 1 {
        let k = (0..i).find(|&k| row[k] && d(p, k, i + 1) <= b);
        let step = d(p, i, i + 1) <= b;
        for r in &mut row[..i] {
            *r &= step;
        }
        row[i] = k.is_some();
        choice[i + 1] = k.unwrap_or(0);
    }
    let k = (0..n - 1).find(|&k| row[k] && d(p, k, n - 1) <= b)?;
    Some(witness(n, &choice, k))
}

/// Exact O(n^2) optimum with a witness tour.
pub fn bottleneck_quadratic(p: &OrderedPointSet) -> Result<BottleneckSolution> {
    let n = check(p)?;
    let mut row = vec![0.0f64; n];
    let mut choice = vec![0; n];
    row[0] = d(p, 0, 1);
    let best = |row: &[f64], q: usize| {
        let mut best = (0, f64::INFINITY);
        for (k, &a) in row.iter().enumerate() {
            let v = a.max(d(p, k, q));
            if v < best.1 {
                best = (k, v);
            }
        }
        best
    };
    for i in 1..n - 1 {
        let (k, v) = best(&row[..i], i + 1);
        choice[i + 1] = k;
        let step = d(p, i, i + 1);
        for r in &mut row[..i] {
            *r = r.max(step);
        }
        row[i] = v;
    }
    let (k, value) = best(&row[..n - 1], n - 1);
    Ok(BottleneckSolution { value, tour: witness(n, &choice, k) })
}

/// Smallest pairwise distance accepted by [`bottleneck_decide`], by binary
/// search over the sorted distinct distances.
pub fn bottleneck_optimize(p: &OrderedPointSet) -> Result<f64> {
    check(p)?;
    let cands = p.pairwise_distances();
    // The largest distance admits every tour.
    let (mut lo, mut hi) = (0, cands.len() - 1);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if bottleneck_decide(p, cands[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(cands[lo])
}

/// Optimum via the weight-ordered search structure, O(n log^3 n) with exact
/// static blocks.
pub fn bottleneck_fast(p: &OrderedPointSet) -> Result<f64> {
    bottleneck_fast_observed(p, |_, _| {})
}

/// As [`bottleneck_fast`], calling `hook(i, s)` once `s` represents row `i`.
pub fn bottleneck_fast_observed(p: &OrderedPointSet, mut hook: impl FnMut(usize, &BottleneckSet)) -> Result<f64> {
    let n = check(p)?;
    let mut s = BottleneckSet::new();
    s.insert(p.point(0), d(p, 0, 1));
    hook(1, &s);
    for i in 1..n - 1 {
        let v = s.query(p.point(i + 1));
        s.bulk_max(d(p, i, i + 1));
        s.insert(p.point(i), v);
        hook(i + 1, &s);
    }
    Ok(s.query(p.point(n - 1)))
}

/// How a query was answered.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QueryTrace {
    pub value: f64,
    /// Answered by `B_max` alone.
    pub shortcut: bool,
    /// Lightest site whose construction-time disk holds `q`: `(id, weight)`.
    pub b1: Option<(u32, f64)>,
    /// Nearest distance among sites lighter than `B_1`.
    pub b2: f64,
}

#[derive(Clone, Debug)]
struct SegNode {
    lo: u32,
    hi: u32,
    left: u32,
    right: u32,
    /// Sites with weight `-w`: the minimum of `|p q| - w` is `<= 0` exactly
    /// when `q` lies in the union of the disks `D(p, w)`.
    union: StaticBlock,
    /// Sites with weight zero: plain nearest neighbour.
    nearest: StaticBlock,
}

const NIL: u32 = u32::MAX;

/// Static structure over weighted sites answering
/// `min_k max(max(w_k, B_max), |p_k q|)`, with `B_max` the largest bulk
/// maximum applied since construction.
#[derive(Clone, Debug)]
pub struct BottleneckTree {
    /// Sites by ascending construction weight, then id.
    pts: Vec<Point>,
    w: Vec<f64>,
    id: Vec<u32>,
    nodes: Vec<SegNode>,
    b_max: f64,
}

impl BottleneckTree {
    pub fn new(mut sites: Vec<(Point, f64, u32)>) -> Self {
        sites.sort_by(|a, b| a.1.total_cmp(&b.1).then(a.2.cmp(&b.2)));
        let mut t = BottleneckTree {
            pts: sites.iter().map(|s| s.0).collect(),
            w: sites.iter().map(|s| s.1).collect(),
            id: sites.iter().map(|s| s.2).collect(),
            nodes: vec![],
            b_max: f64::NEG_INFINITY,
        };
        if !sites.is_empty() {
            t.build(0, sites.len());
        }
        t
    }

    fn build(&mut self, lo: usize, hi: usize) -> u32 {
        let me = self.nodes.len();
        let r = lo..hi;
        let union = StaticBlock::new(r.clone().map(|k| (self.pts[k], -self.w[k], self.id[k])).collect());
        let nearest = StaticBlock::new(r.map(|k| (self.pts[k], 0.0, self.id[k])).collect());
        self.nodes.push(SegNode { lo: lo as u32, hi: hi as u32, left: NIL, right: NIL, union, nearest });
        if hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            let l = self.build(lo, mid);
            let r = self.build(mid, hi);
            self.nodes[me].left = l;
            self.nodes[me].right = r;
        }
        me as u32
    }

    pub fn len(&self) -> usize {
        self.pts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pts.is_empty()
    }

    pub fn b_max(&self) -> f64 {
        self.b_max
    }

    pub fn bulk_max(&mut self, b: f64) {
        self.b_max = self.b_max.max(b);
    }

    /// `(point, effective weight, id)` of every site.
    pub fn sites(&self) -> impl Iterator<Item = (Point, f64, u32)> + '_ {
        (0..self.pts.len()).map(|k| (self.pts[k], self.w[k].max(self.b_max), self.id[k]))
    }

    #[inline]
    fn covers(&self, v: u32, q: Point) -> bool {
        self.nodes[v as usize].union.query(q, 0.0).is_some_and(|(m, _)| m <= 0.0)
    }

    /// Nearest distance from `q` to the sites at sorted positions `0..m`,
    /// over the canonical nodes of that prefix.
    fn prefix_nearest(&self, v: u32, m: usize, q: Point) -> f64 {
        let node = &self.nodes[v as usize];
        if m <= node.lo as usize {
            return f64::INFINITY;
        }
        if m >= node.hi as usize {
            return node.nearest.query(q, 0.0).map_or(f64::INFINITY, |(d, _)| d);
        }
        self.prefix_nearest(node.left, m, q).min(self.prefix_nearest(node.right, m, q))
    }

    pub fn query(&self, q: Point) -> f64 {
        self.query_trace(q).value
    }

    pub fn query_trace(&self, q: Point) -> QueryTrace {
        let mut tr = QueryTrace { value: f64::INFINITY, shortcut: false, b1: None, b2: f64::INFINITY };
        if self.pts.is_empty() {
            return tr;
        }
        // Every effective weight is at least B_max, so B_max is the answer
        // when some site already at B_max lies within B_max of q.
        let light = self.w.partition_point(|&w| w <= self.b_max);
        if light > 0 && self.prefix_nearest(0, light, q) <= self.b_max {
            tr.value = self.b_max;
            tr.shortcut = true;
            return tr;
        }
        // Now every site within B_max of q is heavier than B_max, so the
        // construction-time disks decide coverage under the current weights.
        debug_assert!((0..light).all(|k| self.pts[k].dist(q) > self.b_max));
        if self.covers(0, q) {
            let mut v = 0u32;
            while self.nodes[v as usize].left != NIL {
                let l = self.nodes[v as usize].left;
                v = if self.covers(l, q) { l } else { self.nodes[v as usize].right };
            }
            let k = self.nodes[v as usize].lo as usize;
            tr.b1 = Some((self.id[k], self.w[k]));
        }
        let b1 = tr.b1.map_or(f64::INFINITY, |b| b.1);
        let lighter = self.w.partition_point(|&w| w < b1);
        tr.b2 = self.prefix_nearest(0, lighter, q);
        tr.value = b1.min(tr.b2);
        tr
    }

    /// Sorted weights, node ranges and per-node site sets.
    pub fn audit(&self) -> std::result::Result<(), String> {
        if self.w.windows(2).any(|p| p[0] > p[1]) {
            return Err("sites are not ordered by weight".into());
        }
        for (i, n) in self.nodes.iter().enumerate() {
            let (lo, hi) = (n.lo as usize, n.hi as usize);
            if n.union.len() != hi - lo || n.nearest.len() != hi - lo {
                return Err(format!("node {i} stores the wrong number of sites"));
            }
            let mut ids: Vec<u32> = n.union.sites().map(|s| s.2).collect();
            ids.sort_unstable();
            let mut want = self.id[lo..hi].to_vec();
            want.sort_unstable();
            if ids != want {
                return Err(format!("node {i} holds sites outside its range"));
            }
            n.union.audit()?;
            n.nearest.audit()?;
            if n.left != NIL {
                let (l, r) = (&self.nodes[n.left as usize], &self.nodes[n.right as usize]);
                if l.lo != n.lo || l.hi != r.lo || r.hi != n.hi {
                    return Err(format!("node {i} children do not split its range"));
                }
            }
        }
        Ok(())
    }
}

/// [`BottleneckTree`] blocks under the logarithmic method. Each block keeps
/// its own `B_max`; rebuilding folds it into the weights.
#[derive(Clone, Debug, Default)]
pub struct BottleneckSet {
    blocks: Vec<Option<BottleneckTree>>,
    count: usize,
}

impl BottleneckSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn insert(&mut self, p: Point, w: f64) -> usize {
        let id = self.count;
        let mut sites = vec![(p, w, id as u32)];
        let mut t = 0;
        while let Some(slot) = self.blocks.get_mut(t) {
            match slot.take() {
                Some(b) => {
                    sites.extend(b.sites());
                    t += 1;
                }
                None => break,
            }
        }
        if t == self.blocks.len() {
            self.blocks.push(None);
        }
        self.blocks[t] = Some(BottleneckTree::new(sites));
        self.count += 1;
        id
    }

    /// Raises every stored weight to at least `b`.
    pub fn bulk_max(&mut self, b: f64) {
        for t in self.blocks.iter_mut().flatten() {
            t.bulk_max(b);
        }
    }

    /// `min_k max(w_k, |p_k q|)`; infinite when empty.
    pub fn query(&self, q: Point) -> f64 {
        self.blocks.iter().flatten().map(|t| t.query(q)).fold(f64::INFINITY, f64::min)
    }

    pub fn blocks(&self) -> impl Iterator<Item = &BottleneckTree> {
        self.blocks.iter().flatten()
    }

    /// `(id, point, effective weight)` of every site, by id.
    pub fn effective_sites(&self) -> Vec<(usize, Point, f64)> {
        let mut out: Vec<(usize, Point, f64)> =
            self.blocks().flat_map(|t| t.sites().map(|(p, w, id)| (id as usize, p, w))).collect();
        out.sort_by_key(|s| s.0);
        out
    }

    pub fn audit(&self) -> std::result::Result<(), String> {
        for (t, b) in self.blocks.iter().enumerate() {
            let bit = self.count >> t & 1 == 1;
            match b {
                Some(b) if !bit || b.len() != 1 << t => return Err(format!("block {t} has the wrong size")),
                None if bit => return Err(format!("block {t} is missing")),
                Some(b) => b.audit()?,
                None => {}
            }
        }
        let ids: Vec<usize> = self.effective_sites().iter().map(|s| s.0).collect();
        if ids != (0..self.count).collect::<Vec<_>>() {
            return Err("sites are not stored exactly once".into());
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{disjointness_points, random_points, rng};
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::Rng;

    fn pts(c: &[(f64, f64)]) -> OrderedPointSet {
        OrderedPointSet::new(c.iter().map(|&(x, y)| Point::new(x, y)).collect()).unwrap()
    }

    /// Longest edge minimized over every split into rising and falling chains.
    fn brute(p: &OrderedPointSet) -> f64 {
        let n = p.len();
        let mut best = f64::INFINITY;
        for mask in 0u32..1 << (n - 2) {
            let mut up = vec![0];
            let mut down = vec![];
            for v in 1..n - 1 {
                if mask >> (v - 1) & 1 == 1 {
                    up.push(v)
                } else {
                    down.push(v)
                }
            }
            up.push(n - 1);
            up.extend(down.iter().rev());
            best = best.min(Tour::new(up).unwrap().bottleneck(p));
        }
        best
    }

    #[test]
    fn two_and_three_points() {
        let two = pts(&[(0.0, 0.0), (3.0, 0.0)]);
        assert!(bottleneck_decide(&two, 3.0));
        assert!(!bottleneck_decide(&two, 2.9));
        assert!(!bottleneck_decide(&two, 0.0));
        assert_eq!(bottleneck_quadratic(&two).unwrap().value, 3.0);
        assert_eq!(bottleneck_optimize(&two).unwrap(), 3.0);
        assert_eq!(bottleneck_fast(&two).unwrap(), 3.0);
        let three = pts(&[(0.0, 0.0), (3.0, 0.0), (0.0, 4.0)]);
        assert_eq!(bottleneck_quadratic(&three).unwrap().value, 5.0);
        assert_eq!(bottleneck_optimize(&three).unwrap(), 5.0);
        assert_eq!(bottleneck_fast(&three).unwrap(), 5.0);
        assert!(bottleneck_fast(&pts(&[(0.0, 0.0)])).is_err());
    }

    #[test]
    fn single_site_query() {
        let mut s = BottleneckSet::new();
        s.insert(Point::new(0.0, 0.0), 3.0);
        assert_eq!(s.query(Point::new(3.0, 4.0)), 5.0);
        s.bulk_max(10.0);
        assert_eq!(s.query(Point::new(3.0, 4.0)), 10.0);
    }

    #[test]
    fn heavy_site_near_query_does_not_fake_the_bulk_value() {
        // The nearest site is within B_max but carries a larger weight, so
        // the answer is that weight or the distance to a lighter site.
        let mut t = BottleneckTree::new(vec![(Point::new(0.0, 0.0), 9.0, 0), (Point::new(6.0, 0.0), 1.0, 1)]);
        t.bulk_max(2.0);
        let q = Point::new(1.0, 0.0);
        assert_eq!(t.query(q), 5.0);
        assert!(!t.query_trace(q).shortcut);
    }

    #[test]
    fn brute_force_agrees_on_eight_points() {
        for seed in 0..40 {
            let p = random_points(8, seed);
            let want = brute(&p);
            let q = bottleneck_quadratic(&p).unwrap();
            assert_eq!(q.value, want, "seed {seed}");
            assert_eq!(q.tour.bottleneck(&p), want);
            assert!(q.tour.is_pyramidal());
            assert_eq!(bottleneck_optimize(&p).unwrap(), want);
            assert_eq!(bottleneck_fast(&p).unwrap(), want);
            let t = tour_within(&p, want).unwrap();
            assert!(t.is_pyramidal() && t.bottleneck(&p) <= want);
        }
    }

    #[test]
    fn disjointness_instances() {
        let mut r = rng(2);
        for case in 0..100 {
            let n = r.gen_range(1..8);
            let mut pool: Vec<i64> = (1..=30).collect();
            pool.shuffle(&mut r);
            let u: Vec<i64> = pool[..n].to_vec();
            pool.shuffle(&mut r);
            let v: Vec<i64> = pool[..n].to_vec();
            let meet = u.iter().any(|x| v.contains(x));
            for perturbed in [false, true] {
                let (p, b) = disjointness_points(&u, &v, perturbed).unwrap();
                assert_eq!(bottleneck_decide(&p, b), meet, "case {case} perturbed {perturbed}");
                assert_eq!(decide_quadratic(&p, b), meet);
            }
        }
    }

    #[test]
    fn two_element_layout() {
        let (p, b) = disjointness_points(&[1, 2], &[2, 5], false).unwrap();
        assert_eq!(b, 6.0);
        let want = [(0.0, 1.0), (0.0, 2.0), (0.0, 6.0), (6.0, 6.0), (6.0, 2.0), (6.0, 5.0)];
        for (k, &(x, y)) in want.iter().enumerate() {
            assert_eq!(p.point(k), Point::new(x, y));
        }
        assert!(bottleneck_decide(&p, b));
    }

    #[test]
    fn list_equals_boolean_rows() {
        let mut r = rng(9);
        for seed in 0..60 {
            let p = random_points(r.gen_range(2..60), seed);
            let cands = p.pairwise_distances();
            for _ in 0..5 {
                let b = cands[r.gen_range(0..cands.len())];
                let mut rows = vec![];
                let want = decide_quadratic_observed(&p, b, |i, row| rows.push((i, row.to_vec())));
                let mut k = 0;
                let got = decide_observed(&p, b, |i, list| {
                    let (ri, row) = &rows[k];
                    assert_eq!(*ri, i);
                    let set: Vec<usize> = (0..i).filter(|&j| row[j]).collect();
                    assert_eq!(list, &set[..], "row {i}");
                    k += 1;
                });
                assert_eq!(got, want);
                assert_eq!(tour_within(&p, b).is_some(), want);
            }
        }
    }

    #[test]
    fn fast_rows_equal_quadratic_rows() {
        for seed in 0..10 {
            let p = random_points(40, seed);
            let n = p.len();
            let mut rows: Vec<Vec<f64>> = vec![vec![d(&p, 0, 1)]];
            let mut row = vec![d(&p, 0, 1)];
            for i in 1..n - 1 {
                let v = (0..i).map(|k| row[k].max(d(&p, k, i + 1))).fold(f64::INFINITY, f64::min);
                let step = d(&p, i, i + 1);
                for r in &mut row {
                    *r = r.max(step);
                }
                row.push(v);
                rows.push(row.clone());
            }
            let mut k = 0;
            bottleneck_fast_observed(&p, |i, s| {
                s.audit().unwrap();
                let eff: Vec<f64> = s.effective_sites().iter().map(|e| e.2).collect();
                assert_eq!(eff, rows[i - 1]);
                k += 1;
            })
            .unwrap();
            assert_eq!(k, n - 1);
        }
    }

    proptest! {
        #[test]
        fn set_query_equals_scan(
            ops in prop::collection::vec((0.0..10.0f64, 0.0..10.0f64, 0.0..8.0f64, 0.0..6.0f64), 1..60),
            qs in prop::collection::vec((-2.0..12.0f64, -2.0..12.0f64), 1..20),
        ) {
            let mut s = BottleneckSet::new();
            let mut model: Vec<(Point, f64)> = vec![];
            for (x, y, w, b) in ops {
                s.insert(Point::new(x, y), w);
                model.push((Point::new(x, y), w));
                s.bulk_max(b);
                for m in &mut model {
                    m.1 = m.1.max(b);
                }
                for &(x, y) in &qs {
                    let q = Point::new(x, y);
                    let want = model.iter().map(|(p, w)| w.max(p.dist(q))).fold(f64::INFINITY, f64::min);
                    prop_assert_eq!(s.query(q), want);
                }
            }
            prop_assert!(s.audit().is_ok());
        }

        #[test]
        fn first_stage_finds_the_lightest_covering_site(
            sites in prop::collection::vec((0.0..10.0f64, 0.0..10.0f64, 0.0..8.0f64), 1..50),
            bmax in 0.0..4.0f64,
            q in (-2.0..12.0f64, -2.0..12.0f64),
        ) {
            let mut t = BottleneckTree::new(
                sites.iter().enumerate().map(|(i, &(x, y, w))| (Point::new(x, y), w, i as u32)).collect(),
            );
            t.bulk_max(bmax);
            let q = Point::new(q.0, q.1);
            let tr = t.query_trace(q);
            if !tr.shortcut {
                let want = sites.iter().enumerate()
                    .filter(|(_, &(x, y, w))| Point::new(x, y).dist(q) <= w)
                    .map(|(i, &(_, _, w))| (w, i as u32))
                    .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
                prop_assert_eq!(tr.b1.map(|(i, w)| (w, i)), want);
            }
        }

        #[test]
        fn optimum_is_a_pairwise_distance(n in 2usize..40, seed in 0u64..500) {
            let p = random_points(n, seed);
            let v = bottleneck_optimize(&p).unwrap();
            prop_assert!(p.pairwise_distances().contains(&v));
            prop_assert_eq!(v, bottleneck_quadratic(&p).unwrap().value);
            prop_assert_eq!(v, bottleneck_fast(&p).unwrap());
            prop_assert!(bottleneck_decide(&p, v));
            let cands = p.pairwise_distances();
            let i = cands.iter().position(|&c| c == v).unwrap();
            if i > 0 {
                prop_assert!(!bottleneck_decide(&p, cands[i - 1]));
            }
        }
    }
}
