//! Point location in a growing union of congruent disks.
//!
//! Coordinates are scaled so every disk has radius √2, the diameter of a
//! unit grid cell; a disk therefore covers the cell holding its centre. For
//! each active cell the union of its own disks is kept as four partial
//! unions, the parts beyond the cell's top, bottom, left and right lines.
//! All four are handled by one boundary type working in a local frame where
//! the line is horizontal and the centres lie on or below it.
//!
//! Above the line, two disks of equal radius cross at most once and a disk
//! further left owns boundary further left, so each boundary is a sequence
//! of arcs, one per disk at most, ordered by owner centre.

use std::collections::BTreeMap;

use crate::model::{Point, DEFAULT_EPS};

const R: f64 = std::f64::consts::SQRT_2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Top,
    Bottom,
    Left,
    Right,
}

pub const SIDES: [Side; 4] = [Side::Top, Side::Bottom, Side::Left, Side::Right];

/// Maps a scaled point into the frame of `side` of cell `(cx, cy)` and
/// returns it with the height of the cell line in that frame.
#[inline]
fn local(side: Side, cx: i64, cy: i64, p: Point) -> (Point, f64) {
    match side {
        Side::Top => (p, (cy + 1) as f64),
        Side::Bottom => (Point::new(p.x, -p.y), -cy as f64),
        Side::Right => (Point::new(p.y, p.x), (cx + 1) as f64),
        Side::Left => (Point::new(p.y, -p.x), -cx as f64),
    }
}

/// Height of the upper semicircle of radius √2 around `c` at abscissa `x`.
#[inline]
fn upper(c: Point, x: f64) -> f64 {
    let dx = x - c.x;
    c.y + (2.0 - dx * dx).max(0.0).sqrt()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ArcPiece {
    /// Centre of the owning disk, local frame.
    pub owner: Point,
    /// Index of the owner among its cell's disks.
    pub id: u32,
    pub xl: f64,
    pub xr: f64,
}

/// Boundary of one partial union; arcs sorted left to right.
#[derive(Clone, Debug, Default)]
pub struct Boundary {
    arcs: Vec<ArcPiece>,
}

impl Boundary {
    pub fn arcs(&self) -> &[ArcPiece] {
        &self.arcs
    }

    /// The abscissa range where the new disk `c` rises above the line `t`.
    fn span(c: Point, t: f64) -> (f64, f64) {
        let d = t - c.y;
        let h = (2.0 - d * d).max(0.0).sqrt();
        (c.x - h, c.x + h)
    }

    /// Whether disk `c` covers part of arc `j`. The height difference of
    /// two equal semicircles is monotone in x, so the ends decide.
    fn covers(&self, c: Point, t: f64, j: usize) -> bool {
        let a = &self.arcs[j];
        let (l, r) = Self::span(c, t);
        let (lo, hi) = (l.max(a.xl), r.min(a.xr));
        lo <= hi && (upper(c, lo) > upper(a.owner, lo) || upper(c, hi) > upper(a.owner, hi))
    }

    /// Descends the arcs as an implicit balanced tree: stop at an arc the
    /// disk covers, else go towards the side of the disk centre.
    pub fn find_affected(&self, c: Point, t: f64) -> Option<usize> {
        let (mut lo, mut hi) = (0, self.arcs.len());
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if self.covers(c, t, mid) {
                return Some(mid);
            }
            if c.x < self.arcs[mid].owner.x {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        None
    }

    /// Every arc the disk covers; the reference for `find_affected`.
    pub fn affected_linear(&self, c: Point, t: f64) -> Vec<usize> {
        (0..self.arcs.len()).filter(|&j| self.covers(c, t, j)).collect()
    }

    /// Adds disk `c` (centre on or below line `t`); returns whether it
    /// contributes an arc.
    pub fn insert(&mut self, c: Point, id: u32, t: f64) -> bool {
        let (l, r) = Self::span(c, t);
        if self.arcs.is_empty() {
            self.arcs.push(ArcPiece { owner: c, id, xl: l, xr: r });
            return true;
        }
        let Some(m) = self.find_affected(c, t) else {
            return false;
        };
        let (mut lo, mut hi) = (m, m + 1);
        while lo > 0 && self.covers(c, t, lo - 1) {
            lo -= 1;
        }
        while hi < self.arcs.len() && self.covers(c, t, hi) {
            hi += 1;
        }
        let (mut xs, mut xe) = (f64::INFINITY, f64::NEG_INFINITY);
        if lo == 0 && l < self.arcs[0].xl {
            xs = l;
        }
        if hi == self.arcs.len() && r > self.arcs[hi - 1].xr {
            xe = r;
        }
        for j in lo..hi {
            let a = self.arcs[j];
            let (a0, a1) = (l.max(a.xl), r.min(a.xr));
            let g = |x: f64| upper(c, x) - upper(a.owner, x);
            let (w0, w1) = match (g(a0) > 0.0, g(a1) > 0.0) {
                (true, true) => (a0, a1),
                (false, false) => continue,
                (left, _) => {
                    // Bisect for the single crossing.
                    let (mut u, mut v) = (a0, a1);
                    while v - u > 1e-15 * (1.0 + u.abs()) {
                        let mid = 0.5 * (u + v);
                        if mid <= u || mid >= v {
                            break;
                        }
                        if (g(mid) > 0.0) == left {
                            u = mid;
                        } else {
                            v = mid;
                        }
                    }
                    if left {
                        (a0, u)
                    } else {
                        (v, a1)
                    }
                }
            };
            xs = xs.min(w0);
            xe = xe.max(w1);
        }
        if !(xs < xe) {
            return false;
        }
        // A win strictly inside one arc would need two crossings.
        if (lo..hi).any(|j| self.arcs[j].xl < xs && self.arcs[j].xr > xe) {
            return false;
        }
        let mut kept: Vec<ArcPiece> = Vec::with_capacity(hi - lo + 1);
        let mut placed = false;
        for j in lo..hi {
            let mut a = self.arcs[j];
            if a.xr <= xe && a.xl >= xs {
                continue;
            }
            if a.xl < xs {
                a.xr = a.xr.min(xs);
                kept.push(a);
            } else {
                if !placed {
                    kept.push(ArcPiece { owner: c, id, xl: xs, xr: xe });
                    placed = true;
                }
                a.xl = a.xl.max(xe);
                kept.push(a);
            }
        }
        if !placed {
            kept.push(ArcPiece { owner: c, id, xl: xs, xr: xe });
        }
        self.arcs.splice(lo..hi, kept);
        true
    }

    /// Owners of the arc above `q.x` and of its two neighbours; if `q` is
    /// on or above the line and in the partial union, one of them covers it.
    pub fn candidates(&self, q: Point) -> impl Iterator<Item = &ArcPiece> {
        let i = self.arcs.partition_point(|a| a.xl <= q.x).saturating_sub(1);
        self.arcs[i.saturating_sub(1)..(i + 2).min(self.arcs.len())].iter()
    }

    /// Whether `q` (on or above the line) lies in the partial union.
    pub fn contains(&self, q: Point, eps: f64) -> bool {
        let lim = (R + eps) * (R + eps);
        self.candidates(q).any(|a| a.owner.dist2(q) <= lim)
    }

    /// One arc per disk, owners ordered by centre, arcs tiling one interval
    /// with each arc on the upper envelope of `disks`.
    pub fn audit(&self, disks: &[Point], t: f64) -> Result<(), String> {
        let mut seen = vec![false; disks.len()];
        for (k, a) in self.arcs.iter().enumerate() {
            if std::mem::replace(&mut seen[a.id as usize], true) {
                return Err(format!("disk {} owns two arcs", a.id));
            }
            if a.owner != disks[a.id as usize] {
                return Err(format!("arc {k} has a stale owner"));
            }
            if !(a.xl < a.xr) {
                return Err(format!("arc {k} is empty"));
            }
            if k > 0 {
                let p = &self.arcs[k - 1];
                if !(p.owner.x < a.owner.x) {
                    return Err(format!("arcs {} and {k} are out of centre order", k - 1));
                }
                if p.xr != a.xl {
                    return Err(format!("gap between arcs {} and {k}", k - 1));
                }
            }
            let mid = 0.5 * (a.xl + a.xr);
            let top = upper(a.owner, mid);
            for (j, &d) in disks.iter().enumerate() {
                let (l, r) = Self::span(d, t);
                if l < mid && mid < r && upper(d, mid) > top + 1e-9 {
                    return Err(format!("disk {j} rises above arc {k}"));
                }
            }
        }
        if !disks.is_empty() {
            let l = disks.iter().map(|&d| Self::span(d, t).0).fold(f64::INFINITY, f64::min);
            let r = disks.iter().map(|&d| Self::span(d, t).1).fold(f64::NEG_INFINITY, f64::max);
            let (Some(first), Some(last)) = (self.arcs.first(), self.arcs.last()) else {
                return Err("no arcs for a non-empty cell".into());
            };
            if (first.xl - l).abs() > 1e-9 || (last.xr - r).abs() > 1e-9 {
                return Err("boundary does not span the union".into());
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default)]
struct Cell {
    /// Scaled centres, in insertion order.
    centers: Vec<Point>,
    /// The same centres as given.
    given: Vec<Point>,
    sides: [Boundary; 4],
}

/// Union of closed disks of radius `B`, supporting insertion and
/// membership queries.
///
/// The grid and the arcs only narrow the search to a few candidate disks;
/// the final test is `|q c| <= B` on the given coordinates, so answers agree
/// exactly with a scan that uses the same comparison.
#[derive(Clone, Debug)]
pub struct DiskUnion {
    radius: f64,
    scale: f64,
    /// Slack of the cell prefilter, scaled units.
    eps: f64,
    /// Active strips by column, each holding its active cells by row.
    strips: BTreeMap<i64, BTreeMap<i64, Cell>>,
    len: usize,
}

impl DiskUnion {
    /// `radius` must be positive and finite.
    pub fn new(radius: f64) -> Self {
        Self::with_eps(radius, DEFAULT_EPS)
    }

    pub fn with_eps(radius: f64, eps: f64) -> Self {
        assert!(radius > 0.0 && radius.is_finite(), "disk radius must be positive");
        let scale = R / radius;
        DiskUnion { radius, scale, eps: eps * scale, strips: BTreeMap::new(), len: 0 }
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn clear(&mut self) {
        self.strips.clear();
        self.len = 0;
    }

    #[inline]
    fn scaled(&self, p: Point) -> Point {
        Point::new(p.x * self.scale, p.y * self.scale)
    }

    #[inline]
    fn cell_of(p: Point) -> (i64, i64) {
        (p.x.floor() as i64, p.y.floor() as i64)
    }

    pub fn insert(&mut self, center: Point) {
        let c = self.scaled(center);
        let (cx, cy) = Self::cell_of(c);
        let cell = self.strips.entry(cx).or_default().entry(cy).or_default();
        let id = cell.centers.len() as u32;
        cell.centers.push(c);
        cell.given.push(center);
        for (k, side) in SIDES.into_iter().enumerate() {
            let (lc, t) = local(side, cx, cy, c);
            cell.sides[k].insert(lc, id, t);
        }
        self.len += 1;
    }

    /// Whether `q` lies within `B` of a stored centre.
    pub fn contains(&self, q: Point) -> bool {
        let given = q;
        let q = self.scaled(q);
        let (qx, qy) = Self::cell_of(q);
        if self.strips.get(&qx).is_some_and(|s| s.contains_key(&qy)) {
            return true;
        }
        let reach = R + self.eps;
        for (&cx, strip) in self.strips.range(qx - 2..=qx + 2) {
            for (&cy, cell) in strip.range(qy - 2..=qy + 2) {
                let dx = (cx as f64 - q.x).max(q.x - (cx + 1) as f64).max(0.0);
                let dy = (cy as f64 - q.y).max(q.y - (cy + 1) as f64).max(0.0);
                if dx * dx + dy * dy > reach * reach {
                    continue;
                }
                let side = if q.y >= (cy + 1) as f64 {
                    Side::Top
                } else if q.y < cy as f64 {
                    Side::Bottom
                } else if q.x < cx as f64 {
                    Side::Left
                } else {
                    Side::Right
                };
                let (lq, _) = local(side, cx, cy, q);
                if cell.sides[side as usize]
                    .candidates(lq)
                    .any(|a| cell.given[a.id as usize].dist(given) <= self.radius)
                {
                    return true;
                }
            }
        }
        false
    }

    /// Active cells as `(column, row)`.
    pub fn active_cells(&self) -> Vec<(i64, i64)> {
        self.strips.iter().flat_map(|(&x, s)| s.keys().map(move |&y| (x, y))).collect()
    }

    /// Arcs of one partial union of an active cell.
    pub fn boundary(&self, cell: (i64, i64), side: Side) -> Option<&Boundary> {
        self.strips.get(&cell.0)?.get(&cell.1).map(|c| &c.sides[side as usize])
    }

    /// Structural audit of every cell and every partial union.
    pub fn audit(&self) -> Result<(), String> {
        let mut total = 0;
        for (&cx, strip) in &self.strips {
            if strip.is_empty() {
                return Err(format!("strip {cx} is active without cells"));
            }
            for (&cy, cell) in strip {
                if cell.centers.is_empty() {
                    return Err(format!("cell ({cx}, {cy}) is active without disks"));
                }
                total += cell.centers.len();
                for &c in &cell.centers {
                    if Self::cell_of(c) != (cx, cy) {
                        return Err(format!("centre {c:?} filed under cell ({cx}, {cy})"));
                    }
                }
                for (k, side) in SIDES.into_iter().enumerate() {
                    let disks: Vec<Point> = cell.centers.iter().map(|&c| local(side, cx, cy, c).0).collect();
                    let t = local(side, cx, cy, Point::default()).1;
                    cell.sides[k].audit(&disks, t).map_err(|e| format!("cell ({cx}, {cy}) {side:?}: {e}"))?;
                }
            }
        }
        if total != self.len {
            return Err(format!("{total} centres filed, {} inserted", self.len));
        }
        Ok(())
    }
}
