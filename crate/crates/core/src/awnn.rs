//! Additively weighted nearest neighbour: `min_k (w_k + |p_k q|)` over a
//! growing site set, with uniform weight increases in O(log n).
//!
//! Insertions use the logarithmic method: blocks of distinct power-of-two
//! sizes, each a static structure plus a correction term. A bulk update
//! touches only the correction terms, which is sound because adding a
//! constant to every weight of a block leaves its nearest-neighbour answers
//! unchanged. The static block is a kd-tree pruned by node weight minima;
//! it answers exactly, and ties go to the lowest insertion index.

use crate::error::{Error, Result};
use crate::model::Point;

const LEAF: usize = 8;
const NIL: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WeightedSite {
    pub point: Point,
    pub weight: f64,
}

#[derive(Clone, Debug)]
struct KdNode {
    lo: u32,
    hi: u32,
    left: u32,
    right: u32,
    /// min x, min y, max x, max y.
    bbox: [f64; 4],
    wmin: f64,
    idmin: u32,
}

/// Static additively weighted nearest-neighbour structure.
#[derive(Clone, Debug)]
pub struct StaticBlock {
    pts: Vec<Point>,
    w: Vec<f64>,
    id: Vec<u32>,
    nodes: Vec<KdNode>,
}

#[inline]
fn box_dist(b: &[f64; 4], q: Point) -> f64 {
    let dx = (b[0] - q.x).max(q.x - b[2]).max(0.0);
    let dy = (b[1] - q.y).max(q.y - b[3]).max(0.0);
    (dx * dx + dy * dy).sqrt()
}

/// Lexicographic `(value, id)` order.
#[inline]
fn beats(v: f64, id: u32, best: Option<(f64, u32)>) -> bool {
    match best {
        None => true,
        Some((bv, bid)) => v < bv || (v == bv && id < bid),
    }
}

impl StaticBlock {
    /// Builds over `(point, weight, id)` triples; ids must be distinct.
    pub fn new(sites: Vec<(Point, f64, u32)>) -> Self {
        let m = sites.len();
        let mut b = StaticBlock {
            pts: Vec::with_capacity(m),
            w: Vec::with_capacity(m),
            id: Vec::with_capacity(m),
            nodes: Vec::with_capacity(2 * m / LEAF + 2),
        };
        let mut sites = sites;
        if m > 0 {
            b.build(&mut sites, 0);
        }
        for (p, w, id) in sites {
            b.pts.push(p);
            b.w.push(w);
            b.id.push(id);
        }
        b.summarize();
        b
    }

    fn build(&mut self, s: &mut [(Point, f64, u32)], offset: usize) -> u32 {
        let me = self.nodes.len() as u32;
        let mut bbox = [f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY];
        for (p, _, _) in s.iter() {
            bbox = [bbox[0].min(p.x), bbox[1].min(p.y), bbox[2].max(p.x), bbox[3].max(p.y)];
        }
        self.nodes.push(KdNode {
            lo: offset as u32,
            hi: (offset + s.len()) as u32,
            left: NIL,
            right: NIL,
            bbox,
            wmin: 0.0,
            idmin: 0,
        });
        if s.len() > LEAF {
            let mid = s.len() / 2;
            if bbox[2] - bbox[0] >= bbox[3] - bbox[1] {
                s.select_nth_unstable_by(mid, |a, b| a.0.x.total_cmp(&b.0.x));
            } else {
                s.select_nth_unstable_by(mid, |a, b| a.0.y.total_cmp(&b.0.y));
            }
            let (l, r) = s.split_at_mut(mid);
            let left = self.build(l, offset);
            let right = self.build(r, offset + mid);
            self.nodes[me as usize].left = left;
            self.nodes[me as usize].right = right;
        }
        me
    }

    /// Fills weight and id minima bottom-up; children follow their parent.
    fn summarize(&mut self) {
        for i in (0..self.nodes.len()).rev() {
            let n = &self.nodes[i];
            let (wmin, idmin) = if n.left == NIL {
                let r = n.lo as usize..n.hi as usize;
                (
                    self.w[r.clone()].iter().copied().fold(f64::INFINITY, f64::min),
                    self.id[r].iter().copied().min().unwrap_or(NIL),
                )
            } else {
                let (l, r) = (&self.nodes[n.left as usize], &self.nodes[n.right as usize]);
                (l.wmin.min(r.wmin), l.idmin.min(r.idmin))
            };
            self.nodes[i].wmin = wmin;
            self.nodes[i].idmin = idmin;
        }
    }

    pub fn len(&self) -> usize {
        self.pts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pts.is_empty()
    }

    /// Stored `(point, weight, id)` triples in internal order.
    pub fn sites(&self) -> impl Iterator<Item = (Point, f64, u32)> + '_ {
        (0..self.pts.len()).map(|i| (self.pts[i], self.w[i], self.id[i]))
    }

    /// `min ((w_k + offset) + |p_k q|)` with the id of the minimizer.
    ///
    /// The node bound is evaluated with the same operation order as a site
    /// value, so rounding never lets a bound exceed a value below it.
    pub fn query(&self, q: Point, offset: f64) -> Option<(f64, u32)> {
        let mut best = None;
        if !self.nodes.is_empty() {
            self.descend(0, q, offset, &mut best);
        }
        best
    }

    #[inline]
    fn bound(&self, v: u32, q: Point, offset: f64) -> f64 {
        let n = &self.nodes[v as usize];
        (n.wmin + offset) + box_dist(&n.bbox, q)
    }

    fn descend(&self, v: u32, q: Point, offset: f64, best: &mut Option<(f64, u32)>) {
        let n = &self.nodes[v as usize];
        if n.left == NIL {
            for i in n.lo as usize..n.hi as usize {
                let val = (self.w[i] + offset) + self.pts[i].dist(q);
                if beats(val, self.id[i], *best) {
                    *best = Some((val, self.id[i]));
                }
            }
            return;
        }
        let (bl, br) = (self.bound(n.left, q, offset), self.bound(n.right, q, offset));
        let order = if bl <= br { [(n.left, bl), (n.right, br)] } else { [(n.right, br), (n.left, bl)] };
        for (c, b) in order {
            if beats(b, self.nodes[c as usize].idmin, *best) {
                self.descend(c, q, offset, best);
            }
        }
    }

    /// Checks boxes, minima and the partition of sites among leaves.
    pub fn audit(&self) -> std::result::Result<(), String> {
        for (i, n) in self.nodes.iter().enumerate() {
            let r = n.lo as usize..n.hi as usize;
            if r.is_empty() {
                return Err(format!("kd node {i} is empty"));
            }
            for k in r.clone() {
                let p = self.pts[k];
                if p.x < n.bbox[0] || p.y < n.bbox[1] || p.x > n.bbox[2] || p.y > n.bbox[3] {
                    return Err(format!("kd node {i} box misses a site"));
                }
            }
            let wmin = self.w[r.clone()].iter().copied().fold(f64::INFINITY, f64::min);
            let idmin = self.id[r].iter().copied().min().unwrap();
            if wmin != n.wmin || idmin != n.idmin {
                return Err(format!("kd node {i} has stale minima"));
            }
            if n.left != NIL {
                let (l, rr) = (&self.nodes[n.left as usize], &self.nodes[n.right as usize]);
                if l.lo != n.lo || l.hi != rr.lo || rr.hi != n.hi {
                    return Err(format!("kd node {i} children do not split its range"));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
struct Block {
    data: StaticBlock,
    /// Added to every weight of the block.
    correction: f64,
}

/// Semi-dynamic additively weighted nearest-neighbour structure.
#[derive(Clone, Debug, Default)]
pub struct Awnn {
    /// `blocks[t]` holds `2^t` sites or nothing.
    blocks: Vec<Option<Block>>,
    count: usize,
}

impl Awnn {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// Inserts a site and returns its insertion index.
    pub fn insert(&mut self, site: WeightedSite) -> usize {
        let id = self.count;
        let mut t = 0;
        let mut sites = vec![(site.point, site.weight, id as u32)];
        while let Some(slot) = self.blocks.get_mut(t) {
            match slot.take() {
                Some(b) => {
                    sites.extend(b.data.sites().map(|(p, w, i)| (p, w + b.correction, i)));
                    t += 1;
                }
                None => break,
            }
        }
        if t == self.blocks.len() {
            self.blocks.push(None);
        }
        self.blocks[t] = Some(Block { data: StaticBlock::new(sites), correction: 0.0 });
        self.count += 1;
        id
    }

    /// Adds `delta` to the weight of every stored site.
    pub fn bulk_add(&mut self, delta: f64) {
        for b in self.blocks.iter_mut().flatten() {
            b.correction += delta;
        }
    }

    /// Insertion index and value of the site minimizing `w_k + |p_k q|`.
    pub fn query_min(&self, q: Point) -> Result<(usize, f64)> {
        let mut best: Option<(f64, u32)> = None;
        for b in self.blocks.iter().flatten() {
            if let Some((v, id)) = b.data.query(q, b.correction) {
                if beats(v, id, best) {
                    best = Some((v, id));
                }
            }
        }
        best.map(|(v, id)| (id as usize, v)).ok_or_else(|| Error::InvalidArgument("query on an empty structure".into()))
    }

    /// Sizes of the live blocks, smallest first.
    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().flatten().map(|b| b.data.len()).collect()
    }

    /// Correction terms of the live blocks, smallest block first.
    pub fn corrections(&self) -> Vec<f64> {
        self.blocks.iter().flatten().map(|b| b.correction).collect()
    }

    /// `(insertion index, point, effective weight)` of every site, by index.
    pub fn effective_sites(&self) -> Vec<(usize, Point, f64)> {
        let mut out: Vec<(usize, Point, f64)> = self
            .blocks
            .iter()
            .flatten()
            .flat_map(|b| b.data.sites().map(move |(p, w, id)| (id as usize, p, w + b.correction)))
            .collect();
        out.sort_by_key(|s| s.0);
        out
    }

    /// Block sizes match the binary expansion of the count and every
    /// inserted site lives in exactly one block.
    pub fn audit(&self) -> std::result::Result<(), String> {
        for (t, b) in self.blocks.iter().enumerate() {
            let bit = self.count >> t & 1 == 1;
            match b {
                Some(b) if !bit || b.data.len() != 1 << t => {
                    return Err(format!("block {t} has {} sites, count is {}", b.data.len(), self.count))
                }
                None if bit => return Err(format!("block {t} missing for count {}", self.count)),
                Some(b) => b.data.audit()?,
                None => {}
            }
        }
        if self.count >> self.blocks.len() != 0 {
            return Err("count exceeds the block capacity".into());
        }
        let ids: Vec<usize> = self.effective_sites().iter().map(|s| s.0).collect();
        if ids != (0..self.count).collect::<Vec<_>>() {
            return Err("insertion indices are not stored exactly once".into());
        }
        Ok(())
    }
}
