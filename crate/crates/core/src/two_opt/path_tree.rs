//! The per-edge path trees, stored with one shared shape.
//!
//! Every tree `T(f)` holds the same cyclic sequence of tour edges, so all of
//! them use one implicit treap over blocks of up to [`BLOCK`] consecutive
//! edges. Each node keeps, per tree `f`, the best exchange cost with `f` in
//! its subtree for both relative orientations (`mc` and `mrc`); the vectors
//! for all trees are stored contiguously, so a flip swaps two vectors by a
//! flag and a pull is one pass over memory.
//!
//! Edges live in slots. Slot `e` is at once an element (a row of costs, one
//! entry per tree) and a tree (a column). `val` holds, for row `e` and tree
//! `f` with fixed endpoint labels, `P = delta(f, e)` and `Q = delta(f, rev e)`.
//! Both are symmetric in `e` and `f`, so column `f` is read from row `f`.
//! A row entry in a block carries a bit telling whether the row's labels run
//! backwards in the block's stored frame.
//!
//! Node flags: `REV` means the children still owe a flip; `BREV` means the
//! block reads back to front; `ASWAP` means the subtree vectors are swapped;
//! `DIRTY` means the subtree vectors are stale. A node's own aggregates
//! always include its own flips. During an update only sizes are kept
//! current; the dirty nodes, which form a subtree at the root, are pulled
//! once at the end.

use std::ops::Range;

use crate::model::Cost;

pub(crate) const NIL: u32 = u32::MAX;
pub(crate) const BLOCK: usize = 16;
const REV: u8 = 1;
const BREV: u8 = 2;
const ASWAP: u8 = 4;
const DIRTY: u8 = 8;
/// Row entry bit: labels run backwards in the stored frame.
const RO: u32 = 1 << 31;

#[derive(Clone, Copy, Debug)]
struct Node {
    l: u32,
    r: u32,
    size: u32,
    prio: u32,
    flags: u8,
    blen: u8,
}

impl Node {
    #[inline]
    fn aswap(&self) -> usize {
        (self.flags & ASWAP != 0) as usize
    }
    #[inline]
    fn brev(&self) -> usize {
        (self.flags & BREV != 0) as usize
    }
    #[inline]
    fn rev(&self) -> usize {
        (self.flags & REV != 0) as usize
    }
}

#[inline]
fn lt<C: Cost>(a: C, ak: u32, b: C, bk: u32) -> bool {
    a < b || (a == b && ak < bk)
}

#[inline]
fn min_into<C: Cost>(oc: &mut [C], ok: &mut [u32], ac: &[C], ak: &[u32]) {
    for (((o, ko), &c), &k) in oc.iter_mut().zip(ok.iter_mut()).zip(ac).zip(ak) {
        if lt(c, k, *o, *ko) {
            *o = c;
            *ko = k;
        }
    }
}

/// The vectors are far larger than the TLB reach of small pages.
fn big_vec<T: Clone>(len: usize, fill: T) -> Vec<T> {
    let mut v = Vec::with_capacity(len);
    #[cfg(target_os = "linux")]
    {
        const HUGE: usize = 2 << 20;
        let ptr = v.as_mut_ptr() as usize;
        let start = ptr.next_multiple_of(HUGE);
        let end = (ptr + len * std::mem::size_of::<T>()) & !(HUGE - 1);
        if end > start {
            // Advisory only; failure leaves ordinary pages.
            unsafe { libc::madvise(start as *mut libc::c_void, end - start, libc::MADV_HUGEPAGE) };
        }
    }
    v.resize(len, fill);
    v
}

fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Open range update: the middle has been cut out and flipped.
pub(crate) struct Pending {
    a: u32,
    mid: u32,
    c: u32,
}

/// One entry of the in-order walk: slot and whether its labels follow the
/// root frame.
pub(crate) type Entry = (u32, bool);

pub(crate) struct Forest<C> {
    n: usize,
    val: Vec<C>,
    key: Vec<u32>,
    nodes: Vec<Node>,
    rows: Vec<[u32; BLOCK]>,
    sub_c: Vec<C>,
    sub_k: Vec<u32>,
    blk_c: Vec<C>,
    blk_k: Vec<u32>,
    free: Vec<u32>,
    root: u32,
    ticks: u64,
}

impl<C: Cost> Forest<C> {
    /// Room for `n` slots; values start at zero.
    pub fn new(n: usize) -> Self {
        let full = n.div_ceil(BLOCK).max(1);
        // Compaction leaves at most 2 * full + 1 blocks.
        let cap = 3 * full + 8;
        let blank = Node { l: NIL, r: NIL, size: 0, prio: 0, flags: 0, blen: 0 };
        Forest {
            n,
            val: big_vec(2 * n * n, C::ZERO),
            key: vec![0; n],
            nodes: vec![blank; cap],
            rows: vec![[0; BLOCK]; cap],
            sub_c: big_vec(2 * cap * n, C::ZERO),
            sub_k: big_vec(2 * cap * n, 0),
            blk_c: big_vec(2 * cap * n, C::ZERO),
            blk_k: big_vec(2 * cap * n, 0),
            free: (0..cap as u32).rev().collect(),
            root: NIL,
            ticks: 0,
        }
    }

    #[inline]
    fn span(&self, v: u32, phys: usize) -> Range<usize> {
        let s = (v as usize * 2 + phys) * self.n;
        s..s + self.n
    }

    #[inline]
    fn at(&self, row: u32, o: usize, f: usize) -> usize {
        (row as usize * self.n + f) * 2 + o
    }

    /// Stores `P` and `Q` of row `e` against tree `f`.
    #[inline]
    pub fn set_val(&mut self, e: usize, f: usize, p: C, q: C) {
        let i = self.at(e as u32, 0, f);
        self.val[i] = p;
        self.val[i + 1] = q;
    }

    #[inline]
    pub fn val(&self, e: usize, f: usize) -> (C, C) {
        let i = self.at(e as u32, 0, f);
        (self.val[i], self.val[i + 1])
    }

    #[inline]
    pub fn key(&self, e: usize) -> u32 {
        self.key[e]
    }

    #[inline]
    pub fn set_key(&mut self, e: usize, k: u32) {
        self.key[e] = k;
    }

    /// Best partner of tree `f`: orientation 0 if `f`'s labels follow the
    /// root frame, 1 otherwise.
    #[inline]
    pub fn best(&self, f: usize, o: usize) -> (C, u32) {
        let nd = &self.nodes[self.root as usize];
        let i = self.span(self.root, o ^ nd.aswap()).start + f;
        (self.sub_c[i], self.sub_k[i])
    }

    #[inline]
    fn size(&self, v: u32) -> u32 {
        if v == NIL {
            0
        } else {
            self.nodes[v as usize].size
        }
    }

    #[inline]
    fn flip(&mut self, v: u32) {
        let nd = &mut self.nodes[v as usize];
        std::mem::swap(&mut nd.l, &mut nd.r);
        nd.flags ^= REV | BREV | ASWAP;
    }

    #[inline]
    fn push(&mut self, v: u32) {
        let nd = self.nodes[v as usize];
        if nd.flags & REV != 0 {
            if nd.l != NIL {
                self.flip(nd.l);
            }
            if nd.r != NIL {
                self.flip(nd.r);
            }
            self.nodes[v as usize].flags &= !REV;
        }
    }

    /// Restores the size of `v` and marks its vectors stale.
    #[inline]
    fn fix(&mut self, v: u32) {
        let nd = self.nodes[v as usize];
        let size = nd.blen as u32 + self.size(nd.l) + self.size(nd.r);
        let nd = &mut self.nodes[v as usize];
        nd.size = size;
        nd.flags |= DIRTY;
    }

    /// Pulls every dirty node below and including `v`, children first.
    fn settle(&mut self, v: u32) {
        if v == NIL || self.nodes[v as usize].flags & DIRTY == 0 {
            return;
        }
        let nd = self.nodes[v as usize];
        self.settle(nd.l);
        self.settle(nd.r);
        self.pull(v);
    }

    /// Recomputes size and subtree vectors; pending child flips are honoured.
    fn pull(&mut self, v: u32) {
        let nd = self.nodes[v as usize];
        self.nodes[v as usize].size = nd.blen as u32 + self.size(nd.l) + self.size(nd.r);
        self.nodes[v as usize].flags &= !DIRTY;
        for o in 0..2 {
            let out = self.span(v, o ^ nd.aswap());
            let own = self.span(v, o ^ nd.brev());
            let kid = |c: u32| (c != NIL).then(|| self.span(c, o ^ self.nodes[c as usize].aswap() ^ nd.rev()));
            let kids = [kid(nd.l), kid(nd.r)];
            let (bc, bk) = (&self.blk_c[own.clone()], &self.blk_k[own]);
            match kids {
                [None, None] => {
                    self.sub_c[out.clone()].copy_from_slice(bc);
                    self.sub_k[out].copy_from_slice(bk);
                }
                [Some(x), None] | [None, Some(x)] => {
                    let [oc, xc] = self.sub_c.get_disjoint_mut([out.clone(), x.clone()]).expect("distinct nodes");
                    let [ok, xk] = self.sub_k.get_disjoint_mut([out, x]).expect("distinct nodes");
                    oc.copy_from_slice(bc);
                    ok.copy_from_slice(bk);
                    min_into(oc, ok, xc, xk);
                }
                [Some(x), Some(y)] => {
                    let [oc, xc, yc] =
                        self.sub_c.get_disjoint_mut([out.clone(), x.clone(), y.clone()]).expect("distinct nodes");
                    let [ok, xk, yk] = self.sub_k.get_disjoint_mut([out, x, y]).expect("distinct nodes");
                    let it = oc.iter_mut().zip(ok.iter_mut()).zip(bc.iter().zip(bk)).zip(xc.iter().zip(xk.iter()));
                    for ((((o, ko), (&c0, &k0)), (&c1, &k1)), (&c2, &k2)) in it.zip(yc.iter().zip(yk.iter())) {
                        let (mut c, mut k) = (c0, k0);
                        if lt(c1, k1, c, k) {
                            (c, k) = (c1, k1);
                        }
                        if lt(c2, k2, c, k) {
                            (c, k) = (c2, k2);
                        }
                        *o = c;
                        *ko = k;
                    }
                }
            }
        }
    }

    /// Recomputes the block vectors of `v` in its stored frame.
    fn scan_block(&mut self, v: u32) {
        let n = self.n;
        let blen = self.nodes[v as usize].blen as usize;
        let rows = self.rows[v as usize];
        let (s0, s1) = (self.span(v, 0), self.span(v, 1));
        let [c0, c1] = self.blk_c.get_disjoint_mut([s0.clone(), s1.clone()]).expect("distinct spans");
        let [k0, k1] = self.blk_k.get_disjoint_mut([s0, s1]).expect("distinct spans");
        for (i, &ent) in rows[..blen].iter().enumerate() {
            let row = (ent & !RO) as usize;
            let ro = ent & RO != 0;
            let src = &self.val[row * 2 * n..(row + 1) * 2 * n];
            let k = self.key[row];
            let it = c0.iter_mut().zip(k0.iter_mut()).zip(c1.iter_mut().zip(k1.iter_mut()));
            for (((a, ka), (b, kb)), pq) in it.zip(src.chunks_exact(2)) {
                let (x, y) = if ro { (pq[1], pq[0]) } else { (pq[0], pq[1]) };
                if i == 0 || lt(x, k, *a, *ka) {
                    *a = x;
                    *ka = k;
                }
                if i == 0 || lt(y, k, *b, *kb) {
                    *b = y;
                    *kb = k;
                }
            }
        }
    }

    /// Block minimum of tree `f` for stored-frame orientation `phys`.
    fn scan_column(&self, v: u32, phys: usize, f: usize) -> (C, u32) {
        let nd = &self.nodes[v as usize];
        let mut best = (C::INFINITY, u32::MAX);
        for (i, &ent) in self.rows[v as usize][..nd.blen as usize].iter().enumerate() {
            let row = ent & !RO;
            let c = self.val[self.at(f as u32, phys ^ (ent >> 31) as usize, row as usize)];
            let k = self.key[row as usize];
            if i == 0 || lt(c, k, best.0, best.1) {
                best = (c, k);
            }
        }
        best
    }

    fn alloc(&mut self, prio: u32) -> u32 {
        let v = self.free.pop().expect("node budget exhausted");
        self.nodes[v as usize] = Node { l: NIL, r: NIL, size: 0, prio, flags: 0, blen: 0 };
        v
    }

    fn fresh_prio(&mut self) -> u32 {
        self.ticks += 1;
        (mix(self.ticks) >> 32) as u32
    }

    /// Treap over blocks given in order; each block's vectors must be current.
    fn link(&mut self, blocks: &[u32]) {
        let mut stack: Vec<u32> = Vec::with_capacity(64);
        for &v in blocks {
            let prio = self.nodes[v as usize].prio;
            let mut last = NIL;
            while let Some(&top) = stack.last() {
                if self.nodes[top as usize].prio >= prio {
                    break;
                }
                last = top;
                stack.pop();
                self.pull(last);
            }
            self.nodes[v as usize].l = last;
            self.nodes[v as usize].r = NIL;
            if let Some(&top) = stack.last() {
                self.nodes[top as usize].r = v;
            }
            stack.push(v);
        }
        self.root = stack.first().copied().unwrap_or(NIL);
        while let Some(v) = stack.pop() {
            self.pull(v);
        }
    }

    /// Rebuilds the shape over `slots` in order, all labels forward.
    pub fn build(&mut self, slots: &[u32]) {
        self.free = (0..self.nodes.len() as u32).rev().collect();
        let mut blocks = Vec::with_capacity(slots.len().div_ceil(BLOCK));
        for chunk in slots.chunks(BLOCK) {
            let prio = self.fresh_prio();
            let v = self.alloc(prio);
            self.rows[v as usize][..chunk.len()].copy_from_slice(chunk);
            self.nodes[v as usize].blen = chunk.len() as u8;
            self.scan_block(v);
            blocks.push(v);
        }
        self.link(&blocks);
    }

    /// Merges runs of short neighbouring blocks and relinks the treap.
    fn compact(&mut self) {
        let mut order = Vec::new();
        self.blocks_in_order(self.root, false, &mut order);
        let mut out: Vec<u32> = Vec::with_capacity(order.len());
        let mut cur: Option<u32> = None;
        for (v, eff) in order {
            let len = self.nodes[v as usize].blen as usize;
            self.normalize(v, eff);
            if let Some(x) = cur {
                if self.nodes[x as usize].blen as usize + len <= BLOCK {
                    self.absorb(x, v);
                    continue;
                }
                out.push(x);
            }
            cur = Some(v);
        }
        out.extend(cur);
        for &v in &out {
            self.nodes[v as usize].prio = self.fresh_prio();
        }
        self.link(&out);
    }

    /// Rewrites block `v` so its stored frame is the root frame.
    fn normalize(&mut self, v: u32, eff: bool) {
        if eff {
            let len = self.nodes[v as usize].blen as usize;
            let rows = &mut self.rows[v as usize][..len];
            rows.reverse();
            for r in rows.iter_mut() {
                *r ^= RO;
            }
            let (a, b) = (self.span(v, 0), self.span(v, 1));
            let (lo, hi) = self.blk_c.split_at_mut(b.start);
            lo[a.clone()].swap_with_slice(&mut hi[..self.n]);
            let (lo, hi) = self.blk_k.split_at_mut(b.start);
            lo[a].swap_with_slice(&mut hi[..self.n]);
        }
        self.nodes[v as usize].flags = 0;
    }

    /// Appends normalized block `v` to normalized block `x` and frees `v`.
    fn absorb(&mut self, x: u32, v: u32) {
        let (xl, vl) = (self.nodes[x as usize].blen as usize, self.nodes[v as usize].blen as usize);
        let moved = self.rows[v as usize];
        self.rows[x as usize][xl..xl + vl].copy_from_slice(&moved[..vl]);
        self.nodes[x as usize].blen = (xl + vl) as u8;
        for phys in 0..2 {
            let (xs, vs) = (self.span(x, phys), self.span(v, phys));
            let [oc, ac] = self.blk_c.get_disjoint_mut([xs.clone(), vs.clone()]).expect("distinct nodes");
            let [ok, ak] = self.blk_k.get_disjoint_mut([xs, vs]).expect("distinct nodes");
            min_into(oc, ok, ac, ak);
        }
        self.free.push(v);
    }

    /// Blocks in order with their effective reversal against the root frame.
    fn blocks_in_order(&self, v: u32, flipped: bool, out: &mut Vec<(u32, bool)>) {
        if v == NIL {
            return;
        }
        let nd = &self.nodes[v as usize];
        let (l, r) = if flipped { (nd.r, nd.l) } else { (nd.l, nd.r) };
        let below = flipped ^ (nd.rev() != 0);
        self.blocks_in_order(l, below, out);
        out.push((v, flipped ^ (nd.brev() != 0)));
        self.blocks_in_order(r, below, out);
    }

    /// Cuts the block of `t` after `o` entries in its effective order.
    fn cut_block(&mut self, t: u32, o: usize) -> (u32, u32) {
        let nd = self.nodes[t as usize];
        let len = nd.blen as usize;
        let brev = nd.brev() != 0;
        let w = self.alloc(nd.prio);
        self.nodes[w as usize].flags = nd.flags & BREV;
        let suffix_moves = len - o <= o;
        let moved = if suffix_moves { len - o } else { o };
        // The moved half is stored in front iff exactly one of "suffix
        // moves" and "stored reversed" holds.
        let from_front = suffix_moves == brev;
        let src = self.rows[t as usize];
        let keep = len - moved;
        if from_front {
            self.rows[w as usize][..moved].copy_from_slice(&src[..moved]);
            self.rows[t as usize].copy_within(moved..len, 0);
        } else {
            self.rows[w as usize][..moved].copy_from_slice(&src[keep..len]);
        }
        self.nodes[t as usize].blen = keep as u8;
        self.nodes[w as usize].blen = moved as u8;
        self.scan_block(t);
        self.scan_block(w);
        if suffix_moves {
            (t, w)
        } else {
            (w, t)
        }
    }

    fn split(&mut self, t: u32, k: u32) -> (u32, u32) {
        if t == NIL {
            return (NIL, NIL);
        }
        self.push(t);
        let nd = self.nodes[t as usize];
        let ls = self.size(nd.l);
        let bl = nd.blen as u32;
        if k <= ls {
            let (a, b) = self.split(nd.l, k);
            self.nodes[t as usize].l = b;
            self.fix(t);
            (a, t)
        } else if k >= ls + bl {
            let (a, b) = self.split(nd.r, k - ls - bl);
            self.nodes[t as usize].r = a;
            self.fix(t);
            (t, b)
        } else {
            let (left, right) = self.cut_block(t, (k - ls) as usize);
            self.nodes[left as usize].l = nd.l;
            self.nodes[left as usize].r = NIL;
            self.nodes[right as usize].l = NIL;
            self.nodes[right as usize].r = nd.r;
            self.fix(left);
            self.fix(right);
            (left, right)
        }
    }

    fn merge(&mut self, a: u32, b: u32) -> u32 {
        if a == NIL {
            return b;
        }
        if b == NIL {
            return a;
        }
        if self.nodes[a as usize].prio >= self.nodes[b as usize].prio {
            self.push(a);
            let r = self.nodes[a as usize].r;
            let m = self.merge(r, b);
            self.nodes[a as usize].r = m;
            self.fix(a);
            a
        } else {
            self.push(b);
            let l = self.nodes[b as usize].l;
            let m = self.merge(a, l);
            self.nodes[b as usize].l = m;
            self.fix(b);
            b
        }
    }

    /// Cuts out positions `lo..=hi` and flips them.
    pub fn reverse(&mut self, lo: u32, hi: u32) -> Pending {
        if self.free.len() < 2 {
            self.compact();
        }
        let (a, b) = self.split(self.root, lo);
        let (mid, c) = self.split(b, hi - lo + 1);
        self.flip(mid);
        self.root = NIL;
        Pending { a, mid, c }
    }

    /// Walks to the first (`last = false`) or last node of `v`'s order.
    fn descend(&mut self, mut v: u32, last: bool, path: &mut Vec<u32>) -> u32 {
        loop {
            self.push(v);
            path.push(v);
            let nd = self.nodes[v as usize];
            let next = if last { nd.r } else { nd.l };
            if next == NIL {
                return v;
            }
            v = next;
        }
    }

    /// Replaces the entry at one end of block `v`; returns the old key.
    fn replace_end(&mut self, v: u32, first: bool, slot: u32) -> u32 {
        let nd = self.nodes[v as usize];
        let i = if first == (nd.brev() == 0) { 0 } else { nd.blen as usize - 1 };
        let old = self.rows[v as usize][i] & !RO;
        self.rows[v as usize][i] = slot | if nd.brev() != 0 { RO } else { 0 };
        self.key[old as usize]
    }

    /// Puts `lo` and `hi` (slot, key) at both ends of the flipped range,
    /// labels following the root frame, and closes the update. Both slots
    /// must already hold their new values, as rows and as columns.
    pub fn finish(&mut self, p: Pending, lo: (u32, u32), hi: (u32, u32)) {
        let (mut pl, mut pr) = (Vec::new(), Vec::new());
        let vl = self.descend(p.mid, false, &mut pl);
        let vr = self.descend(p.mid, true, &mut pr);
        let old_lo = self.replace_end(vl, true, lo.0);
        let old_hi = self.replace_end(vr, false, hi.0);
        self.key[lo.0 as usize] = lo.1;
        self.key[hi.0 as usize] = hi.1;
        if vl == vr {
            self.refresh(vl, &[old_lo, old_hi], &[lo.0, hi.0]);
        } else {
            self.refresh(vl, &[old_lo], &[lo.0]);
            self.refresh(vr, &[old_hi], &[hi.0]);
        }
        for &v in pl.iter().chain(&pr) {
            self.nodes[v as usize].flags |= DIRTY;
        }
        let m = self.merge(p.a, p.mid);
        self.root = self.merge(m, p.c);
        self.settle(self.root);
    }

    /// Updates the block vectors of `v` after entries keyed `old` were
    /// replaced by `slots`.
    fn refresh(&mut self, v: u32, old: &[u32], slots: &[u32]) {
        let blen = self.nodes[v as usize].blen as usize;
        let fresh: Vec<(u32, usize)> = self.rows[v as usize][..blen]
            .iter()
            .filter(|&&e| slots.contains(&(e & !RO)))
            .map(|&e| (e & !RO, (e >> 31) as usize))
            .collect();
        for phys in 0..2 {
            let base = self.span(v, phys).start;
            for f in 0..self.n {
                let k = self.blk_k[base + f];
                let best = if old.contains(&k) {
                    self.scan_column(v, phys, f)
                } else {
                    let mut best = (self.blk_c[base + f], k);
                    for &(row, ro) in &fresh {
                        let c = self.val[self.at(row, phys ^ ro, f)];
                        let kk = self.key[row as usize];
                        if lt(c, kk, best.0, best.1) {
                            best = (c, kk);
                        }
                    }
                    best
                };
                self.blk_c[base + f] = best.0;
                self.blk_k[base + f] = best.1;
            }
        }
    }

    /// Recomputes every vector entry of tree `f` from `val`.
    pub fn rebuild_column(&mut self, f: usize) {
        self.column_rec(self.root, f);
    }

    fn column_rec(&mut self, v: u32, f: usize) {
        if v == NIL {
            return;
        }
        let nd = self.nodes[v as usize];
        self.column_rec(nd.l, f);
        self.column_rec(nd.r, f);
        for phys in 0..2 {
            let (c, k) = self.scan_column(v, phys, f);
            let i = self.span(v, phys).start + f;
            self.blk_c[i] = c;
            self.blk_k[i] = k;
        }
        for o in 0..2 {
            let best = self.combine_at(v, o, f);
            let i = self.span(v, o ^ nd.aswap()).start + f;
            self.sub_c[i] = best.0;
            self.sub_k[i] = best.1;
        }
    }

    /// What a pull would store for tree `f`, orientation `o`, at node `v`.
    fn combine_at(&self, v: u32, o: usize, f: usize) -> (C, u32) {
        let nd = &self.nodes[v as usize];
        let i = self.span(v, o ^ nd.brev()).start + f;
        let mut best = (self.blk_c[i], self.blk_k[i]);
        for ch in [nd.l, nd.r] {
            if ch != NIL {
                let j = self.span(ch, o ^ self.nodes[ch as usize].aswap() ^ nd.rev()).start + f;
                if lt(self.sub_c[j], self.sub_k[j], best.0, best.1) {
                    best = (self.sub_c[j], self.sub_k[j]);
                }
            }
        }
        best
    }

    /// Slots in order, each with whether its labels follow the root frame.
    pub fn entries(&self) -> Vec<Entry> {
        let mut blocks = Vec::new();
        self.blocks_in_order(self.root, false, &mut blocks);
        let mut out = Vec::with_capacity(self.n);
        for (v, eff) in blocks {
            let len = self.nodes[v as usize].blen as usize;
            let rows = &self.rows[v as usize][..len];
            let mut push = |e: u32| out.push((e & !RO, (e & RO != 0) == eff));
            if eff {
                rows.iter().rev().for_each(|&e| push(e));
            } else {
                rows.iter().for_each(|&e| push(e));
            }
        }
        out
    }

    /// Checks sizes, heap order and every block and subtree vector.
    pub fn audit(&self) -> Result<(), String> {
        let n = self.audit_rec(self.root)?;
        if n as usize != self.n {
            return Err(format!("tree holds {n} edges, expected {}", self.n));
        }
        Ok(())
    }

    fn audit_rec(&self, v: u32) -> Result<u32, String> {
        if v == NIL {
            return Ok(0);
        }
        let nd = self.nodes[v as usize];
        if nd.blen == 0 {
            return Err(format!("empty block at node {v}"));
        }
        if nd.flags & DIRTY != 0 {
            return Err(format!("node {v} left dirty"));
        }
        let mut size = nd.blen as u32;
        for ch in [nd.l, nd.r] {
            if ch != NIL {
                if self.nodes[ch as usize].prio > nd.prio {
                    return Err(format!("heap order violated at node {v}"));
                }
                size += self.audit_rec(ch)?;
            }
        }
        if size != nd.size {
            return Err(format!("size mismatch at node {v}"));
        }
        for f in 0..self.n {
            for phys in 0..2 {
                let i = self.span(v, phys).start + f;
                if (self.blk_c[i], self.blk_k[i]) != self.scan_column(v, phys, f) {
                    return Err(format!("block minimum mismatch at node {v}, tree {f}"));
                }
            }
            for o in 0..2 {
                let i = self.span(v, o ^ nd.aswap()).start + f;
                if (self.sub_c[i], self.sub_k[i]) != self.combine_at(v, o, f) {
                    return Err(format!("aggregate mismatch at node {v}, tree {f}"));
                }
            }
        }
        Ok(size)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn cost(e: u32, f: u32, o: u32, salt: i64) -> i64 {
        let (a, b) = (e.min(f) as u64, e.max(f) as u64);
        (mix((a << 40) ^ (b << 8) ^ o as u64 ^ ((salt as u64) << 20)) % 97) as i64 - 48
    }

    /// Symmetric values, as the engine produces.
    fn fill(fr: &mut Forest<i64>, n: usize, e: u32, salt: i64) {
        for f in 0..n as u32 {
            let (p, q) = (cost(e, f, 0, salt), cost(e, f, 1, salt));
            fr.set_val(e as usize, f as usize, p, q);
            fr.set_val(f as usize, e as usize, p, q);
        }
    }

    fn fresh(n: usize) -> Forest<i64> {
        let mut fr = Forest::<i64>::new(n);
        for e in 0..n as u32 {
            fill(&mut fr, n, e, 0);
            fr.set_key(e as usize, e);
        }
        fr.build(&(0..n as u32).collect::<Vec<_>>());
        fr
    }

    fn model_best(fr: &Forest<i64>, seq: &[Entry], f: usize, o: usize) -> (i64, u32) {
        seq.iter()
            .map(|&(e, fwd)| {
                let (p, q) = fr.val(e as usize, f);
                (if fwd == (o == 0) { p } else { q }, fr.key(e as usize))
            })
            .min()
            .unwrap()
    }

    proptest! {
        #[test]
        fn matches_sequence_model(n in 3usize..120, ops in prop::collection::vec((0usize..1000, 0usize..1000, 0i64..1000), 0..40)) {
            let mut fr = fresh(n);
            let mut model: Vec<Entry> = (0..n as u32).map(|e| (e, true)).collect();
            let mut next_key = n as u32;
            for (x, y, salt) in ops {
                let (lo, hi) = ((x % n).min(y % n), (x % n).max(y % n));
                if lo == hi {
                    continue;
                }
                let (s_lo, s_hi) = (model[hi].0, model[lo].0);
                let p = fr.reverse(lo as u32, hi as u32);
                fill(&mut fr, n, s_lo, salt);
                fill(&mut fr, n, s_hi, salt + 1);
                fr.finish(p, (s_lo, next_key), (s_hi, next_key + 1));
                fr.rebuild_column(s_lo as usize);
                fr.rebuild_column(s_hi as usize);
                next_key += 2;
                model[lo..=hi].reverse();
                for e in &mut model[lo..=hi] {
                    e.1 = !e.1;
                }
                model[lo] = (s_lo, true);
                model[hi] = (s_hi, true);
                prop_assert_eq!(fr.entries(), model.clone());
                prop_assert_eq!(fr.audit(), Ok(()));
                for f in 0..n {
                    for o in 0..2 {
                        prop_assert_eq!(fr.best(f, o), model_best(&fr, &model, f, o));
                    }
                }
            }
        }
    }

    #[test]
    fn compaction_keeps_sequence() {
        let n = 200;
        let mut fr = fresh(n);
        let mut model: Vec<Entry> = (0..n as u32).map(|e| (e, true)).collect();
        for i in 0..400u32 {
            let lo = (mix(i as u64) % 150) as usize;
            let hi = lo + 1 + (mix(i as u64 + 7) % 49) as usize;
            let (s_lo, s_hi) = (model[hi].0, model[lo].0);
            let (k_lo, k_hi) = (fr.key(s_lo as usize), fr.key(s_hi as usize));
            let p = fr.reverse(lo as u32, hi as u32);
            fr.finish(p, (s_lo, k_lo), (s_hi, k_hi));
            model[lo..=hi].reverse();
            for e in &mut model[lo..=hi] {
                e.1 = !e.1;
            }
            model[lo].1 = true;
            model[hi].1 = true;
        }
        assert_eq!(fr.entries(), model);
        assert_eq!(fr.audit(), Ok(()));
    }
}
