use super::path_tree::{Forest, Pending};
use super::{better, check_size, edge_key, exchange_delta, pair_key, TwoOptMove, TwoOptSearch};
use crate::error::{Error, Result};
use crate::model::{Cost, Metric, Tour};

/// One path tree per tour edge `f`, holding the rest of the tour. Element
/// `e` of the tree for `f` carries the length change of the 2-opt move on
/// `{f, e}`, so the root minimum is the best partner of `f`. The trees share
/// their shape; see `path_tree`.
pub struct FastTwoOpt<'a, M: Metric> {
    m: &'a M,
    n: usize,
    order: Vec<usize>,
    pos: Vec<usize>,
    forest: Forest<M::Cost>,
    /// Slot of the edge at each tour position.
    slot_at: Vec<u32>,
    /// Fixed endpoint labels of each slot's edge.
    lab: Vec<(usize, usize)>,
    /// Whether a slot's labels follow the tour direction.
    fwd: Vec<bool>,
}

impl<'a, M: Metric> FastTwoOpt<'a, M> {
    pub fn new(m: &'a M, tour: &Tour) -> Result<Self> {
        check_size(m, tour)?;
        let n = tour.len();
        if n < 4 {
            return Err(Error::TooSmall { need: 4, got: n });
        }
        let order = tour.order().to_vec();
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let lab: Vec<(usize, usize)> = (0..n).map(|i| (order[i], order[(i + 1) % n])).collect();
        let mut e = FastTwoOpt {
            m,
            n,
            order,
            pos,
            forest: Forest::new(n),
            slot_at: (0..n as u32).collect(),
            lab,
            fwd: vec![true; n],
        };
        for s in 0..n {
            let (u, v) = e.lab[s];
            e.forest.set_key(s, edge_key(u, v, n));
            for f in 0..s {
                let (p, q) = e.pq(f, s);
                e.forest.set_val(s, f, p, q);
                e.forest.set_val(f, s, p, q);
            }
            e.forest.set_val(s, s, M::Cost::INFINITY, M::Cost::INFINITY);
        }
        e.forest.build(&e.slot_at);
        Ok(e)
    }

    /// Costs of the moves pairing tree `f` with element `e`, for `e` as
    /// labelled and reversed.
    #[inline]
    fn pq(&self, f: usize, e: usize) -> (M::Cost, M::Cost) {
        if f == e {
            return (M::Cost::INFINITY, M::Cost::INFINITY);
        }
        let ((x, y), (u, v)) = (self.lab[f], self.lab[e]);
        (exchange_delta(self.m, x, y, u, v), exchange_delta(self.m, x, y, v, u))
    }

    /// Writes row and column `e`; the costs are symmetric in the two edges.
    fn fill(&mut self, e: usize) {
        for f in 0..self.n {
            let (p, q) = self.pq(f, e);
            self.forest.set_val(e, f, p, q);
            self.forest.set_val(f, e, p, q);
        }
    }

    /// Compares the shared trees with the tour they should represent and
    /// every root minimum with a scan over all partners.
    pub fn audit(&self) -> std::result::Result<(), String> {
        let n = self.n;
        self.forest.audit()?;
        let entries = self.forest.entries();
        for (i, &(s, follows)) in entries.iter().enumerate() {
            let s = s as usize;
            if s != self.slot_at[i] as usize {
                return Err(format!("position {i} holds slot {s}, expected {}", self.slot_at[i]));
            }
            if follows != self.fwd[s] {
                return Err(format!("slot {s} orientation disagrees with its flag parity"));
            }
            let (a, b) = (self.order[i], self.order[(i + 1) % n]);
            let want = if follows { (a, b) } else { (b, a) };
            if self.lab[s] != want {
                return Err(format!("slot {s} labels do not match the tour"));
            }
            if self.forest.key(s) != edge_key(a, b, n) {
                return Err(format!("slot {s} has a stale key"));
            }
        }
        for f in 0..n {
            let mut best: Option<(M::Cost, u32)> = None;
            for e in 0..n {
                let (p, q) = self.pq(f, e);
                if self.forest.val(e, f) != (p, q) {
                    return Err(format!("stale cost of element {e} in tree {f}"));
                }
                if e != f {
                    let c = if self.fwd[e] == self.fwd[f] { p } else { q };
                    let k = self.forest.key(e);
                    if best.is_none_or(|(bc, bk)| c < bc || (c == bc && k < bk)) {
                        best = Some((c, k));
                    }
                }
            }
            if Some(self.root_best(f)) != best {
                return Err(format!("root minimum of tree {f} differs from a full scan"));
            }
        }
        Ok(())
    }

    #[inline]
    fn root_best(&self, f: usize) -> (M::Cost, u32) {
        self.forest.best(f, if self.fwd[f] { 0 } else { 1 })
    }
}

impl<M: Metric> TwoOptSearch<M> for FastTwoOpt<'_, M> {
    fn best_improving_move(&mut self) -> Option<TwoOptMove<M::Cost>> {
        let n = self.n;
        // (delta, pair key, tree, partner key)
        #[allow(clippy::type_complexity)]
        let mut best: Option<(M::Cost, (u32, u32), usize, u32)> = None;
        for f in 0..n {
            let (d, ek) = self.root_best(f);
            let key = pair_key(self.forest.key(f), ek);
            if best.is_none_or(|(bd, bk, _, _)| better(d, key, bd, bk)) {
                best = Some((d, key, f, ek));
            }
        }
        let (delta, key, f, ek) = best?;
        if !(delta < M::Cost::ZERO) {
            return None;
        }
        let (u, v) = self.lab[f];
        let pf = if (self.pos[u] + 1) % n == self.pos[v] { self.pos[u] } else { self.pos[v] };
        let (u, v) = (ek as usize / n, ek as usize % n);
        let pe = if (self.pos[u] + 1) % n == self.pos[v] { self.pos[u] } else { self.pos[v] };
        Some(TwoOptMove { p: pf.min(pe), q: pf.max(pe), delta, key })
    }

    fn apply(&mut self, mv: &TwoOptMove<M::Cost>) {
        let n = self.n;
        let (p, q) = (mv.p, mv.q);
        let (a, b, c, d) = (self.order[p], self.order[p + 1], self.order[q], self.order[(q + 1) % n]);
        let (s1, s2) = (self.slot_at[p] as usize, self.slot_at[q] as usize);
        let pending: Pending = self.forest.reverse(p as u32, q as u32);
        // Slot s1 becomes {a, c} at p, slot s2 becomes {b, d} at q.
        self.lab[s1] = (a, c);
        self.lab[s2] = (b, d);
        self.fwd[s1] = true;
        self.fwd[s2] = true;
        self.fill(s1);
        self.fill(s2);
        self.forest.finish(pending, (s1 as u32, edge_key(a, c, n)), (s2 as u32, edge_key(b, d, n)));
        self.order[p + 1..=q].reverse();
        for i in p + 1..=q {
            self.pos[self.order[i]] = i;
        }
        self.slot_at[p + 1..q].reverse();
        for &s in &self.slot_at[p + 1..q] {
            self.fwd[s as usize] = !self.fwd[s as usize];
        }
        self.forest.rebuild_column(s1);
        self.forest.rebuild_column(s2);
    }

    fn order(&self) -> &[usize] {
        &self.order
    }
}
