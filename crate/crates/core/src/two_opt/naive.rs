use super::{better, check_size, edge_key, exchange_delta, pair_key, TwoOptMove, TwoOptSearch};
use crate::error::Result;
use crate::model::{Cost, Metric, Tour};

/// Reference search: scans all `O(n^2)` edge pairs every iteration.
pub struct NaiveTwoOpt<'a, M: Metric> {
    m: &'a M,
    order: Vec<usize>,
}

impl<'a, M: Metric> NaiveTwoOpt<'a, M> {
    pub fn new(m: &'a M, tour: &Tour) -> Result<Self> {
        check_size(m, tour)?;
        Ok(NaiveTwoOpt { m, order: tour.order().to_vec() })
    }
}

impl<M: Metric> TwoOptSearch<M> for NaiveTwoOpt<'_, M> {
    fn best_improving_move(&mut self) -> Option<TwoOptMove<M::Cost>> {
        let n = self.order.len();
        if n < 4 {
            return None;
        }
        let t = &self.order;
        let m = self.m;
        let mut best: Option<TwoOptMove<M::Cost>> = None;
        let mut best_d = M::Cost::INFINITY;
        for p in 0..n - 2 {
            let (a, b) = (t[p], t[p + 1]);
            let q_end = if p == 0 { n - 1 } else { n };
            for q in p + 2..q_end {
                let (c, d) = (t[q], t[(q + 1) % n]);
                let delta = exchange_delta(m, a, b, c, d);
                if delta <= best_d {
                    let key = pair_key(edge_key(a, b, n), edge_key(c, d, n));
                    let cur = best.map_or((u32::MAX, u32::MAX), |b| b.key);
                    if better(delta, key, best_d, cur) {
                        best_d = delta;
                        best = Some(TwoOptMove { p, q, delta, key });
                    }
                }
            }
        }
        best.filter(|mv| mv.delta < M::Cost::ZERO)
    }

    fn apply(&mut self, mv: &TwoOptMove<M::Cost>) {
        self.order[mv.p + 1..=mv.q].reverse();
    }

    fn order(&self) -> &[usize] {
        &self.order
    }
}
