//! Repeated best-improvement 2-opt.
//!
//! Both searches pick, among all pairs of non-adjacent tour edges, the pair
//! with the smallest change in tour length, breaking ties by the pair of
//! vertex-pair keys. Because the change is evaluated with one shared
//! expression that is exactly symmetric in its two edges, the fast engine
//! and the naive scan choose identical moves, float for float.

mod engine;
mod naive;
mod path_tree;

use std::time::Instant;

use crate::error::{Error, Result};
use crate::model::{Cost, Metric, Tour};

pub use engine::FastTwoOpt;
pub use naive::NaiveTwoOpt;

/// Removing tour edges at positions `p < q` and reconnecting
/// `order[p]-order[q]`, `order[p+1]-order[q+1]` reverses `order[p+1..=q]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoOptMove<C> {
    pub p: usize,
    pub q: usize,
    pub delta: C,
    /// Vertex-pair keys of the two removed edges, smaller first.
    pub key: (u32, u32),
}

/// Common interface of the fast engine and the naive reference.
pub trait TwoOptSearch<M: Metric> {
    /// Best move over all non-adjacent edge pairs if it shortens the tour.
    fn best_improving_move(&mut self) -> Option<TwoOptMove<M::Cost>>;
    fn apply(&mut self, mv: &TwoOptMove<M::Cost>);
    fn order(&self) -> &[usize];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EngineKind {
    Fast,
    Naive,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IterationRecord<C> {
    pub iter: usize,
    pub delta: C,
    /// Tour length after the move.
    pub cost: C,
    /// Wall time of search plus update for this iteration.
    pub micros: u128,
    pub key: (u32, u32),
}

#[derive(Clone, Debug)]
pub struct LocalSearchResult<C> {
    pub tour: Tour,
    pub cost: C,
    pub trace: Vec<IterationRecord<C>>,
    /// Time spent building the search structure.
    pub init_micros: u128,
}

/// Key of the undirected edge `{u, v}`; unique for `n <= 65535`.
#[inline]
pub fn edge_key(u: usize, v: usize, n: usize) -> u32 {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    (a * n + b) as u32
}

#[inline]
pub(crate) fn pair_key(k1: u32, k2: u32) -> (u32, u32) {
    if k1 <= k2 {
        (k1, k2)
    } else {
        (k2, k1)
    }
}

/// Length change of replacing `{x,y}` and `{u,v}` by `{x,u}` and `{y,v}`.
/// Swapping the roles of the two edges yields the same bits.
#[inline]
pub fn exchange_delta<M: Metric>(m: &M, x: usize, y: usize, u: usize, v: usize) -> M::Cost {
    (m.dist(x, u) + m.dist(y, v)) - (m.dist(x, y) + m.dist(u, v))
}

/// True if `(d1, k1)` orders strictly before `(d2, k2)`.
#[inline]
pub(crate) fn better<C: Cost>(d1: C, k1: (u32, u32), d2: C, k2: (u32, u32)) -> bool {
    d1 < d2 || (d1 == d2 && k1 < k2)
}

pub(crate) fn check_size<M: Metric>(m: &M, tour: &Tour) -> Result<()> {
    let n = m.size();
    if tour.len() != n {
        return Err(Error::SizeMismatch { expected: n, got: tour.len() });
    }
    if n > u16::MAX as usize {
        return Err(Error::InvalidArgument(format!("2-opt supports n <= 65535, got {n}")));
    }
    Ok(())
}

/// Applies improving best moves until none is left or `max_iters` is reached.
pub fn repeated_2opt<M: Metric>(
    m: &M,
    tour: &Tour,
    engine: EngineKind,
    max_iters: Option<usize>,
) -> Result<LocalSearchResult<M::Cost>> {
    check_size(m, tour)?;
    let t0 = Instant::now();
    match engine {
        EngineKind::Fast if tour.len() < 4 => {
            let cost = tour.cost(m);
            Ok(LocalSearchResult { tour: tour.clone(), cost, trace: Vec::new(), init_micros: 0 })
        }
        EngineKind::Fast => {
            let mut e = FastTwoOpt::new(m, tour)?;
            let init = t0.elapsed().as_micros();
            Ok(drive(m, &mut e, max_iters, init))
        }
        EngineKind::Naive => {
            let mut e = NaiveTwoOpt::new(m, tour)?;
            let init = t0.elapsed().as_micros();
            Ok(drive(m, &mut e, max_iters, init))
        }
    }
}

fn drive<M: Metric, S: TwoOptSearch<M>>(
    m: &M,
    s: &mut S,
    max_iters: Option<usize>,
    init_micros: u128,
) -> LocalSearchResult<M::Cost> {
    let mut cost = Tour::new(s.order().to_vec()).expect("engine keeps a permutation").cost(m);
    let mut trace = Vec::new();
    let limit = max_iters.unwrap_or(usize::MAX);
    while trace.len() < limit {
        let t = Instant::now();
        let Some(mv) = s.best_improving_move() else { break };
        s.apply(&mv);
        let micros = t.elapsed().as_micros();
        cost = cost + mv.delta;
        trace.push(IterationRecord { iter: trace.len() + 1, delta: mv.delta, cost, micros, key: mv.key });
    }
    let tour = Tour::new(s.order().to_vec()).expect("engine keeps a permutation");
    LocalSearchResult { tour, cost, trace, init_micros }
}
