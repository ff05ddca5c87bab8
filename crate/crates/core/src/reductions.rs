//! Reductions between 3-opt detection and negative edge-weighted triangle.
//!
//! Vertices are 0-based throughout; `v_i` in the docs below is vertex `i - 1`.

use crate::error::{Error, Result};
use crate::kopt::{best_kmove_bruteforce, enumerate_feasible_signatures, for_each_kmove, KMove, Signature};
use crate::model::{Metric, Tour, WeightedGraph, MAX_ABS_WEIGHT};

/// Lexicographically smallest `(i, j, k)`, `i < j < k`, with
/// `w(i,j) + w(i,k) + w(j,k) < 0`.
pub fn negative_triangle_bruteforce(g: &WeightedGraph) -> Option<(usize, usize, usize)> {
    let n = g.n();
    for i in 0..n {
        for j in i + 1..n {
            let wij = g.weight(i, j);
            for k in j + 1..n {
                if wij + g.weight(i, k) + g.weight(j, k) < 0 {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

fn checked_multiple(m: i64, c: i64, extra: i64) -> Result<i64> {
    let v = (m as i128) * (c as i128) + extra as i128;
    if v > MAX_ABS_WEIGHT as i128 {
        return Err(Error::Overflow(format!("{c}M + {extra} with M = {m} exceeds 2^55")));
    }
    Ok(v as i64)
}

/// Builds the 3-opt instance on `a_1, b_1, ..., a_n, b_n` (vertex `2i` is
/// `a_{i+1}`, `2i + 1` is `b_{i+1}`) with the tour in that order.
///
/// `d(a_i,b_i) = 0`, tour connectors `{b_i, a_{i+1}}` and `{b_n, a_1}` get
/// `-3M`, other mixed pairs copy `w(v_i, v_j)`, same-letter pairs get `3M`.
/// The wrap connector `{b_n, a_1}` also matches the rule for `a_i, b_j`
/// with `i < j`; the connector rule takes precedence.
pub fn nt_to_3opt(g: &WeightedGraph) -> Result<(WeightedGraph, Tour)> {
    let n = g.n();
    if n < 3 {
        return Err(Error::TooSmall { need: 3, got: n });
    }
    let m = g.max_abs_weight();
    let big = checked_multiple(m, 3, 0)?;
    let h = WeightedGraph::from_fn(2 * n, |x, y| {
        // x < y
        let (i, j) = (x / 2, y / 2);
        match (x % 2, y % 2) {
            _ if i == j => 0,
            (0, 0) | (1, 1) => big,
            (1, 0) if j == i + 1 => -big,
            (0, 1) if i == 0 && j == n - 1 => -big,
            _ => g.weight(i, j),
        }
    })?;
    Ok((h, Tour::identity(2 * n)))
}

/// One way of closing the three gaps of a proper 3-move: the inserted edges
/// are `{a_l(ab), b_r(ab)}`, `{a_l(ac), c_r(ac)}` and `{b_l(bc), c_r(bc)}`,
/// where gap `a` is the removed edge `{a_0, a_1}` and so on along the tour.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CharacteristicBits {
    pub l_ab: u8,
    pub r_ab: u8,
    pub l_ac: u8,
    pub r_ac: u8,
    pub l_bc: u8,
    pub r_bc: u8,
}

impl CharacteristicBits {
    fn from_mask(mask: u8) -> Self {
        let b = |t: u8| (mask >> t) & 1;
        CharacteristicBits { l_ab: b(5), r_ab: b(4), l_ac: b(3), r_ac: b(2), l_bc: b(1), r_bc: b(0) }
    }

    /// The same reconnection as a 3-move signature (labels `a_0, a_1, b_0,
    /// b_1, c_0, c_1` are `1..=6`).
    pub fn signature(&self) -> Option<Signature> {
        let a = |t: u8| 1 + t as usize;
        let b = |t: u8| 3 + t as usize;
        let c = |t: u8| 5 + t as usize;
        let mut pi = [0usize; 6];
        for (u, v) in [(a(self.l_ab), b(self.r_ab)), (a(self.l_ac), c(self.r_ac)), (b(self.l_bc), c(self.r_bc))] {
            if pi[u - 1] != 0 || pi[v - 1] != 0 {
                return None;
            }
            pi[u - 1] = v;
            pi[v - 1] = u;
        }
        Signature::new(pi.to_vec()).ok()
    }

    /// True if the three edges close the template paths `a_1-b_0`,
    /// `b_1-c_0`, `c_1-a_0` into one cycle.
    pub fn is_valid(&self) -> bool {
        // Template labels in tour order: a_0 = 1, a_1 = 2, ..., c_1 = 6.
        self.signature().is_some_and(|s| crate::kopt::signature_is_feasible(3, &s).unwrap_or(false))
    }

    /// Every valid setting of the six bits, found by scanning all 64.
    pub fn all_valid() -> Vec<CharacteristicBits> {
        (0u8..64).map(Self::from_mask).filter(Self::is_valid).collect()
    }
}

/// Outcome of the two quadratic prechecks.
#[derive(Clone, Debug, PartialEq)]
pub enum Precheck {
    /// Neither an improving 2-move nor an improving 3-move with two removed
    /// edges sharing an endpoint exists.
    Clear,
    TwoMove(KMove, i64),
    SharedEndpoint(KMove, i64),
}

/// Fixed YES instance: one triangle of weight `-1`.
pub fn constant_yes_instance() -> WeightedGraph {
    WeightedGraph::from_upper(3, &[-1, 0, 0]).expect("valid constant")
}

/// Best improving 3-move among those where two removed edges are
/// consecutive on the tour: `n` choices of the shared vertex, `n` for the
/// third edge.
fn shared_endpoint_precheck(g: &WeightedGraph, tour: &Tour) -> Result<Option<(KMove, i64)>> {
    let n = tour.len();
    if n < 3 {
        return Ok(None);
    }
    let sigs = enumerate_feasible_signatures(3)?;
    let mut best: Option<(KMove, i64)> = None;
    for p in 0..n {
        for q in 0..n {
            let mut pos = [p, (p + 1) % n, q];
            if pos[2] == pos[0] || pos[2] == pos[1] {
                continue;
            }
            pos.sort_unstable();
            for s in &sigs {
                let mv = KMove { positions: pos.to_vec(), signature: s.clone() };
                let d = mv.delta(g, tour)?;
                if d < 0 && best.as_ref().is_none_or(|b| d < b.1) {
                    best = Some((mv, d));
                }
            }
        }
    }
    Ok(best)
}

/// Result of [`threeopt_to_nt`].
#[derive(Clone, Debug)]
pub struct ThreeOptReduction {
    pub precheck: Precheck,
    /// The triangle instance: [`constant_yes_instance`] when a precheck
    /// fired, otherwise one `3n`-vertex component per valid characteristic.
    pub graph: WeightedGraph,
    /// Characteristic of each component, in vertex order.
    pub components: Vec<CharacteristicBits>,
    /// Weight of pairs outside the component edges.
    pub fallback: i64,
}

impl ThreeOptReduction {
    /// Vertex `x_i`, `y_i` or `z_i` (`letter` 0, 1, 2; `i` 0-based) of
    /// component `c`.
    pub fn vertex(&self, c: usize, letter: usize, i: usize) -> usize {
        let n = self.graph.n() / (3 * self.components.len().max(1));
        c * 3 * n + letter * n + i
    }
}

/// Reduces 3-opt detection on `(g, tour)` to a negative triangle query.
///
/// In component `c` with bits `β`, for tour positions `i < j < k` (tour
/// edge `i` joins `v_i`, `v_{i+1}`):
///
/// * `w(x_i, y_j) = d(v_{i+l(ab)}, v_{j+r(ab)}) - d(v_i, v_{i+1})`,
/// * `w(x_i, z_k) = d(v_{i+l(ac)}, v_{k+r(ac)}) - d(v_k, v_{k+1})`,
/// * `w(y_j, z_k) = d(v_{j+l(bc)}, v_{k+r(bc)}) - d(v_j, v_{j+1})`,
///
/// so the triangle `x_i y_j z_k` weighs exactly the Δ of that move. Pairs
/// whose removed edges would share a vertex (`j = i + 1`, `k = j + 1`, and
/// `i = 0, k = n - 1` through the wrap) get the fallback weight instead.
///
/// Component weights lie in `[-2M, 2M]`, so a triangle with one fallback
/// pair still needs the fallback above `4M` to stay non-negative; it is
/// `4M + 1`.
pub fn threeopt_to_nt(g: &WeightedGraph, tour: &Tour) -> Result<ThreeOptReduction> {
    let n = g.n();
    if tour.len() != n {
        return Err(Error::SizeMismatch { expected: n, got: tour.len() });
    }
    if n < 3 {
        return Err(Error::TooSmall { need: 3, got: n });
    }
    let fallback = checked_multiple(g.max_abs_weight(), 4, 1)?;
    reduce_with_fallback(g, tour, fallback)
}

pub(crate) fn reduce_with_fallback(g: &WeightedGraph, tour: &Tour, fallback: i64) -> Result<ThreeOptReduction> {
    let n = g.n();
    let yes =
        |precheck| ThreeOptReduction { precheck, graph: constant_yes_instance(), components: Vec::new(), fallback };
    if let Some((mv, d)) = best_kmove_bruteforce(g, tour, 2)? {
        return Ok(yes(Precheck::TwoMove(mv, d)));
    }
    if let Some((mv, d)) = shared_endpoint_precheck(g, tour)? {
        return Ok(yes(Precheck::SharedEndpoint(mv, d)));
    }
    let comps = CharacteristicBits::all_valid();
    let o = tour.order();
    let v = |t: usize| o[t % n];
    let d = |s: usize, t: usize| g.dist(v(s), v(t));
    let removed = |t: usize| d(t, t + 1);
    let proper = |lo: usize, hi: usize| lo + 1 < hi;
    let size = 3 * n * comps.len();
    let graph = WeightedGraph::from_fn(size, |p, q| {
        // p < q
        let (cp, cq) = (p / (3 * n), q / (3 * n));
        if cp != cq {
            return fallback;
        }
        let bits = comps[cp];
        let (lp, ip) = ((p % (3 * n)) / n, p % n);
        let (lq, iq) = ((q % (3 * n)) / n, q % n);
        let l = |b: u8| b as usize;
        match (lp, lq) {
            (0, 1) if proper(ip, iq) => d(ip + l(bits.l_ab), iq + l(bits.r_ab)) - removed(ip),
            (0, 2) if proper(ip, iq) && !(ip == 0 && iq == n - 1) => {
                d(ip + l(bits.l_ac), iq + l(bits.r_ac)) - removed(iq)
            }
            (1, 2) if proper(ip, iq) => d(ip + l(bits.l_bc), iq + l(bits.r_bc)) - removed(ip),
            _ => fallback,
        }
    })?;
    Ok(ThreeOptReduction { precheck: Precheck::Clear, graph, components: comps, fallback })
}

/// Adds `c` to every weight, e.g. `4M` to make a reduced instance
/// non-negative.
pub fn shift_weights(g: &WeightedGraph, c: i64) -> Result<WeightedGraph> {
    WeightedGraph::from_fn(g.n(), |i, j| g.weight(i, j) + c)
}

/// Does any 3-move strictly improve the tour? Brute force over all moves.
pub fn has_improving_3move(g: &WeightedGraph, tour: &Tour) -> Result<bool> {
    let sigs = enumerate_feasible_signatures(3)?;
    if tour.len() < 3 {
        return Ok(false);
    }
    let mut found = false;
    for_each_kmove(g, tour, &sigs, |_, _, d| found |= d < 0);
    Ok(found)
}
