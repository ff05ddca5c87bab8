//! k-opt moves: signatures, non-interfering edge subsets, the subdivision
//! that makes removed edges endpoint-disjoint, and best-move search.
//!
//! A move removes tour edges at positions `i_1 < ... < i_k`. Edge `e_j` has
//! endpoint labels `2j-1 = order[i_j]` and `2j = order[i_j + 1]` (1-based
//! labels, as in a signature). The signature `π` pairs labels into the
//! inserted edges `{v_a, v_π(a)}`. Internally labels are 0-based: edge `j`
//! owns labels `2j` and `2j + 1`.

use crate::error::{Error, Result};
use crate::model::{Cost, Metric, Tour, WeightedGraph, MAX_ABS_WEIGHT};

/// Largest `k` accepted by [`enumerate_feasible_signatures`].
pub const MAX_K: usize = 8;

/// A fixed-point-free involution on `1..=2k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature {
    pi: Vec<usize>,
}

impl Signature {
    /// Takes the 1-based images `π(1), ..., π(2k)`.
    pub fn new(pi: Vec<usize>) -> Result<Self> {
        let m = pi.len();
        if m < 2 || m % 2 == 1 {
            return Err(Error::InvalidSignature(format!("length {m} is not 2k with k >= 1")));
        }
        for (j, &p) in pi.iter().enumerate() {
            if p < 1 || p > m {
                return Err(Error::InvalidSignature(format!("π({}) = {p} out of range", j + 1)));
            }
            if p == j + 1 {
                return Err(Error::InvalidSignature(format!("fixed point at {p}")));
            }
            if pi[p - 1] != j + 1 {
                return Err(Error::InvalidSignature(format!("not an involution at {}", j + 1)));
            }
        }
        Ok(Signature { pi })
    }

    /// Reinserts every removed edge.
    pub fn identity(k: usize) -> Self {
        Signature { pi: (1..=2 * k).map(|a| if a % 2 == 1 { a + 1 } else { a - 1 }).collect() }
    }

    pub fn k(&self) -> usize {
        self.pi.len() / 2
    }

    /// The 1-based images.
    pub fn images(&self) -> &[usize] {
        &self.pi
    }

    /// Partner of 0-based label `a`.
    #[inline]
    fn partner(&self, a: usize) -> usize {
        self.pi[a] - 1
    }

    /// Inserted edges as 0-based label pairs `(a, b)` with `a < b`.
    fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.pi.len()).filter(|&a| a < self.partner(a)).map(|a| (a, self.partner(a))).collect()
    }
}

/// Label at the other end of the tour segment that starts or ends at `a`.
/// Segment `j` runs from the second endpoint of `e_j` to the first of `e_{j+1}`,
/// the last one wrapping around to `e_1`.
#[inline]
fn segment_mate(a: usize, k: usize) -> usize {
    if a % 2 == 1 {
        (a + 1) % (2 * k)
    } else {
        (a + 2 * k - 1) % (2 * k)
    }
}

/// True if the segments joined by the inserted edges close into one cycle.
pub fn signature_is_feasible(k: usize, pi: &Signature) -> Result<bool> {
    if pi.k() != k {
        return Err(Error::InvalidSignature(format!("expected k = {k}, got {}", pi.k())));
    }
    let mut a = 0;
    for step in 1..=k {
        a = pi.partner(segment_mate(a, k));
        if a == 0 {
            return Ok(step == k);
        }
    }
    Ok(false)
}

/// All feasible signatures in lexicographic order of `(π(1), ..., π(2k))`.
pub fn enumerate_feasible_signatures(k: usize) -> Result<Vec<Signature>> {
    if !(1..=MAX_K).contains(&k) {
        return Err(Error::InvalidArgument(format!("k must lie in 1..={MAX_K}, got {k}")));
    }
    let mut out = Vec::new();
    let mut pi = vec![0usize; 2 * k];
    matchings(&mut pi, &mut out, k);
    Ok(out)
}

// Pairs the smallest unmatched label with each larger free one in turn.
// Since the smallest free label decides the first differing image, this
// emits matchings in lexicographic order.
fn matchings(pi: &mut [usize], out: &mut Vec<Signature>, k: usize) {
    let Some(a) = pi.iter().position(|&p| p == 0) else {
        let s = Signature { pi: pi.to_vec() };
        if signature_is_feasible(k, &s).expect("k matches") {
            out.push(s);
        }
        return;
    };
    for b in a + 1..pi.len() {
        if pi[b] == 0 {
            pi[a] = b + 1;
            pi[b] = a + 1;
            matchings(pi, out, k);
            pi[a] = 0;
            pi[b] = 0;
        }
    }
}

/// Removed-edge indices (0-based) no two of which are joined by an inserted
/// edge.
///
/// Removed and inserted edges alternate along cycles on the `2k` labels. In a
/// cycle meeting `m` removed edges `r_1, ..., r_m` in walking order, keep
/// every other one: `r_1, r_3, ...` when `m` is even, `r_1` when `m = 1`,
/// and `r_2, r_4, ..., r_{m-1}` when `m >= 3` is odd. Each cycle thus gives
/// at least a third of its removed edges.
pub fn noninterfering_subset(k: usize, pi: &Signature) -> Result<Vec<usize>> {
    if !signature_is_feasible(k, pi)? {
        return Err(Error::InvalidSignature(format!("{:?} is not feasible", pi.images())));
    }
    let mut seen = vec![false; k];
    let mut out = Vec::new();
    for start in 0..k {
        if seen[start] {
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut b = pi.partner(2 * start + 1);
        while b / 2 != start {
            let j = b / 2;
            seen[j] = true;
            cycle.push(j);
            b = pi.partner(b ^ 1);
        }
        let m = cycle.len();
        let skip = usize::from(m % 2 == 1 && m >= 3);
        out.extend(cycle.iter().skip(skip).step_by(2).take(m.div_ceil(2) - skip).copied());
    }
    out.sort_unstable();
    Ok(out)
}

/// A k-move: sorted positions of the removed tour edges and a signature.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KMove {
    pub positions: Vec<usize>,
    pub signature: Signature,
}

impl KMove {
    pub fn k(&self) -> usize {
        self.positions.len()
    }

    /// Checks the move against a tour of `n` vertices.
    pub fn validate(&self, n: usize) -> Result<()> {
        let k = self.k();
        if k == 0 || self.signature.k() != k {
            return Err(Error::InvalidMove(format!("{k} positions for a signature of size {}", self.signature.k())));
        }
        if self.positions.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidMove("positions must be strictly increasing".into()));
        }
        if *self.positions.last().unwrap() >= n {
            return Err(Error::InvalidMove(format!("position out of range for n = {n}")));
        }
        if !signature_is_feasible(k, &self.signature)? {
            return Err(Error::InvalidMove("infeasible signature".into()));
        }
        Ok(())
    }

    /// Positions whose edge is not put straight back.
    pub fn net_removed(&self) -> Vec<usize> {
        (0..self.k()).filter(|&j| self.signature.partner(2 * j) != 2 * j + 1).map(|j| self.positions[j]).collect()
    }

    /// Vertex carrying 0-based label `a`.
    #[inline]
    fn vertex(&self, tour: &Tour, a: usize) -> usize {
        let o = tour.order();
        o[(self.positions[a / 2] + a % 2) % o.len()]
    }

    /// Inserted weight minus removed weight.
    pub fn delta<M: Metric>(&self, m: &M, tour: &Tour) -> Result<M::Cost> {
        self.validate(tour.len())?;
        let mut d = M::Cost::ZERO;
        for &p in &self.positions {
            let (u, v) = tour.edge(p);
            d = d - m.dist(u, v);
        }
        for (a, b) in self.signature.pairs() {
            d = d + m.dist(self.vertex(tour, a), self.vertex(tour, b));
        }
        Ok(d)
    }
}

/// Performs the move.
pub fn apply_kmove(tour: &Tour, mv: &KMove) -> Result<Tour> {
    let n = tour.len();
    mv.validate(n)?;
    let k = mv.k();
    let o = tour.order();
    let pos = &mv.positions;
    let mut out = Vec::with_capacity(n);
    // Leave from the second endpoint of e_1 so that the identity move
    // reproduces the tour up to rotation.
    let mut a = 1;
    for _ in 0..k {
        let b = segment_mate(a, k);
        // Segment j covers tour indices pos[j] + 1 ..= pos[j + 1] (cyclically).
        let (j, forward) = if a % 2 == 1 { (a / 2, true) } else { ((a / 2 + k - 1) % k, false) };
        let lo = pos[j] + 1;
        let hi = if j + 1 < k { pos[j + 1] } else { pos[0] + n };
        if forward {
            out.extend((lo..=hi).map(|t| o[t % n]));
        } else {
            out.extend((lo..=hi).rev().map(|t| o[t % n]));
        }
        a = mv.signature.partner(b);
    }
    debug_assert_eq!(a, 1);
    if let Some(r) = out.iter().position(|&v| v == o[0]) {
        out.rotate_left(r);
    }
    Tour::new(out)
}

/// Calls `f(positions, index into sigs, Δ)` for every position subset and
/// every signature in `sigs`, positions in lexicographic order.
pub fn for_each_kmove<M: Metric>(m: &M, tour: &Tour, sigs: &[Signature], mut f: impl FnMut(&[usize], usize, M::Cost)) {
    let n = tour.len();
    let Some(k) = sigs.first().map(Signature::k) else { return };
    if n < k {
        return;
    }
    let pairs: Vec<Vec<(usize, usize)>> = sigs.iter().map(Signature::pairs).collect();
    let o = tour.order();
    let mut pos: Vec<usize> = (0..k).collect();
    let mut ep = vec![0usize; 2 * k];
    loop {
        let mut removed = M::Cost::ZERO;
        for (j, &p) in pos.iter().enumerate() {
            ep[2 * j] = o[p];
            ep[2 * j + 1] = o[(p + 1) % n];
            removed = removed + m.dist(ep[2 * j], ep[2 * j + 1]);
        }
        for (s, ps) in pairs.iter().enumerate() {
            let mut ins = M::Cost::ZERO;
            for &(a, b) in ps {
                ins = ins + m.dist(ep[a], ep[b]);
            }
            f(&pos, s, ins - removed);
        }
        // Next k-subset in lexicographic order.
        let Some(j) = (0..k).rev().find(|&j| pos[j] < n - k + j) else { break };
        pos[j] += 1;
        for t in j + 1..k {
            pos[t] = pos[t - 1] + 1;
        }
    }
}

fn check_kmove_input<M: Metric>(m: &M, tour: &Tour, k: usize) -> Result<Vec<Signature>> {
    if tour.len() != m.size() {
        return Err(Error::SizeMismatch { expected: m.size(), got: tour.len() });
    }
    if k < 2 {
        return Err(Error::InvalidArgument(format!("k must be at least 2, got {k}")));
    }
    if tour.len() < k {
        return Err(Error::TooSmall { need: k, got: tour.len() });
    }
    enumerate_feasible_signatures(k)
}

/// Exhaustive search over all `C(n, k)` position sets and feasible
/// signatures. Returns the first strictly improving move of least Δ.
pub fn best_kmove_bruteforce<M: Metric>(m: &M, tour: &Tour, k: usize) -> Result<Option<(KMove, M::Cost)>> {
    let sigs = check_kmove_input(m, tour, k)?;
    let mut best: Option<(Vec<usize>, usize, M::Cost)> = None;
    let mut bound = M::Cost::ZERO;
    for_each_kmove(m, tour, &sigs, |pos, s, d| {
        if d < bound {
            bound = d;
            best = Some((pos.to_vec(), s, d));
        }
    });
    Ok(best.map(|(positions, i, d)| (KMove { positions, signature: sigs[i].clone() }, d)))
}

/// Minimum of `Σ c[x][j_x]` over strictly increasing `j_0 < ... < j_{s-1}`,
/// with the minimizing locations.
///
/// `V(x, y)`, the best embedding of the first `x` rows into the first `y`
/// columns, is `min(V(x, y-1), V(x-1, y-1) + c[x-1][y-1])`.
pub fn embed_dp<C: Cost>(c: &[Vec<C>]) -> Result<(C, Vec<usize>)> {
    let s = c.len();
    let r = c.first().map_or(0, Vec::len);
    if c.iter().any(|row| row.len() != r) {
        return Err(Error::InvalidArgument("cost rows differ in length".into()));
    }
    if s > r {
        return Err(Error::InvalidArgument(format!("{s} items do not fit into {r} locations")));
    }
    if s == 0 {
        return Ok((C::ZERO, Vec::new()));
    }
    // v[x][y] for 0 <= x <= s, 0 <= y <= r.
    let mut v = vec![vec![C::INFINITY; r + 1]; s + 1];
    v[0].fill(C::ZERO);
    for x in 1..=s {
        for y in x..=r {
            let take = v[x - 1][y - 1] + c[x - 1][y - 1];
            v[x][y] = if take < v[x][y - 1] { take } else { v[x][y - 1] };
        }
    }
    let mut at = vec![0; s];
    let mut y = r;
    for x in (1..=s).rev() {
        // Skip columns that the optimum leaves empty.
        while y > x && !(v[x][y - 1] > v[x][y]) {
            y -= 1;
        }
        at[x - 1] = y - 1;
        y -= 1;
    }
    Ok((v[s][r], at))
}

/// Per-signature plan for the fast search.
struct Plan {
    sig: usize,
    frozen: Vec<usize>,
    /// Maximal runs of consecutive non-frozen edge indices.
    runs: Vec<Vec<usize>>,
    /// Inserted edges with both ends on frozen edges.
    frozen_pairs: Vec<(usize, usize)>,
    /// For each free edge `j`, partners of labels `2j` and `2j + 1`, or
    /// `None` when the edge is reinserted.
    targets: Vec<Option<(usize, usize)>>,
}

fn plan(idx: usize, s: &Signature) -> Plan {
    let k = s.k();
    let free = noninterfering_subset(k, s).expect("enumerated signatures are feasible");
    let is_free: Vec<bool> = (0..k).map(|j| free.contains(&j)).collect();
    let frozen: Vec<usize> = (0..k).filter(|&j| !is_free[j]).collect();
    let mut runs: Vec<Vec<usize>> = Vec::new();
    for &j in &free {
        match runs.last_mut() {
            Some(r) if *r.last().unwrap() + 1 == j => r.push(j),
            _ => runs.push(vec![j]),
        }
    }
    let frozen_pairs = s.pairs().into_iter().filter(|&(a, b)| !is_free[a / 2] && !is_free[b / 2]).collect();
    let targets = (0..k)
        .map(|j| {
            let (p, q) = (s.partner(2 * j), s.partner(2 * j + 1));
            (p != 2 * j + 1).then_some((p, q))
        })
        .collect();
    Plan { sig: idx, frozen, runs, frozen_pairs, targets }
}

/// Best strictly improving k-move in `O(n^{⌊2k/3⌋+1})` time per signature.
///
/// For each signature the edges outside the non-interfering subset are
/// frozen at every combination of positions. Every inserted edge then has a
/// fixed vertex on at least one side, so the cost splits into a frozen part
/// and independent per-edge embedding costs, and each stretch of the tour
/// between consecutive frozen edges is filled by [`embed_dp`].
///
/// Positions are plain indices `0..n` with the removed edges sorted, so the
/// stretch before the first frozen edge and the one after the last are
/// separate and no cyclic shift is counted twice. Edges sharing an endpoint
/// need no special care: costs are read off the actual endpoint vertices,
/// exactly as in [`best_kmove_bruteforce`].
pub fn best_kmove_fast<M: Metric>(m: &M, tour: &Tour, k: usize) -> Result<Option<(KMove, M::Cost)>> {
    let sigs = check_kmove_input(m, tour, k)?;
    let n = tour.len();
    let o = tour.order();
    let w = |p: usize| m.dist(o[p], o[(p + 1) % n]);
    let mut best: Option<(KMove, M::Cost)> = None;
    let mut bound = M::Cost::ZERO;
    let mut dp: Vec<M::Cost> = Vec::with_capacity(k + 1);
    let mut pos = vec![0usize; k];

    for (si, s) in sigs.iter().enumerate() {
        let pl = plan(si, s);
        let f = pl.frozen.len();
        if f > n {
            continue;
        }
        let mut fp: Vec<usize> = (0..f).collect();
        loop {
            for (t, &j) in pl.frozen.iter().enumerate() {
                pos[j] = fp[t];
            }
            let vert = |a: usize, pos: &[usize]| o[(pos[a / 2] + a % 2) % n];
            let mut total = M::Cost::ZERO;
            for &j in &pl.frozen {
                total = total - w(pos[j]);
            }
            for &(a, b) in &pl.frozen_pairs {
                total = total + m.dist(vert(a, &pos), vert(b, &pos));
            }
            for run in &pl.runs {
                let (lo, hi) = range(run, &pos, &pl.frozen, n);
                total = total + run_value(m, o, &pl.targets, run, lo, hi, &pos, &mut dp);
                if !(total < M::Cost::INFINITY) {
                    break;
                }
            }
            if total < bound {
                bound = total;
                for run in &pl.runs {
                    let (lo, hi) = range(run, &pos, &pl.frozen, n);
                    let c = run_costs(m, o, &pl.targets, run, lo, hi, &pos);
                    let (_, at) = embed_dp(&c).expect("run fits its stretch");
                    for (&j, &y) in run.iter().zip(&at) {
                        pos[j] = lo + y;
                    }
                }
                let mv = KMove { positions: pos.clone(), signature: sigs[pl.sig].clone() };
                best = Some((mv, total));
            }
            // Next strictly increasing frozen tuple.
            let Some(t) = (0..f).rev().find(|&t| fp[t] < n - f + t) else { break };
            fp[t] += 1;
            for u in t + 1..f {
                fp[u] = fp[u - 1] + 1;
            }
        }
    }
    Ok(best)
}

/// Tour positions available to the free edges of `run`: strictly between
/// the neighbouring frozen edges. Empty ranges come back with `lo > hi`.
fn range(run: &[usize], pos: &[usize], frozen: &[usize], n: usize) -> (usize, usize) {
    let first = run[0];
    let last = *run.last().unwrap();
    let lo = frozen.iter().rev().find(|&&j| j < first).map_or(0, |&j| pos[j] + 1);
    let hi = frozen.iter().find(|&&j| j > last).map_or(n, |&j| pos[j]);
    (lo, hi.wrapping_sub(1))
}

#[inline]
fn embed_cost<M: Metric>(m: &M, o: &[usize], target: Option<(usize, usize)>, p: usize, pos: &[usize]) -> M::Cost {
    let n = o.len();
    match target {
        None => M::Cost::ZERO,
        Some((a, b)) => {
            let (u, v) = (o[p], o[(p + 1) % n]);
            let ta = o[(pos[a / 2] + a % 2) % n];
            let tb = o[(pos[b / 2] + b % 2) % n];
            m.dist(u, ta) + m.dist(v, tb) - m.dist(u, v)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn run_value<M: Metric>(
    m: &M,
    o: &[usize],
    targets: &[Option<(usize, usize)>],
    run: &[usize],
    lo: usize,
    hi: usize,
    pos: &[usize],
    dp: &mut Vec<M::Cost>,
) -> M::Cost {
    let s = run.len();
    if hi == usize::MAX || hi < lo || hi - lo + 1 < s {
        return M::Cost::INFINITY;
    }
    dp.clear();
    dp.push(M::Cost::ZERO);
    dp.resize(s + 1, M::Cost::INFINITY);
    for (y, p) in (lo..=hi).enumerate() {
        // Row x can use column y only if x - 1 <= y and enough columns remain.
        let top = s.min(y + 1);
        let bottom = (s + y + 1).saturating_sub(hi - lo + 1).max(1);
        for x in (bottom..=top).rev() {
            let take = dp[x - 1] + embed_cost(m, o, targets[run[x - 1]], p, pos);
            if take < dp[x] {
                dp[x] = take;
            }
        }
    }
    dp[s]
}

fn run_costs<M: Metric>(
    m: &M,
    o: &[usize],
    targets: &[Option<(usize, usize)>],
    run: &[usize],
    lo: usize,
    hi: usize,
    pos: &[usize],
) -> Vec<Vec<M::Cost>> {
    run.iter().map(|&j| (lo..=hi).map(|p| embed_cost(m, o, targets[j], p, pos)).collect()).collect()
}

/// Which best-move search to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KoptAlgo {
    Brute,
    Fast,
}

pub fn best_kmove<M: Metric>(m: &M, tour: &Tour, k: usize, algo: KoptAlgo) -> Result<Option<(KMove, M::Cost)>> {
    match algo {
        KoptAlgo::Brute => best_kmove_bruteforce(m, tour, k),
        KoptAlgo::Fast => best_kmove_fast(m, tour, k),
    }
}

/// Applies best improving k-moves until none is left or `max_iters` moves
/// were made. Returns the final tour and the applied deltas.
pub fn repeated_kopt<M: Metric>(
    m: &M,
    tour: &Tour,
    k: usize,
    algo: KoptAlgo,
    max_iters: Option<usize>,
) -> Result<(Tour, Vec<M::Cost>)> {
    let mut t = tour.clone();
    let mut deltas = Vec::new();
    while deltas.len() < max_iters.unwrap_or(usize::MAX) {
        let Some((mv, d)) = best_kmove(m, &t, k, algo)? else { break };
        t = apply_kmove(&t, &mv)?;
        deltas.push(d);
    }
    Ok((t, deltas))
}

/// `G'` on vertices `a_i = 2i`, `b_i = 2i + 1`, one pair per tour position.
#[derive(Clone, Debug)]
pub struct SubdividedInstance {
    pub graph: WeightedGraph,
    /// `a_0, b_0, a_1, b_1, ...`
    pub tour: Tour,
    /// Original vertex behind each new vertex.
    pub back: Vec<usize>,
    /// Weight of the edges `{a_i, b_i}`, `-2kM`.
    pub split_weight: i64,
}

/// Splits every vertex `v_i` (in tour order) into `a_i, b_i` joined by an
/// edge of weight `-2kM`; every other pair keeps the weight of the
/// original vertices. A move that takes out a split edge for good gains at
/// least `2kM - (2k-1)M > 0`, so improving moves only take out edges
/// `{b_i, a_{i+1}}`, which share no endpoints.
pub fn subdivide(g: &WeightedGraph, tour: &Tour, k: usize) -> Result<SubdividedInstance> {
    let n = g.n();
    if tour.len() != n {
        return Err(Error::SizeMismatch { expected: n, got: tour.len() });
    }
    let big = (2 * k as i128) * g.max_abs_weight() as i128;
    if big > MAX_ABS_WEIGHT as i128 {
        return Err(Error::Overflow(format!("2kM = {big} exceeds 2^55")));
    }
    let split_weight = -(big as i64);
    let back: Vec<usize> = (0..2 * n).map(|x| tour.order()[x / 2]).collect();
    let graph =
        WeightedGraph::from_fn(2 * n, |x, y| if x / 2 == y / 2 { split_weight } else { g.weight(back[x], back[y]) })?;
    Ok(SubdividedInstance { graph, tour: Tour::identity(2 * n), back, split_weight })
}

/// Maps a move on `G'` to a move on `G` with the same Δ.
///
/// Edge `{b_i, a_{i+1}}` of `T'` becomes tour edge `i` and each endpoint
/// maps to the endpoint on the same side. A split edge `{a_i, b_i}` may only
/// be removed and put straight back; such an edge is dropped and the move
/// is padded with reinserted tour edges at the lowest unused positions.
pub fn lift_move(mv: &KMove, sub: &SubdividedInstance) -> Result<KMove> {
    mv.validate(sub.tour.len())?;
    let k = mv.k();
    let n = sub.tour.len() / 2;
    let s = &mv.signature;
    // (position in T, Some(edge index in mv)) or a padding edge.
    let mut edges: Vec<(usize, Option<usize>)> = Vec::with_capacity(k);
    for (j, &p) in mv.positions.iter().enumerate() {
        if p % 2 == 1 {
            edges.push((p / 2, Some(j)));
        } else if s.partner(2 * j) != 2 * j + 1 {
            return Err(Error::InvalidMove(format!("position {p} removes a split edge")));
        }
    }
    let used: Vec<usize> = edges.iter().map(|e| e.0).collect();
    let pad = k - edges.len();
    edges.extend((0..n).filter(|i| !used.contains(i)).take(pad).map(|i| (i, None)));
    if edges.len() < k {
        return Err(Error::InvalidMove(format!("cannot pad to {k} edges on {n} vertices")));
    }
    edges.sort_unstable();
    let mut relabel = vec![usize::MAX; 2 * k];
    for (t, &(_, e)) in edges.iter().enumerate() {
        if let Some(j) = e {
            relabel[2 * j] = 2 * t;
            relabel[2 * j + 1] = 2 * t + 1;
        }
    }
    let mut pi = vec![0; 2 * k];
    for (t, &(_, e)) in edges.iter().enumerate() {
        match e {
            Some(j) => {
                for side in 0..2 {
                    // Real labels pair with real labels: split edges pair with themselves.
                    pi[2 * t + side] = relabel[s.partner(2 * j + side)] + 1;
                }
            }
            None => {
                pi[2 * t] = 2 * t + 2;
                pi[2 * t + 1] = 2 * t + 1;
            }
        }
    }
    let lifted = KMove { positions: edges.iter().map(|e| e.0).collect(), signature: Signature::new(pi)? };
    lifted.validate(n)?;
    Ok(lifted)
}

#[cfg(test)]
mod tests;
