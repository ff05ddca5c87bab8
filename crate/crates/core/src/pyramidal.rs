//! Shortest pyramidal tours of an ordered point set.
//!
//! `A[i][j]` (0-based, `j < i`) is the length of the shortest pair of
//! monotone paths that share vertex 0, cover `0..=i` and end at `i` and
//! `j`. Row `i + 1` is row `i` shifted by `|p_i p_{i+1}|` plus one new
//! entry `A[i+1][i] = min_k (A[i][k] + |p_k p_{i+1}|)`. The quadratic solver
//! stores the row; the fast one keeps it implicitly as the weights of an
//! [`Awnn`] structure, so the shift is a bulk update and the new entry is a
//! nearest-neighbour query.

use crate::awnn::{Awnn, WeightedSite};
use crate::error::{Error, Result};
use crate::model::{OrderedPointSet, Tour};

#[derive(Clone, Debug, PartialEq)]
pub struct PyramidalSolution {
    pub length: f64,
    pub tour: Tour,
}

fn check(p: &OrderedPointSet) -> Result<usize> {
    match p.len() {
        n if n < 2 => Err(Error::TooSmall { need: 2, got: n }),
        n => Ok(n),
    }
}

/// Rebuilds a pyramidal tour from the row choices.
///
/// `choice[i]` is the vertex joined to `i` in the best `(i, i-1)` partial
/// tour (`i >= 2`) and `close` is the vertex joined to `n-1` by the closing
/// edge. The tour starts `0, 1, ...` when `n >= 2`.
pub(crate) fn witness(n: usize, choice: &[usize], close: usize) -> Tour {
    let mut sides: [Vec<usize>; 2] = [vec![], vec![]];
    let (mut i, mut j, mut s) = (n - 1, close, 0);
    loop {
        // Vertices j+1..=i follow each other on the path ending at i.
        sides[s].extend((j + 1..=i).rev());
        if j == 0 {
            break;
        }
        let c = choice[j + 1];
        (i, j, s) = (j, c, 1 - s);
    }
    let (up, down) = if sides[0].contains(&1) { (0, 1) } else { (1, 0) };
    let mut order = Vec::with_capacity(n);
    order.push(0);
    order.extend(sides[up].iter().rev());
    // Each side was filled in descending order.
    order.extend(sides[down].iter());
    Tour::new(order).expect("the two chains partition the vertices")
}

/// Classic O(n^2) dynamic program.
pub fn pyramidal_quadratic(p: &OrderedPointSet) -> Result<PyramidalSolution> {
    pyramidal_quadratic_observed(p, |_, _| {})
}

/// As [`pyramidal_quadratic`], calling `hook(i, row)` with `row[j] = A[i][j]`
/// for every row `i >= 1`.
pub fn pyramidal_quadratic_observed(
    p: &OrderedPointSet,
    mut hook: impl FnMut(usize, &[f64]),
) -> Result<PyramidalSolution> {
    let n = check(p)?;
    let xs: Vec<f64> = p.points().iter().map(|q| q.x).collect();
    let ys: Vec<f64> = p.points().iter().map(|q| q.y).collect();
    let d = |a: usize, b: usize| p.point(a).dist(p.point(b));
    let mut row = vec![0.0; n];
    let mut choice = vec![0; n];
    row[0] = d(0, 1);
    hook(1, &row[..1]);
    for i in 1..n - 1 {
        let (k, v) = best_in_row(&row[..i], &xs[..i], &ys[..i], xs[i + 1], ys[i + 1]);
        choice[i + 1] = k;
        let step = d(i, i + 1);
        for a in &mut row[..i] {
            *a += step;
        }
        row[i] = v;
        hook(i + 1, &row[..i + 1]);
    }
    let (k, length) = best_in_row(&row[..n - 1], &xs[..n - 1], &ys[..n - 1], xs[n - 1], ys[n - 1]);
    Ok(PyramidalSolution { length, tour: witness(n, &choice, k) })
}

/// `argmin_k (row[k] + |p_k q|)`, lowest index on ties.
fn best_in_row(row: &[f64], xs: &[f64], ys: &[f64], qx: f64, qy: f64) -> (usize, f64) {
    let mut best = (0, f64::INFINITY);
    for k in 0..row.len() {
        let (dx, dy) = (xs[k] - qx, ys[k] - qy);
        let v = row[k] + (dx * dx + dy * dy).sqrt();
        if v < best.1 {
            best = (k, v);
        }
    }
    best
}

/// O(n log^2 n) expected-time solver over an implicit row.
pub fn pyramidal_fast(p: &OrderedPointSet) -> Result<PyramidalSolution> {
    pyramidal_fast_observed(p, |_, _| {})
}

/// As [`pyramidal_fast`], calling `hook(i, s)` once the structure `s`
/// represents row `i`: site `j` then has effective weight `A[i][j]`.
pub fn pyramidal_fast_observed(p: &OrderedPointSet, mut hook: impl FnMut(usize, &Awnn)) -> Result<PyramidalSolution> {
    let n = check(p)?;
    let d = |a: usize, b: usize| p.point(a).dist(p.point(b));
    let mut s = Awnn::new();
    let mut choice = vec![0; n];
    s.insert(WeightedSite { point: p.point(0), weight: d(0, 1) });
    hook(1, &s);
    for i in 1..n - 1 {
        let (k, v) = s.query_min(p.point(i + 1))?;
        choice[i + 1] = k;
        s.bulk_add(d(i, i + 1));
        s.insert(WeightedSite { point: p.point(i), weight: v });
        hook(i + 1, &s);
    }
    let (k, length) = s.query_min(p.point(n - 1))?;
    Ok(PyramidalSolution { length, tour: witness(n, &choice, k) })
}
