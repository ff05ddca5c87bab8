//! Timing harness: named suites produce `suite,algo,n,seed,answer,micros`
//! rows, and doubling ratios summarize how run time grows with `n`.

use std::collections::BTreeMap;
use std::sync::Mutex;
use std::time::Instant;

use crate::bottleneck::{bottleneck_fast, bottleneck_optimize, bottleneck_quadratic};
use crate::error::{Error, Result};
use crate::generate::{random_graph, random_points, random_points_sorted, random_tour};
use crate::io::round_sig12;
use crate::kopt::{best_kmove_bruteforce, best_kmove_fast};
use crate::pyramidal::{pyramidal_fast, pyramidal_quadratic};
use crate::two_opt::{repeated_2opt, EngineKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRow {
    pub suite: String,
    pub algo: String,
    pub n: usize,
    pub seed: u64,
    pub answer: String,
    pub micros: u128,
}

pub const CSV_HEADER: &str = "suite,algo,n,seed,answer,micros";

impl BenchRow {
    pub fn to_csv(&self) -> String {
        format!("{},{},{},{},{},{}", self.suite, self.algo, self.n, self.seed, self.answer, self.micros)
    }
}

/// Suite names accepted by [`run_suite`].
pub const SUITES: &[&str] = &["pyramidal", "bottleneck", "kopt3", "kopt4", "2opt"];

/// Default sizes of each suite.
pub fn default_sizes(suite: &str) -> Result<Vec<usize>> {
    Ok(match suite {
        "pyramidal" => (12..=16).map(|e| 1 << e).collect(),
        "bottleneck" => vec![250, 500, 1000, 2000],
        "kopt3" => vec![40, 80, 160],
        "kopt4" => vec![30, 60, 120],
        "2opt" => vec![1000, 2000, 5000],
        _ => return Err(unknown(suite)),
    })
}

fn unknown(suite: &str) -> Error {
    Error::InvalidArgument(format!("unknown suite {suite:?}; expected one of {}", SUITES.join(", ")))
}

fn fmt(x: f64) -> String {
    format!("{}", round_sig12(x))
}

/// Runs `f` and returns its result with the elapsed microseconds.
pub fn timed<T>(f: impl FnOnce() -> T) -> (T, u128) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed().as_micros())
}

/// Median of `runs` timings of `f`, in microseconds.
pub fn median_micros(runs: usize, mut f: impl FnMut()) -> u128 {
    let mut v: Vec<u128> = (0..runs.max(1)).map(|_| timed(&mut f).1).collect();
    v.sort_unstable();
    v[v.len() / 2]
}

fn algos(suite: &str) -> &'static [&'static str] {
    match suite {
        "pyramidal" => &["fast", "quadratic"],
        "bottleneck" => &["fast", "search", "quadratic"],
        "kopt3" | "kopt4" => &["fast", "brute"],
        "2opt" => &["fast", "naive"],
        _ => &[],
    }
}

/// One measurement. For `2opt` the time is the median per-iteration time
/// with initialization excluded, and the answer is the first move's Δ, which
/// both engines must agree on even when their iteration caps differ.
fn run_one(suite: &str, algo: &str, n: usize, seed: u64) -> Result<BenchRow> {
    let (answer, micros) = match (suite, algo) {
        ("pyramidal", _) => {
            let p = random_points_sorted(n, seed);
            let (s, us) = timed(|| if algo == "fast" { pyramidal_fast(&p) } else { pyramidal_quadratic(&p) });
            (fmt(s?.length), us)
        }
        ("bottleneck", _) => {
            let p = random_points_sorted(n, seed);
            let (v, us) = timed(|| match algo {
                "fast" => bottleneck_fast(&p),
                "search" => bottleneck_optimize(&p),
                _ => bottleneck_quadratic(&p).map(|s| s.value),
            });
            (fmt(v?), us)
        }
        ("kopt3" | "kopt4", _) => {
            let k = if suite == "kopt3" { 3 } else { 4 };
            let g = random_graph(n, seed, 0, 1_000_000)?;
            let t = random_tour(n, seed ^ 0x9e37_79b9);
            let (r, us) =
                timed(|| if algo == "fast" { best_kmove_fast(&g, &t, k) } else { best_kmove_bruteforce(&g, &t, k) });
            (r?.map_or("none".to_string(), |(_, d)| d.to_string()), us)
        }
        ("2opt", _) => {
            let p = random_points(n, seed);
            let t = random_tour(n, seed ^ 0x9e37_79b9);
            let engine = if algo == "fast" { EngineKind::Fast } else { EngineKind::Naive };
            // Naive iterations cost a full scan each; a few are enough to time them.
            let cap = if algo == "naive" && n > 2000 { Some(5) } else { Some(50) };
            let r = repeated_2opt(&p, &t, engine, cap)?;
            let mut it: Vec<u128> = r.trace.iter().map(|x| x.micros).collect();
            it.sort_unstable();
            let med = it.get(it.len() / 2).copied().unwrap_or(0);
            (format!("{}", r.trace.first().map_or(0.0, |x| round_sig12(x.delta))), med)
        }
        _ => return Err(unknown(suite)),
    };
    Ok(BenchRow { suite: suite.into(), algo: algo.into(), n, seed, answer, micros })
}

/// Worker count: `TSPFG_THREADS` if set, else 1 so that timings do not
/// compete for cores.
pub fn worker_count() -> usize {
    std::env::var("TSPFG_THREADS").ok().and_then(|v| v.parse().ok()).filter(|&t| t > 0).unwrap_or(1)
}

/// Runs every algorithm of `suite` on every `(n, seed)`, rows in
/// `(n, algo, seed)` order regardless of the worker count. `algo` limits
/// the run to one algorithm.
pub fn run_suite(
    suite: &str,
    sizes: &[usize],
    seeds: &[u64],
    algo: Option<&str>,
    threads: usize,
) -> Result<Vec<BenchRow>> {
    let all = algos(suite);
    if all.is_empty() {
        return Err(unknown(suite));
    }
    if let Some(a) = algo {
        if !all.contains(&a) {
            return Err(Error::InvalidArgument(format!("suite {suite} has no algorithm {a:?}")));
        }
    }
    let mut jobs = Vec::new();
    for &n in sizes {
        for a in all.iter().filter(|a| algo.is_none_or(|x| x == **a)) {
            for &s in seeds {
                jobs.push((n, *a, s));
            }
        }
    }
    let slots: Vec<Mutex<Option<Result<BenchRow>>>> = jobs.iter().map(|_| Mutex::new(None)).collect();
    let next = Mutex::new(0usize);
    std::thread::scope(|sc| {
        for _ in 0..threads.max(1).min(jobs.len().max(1)) {
            sc.spawn(|| loop {
                let i = {
                    let mut g = next.lock().unwrap();
                    let i = *g;
                    *g += 1;
                    i
                };
                let Some(&(n, a, s)) = jobs.get(i) else { break };
                *slots[i].lock().unwrap() = Some(run_one(suite, a, n, s));
            });
        }
    });
    slots.into_iter().map(|m| m.into_inner().unwrap().expect("every job ran")).collect()
}

/// `(algo, n, median micros over seeds, ratio to the previous size)`.
pub fn doubling_ratios(rows: &[BenchRow]) -> Vec<(String, usize, u128, Option<f64>)> {
    let mut by: BTreeMap<(String, usize), Vec<u128>> = BTreeMap::new();
    for r in rows {
        by.entry((r.algo.clone(), r.n)).or_default().push(r.micros);
    }
    let mut out = Vec::new();
    let mut prev: Option<(String, u128)> = None;
    for ((algo, n), mut v) in by {
        v.sort_unstable();
        let med = v[v.len() / 2];
        let ratio = match &prev {
            Some((a, p)) if *a == algo => Some(med.max(1) as f64 / (*p).max(1) as f64),
            _ => None,
        };
        prev = Some((algo.clone(), med));
        out.push((algo, n, med, ratio));
    }
    out
}
