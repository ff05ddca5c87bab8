//! Repeated best-improvement 2-opt with the tree engine and the naive scan.

use tspfg::generate::{random_points, random_tour};
use tspfg::two_opt::{repeated_2opt, EngineKind};

fn main() {
    let p = random_points(1000, 5);
    let t = random_tour(1000, 6);
    for (name, kind, cap) in [("engine", EngineKind::Fast, None), ("naive", EngineKind::Naive, Some(20))] {
        let r = repeated_2opt(&p, &t, kind, cap).unwrap();
        let total: u128 = r.trace.iter().map(|x| x.micros).sum();
        println!(
            "{name}: {} moves, cost {:.6} -> {:.6}, init {} us, {:.1} us per move",
            r.trace.len(),
            t.cost(&p),
            r.cost,
            r.init_micros,
            total as f64 / r.trace.len().max(1) as f64
        );
    }
}
