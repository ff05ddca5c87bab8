//! Best improving k-move by brute force and by the frozen-edge search, then
//! repeated 3-opt to a local optimum.

use std::time::Instant;

use tspfg::generate::{random_graph, random_tour};
use tspfg::kopt::{best_kmove_bruteforce, best_kmove_fast, enumerate_feasible_signatures, repeated_kopt, KoptAlgo};

fn main() {
    for k in 2..=5 {
        println!("k = {k}: {} reconnection signatures", enumerate_feasible_signatures(k).unwrap().len());
    }
    let g = random_graph(60, 1, 0, 1000).unwrap();
    let t = random_tour(60, 2);
    for k in [3, 4] {
        let s = Instant::now();
        let a = best_kmove_bruteforce(&g, &t, k).unwrap();
        let ta = s.elapsed();
        let s = Instant::now();
        let b = best_kmove_fast(&g, &t, k).unwrap();
        let tb = s.elapsed();
        let (mv, d) = b.clone().unwrap();
        println!("k = {k}: best delta {d} at positions {:?}; brute {ta:?}, fast {tb:?}", mv.positions);
        assert_eq!(a.map(|x| x.1), b.map(|x| x.1));
    }
    let (u, deltas) = repeated_kopt(&g, &t, 3, KoptAlgo::Fast, None).unwrap();
    println!("3-opt: cost {} -> {} in {} moves", t.cost(&g), u.cost(&g), deltas.len());
}
