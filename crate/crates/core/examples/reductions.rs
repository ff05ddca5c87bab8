//! Negative triangle to 3-opt and back.

use tspfg::generate::random_graph;
use tspfg::reductions::{has_improving_3move, negative_triangle_bruteforce, nt_to_3opt, threeopt_to_nt};

fn main() {
    for seed in 0..4 {
        let g = random_graph(6, seed, -4, 20).unwrap();
        let tri = negative_triangle_bruteforce(&g);
        let (h, t) = nt_to_3opt(&g).unwrap();
        let improving = has_improving_3move(&h, &t).unwrap();
        let back = threeopt_to_nt(&h, &t).unwrap();
        println!(
            "seed {seed}: triangle {tri:?}, 3-opt instance on {} vertices improvable {improving}, \
             triangle instance on {} vertices has one {}",
            h.n(),
            back.graph.n(),
            negative_triangle_bruteforce(&back.graph).is_some()
        );
    }
}
