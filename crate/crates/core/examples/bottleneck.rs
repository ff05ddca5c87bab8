//! Bottleneck pyramidal tours: decisions and the optimum, plus the
//! set-disjointness construction.

use tspfg::bottleneck::{bottleneck_decide, bottleneck_fast, bottleneck_quadratic, tour_within};
use tspfg::generate::{disjointness_points, random_points};

fn main() {
    let p = random_points(300, 3);
    let best = bottleneck_fast(&p).unwrap();
    println!("optimum longest edge {best:.9} (quadratic {:.9})", bottleneck_quadratic(&p).unwrap().value);
    for b in [best * 0.99, best, best * 1.5] {
        println!("decide(B = {b:.6}) = {}", bottleneck_decide(&p, b));
    }
    let t = tour_within(&p, best).unwrap();
    println!("witness longest edge {:.9}", t.bottleneck(&p));

    for (u, v) in [(vec![1, 4, 9], vec![2, 4, 7]), (vec![1, 4, 9], vec![2, 5, 7])] {
        let (q, b) = disjointness_points(&u, &v, true).unwrap();
        println!("U = {u:?}, V = {v:?}: decide(B = {b}) = {}", bottleneck_decide(&q, b));
    }
}
