//! Shortest bitonic tour of random points, by both solvers.

use tspfg::generate::random_points_sorted;
use tspfg::pyramidal::{pyramidal_fast, pyramidal_quadratic};

fn main() {
    let p = random_points_sorted(2000, 7);
    let fast = pyramidal_fast(&p).unwrap();
    let slow = pyramidal_quadratic(&p).unwrap();
    println!("n = {}", p.len());
    println!("fast length      {:.9}", fast.length);
    println!("quadratic length {:.9}", slow.length);
    println!("tour is pyramidal: {}", fast.tour.is_pyramidal());
    println!("first vertices: {:?}", &fast.tour.order()[..10]);
}
