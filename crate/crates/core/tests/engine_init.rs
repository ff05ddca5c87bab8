//! Building the 2-opt engine takes quadratic time.

use tspfg::bench::median_micros;
use tspfg::generate::{random_points, random_tour};
use tspfg::two_opt::FastTwoOpt;

#[test]
fn build_time_doubles_to_about_four() {
    let time = |n: usize| {
        let p = random_points(n, n as u64);
        let t = random_tour(n, 1);
        median_micros(3, || {
            FastTwoOpt::new(&p, &t).unwrap();
        })
    };
    let (a, b) = (time(1000), time(2000));
    let r = b as f64 / a as f64;
    assert!((3.2..=4.8).contains(&r), "n=1000: {a} us, n=2000: {b} us, ratio {r:.2}");
}
