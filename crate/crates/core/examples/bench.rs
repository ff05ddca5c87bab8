//! A small pyramidal timing suite with doubling ratios.

use tspfg::bench::{doubling_ratios, run_suite, CSV_HEADER};

fn main() {
    let rows = run_suite("pyramidal", &[1024, 2048, 4096], &[0, 1, 2], None, 1).unwrap();
    println!("{CSV_HEADER}");
    for r in &rows {
        println!("{}", r.to_csv());
    }
    for (algo, n, med, ratio) in doubling_ratios(&rows) {
        println!("# {algo} n={n} median {med} us ratio {}", ratio.map_or("-".into(), |r| format!("{r:.2}")));
    }
}
