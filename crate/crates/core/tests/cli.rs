use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_tspfg"))
}

fn scratch(name: &str) -> PathBuf {
    let d = std::env::temp_dir().join(format!("tspfg-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_str(String::from_utf8_lossy(&o.stdout).lines().next().unwrap()).unwrap()
}

#[test]
fn gen_is_deterministic() {
    let d = scratch("gen");
    let (a, b) = (d.join("a.json"), d.join("b.json"));
    for f in [&a, &b] {
        let o = run(&["gen", "--type", "points", "-n", "100", "--seed", "7", "-o", f.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let c = d.join("c.json");
    run(&["gen", "--type", "points", "-n", "100", "--seed", "8", "-o", c.to_str().unwrap()]);
    assert_ne!(std::fs::read(&a).unwrap(), std::fs::read(&c).unwrap());
}

#[test]
fn decide_with_zero_bound_says_no() {
    let d = scratch("decide");
    let a = d.join("a.json");
    run(&["gen", "--type", "points", "-n", "30", "--seed", "2", "-o", a.to_str().unwrap()]);
    let o = run(&["bottleneck", "decide", a.to_str().unwrap(), "--B", "0"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["answer"], false);
    let o = run(&["bottleneck", "opt", a.to_str().unwrap(), "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o)["value"].as_f64().unwrap();
    let o = run(&["bottleneck", "decide", a.to_str().unwrap(), "--B", &format!("{}", v * 1.0001), "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["answer"], true);
}

#[test]
fn kopt_detect_fast_equals_brute() {
    let d = scratch("kopt");
    let (g, t) = (d.join("g.json"), d.join("t.json"));
    for seed in 0..5 {
        let s = seed.to_string();
        run(&[
            "gen",
            "--type",
            "graph",
            "-n",
            "14",
            "--lo",
            "-30",
            "--hi",
            "30",
            "--seed",
            &s,
            "-o",
            g.to_str().unwrap(),
        ]);
        run(&["gen", "--type", "tour", "-n", "14", "--seed", &s, "-o", t.to_str().unwrap()]);
        let out: Vec<(Option<i32>, serde_json::Value)> = ["fast", "brute"]
            .iter()
            .map(|a| {
                let o = run(&["kopt", "detect", g.to_str().unwrap(), t.to_str().unwrap(), "--k", "3", "--algo", a]);
                (o.status.code(), json(&o)["move"]["delta"].clone())
            })
            .collect();
        assert_eq!(out[0], out[1], "seed {seed}");
    }
}

#[test]
fn usage_errors_and_verified_commands() {
    assert_eq!(run(&["nosuch"]).status.code(), Some(2));
    assert_eq!(run(&["pyramidal", "x.json", "--frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["pyramidal", "/nonexistent/x.json"]).status.code(), Some(2));
    let d = scratch("verify");
    let a = d.join("a.json");
    run(&["gen", "--type", "sorted-points", "-n", "60", "--seed", "4", "-o", a.to_str().unwrap()]);
    let o = run(&["pyramidal", a.to_str().unwrap(), "--verify", "--algo", "quadratic"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["localsearch", a.to_str().unwrap(), "--verify", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let csv = String::from_utf8(o.stdout).unwrap();
    assert!(csv.starts_with("iter,delta,cost,micros\n"));
    assert!(csv.lines().count() > 2);
}

#[test]
fn reductions_round_trip_through_files() {
    let d = scratch("reduce");
    let (g, h, t, nt) = (d.join("g.json"), d.join("h.json"), d.join("t.json"), d.join("nt.json"));
    std::fs::write(&g, r#"{"type":"graph","n":4,"weights":[-3,1,1,1,1,1]}"#).unwrap();
    let o = run(&[
        "reduce",
        "nt-to-3opt",
        g.to_str().unwrap(),
        "--tour-out",
        t.to_str().unwrap(),
        "-o",
        h.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["kopt", "detect", h.to_str().unwrap(), t.to_str().unwrap(), "--k", "3", "--verify"]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["reduce", "3opt-to-nt", h.to_str().unwrap(), t.to_str().unwrap(), "-o", nt.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["precheck"], "clear");
}

#[test]
fn bench_answers_repeat() {
    let go = || {
        let o = run(&["bench", "--suite", "bottleneck", "--sizes", "40,80", "--seeds", "1,2"]);
        assert_eq!(o.status.code(), Some(0));
        String::from_utf8(o.stdout)
            .unwrap()
            .lines()
            .map(|l| l.rsplit_once(',').unwrap().0.to_string())
            .collect::<Vec<_>>()
    };
    let a = go();
    assert_eq!(a[0], "suite,algo,n,seed,answer");
    assert_eq!(a.len(), 1 + 2 * 3 * 2);
    assert_eq!(a, go());
    assert_eq!(run(&["bench", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn selftest_passes() {
    let o = run(&["selftest"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stdout));
}
