//! Command-line front end.
//!
//! Results go to standard output as one JSON object per line (numbers with
//! 12 significant digits), or as `key  value` lines with `--pretty`.
//! Exit codes: 0 success, 1 a "no" answer from `bottleneck decide` or
//! `kopt detect`, 2 usage or input errors, 3 a `--verify` mismatch.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::bench;
use crate::bottleneck::{
    bottleneck_decide, bottleneck_fast, bottleneck_optimize, bottleneck_quadratic, decide_quadratic, tour_within,
};
use crate::disk_union::DiskUnion;
use crate::error::{Error, Result};
use crate::generate::{disjointness_points, random_graph, random_points, random_points_sorted, random_tour, rng};
use crate::io::{instance_to_json, read_instance, read_tour, round_sig12, tour_to_json, write_tour, Instance};
use crate::kopt::{
    best_kmove, best_kmove_bruteforce, best_kmove_fast, lift_move, repeated_kopt, subdivide, KMove, KoptAlgo,
};
use crate::model::{Metric, OrderedPointSet, Point, Tour, WeightedGraph, DEFAULT_EPS, GEOMETRY_SCALE};
use crate::pyramidal::{pyramidal_fast, pyramidal_quadratic};
use crate::reductions::{
    has_improving_3move, negative_triangle_bruteforce, nt_to_3opt, shift_weights, threeopt_to_nt, Precheck,
};
use crate::two_opt::{repeated_2opt, EngineKind, LocalSearchResult};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "tspfg",
    version,
    about = "Pyramidal, bottleneck, k-opt and 2-opt TSP algorithms with their reference solvers"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Run the reference algorithm as well and exit 3 if the answers differ.
    #[arg(long, global = true)]
    verify: bool,
    /// Relative tolerance for comparing real-valued answers.
    #[arg(long, global = true, default_value_t = DEFAULT_EPS)]
    eps: f64,
    /// Human-readable output instead of JSON lines.
    #[arg(long, global = true)]
    pretty: bool,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Iteration cap for local search.
    #[arg(long, global = true)]
    max_iters: Option<usize>,
    /// Output file (instance, tour or CSV, depending on the command).
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Generate an instance or a tour.
    Gen {
        #[arg(long = "type", value_enum)]
        kind: GenKind,
        #[arg(short = 'n', long)]
        n: Option<usize>,
        /// Weight range for graphs.
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        lo: i64,
        #[arg(long, default_value_t = 1000, allow_negative_numbers = true)]
        hi: i64,
        /// Set U for the disjointness construction, comma separated.
        #[arg(long, value_delimiter = ',')]
        u: Vec<i64>,
        #[arg(long, value_delimiter = ',')]
        v: Vec<i64>,
        #[arg(long)]
        perturbed: bool,
    },
    /// Shortest pyramidal tour of a point instance.
    Pyramidal {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = PyrAlgo::Fast)]
        algo: PyrAlgo,
    },
    /// Bottleneck pyramidal tours.
    Bottleneck {
        #[command(subcommand)]
        cmd: BottleneckCmd,
    },
    /// Best k-move detection and repeated k-opt.
    Kopt {
        #[command(subcommand)]
        cmd: KoptCmd,
    },
    /// Repeated best-improvement local search; per-iteration CSV.
    Localsearch {
        instance: PathBuf,
        /// Starting tour; a random one from `--seed` if omitted.
        tour: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Moves::TwoOpt)]
        moves: Moves,
        #[arg(long, value_enum, default_value_t = Engine::Fast)]
        engine: Engine,
    },
    /// Reductions between 3-opt detection and negative triangle.
    Reduce {
        #[command(subcommand)]
        cmd: ReduceCmd,
    },
    /// Timing suites as CSV `suite,algo,n,seed,answer,micros`.
    Bench {
        #[arg(long)]
        suite: String,
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_values_t = vec![0u64, 1, 2])]
        seeds: Vec<u64>,
        /// Only this algorithm of the suite.
        #[arg(long)]
        algo: Option<String>,
    },
    /// Quick randomized cross-checks of every fast algorithm.
    Selftest,
}

#[derive(Subcommand, Debug)]
enum BottleneckCmd {
    /// Is there a pyramidal tour with every edge at most B?
    Decide {
        instance: PathBuf,
        #[arg(long = "B", short = 'B')]
        b: f64,
        #[arg(long, value_enum, default_value_t = DecideAlgo::List)]
        algo: DecideAlgo,
    },
    /// Smallest achievable longest edge.
    Opt {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = OptAlgo::Fast)]
        algo: OptAlgo,
    },
}

#[derive(Subcommand, Debug)]
enum KoptCmd {
    /// Best strictly improving k-move, if any.
    Detect {
        instance: PathBuf,
        tour: PathBuf,
        #[arg(long, short = 'k')]
        k: usize,
        #[arg(long, value_enum, default_value_t = KAlgo::Fast)]
        algo: KAlgo,
    },
    /// Apply best k-moves until none improves.
    Optimize {
        instance: PathBuf,
        tour: Option<PathBuf>,
        #[arg(long, short = 'k')]
        k: usize,
        #[arg(long, value_enum, default_value_t = KAlgo::Fast)]
        algo: KAlgo,
    },
}

#[derive(Subcommand, Debug)]
enum ReduceCmd {
    /// Triangle instance to a 3-opt instance plus its tour.
    #[command(name = "nt-to-3opt")]
    NtTo3opt {
        graph: PathBuf,
        /// Where to write the tour of the produced instance.
        #[arg(long)]
        tour_out: Option<PathBuf>,
        /// Add 4M to every weight so they become non-negative.
        #[arg(long)]
        shift: bool,
    },
    /// 3-opt instance and tour to a triangle instance.
    #[command(name = "3opt-to-nt")]
    ThreeoptToNt { graph: PathBuf, tour: PathBuf },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GenKind {
    Points,
    SortedPoints,
    Graph,
    Tour,
    Disjointness,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq)]
enum PyrAlgo {
    Fast,
    Quadratic,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq)]
enum DecideAlgo {
    List,
    Quadratic,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq)]
enum OptAlgo {
    Fast,
    Search,
    Quadratic,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq)]
enum KAlgo {
    Brute,
    Fast,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Moves {
    #[value(name = "2opt")]
    TwoOpt,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq)]
enum Engine {
    Fast,
    Naive,
}

impl From<KAlgo> for KoptAlgo {
    fn from(a: KAlgo) -> Self {
        match a {
            KAlgo::Brute => KoptAlgo::Brute,
            KAlgo::Fast => KoptAlgo::Fast,
        }
    }
}

/// Entry point of the binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args(), &mut stdout.lock(), &mut stderr.lock())
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let mut ctx = Ctx { cli: &cli, out, err };
    match ctx.dispatch() {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(ctx.err, "error: {e}");
            EXIT_USAGE
        }
    }
}

struct Ctx<'a> {
    cli: &'a Cli,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

/// Rounds every float in `v` to 12 significant digits.
fn round_value(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => json!(round_sig12(n.as_f64().unwrap())),
        Value::Array(a) => Value::Array(a.into_iter().map(round_value).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_value(v))).collect()),
        other => other,
    }
}

/// FNV-1a of the canonical instance text.
fn digest(inst: &Instance) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in instance_to_json(inst).bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    format!("{h:016x}")
}

fn points(inst: &Instance) -> Result<&OrderedPointSet> {
    match inst {
        Instance::Points(p) => Ok(p),
        Instance::Graph(_) => Err(Error::InvalidArgument("this command needs a point instance".into())),
    }
}

/// Graph view of an instance; points become integer lengths scaled by 2^20.
fn as_graph(inst: &Instance) -> Result<WeightedGraph> {
    match inst {
        Instance::Graph(g) => Ok(g.clone()),
        Instance::Points(p) => WeightedGraph::from_points_scaled(p, GEOMETRY_SCALE),
    }
}

fn close(a: f64, b: f64, eps: f64) -> bool {
    a == b || (a - b).abs() <= eps * a.abs().max(b.abs()).max(1.0)
}

fn move_json(mv: &KMove, d: i64) -> Value {
    json!({"delta": d, "positions": mv.positions, "signature": mv.signature.images()})
}

impl Ctx<'_> {
    fn emit(&mut self, fields: Value) -> Result<()> {
        let v = round_value(fields);
        if self.cli.pretty {
            if let Value::Object(o) = &v {
                let w = o.keys().map(String::len).max().unwrap_or(0);
                for (k, x) in o {
                    let s = match x {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    writeln!(self.out, "{k:<w$}  {s}")?;
                }
                writeln!(self.out)?;
                return Ok(());
            }
        }
        writeln!(self.out, "{v}")?;
        Ok(())
    }

    fn report(&mut self, command: &str, inst: &Instance, algo: &str, micros: u128, extra: Value) -> Result<()> {
        let mut m = Map::new();
        m.insert("command".into(), json!(command));
        m.insert("digest".into(), json!(digest(inst)));
        m.insert("algo".into(), json!(algo));
        m.insert("seed".into(), json!(self.cli.seed));
        m.insert("micros".into(), json!(micros as u64));
        if let Value::Object(e) = extra {
            m.extend(e);
        }
        self.emit(Value::Object(m))
    }

    fn mismatch(&mut self, what: &str, a: impl std::fmt::Debug, b: impl std::fmt::Debug) -> Result<i32> {
        writeln!(self.err, "verify: {what} differs: {a:?} vs {b:?}")?;
        Ok(EXIT_MISMATCH)
    }

    fn write_tour_out(&self, t: &Tour) -> Result<()> {
        if let Some(p) = &self.cli.output {
            write_tour(p, t)?;
        }
        Ok(())
    }

    fn dispatch(&mut self) -> Result<i32> {
        let cli = self.cli;
        match &cli.cmd {
            Cmd::Gen { kind, n, lo, hi, u, v, perturbed } => self.gen(*kind, *n, *lo, *hi, u, v, *perturbed),
            Cmd::Pyramidal { instance, algo } => self.pyramidal(instance, *algo),
            Cmd::Bottleneck { cmd: BottleneckCmd::Decide { instance, b, algo } } => self.decide(instance, *b, *algo),
            Cmd::Bottleneck { cmd: BottleneckCmd::Opt { instance, algo } } => self.bottleneck_opt(instance, *algo),
            Cmd::Kopt { cmd: KoptCmd::Detect { instance, tour, k, algo } } => {
                self.kopt_detect(instance, tour, *k, *algo)
            }
            Cmd::Kopt { cmd: KoptCmd::Optimize { instance, tour, k, algo } } => {
                self.kopt_optimize(instance, tour.as_deref(), *k, *algo)
            }
            Cmd::Localsearch { instance, tour, moves: Moves::TwoOpt, engine } => {
                self.localsearch(instance, tour.as_deref(), *engine)
            }
            Cmd::Reduce { cmd: ReduceCmd::NtTo3opt { graph, tour_out, shift } } => {
                self.nt_to_3opt(graph, tour_out.as_deref(), *shift)
            }
            Cmd::Reduce { cmd: ReduceCmd::ThreeoptToNt { graph, tour } } => self.threeopt_to_nt(graph, tour),
            Cmd::Bench { suite, sizes, seeds, algo } => self.bench(suite, sizes, seeds, algo.as_deref()),
            Cmd::Selftest => self.selftest(),
        }
    }

    /// Writes `text` to `-o` and a summary line to stdout, or `text` alone
    /// to stdout.
    fn deliver(&mut self, text: &str, summary: Value) -> Result<i32> {
        match &self.cli.output {
            Some(p) => {
                std::fs::write(p, format!("{text}\n"))?;
                self.emit(summary)?;
            }
            None => writeln!(self.out, "{text}")?,
        }
        Ok(EXIT_OK)
    }

    #[allow(clippy::too_many_arguments)]
    fn gen(
        &mut self,
        kind: GenKind,
        n: Option<usize>,
        lo: i64,
        hi: i64,
        u: &[i64],
        v: &[i64],
        perturbed: bool,
    ) -> Result<i32> {
        let seed = self.cli.seed;
        let need_n = || n.ok_or_else(|| Error::InvalidArgument("-n is required for this type".into()));
        let (text, extra) = match kind {
            GenKind::Points => (instance_to_json(&Instance::Points(random_points(need_n()?, seed))), json!({})),
            GenKind::SortedPoints => {
                (instance_to_json(&Instance::Points(random_points_sorted(need_n()?, seed))), json!({}))
            }
            GenKind::Graph => (instance_to_json(&Instance::Graph(random_graph(need_n()?, seed, lo, hi)?)), json!({})),
            GenKind::Tour => (tour_to_json(&random_tour(need_n()?, seed)), json!({})),
            GenKind::Disjointness => {
                let (p, b) = disjointness_points(u, v, perturbed)?;
                (instance_to_json(&Instance::Points(p)), json!({ "B": b }))
            }
        };
        let mut summary = json!({"command": "gen", "type": kind.to_possible_value().map(|v| v.get_name().to_string()), "n": n, "seed": seed});
        if let (Value::Object(s), Value::Object(e)) = (&mut summary, extra.clone()) {
            s.extend(e);
        }
        if self.cli.output.is_none() && !extra.as_object().is_some_and(|o| o.is_empty()) {
            // B travels on stderr when the instance itself goes to stdout.
            writeln!(self.err, "{}", round_value(extra))?;
        }
        self.deliver(&text, summary)
    }

    fn pyramidal(&mut self, path: &Path, algo: PyrAlgo) -> Result<i32> {
        let inst = read_instance(path)?;
        let p = points(&inst)?;
        let (s, us) = bench::timed(|| if algo == PyrAlgo::Fast { pyramidal_fast(p) } else { pyramidal_quadratic(p) });
        let s = s?;
        self.write_tour_out(&s.tour)?;
        let name = if algo == PyrAlgo::Fast { "fast" } else { "quadratic" };
        self.report("pyramidal", &inst, name, us, json!({"n": p.len(), "length": s.length, "tour": s.tour.order()}))?;
        if self.cli.verify {
            let o = if algo == PyrAlgo::Fast { pyramidal_quadratic(p)? } else { pyramidal_fast(p)? };
            if !close(s.length, o.length, self.cli.eps) {
                return self.mismatch("pyramidal length", s.length, o.length);
            }
        }
        Ok(EXIT_OK)
    }

    fn decide(&mut self, path: &Path, b: f64, algo: DecideAlgo) -> Result<i32> {
        let inst = read_instance(path)?;
        let p = points(&inst)?;
        let (yes, us) =
            bench::timed(|| if algo == DecideAlgo::List { bottleneck_decide(p, b) } else { decide_quadratic(p, b) });
        let name = if algo == DecideAlgo::List { "list" } else { "quadratic" };
        let tour = if yes { tour_within(p, b) } else { None };
        if let Some(t) = &tour {
            self.write_tour_out(t)?;
        }
        let extra = json!({"n": p.len(), "B": b, "answer": yes, "tour": tour.as_ref().map(|t| t.order().to_vec())});
        self.report("bottleneck decide", &inst, name, us, extra)?;
        if self.cli.verify {
            let other = if algo == DecideAlgo::List { decide_quadratic(p, b) } else { bottleneck_decide(p, b) };
            if other != yes {
                return self.mismatch("decision", yes, other);
            }
        }
        Ok(if yes { EXIT_OK } else { EXIT_NO })
    }

    fn bottleneck_opt(&mut self, path: &Path, algo: OptAlgo) -> Result<i32> {
        let inst = read_instance(path)?;
        let p = points(&inst)?;
        let (v, us) = bench::timed(|| match algo {
            OptAlgo::Fast => bottleneck_fast(p),
            OptAlgo::Search => bottleneck_optimize(p),
            OptAlgo::Quadratic => bottleneck_quadratic(p).map(|s| s.value),
        });
        let v = v?;
        let tour = tour_within(p, v);
        if let Some(t) = &tour {
            self.write_tour_out(t)?;
        }
        let name = format!("{algo:?}").to_lowercase();
        let extra = json!({"n": p.len(), "value": v, "tour": tour.as_ref().map(|t| t.order().to_vec())});
        self.report("bottleneck opt", &inst, &name, us, extra)?;
        if self.cli.verify {
            let q = bottleneck_quadratic(p)?.value;
            let f = bottleneck_fast(p)?;
            if !close(v, q, self.cli.eps) || !close(v, f, self.cli.eps) {
                return self.mismatch("bottleneck value", v, (q, f));
            }
        }
        Ok(EXIT_OK)
    }

    fn load_graph_tour(&self, inst: &Instance, tour: Option<&Path>) -> Result<(WeightedGraph, Tour)> {
        let g = as_graph(inst)?;
        let t = match tour {
            Some(p) => read_tour(p)?.for_instance(&g)?,
            None => random_tour(g.n(), self.cli.seed),
        };
        Ok((g, t))
    }

    fn kopt_detect(&mut self, path: &Path, tour: &Path, k: usize, algo: KAlgo) -> Result<i32> {
        let inst = read_instance(path)?;
        let (g, t) = self.load_graph_tour(&inst, Some(tour))?;
        let (r, us) = bench::timed(|| best_kmove(&g, &t, k, algo.into()));
        let r = r?;
        let name = format!("{algo:?}").to_lowercase();
        let found = r.as_ref().map(|(mv, d)| move_json(mv, *d));
        self.report(
            "kopt detect",
            &inst,
            &name,
            us,
            json!({"n": g.n(), "k": k, "improving": r.is_some(), "move": found}),
        )?;
        if self.cli.verify {
            let o = if algo == KAlgo::Fast { best_kmove_bruteforce(&g, &t, k)? } else { best_kmove_fast(&g, &t, k)? };
            let (a, b) = (r.as_ref().map(|x| x.1), o.map(|x| x.1));
            if a != b {
                return self.mismatch("best delta", a, b);
            }
        }
        Ok(if r.is_some() { EXIT_OK } else { EXIT_NO })
    }

    fn kopt_optimize(&mut self, path: &Path, tour: Option<&Path>, k: usize, algo: KAlgo) -> Result<i32> {
        let inst = read_instance(path)?;
        let (g, t) = self.load_graph_tour(&inst, tour)?;
        let (r, us) = bench::timed(|| repeated_kopt(&g, &t, k, algo.into(), self.cli.max_iters));
        let (u, deltas) = r?;
        self.write_tour_out(&u)?;
        let name = format!("{algo:?}").to_lowercase();
        let extra = json!({
            "n": g.n(), "k": k, "initial_cost": t.cost(&g), "cost": u.cost(&g),
            "iterations": deltas.len(), "deltas": deltas, "tour": u.order(),
        });
        self.report("kopt optimize", &inst, &name, us, extra)?;
        if self.cli.verify {
            let other = if algo == KAlgo::Fast { KoptAlgo::Brute } else { KoptAlgo::Fast };
            let (_, d2) = repeated_kopt(&g, &t, k, other, self.cli.max_iters)?;
            if d2 != deltas {
                return self.mismatch("delta sequence", deltas, d2);
            }
        }
        Ok(EXIT_OK)
    }

    fn localsearch(&mut self, path: &Path, tour: Option<&Path>, engine: Engine) -> Result<i32> {
        let inst = read_instance(path)?;
        match &inst {
            Instance::Points(p) => self.localsearch_on(p, tour, engine),
            Instance::Graph(g) => self.localsearch_on(g, tour, engine),
        }
    }

    fn localsearch_on<M: Metric>(&mut self, m: &M, tour: Option<&Path>, engine: Engine) -> Result<i32>
    where
        M::Cost: serde::Serialize,
    {
        let t = match tour {
            Some(p) => read_tour(p)?.for_instance(m)?,
            None => random_tour(m.size(), self.cli.seed),
        };
        let kind = if engine == Engine::Fast { EngineKind::Fast } else { EngineKind::Naive };
        let r: LocalSearchResult<M::Cost> = repeated_2opt(m, &t, kind, self.cli.max_iters)?;
        writeln!(self.out, "iter,delta,cost,micros")?;
        for rec in &r.trace {
            let d = round_value(json!(rec.delta));
            let c = round_value(json!(rec.cost));
            writeln!(self.out, "{},{},{},{}", rec.iter, d, c, rec.micros)?;
        }
        self.write_tour_out(&r.tour)?;
        writeln!(self.err, "init_micros={} iterations={}", r.init_micros, r.trace.len())?;
        if self.cli.verify {
            let other = if engine == Engine::Fast { EngineKind::Naive } else { EngineKind::Fast };
            let o = repeated_2opt(m, &t, other, self.cli.max_iters)?;
            let a: Vec<_> = r.trace.iter().map(|x| (x.delta, x.key)).collect();
            let b: Vec<_> = o.trace.iter().map(|x| (x.delta, x.key)).collect();
            if a != b {
                return self.mismatch("move sequence", a.len(), b.len());
            }
        }
        Ok(EXIT_OK)
    }

    fn read_graph(path: &Path) -> Result<WeightedGraph> {
        match read_instance(path)? {
            Instance::Graph(g) => Ok(g),
            Instance::Points(_) => Err(Error::InvalidArgument("this command needs a graph instance".into())),
        }
    }

    fn nt_to_3opt(&mut self, path: &Path, tour_out: Option<&Path>, shift: bool) -> Result<i32> {
        let g = Self::read_graph(path)?;
        let (mut h, t) = nt_to_3opt(&g)?;
        if shift {
            h = shift_weights(&h, 4 * g.max_abs_weight())?;
        }
        if let Some(p) = tour_out {
            write_tour(p, &t)?;
        }
        let text = instance_to_json(&Instance::Graph(h.clone()));
        let summary = json!({"command": "reduce nt-to-3opt", "n": g.n(), "vertices": h.n(), "shifted": shift});
        self.deliver(&text, summary)
    }

    /// Triangle weights must keep their sign, so there is no shift here.
    fn threeopt_to_nt(&mut self, path: &Path, tour: &Path) -> Result<i32> {
        let g = Self::read_graph(path)?;
        let t = read_tour(tour)?.for_instance(&g)?;
        let red = threeopt_to_nt(&g, &t)?;
        let pre = match &red.precheck {
            Precheck::Clear => json!("clear"),
            Precheck::TwoMove(mv, d) => json!({"two_move": move_json(mv, *d)}),
            Precheck::SharedEndpoint(mv, d) => json!({"shared_endpoint": move_json(mv, *d)}),
        };
        let out = &red.graph;
        let text = instance_to_json(&Instance::Graph(out.clone()));
        let summary = json!({
            "command": "reduce 3opt-to-nt", "n": g.n(), "vertices": out.n(),
            "components": red.components.len(), "precheck": pre, "fallback": red.fallback,
        });
        self.deliver(&text, summary)
    }

    fn bench(&mut self, suite: &str, sizes: &[usize], seeds: &[u64], algo: Option<&str>) -> Result<i32> {
        let sizes = if sizes.is_empty() { bench::default_sizes(suite)? } else { sizes.to_vec() };
        let rows = bench::run_suite(suite, &sizes, seeds, algo, bench::worker_count())?;
        let mut csv = String::from(bench::CSV_HEADER);
        for r in &rows {
            csv.push('\n');
            csv.push_str(&r.to_csv());
        }
        match &self.cli.output {
            Some(p) => std::fs::write(p, csv + "\n")?,
            None => writeln!(self.out, "{csv}")?,
        }
        for (algo, n, med, ratio) in bench::doubling_ratios(&rows) {
            let r = ratio.map_or("-".to_string(), |r| format!("{r:.3}"));
            writeln!(self.err, "# {suite} {algo} n={n} median_micros={med} ratio={r}")?;
        }
        Ok(EXIT_OK)
    }

    fn selftest(&mut self) -> Result<i32> {
        let mut ok = true;
        for (name, cases, f) in selftest_checks() {
            let (pass, us) = bench::timed(|| f(self.cli.seed));
            let pass = pass?;
            ok &= pass;
            self.emit(json!({"check": name, "cases": cases, "pass": pass, "micros": us as u64}))?;
        }
        Ok(if ok { EXIT_OK } else { EXIT_MISMATCH })
    }
}

type Check = fn(u64) -> Result<bool>;

fn selftest_checks() -> Vec<(&'static str, usize, Check)> {
    vec![
        ("pyramidal fast = quadratic", 20, |s| {
            for i in 0..20 {
                let p = random_points(5 + 7 * i as usize, s + i);
                let (a, b) = (pyramidal_fast(&p)?, pyramidal_quadratic(&p)?);
                if !close(a.length, b.length, 1e-9) || !a.tour.is_pyramidal() {
                    return Ok(false);
                }
            }
            Ok(true)
        }),
        ("bottleneck decide list = quadratic", 100, |s| {
            for i in 0..20 {
                let p = random_points(3 + 5 * i as usize, s + i);
                for b in [0.05, 0.1, 0.2, 0.4, 0.8] {
                    if bottleneck_decide(&p, b) != decide_quadratic(&p, b) {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }),
        ("bottleneck fast = search = quadratic", 10, |s| {
            for i in 0..10 {
                let p = random_points(4 + 9 * i as usize, s + i);
                let q = bottleneck_quadratic(&p)?.value;
                if bottleneck_fast(&p)? != q || bottleneck_optimize(&p)? != q {
                    return Ok(false);
                }
            }
            Ok(true)
        }),
        ("disk union = scan", 1000, |s| {
            use rand::Rng;
            let mut r = rng(s);
            let mut du = DiskUnion::new(0.05);
            let cs: Vec<Point> = (0..100).map(|_| Point::new(r.gen(), r.gen())).collect();
            for &c in &cs {
                du.insert(c);
            }
            for _ in 0..1000 {
                let q = Point::new(r.gen(), r.gen());
                if du.contains(q) != cs.iter().any(|c| c.dist(q) <= 0.05) {
                    return Ok(false);
                }
            }
            Ok(true)
        }),
        ("k-opt fast = brute", 10, |s| {
            for i in 0..10 {
                let n = 6 + i as usize;
                let g = random_graph(n, s + i, -50, 50)?;
                let t = random_tour(n, s + i);
                if best_kmove_fast(&g, &t, 3)?.map(|x| x.1) != best_kmove_bruteforce(&g, &t, 3)?.map(|x| x.1) {
                    return Ok(false);
                }
            }
            Ok(true)
        }),
        ("subdivision keeps the best delta", 5, |s| {
            for i in 0..5 {
                let n = 5 + i as usize;
                let g = random_graph(n, s + i, -20, 20)?;
                let t = random_tour(n, s + i);
                let sub = subdivide(&g, &t, 3)?;
                let a = best_kmove_bruteforce(&g, &t, 3)?;
                let b = best_kmove_bruteforce(&sub.graph, &sub.tour, 3)?;
                if a.as_ref().map(|x| x.1) != b.as_ref().map(|x| x.1) {
                    return Ok(false);
                }
                if let Some((mv, d)) = b {
                    if lift_move(&mv, &sub)?.delta(&g, &t)? != d {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }),
        ("triangle <=> 3-move <=> triangle", 10, |s| {
            for i in 0..10 {
                let g = random_graph(3 + i as usize % 5, s + i, -5, 12)?;
                let tri = negative_triangle_bruteforce(&g).is_some();
                let (h, t) = nt_to_3opt(&g)?;
                let red = threeopt_to_nt(&h, &t)?;
                if has_improving_3move(&h, &t)? != tri || negative_triangle_bruteforce(&red.graph).is_some() != tri {
                    return Ok(false);
                }
            }
            Ok(true)
        }),
        ("2-opt engine = naive", 5, |s| {
            for i in 0..5 {
                let n = 8 + 10 * i as usize;
                let p = random_points(n, s + i);
                let t = random_tour(n, s + 50 + i);
                let a = repeated_2opt(&p, &t, EngineKind::Fast, None)?;
                let b = repeated_2opt(&p, &t, EngineKind::Naive, None)?;
                let ka: Vec<_> = a.trace.iter().map(|x| (x.delta, x.key)).collect();
                let kb: Vec<_> = b.trace.iter().map(|x| (x.delta, x.key)).collect();
                if ka != kb {
                    return Ok(false);
                }
            }
            Ok(true)
        }),
    ]
}
