//! Command-line front door: generate point sets, build graphs, route on
//! them with any registered algorithm, and report or render the results.

use std::collections::{BTreeMap, VecDeque};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use ordered_theta::builder::build;
use ordered_theta::engine::{run, RouteOutcome, Trace};
use ordered_theta::instances::{
    make_lr, make_stuck_demo, random_points, RANDOM_POINTS_K_RANGE, STUCK_DEMO_K,
};
use ordered_theta::io::{
    read_graph, read_points, read_trace, write_graph, write_points, write_trace,
};
use ordered_theta::oracles::dijkstra;
use ordered_theta::routers::{by_name, ROUTER_NAMES};
use ordered_theta::{OrderedThetaGraph, Point, VertexId};

#[derive(Parser)]
#[command(name = "otheta", version, about = "Ordered theta-graph toolbox")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded random point set in the unit square.
    Gen {
        /// Number of points.
        #[arg(long)]
        n: usize,
        /// Random seed.
        #[arg(long)]
        seed: u64,
        /// Cone count written to the file header.
        #[arg(long, default_value_t = 4)]
        k: u32,
        /// How often to resample before giving up.
        #[arg(long, default_value_t = 64)]
        retry_limit: u32,
        /// Output points file.
        #[arg(long)]
        out: PathBuf,
    },
    /// Build a graph from a points file.
    Build {
        /// Input points file.
        #[arg(long)]
        points: PathBuf,
        /// Cone count; defaults to the file header.
        #[arg(long)]
        k: Option<u32>,
        /// Output graph file.
        #[arg(long)]
        out: PathBuf,
    },
    /// Route between two vertices with a named algorithm.
    Route {
        /// Input graph file.
        #[arg(long)]
        graph: PathBuf,
        /// Routing algorithm: a, ordered-theta, theta, or greedy.
        #[arg(long)]
        algo: String,
        /// Source vertex id.
        #[arg(long)]
        s: usize,
        /// Target vertex id.
        #[arg(long)]
        t: usize,
        /// Hop budget; defaults to 4n.
        #[arg(long)]
        budget: Option<usize>,
        /// Write the walk as JSON to this path.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Generate the adversarial left/right point-set pair.
    Lr {
        /// Indistinguishability depth.
        #[arg(long)]
        h: u32,
        /// Cone count.
        #[arg(long)]
        k: u32,
        /// Output points file for the left instance.
        #[arg(long)]
        out_l: PathBuf,
        /// Output points file for the right instance.
        #[arg(long)]
        out_r: PathBuf,
    },
    /// Run a memoryless router on both adversarial instances and report
    /// which side defeats it.
    DemoImpossibility {
        /// Indistinguishability depth.
        #[arg(long)]
        h: u32,
        /// Cone count.
        #[arg(long)]
        k: u32,
        /// Memoryless algorithm: ordered-theta, theta, or greedy.
        #[arg(long)]
        algo: String,
    },
    /// Show cone routing getting stuck where the two-phase walk arrives.
    DemoStuck,
    /// Summarize a graph and sample routing success rates.
    Stats {
        /// Input graph file.
        #[arg(long)]
        graph: PathBuf,
        /// Number of sampled source/target pairs.
        #[arg(long, default_value_t = 100)]
        pairs: usize,
    },
    /// Render a graph, and optionally a walk, as an SVG drawing.
    Render {
        /// Input graph file.
        #[arg(long)]
        graph: PathBuf,
        /// Walk JSON to highlight.
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Output SVG file.
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests print to stdout and succeed; real
            // usage mistakes print to stderr and fail.
            let _ = err.print();
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(command: Command) -> Result<ExitCode> {
    match command {
        Command::Gen {
            n,
            seed,
            k,
            retry_limit,
            out,
        } => cmd_gen(n, seed, k, retry_limit, &out),
        Command::Build { points, k, out } => cmd_build(&points, k, &out),
        Command::Route {
            graph,
            algo,
            s,
            t,
            budget,
            trace,
        } => cmd_route(&graph, &algo, s, t, budget, trace.as_deref()),
        Command::Lr { h, k, out_l, out_r } => cmd_lr(h, k, &out_l, &out_r),
        Command::DemoImpossibility { h, k, algo } => cmd_demo_impossibility(h, k, &algo),
        Command::DemoStuck => cmd_demo_stuck(),
        Command::Stats { graph, pairs } => cmd_stats(&graph, pairs),
        Command::Render { graph, trace, out } => cmd_render(&graph, trace.as_deref(), &out),
    }
}

/// One-line outcome summary shared by `route` and the demos.
fn phrase(trace: &Trace) -> String {
    match trace.result {
        RouteOutcome::Arrived => format!("arrived in {} hops", trace.counters.hops),
        RouteOutcome::Stuck => format!("stuck at vertex {}", trace.final_vertex()),
        RouteOutcome::BudgetExhausted => {
            format!("budget exhausted after {} hops", trace.counters.hops)
        }
    }
}

fn lookup_router(algo: &str) -> Result<Box<dyn ordered_theta::engine::Router>> {
    by_name(algo).ok_or_else(|| {
        anyhow!(
            "unknown algorithm '{algo}'; known algorithms: {}",
            ROUTER_NAMES.join(", ")
        )
    })
}

fn cmd_gen(n: usize, seed: u64, k: u32, retry_limit: u32, out: &Path) -> Result<ExitCode> {
    if !RANDOM_POINTS_K_RANGE.contains(&k) {
        bail!(
            "k must lie in {}..={} so the generated set is degenerate-free for it",
            RANDOM_POINTS_K_RANGE.start(),
            RANDOM_POINTS_K_RANGE.end()
        );
    }
    let points = random_points(n, seed, retry_limit)?;
    write_points(out, k, &points).with_context(|| format!("writing {}", out.display()))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_build(points_path: &Path, k_override: Option<u32>, out: &Path) -> Result<ExitCode> {
    let file =
        read_points(points_path).with_context(|| format!("reading {}", points_path.display()))?;
    let k = k_override.unwrap_or(file.k);
    let graph = build(&file.points, k)?;
    write_graph(out, &graph).with_context(|| format!("writing {}", out.display()))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_route(
    graph_path: &Path,
    algo: &str,
    s: usize,
    t: usize,
    budget: Option<usize>,
    trace_path: Option<&Path>,
) -> Result<ExitCode> {
    let graph =
        read_graph(graph_path).with_context(|| format!("reading {}", graph_path.display()))?;
    let router = lookup_router(algo)?;
    let budget = budget.unwrap_or(4 * graph.vertex_count());
    let trace = run(&graph, router.as_ref(), VertexId(s), VertexId(t), budget)?;
    println!("{}", phrase(&trace));
    if let Some(path) = trace_path {
        write_trace(path, &trace).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(if trace.result == RouteOutcome::Arrived {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn cmd_lr(h: u32, k: u32, out_l: &Path, out_r: &Path) -> Result<ExitCode> {
    let pair = make_lr(h, k)?;
    write_points(out_l, k, &pair.left).with_context(|| format!("writing {}", out_l.display()))?;
    write_points(out_r, k, &pair.right).with_context(|| format!("writing {}", out_r.display()))?;
    println!("epsilon: {}", pair.epsilon);
    Ok(ExitCode::SUCCESS)
}

fn cmd_demo_impossibility(h: u32, k: u32, algo: &str) -> Result<ExitCode> {
    if algo == "a" {
        bail!("the two-phase router is not memoryless; pick one of: theta, ordered-theta, greedy");
    }
    let router = lookup_router(algo)?;
    let pair = make_lr(h, k)?;
    let left = build(&pair.left, k)?;
    let right = build(&pair.right, k)?;
    let n = left.vertex_count();
    let budget = 10 * n;
    let (s, t) = (VertexId(1), VertexId(n));
    let mut failed = Vec::new();
    for (side, graph) in [("L", &left), ("R", &right)] {
        let trace = run(graph, router.as_ref(), s, t, budget)?;
        println!("{side}: {}", phrase(&trace));
        if trace.result != RouteOutcome::Arrived {
            failed.push(side);
        }
    }
    if failed.is_empty() {
        println!("fails on: neither");
    } else {
        println!("fails on: {}", failed.join(" and "));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_demo_stuck() -> Result<ExitCode> {
    let graph = build(&make_stuck_demo(), STUCK_DEMO_K)?;
    for algo in ["theta", "a"] {
        let router = lookup_router(algo)?;
        let trace = run(&graph, router.as_ref(), VertexId(1), VertexId(3), 16)?;
        println!("{algo}: {}", phrase(&trace));
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct StatsReport {
    n: usize,
    m: usize,
    k: u32,
    max_degree: usize,
    /// Longest shortest path in hops; absent when the graph is disconnected.
    diameter_hops: Option<usize>,
    /// Source/target pairs actually sampled.
    pairs: usize,
    /// Largest ratio of in-graph distance to straight-line distance seen.
    max_stretch: Option<f64>,
    /// Arrivals per registered router over the sampled pairs.
    router_success: BTreeMap<String, usize>,
}

fn cmd_stats(graph_path: &Path, pairs: usize) -> Result<ExitCode> {
    let graph =
        read_graph(graph_path).with_context(|| format!("reading {}", graph_path.display()))?;
    let n = graph.vertex_count();
    let budget = 4 * n;

    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut sampled = Vec::new();
    if n >= 2 {
        for _ in 0..pairs {
            let s = VertexId(rng.gen_range(1..=n));
            let t = loop {
                let t = VertexId(rng.gen_range(1..=n));
                if t != s {
                    break t;
                }
            };
            sampled.push((s, t));
        }
    }

    let mut max_stretch: Option<f64> = None;
    for &(s, t) in &sampled {
        if let Some((dist, _)) = dijkstra(&graph, s, t) {
            let direct = graph.point(s).distance(graph.point(t));
            if direct > 0.0 {
                let stretch = dist / direct;
                max_stretch = Some(max_stretch.map_or(stretch, |best| best.max(stretch)));
            }
        }
    }

    let mut router_success = BTreeMap::new();
    for algo in ROUTER_NAMES {
        let router = lookup_router(algo)?;
        // A router error on a hand-crafted graph counts as a failed pair,
        // the same as getting stuck.
        let arrivals = sampled
            .iter()
            .filter(|&&(s, t)| {
                run(&graph, router.as_ref(), s, t, budget)
                    .map(|trace| trace.result == RouteOutcome::Arrived)
                    .unwrap_or(false)
            })
            .count();
        router_success.insert(algo.to_string(), arrivals);
    }

    let report = StatsReport {
        n,
        m: graph.edge_count(),
        k: graph.k(),
        max_degree: graph.ids().map(|id| graph.degree(id)).max().unwrap_or(0),
        diameter_hops: diameter_hops(&graph),
        pairs: sampled.len(),
        max_stretch,
        router_success,
    };
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(ExitCode::SUCCESS)
}

/// Largest breadth-first eccentricity, or `None` for disconnected graphs.
fn diameter_hops(graph: &OrderedThetaGraph) -> Option<usize> {
    let n = graph.vertex_count();
    let mut overall = 0usize;
    for source in graph.ids() {
        let mut dist = vec![usize::MAX; n + 1];
        let mut queue = VecDeque::new();
        dist[source.0] = 0;
        queue.push_back(source);
        let mut reached = 1usize;
        while let Some(v) = queue.pop_front() {
            for entry in graph.neighbours(v) {
                if dist[entry.id.0] == usize::MAX {
                    dist[entry.id.0] = dist[v.0] + 1;
                    overall = overall.max(dist[entry.id.0]);
                    reached += 1;
                    queue.push_back(entry.id);
                }
            }
        }
        if reached < n {
            return None;
        }
    }
    Some(overall)
}

fn cmd_render(graph_path: &Path, trace_path: Option<&Path>, out: &Path) -> Result<ExitCode> {
    let graph =
        read_graph(graph_path).with_context(|| format!("reading {}", graph_path.display()))?;
    let trace = trace_path
        .map(|path| read_trace(path).with_context(|| format!("reading {}", path.display())))
        .transpose()?;
    if let Some(trace) = &trace {
        let mentioned = std::iter::once(trace.source)
            .chain(trace.hops.iter().flat_map(|hop| [hop.from, hop.to]));
        for id in mentioned {
            if !graph.contains(id) {
                bail!("trace references vertex {id}, which the graph does not have");
            }
        }
    }
    fs::write(out, render_svg(&graph, trace.as_ref()))
        .with_context(|| format!("writing {}", out.display()))?;
    Ok(ExitCode::SUCCESS)
}

fn render_svg(graph: &OrderedThetaGraph, trace: Option<&Trace>) -> String {
    const SIZE: f64 = 1000.0;
    const MARGIN: f64 = 50.0; // 5% of the canvas on every side

    let mut min_x = f64::INFINITY;
    let mut max_x = f64::NEG_INFINITY;
    let mut min_y = f64::INFINITY;
    let mut max_y = f64::NEG_INFINITY;
    for v in graph.vertices() {
        min_x = min_x.min(v.point.x);
        max_x = max_x.max(v.point.x);
        min_y = min_y.min(v.point.y);
        max_y = max_y.max(v.point.y);
    }
    let span = (max_x - min_x).max(max_y - min_y).max(1e-9);
    let scale = (SIZE - 2.0 * MARGIN) / span;
    let offset_x = (SIZE - (max_x - min_x) * scale) / 2.0;
    let offset_y = (SIZE - (max_y - min_y) * scale) / 2.0;
    // The y-axis grows downward on screen, so flip it.
    let place = |p: Point| -> (f64, f64) {
        let x = offset_x + (p.x - min_x) * scale;
        let y = SIZE - (offset_y + (p.y - min_y) * scale);
        (x, y)
    };

    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {SIZE} {SIZE}\">\n\
         <rect width=\"{SIZE}\" height=\"{SIZE}\" fill=\"white\"/>\n"
    );
    for (a, b) in graph.edges() {
        let (x1, y1) = place(graph.point(a));
        let (x2, y2) = place(graph.point(b));
        svg.push_str(&format!(
            "<line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" \
             stroke=\"gray\" stroke-width=\"1.5\"/>\n"
        ));
    }
    if let Some(trace) = trace {
        let mut points = String::new();
        let walk = std::iter::once(trace.source).chain(trace.hops.iter().map(|hop| hop.to));
        for id in walk {
            let (x, y) = place(graph.point(id));
            points.push_str(&format!("{x:.2},{y:.2} "));
        }
        svg.push_str(&format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"crimson\" stroke-width=\"3\" \
             stroke-linejoin=\"round\" opacity=\"0.8\"/>\n",
            points.trim_end()
        ));
    }
    for v in graph.vertices() {
        let (x, y) = place(v.point);
        svg.push_str(&format!(
            "<circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"6\" fill=\"steelblue\" stroke=\"black\"/>\n"
        ));
        svg.push_str(&format!(
            "<text x=\"{x:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"middle\">{}</text>\n",
            y - 10.0,
            v.id
        ));
    }
    svg.push_str("</svg>\n");
    svg
}
