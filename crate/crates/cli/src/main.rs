use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use dmb_core::document::{graph_to_json, parse_graph, DecompositionDocument};
use dmb_core::dot::to_dot;
use dmb_core::generate::{random_large, RandomParams};
use dmb_core::oracle::{check_random, full_check, OracleLimits, Verdict};
use dmb_core::{
    classify_edges, decompose, enumerate_verifying_sets, max_b_matching, verifying_cost,
    verifying_to_ideal, BipartiteGraph, Decomposition, EdgeClassification, Error, Matching,
    VertexSet,
};
use serde_json::{json, Value};

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "dmb",
    version,
    about = "Dulmage-Mendelsohn decomposition for bipartite b-matchings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve, decompose and classify a graph; print the decomposition as JSON.
    Decompose {
        /// Graph JSON file, or `-` for stdin.
        input: PathBuf,
        /// Also write the component order in DOT format to this path.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Draw only the transitive reduction in the DOT output.
        #[arg(long)]
        reduce: bool,
    },
    /// Compare the fast pipeline with the brute-force oracle.
    Check(CheckArgs),
    /// Time the decomposition (solver excluded) on random graphs.
    Bench {
        /// Edge counts, comma separated.
        #[arg(long, value_delimiter = ',', default_values_t = [10_000usize, 20_000, 40_000])]
        sizes: Vec<usize>,
        /// Repetitions per size; the fastest is reported.
        #[arg(long, default_value_t = 3)]
        reps: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Print the class of every edge as JSON.
    Classify { input: PathBuf },
    /// List the verifying sets as JSON.
    EnumerateVerifying {
        input: PathBuf,
        /// Stop after this many sets.
        #[arg(long, default_value_t = 1000)]
        cap: usize,
    },
    /// Test whether a vertex set is verifying; exit 1 if it is not.
    CheckVerifying {
        input: PathBuf,
        /// Vertex names, comma separated (e.g. `a0,b1`); empty for the empty set.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        set: Vec<String>,
    },
}

#[derive(Args)]
struct CheckArgs {
    /// Number of random instances.
    #[arg(long, conflicts_with = "input", required_unless_present = "input")]
    random: Option<u64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Check a single graph JSON file instead of random instances.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 4)]
    max_a: usize,
    #[arg(long, default_value_t = 4)]
    max_b: usize,
    #[arg(long, default_value_t = 0)]
    min_cap: u64,
    #[arg(long, default_value_t = 2)]
    max_cap: u64,
    #[arg(long, default_value_t = 0.5)]
    edge_prob: f64,
}

/// A failure together with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn internal(err: Error) -> Self {
        Failure {
            code: EXIT_INTERNAL,
            message: format!("internal error: {err}"),
        }
    }
}

type Outcome = Result<ExitCode, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Decompose { input, dot, reduce } => cmd_decompose(&input, dot.as_deref(), reduce),
        Command::Check(args) => cmd_check(&args),
        Command::Bench { sizes, reps, seed } => cmd_bench(&sizes, reps, seed),
        Command::Classify { input } => cmd_classify(&input),
        Command::EnumerateVerifying { input, cap } => cmd_enumerate(&input, cap),
        Command::CheckVerifying { input, set } => cmd_check_verifying(&input, &set),
    };
    match outcome {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("dmb: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn read_graph(path: &Path) -> Result<BipartiteGraph, Failure> {
    let text = if path == Path::new("-") {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Failure::usage(format!("cannot read stdin: {e}")))?;
        buf
    } else {
        fs::read_to_string(path)
            .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?
    };
    parse_graph(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

struct Pipeline {
    m: Matching,
    d: Decomposition,
    cls: EdgeClassification,
}

fn run_pipeline(g: &BipartiteGraph) -> Result<Pipeline, Failure> {
    let m = max_b_matching(g);
    let d = decompose(g, &m).map_err(Failure::internal)?;
    let cls = classify_edges(g, &m, &d).map_err(Failure::internal)?;
    Ok(Pipeline { m, d, cls })
}

fn print_json(value: &impl serde::Serialize) {
    println!(
        "{}",
        serde_json::to_string_pretty(value).expect("output serializes")
    );
}

fn names(g: &BipartiteGraph, set: &VertexSet) -> Vec<String> {
    set.iter().map(|v| g.vertex_name(v)).collect()
}

fn cmd_decompose(input: &Path, dot: Option<&Path>, reduce: bool) -> Outcome {
    let g = read_graph(input)?;
    let p = run_pipeline(&g)?;
    print_json(&DecompositionDocument::build(&g, &p.m, &p.d, &p.cls));
    if let Some(path) = dot {
        fs::write(path, to_dot(&g, &p.d, reduce))
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_check(args: &CheckArgs) -> Outcome {
    let limits = OracleLimits::default();
    if let Some(path) = &args.input {
        let g = read_graph(path)?;
        return match full_check(&g, &limits) {
            Ok(Verdict::Agree) => {
                println!("ok: {} agrees with the oracle", path.display());
                Ok(ExitCode::SUCCESS)
            }
            Ok(Verdict::Diverge(d)) => {
                println!("{}", graph_to_json(&g));
                println!("divergence in {}: {}", d.field, d.detail);
                Ok(ExitCode::from(EXIT_CHECK_FAILED))
            }
            Err(err @ Error::TooLarge { .. }) => Err(Failure::usage(err.to_string())),
            Err(err) => Err(Failure::internal(err)),
        };
    }

    let count = args.random.expect("clap requires --random without --input");
    let params = RandomParams {
        max_a: args.max_a,
        max_b: args.max_b,
        min_cap: args.min_cap,
        max_cap: args.max_cap,
        edge_prob: args.edge_prob,
    };
    if params.max_a == 0 || params.max_b == 0 {
        return Err(Failure::usage("--max-a and --max-b must be positive"));
    }
    if params.min_cap > params.max_cap {
        return Err(Failure::usage("--min-cap exceeds --max-cap"));
    }
    if !(0.0..=1.0).contains(&params.edge_prob) {
        return Err(Failure::usage("--edge-prob must lie in [0, 1]"));
    }
    if params.max_a + params.max_b > limits.max_vertices {
        return Err(Failure::usage(format!(
            "--max-a + --max-b = {} exceeds the oracle limit of {} vertices",
            params.max_a + params.max_b,
            limits.max_vertices
        )));
    }
    if params.max_a * params.max_b > limits.max_edges {
        return Err(Failure::usage(format!(
            "--max-a * --max-b = {} exceeds the oracle limit of {} edges",
            params.max_a * params.max_b,
            limits.max_edges
        )));
    }

    let report = check_random(count, args.seed, &params, &limits);
    if let Some(first) = report.failures.first() {
        let g = dmb_core::generate::random_instance(&params, first.seed, first.index);
        println!("{}", graph_to_json(&g));
        println!(
            "divergence in {} (seed {}, instance {}): {}",
            first.field, first.seed, first.index, first.detail
        );
        println!(
            "{} of {} instances failed",
            report.failures.len(),
            report.checked
        );
        return Ok(ExitCode::from(EXIT_CHECK_FAILED));
    }
    println!(
        "ok: {} instances (seed {}) agree with the oracle",
        report.checked, args.seed
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_bench(sizes: &[usize], reps: usize, seed: u64) -> Outcome {
    if reps == 0 {
        return Err(Failure::usage("--reps must be positive"));
    }
    println!(
        "{:>10} {:>10} {:>12} {:>12}",
        "edges", "vertices", "components", "seconds"
    );
    for &edges in sizes {
        let g = random_large(edges, seed);
        let m = max_b_matching(&g);
        let mut best = f64::INFINITY;
        let mut components = 0;
        for _ in 0..reps {
            let start = Instant::now();
            let d = decompose(&g, &m).map_err(Failure::internal)?;
            best = best.min(start.elapsed().as_secs_f64());
            components = d.component_count();
        }
        println!(
            "{:>10} {:>10} {:>12} {:>12.6}",
            g.edge_count(),
            g.vertex_count(),
            components,
            best
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_classify(input: &Path) -> Outcome {
    let g = read_graph(input)?;
    let p = run_pipeline(&g)?;
    let doc = DecompositionDocument::build(&g, &p.m, &p.d, &p.cls);
    print_json(&doc.edge_classes);
    Ok(ExitCode::SUCCESS)
}

fn cmd_enumerate(input: &Path, cap: usize) -> Outcome {
    let g = read_graph(input)?;
    let p = run_pipeline(&g)?;
    let listing = enumerate_verifying_sets(&p.d, cap).map_err(|e| Failure::usage(e.to_string()))?;
    let sets: Vec<Vec<String>> = listing.sets.iter().map(|s| names(&g, s)).collect();
    print_json(&json!({
        "max_size": p.m.size(),
        "sets": sets,
        "truncated": listing.truncated,
    }));
    Ok(ExitCode::SUCCESS)
}

fn cmd_check_verifying(input: &Path, set: &[String]) -> Outcome {
    let g = read_graph(input)?;
    let p = run_pipeline(&g)?;
    let mut z = VertexSet::empty(g.vertex_count());
    for name in set.iter().filter(|s| !s.is_empty()) {
        let v = g
            .vertex_by_name(name.trim())
            .map_err(|e| Failure::usage(e.to_string()))?;
        z.insert(v);
    }
    let cost = verifying_cost(&g, &z);
    let verifying = cost == p.m.size() as u64;
    let ideal: Value = match verifying_to_ideal(&g, &p.d, &z) {
        Ok(pair) => json!({ "lower": pair.lower(), "upper": pair.upper() }),
        Err(_) => Value::Null,
    };
    print_json(&json!({
        "set": names(&g, &z),
        "cost": cost,
        "max_size": p.m.size(),
        "verifying": verifying,
        "ideal": ideal,
    }));
    Ok(if verifying {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILED)
    })
}
