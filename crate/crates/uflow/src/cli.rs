//! Command-line front end: solve, verify, decompose, generate and bench.
//!
//! Exit codes: 0 = success (or YES decision), 1 = NO decision from `solve`
//! or a failed verification, 2 = invalid input, 3 = a budget or limit was
//! exceeded.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::decomp::{
    compute_decomposition, emit_td, parse_td, to_nice, validate, DecompositionMode,
    NiceTreeDecomposition, EXACT_SMALL_LIMIT,
};
use crate::error::{Error, Result};
use crate::fpt::{solve_fpt_with, FptConfig};
use crate::generate::{
    gen_random, parse_colors, parse_edge_list, parse_items, reduce_binpacking, reduce_mcc,
    BinPackingInput, MccInput, RandomParams,
};
use crate::model::{verify_routing, Instance, Routing};
use crate::oracle::{solve_exhaustive, OptimalResult};
use crate::xp::{solve_xp_with, SolveStats, XpConfig};

#[derive(Parser)]
#[command(name = "uflow", version, about = "Exact unsplittable flow solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance exactly and print `profit=<int> decision=<yes|no>`.
    Solve(SolveArgs),
    /// Check a routing against an instance and print the report.
    Verify {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        routing: PathBuf,
    },
    /// Compute a tree decomposition and emit it in the PACE .td format.
    Decompose {
        #[arg(long)]
        instance: PathBuf,
        /// Convert to nice form before emitting.
        #[arg(long)]
        nice: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Construct an instance and emit it as JSON.
    #[command(subcommand)]
    Generate(GenerateCommand),
    /// Run a declared sweep of instances and emit CSV measurements.
    Bench {
        #[arg(long)]
        suite: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, value_enum)]
    algo: Algo,
    #[arg(long)]
    instance: PathBuf,
    /// Use this PACE .td decomposition instead of computing one.
    #[arg(long)]
    td: Option<PathBuf>,
    /// Write the witness routing as JSON to this file.
    #[arg(long)]
    witness: Option<PathBuf>,
    /// Print the result as JSON instead of the plain line.
    #[arg(long)]
    json: bool,
    /// Override the instance's maximum route length.
    #[arg(long)]
    max_len: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Brute,
    Xp,
    Fpt,
}

impl Algo {
    fn name(self) -> &'static str {
        match self {
            Algo::Brute => "brute",
            Algo::Xp => "xp",
            Algo::Fpt => "fpt",
        }
    }
}

#[derive(Subcommand)]
enum GenerateCommand {
    /// Reduce a multicolored-clique instance to flow on a path.
    Mcc {
        /// File with one color class id per vertex line.
        #[arg(long)]
        colors: PathBuf,
        /// File with one `u v` edge per line.
        #[arg(long)]
        edges: PathBuf,
        /// Omit tasks of demand zero.
        #[arg(long)]
        drop_zero: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Reduce a unary bin-packing instance to flow on a complete bipartite graph.
    Binpack {
        #[arg(long)]
        bins: u64,
        #[arg(long)]
        capacity: u64,
        /// File with space-separated item sizes.
        #[arg(long)]
        items: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Seeded random instance.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        max_degree: usize,
        #[arg(long, default_value_t = 3)]
        max_capacity: u64,
        #[arg(long, default_value_t = 4)]
        tasks: usize,
        #[arg(long, default_value_t = 0)]
        demand_min: u64,
        #[arg(long, default_value_t = 2)]
        demand_max: u64,
        #[arg(long, default_value_t = 0)]
        profit_min: u64,
        #[arg(long, default_value_t = 5)]
        profit_max: u64,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Deserialize)]
struct BenchSuite {
    runs: Vec<BenchRun>,
}

#[derive(Deserialize)]
struct BenchRun {
    instance: String,
    algo: String,
}

/// Entry point used by the binary and by tests; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are successful terminations.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::LimitExceeded(_) => 3,
                _ => 2,
            }
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Verify { instance, routing } => cmd_verify(&instance, &routing),
        Command::Decompose { instance, nice, out } => cmd_decompose(&instance, nice, out.as_deref()),
        Command::Generate(what) => cmd_generate(what),
        Command::Bench { suite, out } => cmd_bench(&suite, out.as_deref()),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::input(format!("cannot read {}: {e}", path.display())))
}

fn write_out(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).map_err(Error::Io),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_instance(path: &Path, max_len: Option<usize>) -> Result<Instance> {
    let mut instance = Instance::from_json(&read(path)?)?;
    if let Some(len) = max_len {
        let comment = instance.comment.clone();
        instance = Instance::new(instance.graph, instance.tasks, instance.target, Some(len))?;
        instance.comment = comment;
    }
    Ok(instance)
}

/// Picks the exact decomposition for small graphs, the heuristic otherwise,
/// and reports the width on standard error.
fn decomposition_for(instance: &Instance) -> Result<NiceTreeDecomposition> {
    let mode = if instance.graph.vertex_count() <= EXACT_SMALL_LIMIT {
        DecompositionMode::ExactSmall
    } else {
        DecompositionMode::Heuristic
    };
    let td = compute_decomposition(&instance.graph, mode)?;
    eprintln!("decomposition width {}", td.width());
    to_nice(&instance.graph, &td)
}

fn solve_with(
    algo: Algo,
    instance: &Instance,
    nice: impl FnOnce() -> Result<NiceTreeDecomposition>,
) -> Result<(OptimalResult, SolveStats)> {
    match algo {
        Algo::Brute => Ok((solve_exhaustive(instance)?, SolveStats::default())),
        Algo::Xp => solve_xp_with(instance, &nice()?, &XpConfig::default()),
        Algo::Fpt => solve_fpt_with(instance, &nice()?, &FptConfig::default()),
    }
}

fn cmd_solve(args: SolveArgs) -> Result<i32> {
    let instance = load_instance(&args.instance, args.max_len)?;
    let td_file = args.td.as_deref().map(read).transpose()?;
    let nice = || match &td_file {
        Some(text) => {
            let td = parse_td(text)?;
            if !validate(&instance.graph, &td).is_empty() {
                return Err(Error::input("supplied decomposition fails validation"));
            }
            to_nice(&instance.graph, &td)
        }
        None => decomposition_for(&instance),
    };
    let (result, _) = solve_with(args.algo, &instance, nice)?;

    if let Some(path) = &args.witness {
        fs::write(path, result.witness.to_json())?;
    }
    let decision = if result.decision { "yes" } else { "no" };
    if args.json {
        println!(
            "{}",
            serde_json::json!({ "profit": result.optimum, "decision": decision })
        );
    } else {
        println!("profit={} decision={}", result.optimum, decision);
    }
    Ok(if result.decision { 0 } else { 1 })
}

fn cmd_verify(instance: &Path, routing: &Path) -> Result<i32> {
    let instance = load_instance(instance, None)?;
    let routing = Routing::from_json(&read(routing)?)?;
    let report = verify_routing(&instance, &routing)?;
    println!(
        "valid={} profit={}",
        if report.valid { "yes" } else { "no" },
        report.profit
    );
    for v in &report.violations {
        println!("violation: {v}");
    }
    Ok(if report.valid { 0 } else { 1 })
}

fn cmd_decompose(instance: &Path, nice: bool, out: Option<&Path>) -> Result<i32> {
    let instance = load_instance(instance, None)?;
    let n = instance.graph.vertex_count();
    let mode = if n <= EXACT_SMALL_LIMIT {
        DecompositionMode::ExactSmall
    } else {
        DecompositionMode::Heuristic
    };
    let td = compute_decomposition(&instance.graph, mode)?;
    let td = if nice {
        to_nice(&instance.graph, &td)?.td
    } else {
        td
    };
    eprintln!("width {}", td.width());
    write_out(out, &emit_td(&td, n))?;
    Ok(0)
}

fn cmd_generate(what: GenerateCommand) -> Result<i32> {
    let (instance, out) = match what {
        GenerateCommand::Mcc {
            colors,
            edges,
            drop_zero,
            out,
        } => {
            let input = MccInput {
                colors: parse_colors(&read(&colors)?)?,
                edges: parse_edge_list(&read(&edges)?)?,
            };
            (reduce_mcc(&input, drop_zero)?, out)
        }
        GenerateCommand::Binpack {
            bins,
            capacity,
            items,
            out,
        } => {
            let input = BinPackingInput {
                bins,
                bin_capacity: capacity,
                items: parse_items(&read(&items)?)?,
            };
            (reduce_binpacking(&input)?, out)
        }
        GenerateCommand::Random {
            n,
            max_degree,
            max_capacity,
            tasks,
            demand_min,
            demand_max,
            profit_min,
            profit_max,
            max_len,
            seed,
            out,
        } => {
            let params = RandomParams {
                n,
                max_degree,
                max_capacity,
                task_count: tasks,
                demand_range: (demand_min, demand_max),
                profit_range: (profit_min, profit_max),
                max_route_length: max_len,
            };
            (gen_random(&params, seed)?, out)
        }
    };
    let mut text = instance.to_json();
    text.push('\n');
    write_out(out.as_deref(), &text)?;
    Ok(0)
}

fn cmd_bench(suite: &Path, out: Option<&Path>) -> Result<i32> {
    let suite: BenchSuite = serde_json::from_str(&read(suite)?)
        .map_err(|e| Error::Parse(format!("bad suite file: {e}")))?;
    let mut runs = suite.runs;
    runs.sort_by(|a, b| (&a.instance, &a.algo).cmp(&(&b.instance, &b.algo)));

    let mut csv = String::from("instance,algo,optimum,nodes,max_table_size,wall_ms\n");
    for run in &runs {
        let algo = match run.algo.as_str() {
            "brute" => Algo::Brute,
            "xp" => Algo::Xp,
            "fpt" => Algo::Fpt,
            other => return Err(Error::input(format!("unknown algorithm {other:?}"))),
        };
        let instance = load_instance(Path::new(&run.instance), None)?;
        let start = Instant::now();
        let (result, stats) = solve_with(algo, &instance, || decomposition_for(&instance))?;
        let wall_ms = start.elapsed().as_millis();
        csv.push_str(&format!(
            "{},{},{},{},{},{}\n",
            run.instance,
            algo.name(),
            result.optimum,
            stats.nodes,
            stats.max_table_size,
            wall_ms
        ));
    }
    write_out(out, &csv)?;
    Ok(0)
}
