use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use nsdp_core::bench::{emit_report, run_benchmark, summarize_wins, BenchConfig, Metric, ReportFormat};
use nsdp_core::format::{parse_instance, write_instance};
use nsdp_core::generator::{generate_instance, parse_hypergraph, synth_family, Family, GeneratorConfig};
use nsdp_core::graph::{build_interaction_graph, run_elimination_game};
use nsdp_core::solver::{DEFAULT_CELL_BUDGET, DEFAULT_ORACLE_BOUND};
use nsdp_core::{brute_force_solve, solve, DopInstance, HeuristicRegistry, Relation, SolveStatus, SolverConfig};

const EXIT_USAGE: u8 = 1;
const EXIT_INFEASIBLE: u8 = 2;
const EXIT_WIDTH: u8 = 3;

#[derive(Parser)]
#[command(
    name = "nsdp",
    version,
    about = "Variable elimination with pluggable elimination orderings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a random linear binary instance
    Gen(GenArgs),
    /// Compute an elimination ordering and its width and fill
    Order(OrderArgs),
    /// Solve an instance along an ordering
    Solve(SolveArgs),
    /// Run heuristics over instances and report
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Chain,
    Grid,
    Random,
}

#[derive(Args)]
struct GenArgs {
    /// Synthetic structure family
    #[arg(long, conflicts_with = "hypergraph", required_unless_present = "hypergraph")]
    family: Option<FamilyArg>,
    /// Hypergraph file supplying the constraint structure
    #[arg(long)]
    hypergraph: Option<PathBuf>,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    /// chain: number of vertices
    #[arg(long, default_value_t = 30)]
    length: usize,
    /// chain: vertices shared by consecutive windows
    #[arg(long, default_value_t = 1)]
    overlap: usize,
    /// chain: window size
    #[arg(long, default_value_t = 3)]
    width: usize,
    #[arg(long, default_value_t = 5)]
    rows: usize,
    #[arg(long, default_value_t = 5)]
    cols: usize,
    /// random: vertex count
    #[arg(long, default_value_t = 40)]
    n: usize,
    /// random: hyperedge size
    #[arg(long, default_value_t = 3)]
    k: usize,
    /// random: hyperedge count
    #[arg(long, default_value_t = 30)]
    m: usize,
    /// random: seed for the structure (defaults to --seed)
    #[arg(long)]
    structure_seed: Option<u64>,
    #[arg(long, default_value_t = 1)]
    coeff_lo: i64,
    #[arg(long, default_value_t = 100)]
    coeff_hi: i64,
    #[arg(long, default_value = "le", value_parser = parse_relation)]
    relation: Relation,
    /// Instance name written into the file header
    #[arg(long)]
    name: Option<String>,
}

fn parse_relation(s: &str) -> std::result::Result<Relation, String> {
    s.parse()
}

#[derive(Args)]
struct OrderArgs {
    #[arg(long)]
    instance: PathBuf,
    /// md | nd | mcs | minfill | lexbfs | all
    #[arg(long)]
    ordering: String,
    /// Also print every elimination step
    #[arg(long)]
    stats: bool,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    instance: PathBuf,
    /// md | nd | mcs | minfill | lexbfs
    #[arg(long)]
    ordering: String,
    /// Cross-check the optimum by exhaustive search
    #[arg(long)]
    verify_oracle: bool,
    /// Largest admissible table in cells
    #[arg(long, default_value_t = DEFAULT_CELL_BUDGET)]
    budget: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Markdown,
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    Width,
    Time,
}

#[derive(Args)]
struct BenchArgs {
    /// Instance files or directories of `.dop` files
    #[arg(long, num_args = 1.., required = true)]
    instances: Vec<PathBuf>,
    #[arg(long, default_value = "all")]
    orderings: String,
    #[arg(long, default_value_t = 3)]
    repeats: usize,
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Report destination; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = MetricArg::Width)]
    metric: MetricArg,
    #[arg(long, default_value_t = DEFAULT_CELL_BUDGET)]
    budget: u64,
}

fn load_instance(path: &Path) -> Result<DopInstance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let name = path.file_stem().and_then(|s| s.to_str()).unwrap_or("instance");
    parse_instance(&text, name).with_context(|| format!("parsing {}", path.display()))
}

fn run_gen(args: GenArgs) -> Result<u8> {
    let (hypergraph, default_name) = match (&args.hypergraph, args.family) {
        (Some(path), _) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let h = parse_hypergraph(&text).with_context(|| format!("parsing {}", path.display()))?;
            let stem = path
                .file_stem()
                .and_then(|s| s.to_str())
                .unwrap_or("hypergraph")
                .to_string();
            (h, stem)
        }
        (None, Some(family)) => {
            let family = match family {
                FamilyArg::Chain => Family::Chain {
                    length: args.length,
                    overlap: args.overlap,
                    width: args.width,
                },
                FamilyArg::Grid => Family::Grid {
                    rows: args.rows,
                    cols: args.cols,
                },
                FamilyArg::Random => Family::RandomKUniform {
                    n: args.n,
                    k: args.k,
                    m: args.m,
                    seed: args.structure_seed.unwrap_or(args.seed),
                },
            };
            (synth_family(family)?, family.label())
        }
        (None, None) => bail!("one of --family or --hypergraph is required"),
    };
    let cfg = GeneratorConfig {
        seed: args.seed,
        coeff_lo: args.coeff_lo,
        coeff_hi: args.coeff_hi,
        relation: args.relation,
    };
    let name = args.name.unwrap_or_else(|| format!("{default_name}_s{}", args.seed));
    let inst = generate_instance(&hypergraph, &cfg, &name)?;
    fs::write(&args.out, write_instance(&inst)?).with_context(|| format!("writing {}", args.out.display()))?;
    println!("wrote {} (n={}, m={})", args.out.display(), inst.n(), inst.m());
    Ok(0)
}

fn run_order(args: OrderArgs) -> Result<u8> {
    let inst = load_instance(&args.instance)?;
    let registry = HeuristicRegistry::with_defaults();
    let g = build_interaction_graph(&inst);
    for h in registry.select(&args.ordering)? {
        let started = Instant::now();
        let ord = h.order(&g);
        let elapsed = started.elapsed();
        let trace = run_elimination_game(&g, &ord)?;
        println!("heuristic: {}", h.token());
        println!("ordering: {ord}");
        println!("induced_width: {}", trace.induced_width);
        println!("total_fill: {}", trace.total_fill);
        if args.stats {
            println!("order_time_s: {:.6}", elapsed.as_secs_f64());
            for (i, step) in trace.steps.iter().enumerate() {
                println!(
                    "step {i}: vertex {} neighbors {} fill {}",
                    step.vertex,
                    step.neighborhood_size,
                    step.fill.len()
                );
            }
        }
    }
    Ok(0)
}

fn run_solve(args: SolveArgs) -> Result<u8> {
    let inst = load_instance(&args.instance)?;
    let registry = HeuristicRegistry::with_defaults();
    let heuristic = registry
        .get(&args.ordering)
        .with_context(|| format!("unknown ordering `{}` for solve", args.ordering))?;
    let g = build_interaction_graph(&inst);
    let ord = heuristic.order(&g);
    let res = solve(
        &inst,
        &ord,
        SolverConfig {
            cell_budget: args.budget,
        },
    )?;

    match res.status {
        SolveStatus::WidthExceeded { step, vertex, cells } => {
            println!("status: width_exceeded");
            println!("step: {step}");
            println!("vertex: {vertex}");
            println!("cells: {cells}");
            println!("budget: {}", args.budget);
            return Ok(EXIT_WIDTH);
        }
        _ => {
            println!("status: {}", res.status.token());
            println!("optimum: {}", res.optimum);
        }
    }
    if let Some(a) = &res.assignment {
        let values: Vec<String> = a
            .to_values()
            .unwrap_or_default()
            .iter()
            .map(ToString::to_string)
            .collect();
        println!("assignment: {}", values.join(" "));
    }
    println!("induced_width: {}", res.stats.induced_width);
    println!("total_fill: {}", res.stats.total_fill);
    println!("peak_cells: {}", res.stats.peak_cells);

    if args.verify_oracle {
        match brute_force_solve(&inst, DEFAULT_ORACLE_BOUND) {
            Ok(oracle) if oracle.status == res.status && oracle.optimum == res.optimum => println!("oracle: agrees"),
            Ok(oracle) => bail!(
                "oracle disagrees: brute force gives {} ({}), elimination gives {} ({})",
                oracle.optimum,
                oracle.status.token(),
                res.optimum,
                res.status.token()
            ),
            Err(e) => log::warn!("oracle skipped: {e}"),
        }
    }
    Ok(if res.status == SolveStatus::Infeasible {
        EXIT_INFEASIBLE
    } else {
        0
    })
}

fn collect_instance_paths(inputs: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut paths = Vec::new();
    for input in inputs {
        if input.is_dir() {
            let mut found: Vec<PathBuf> = fs::read_dir(input)
                .with_context(|| format!("listing {}", input.display()))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|ext| ext == "dop"))
                .collect();
            found.sort();
            paths.extend(found);
        } else {
            paths.push(input.clone());
        }
    }
    if paths.is_empty() {
        bail!("no instance files found");
    }
    Ok(paths)
}

fn run_bench(args: BenchArgs) -> Result<u8> {
    let registry = HeuristicRegistry::with_defaults();
    let heuristics = registry.select(&args.orderings)?;
    let instances = collect_instance_paths(&args.instances)?
        .iter()
        .map(|p| load_instance(p))
        .collect::<Result<Vec<_>>>()?;
    let config = BenchConfig {
        repeats: args.repeats,
        solver: SolverConfig {
            cell_budget: args.budget,
        },
    };
    let records = run_benchmark(&instances, &heuristics, config)?;

    let format = match args.format {
        FormatArg::Csv => ReportFormat::Csv,
        FormatArg::Markdown => ReportFormat::Markdown,
    };
    let report = emit_report(&records, format);
    let metric = match args.metric {
        MetricArg::Width => Metric::InducedWidth,
        MetricArg::Time => Metric::SolveTime,
    };
    let wins = summarize_wins(&records, metric)?;
    match &args.out {
        Some(path) => {
            fs::write(path, report).with_context(|| format!("writing {}", path.display()))?;
            print!("{}", wins.to_text());
        }
        None => {
            print!("{report}");
            eprint!("{}", wins.to_text());
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();

    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let outcome = match cli.command {
        Command::Gen(args) => run_gen(args),
        Command::Order(args) => run_order(args),
        Command::Solve(args) => run_solve(args),
        Command::Bench(args) => run_bench(args),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
