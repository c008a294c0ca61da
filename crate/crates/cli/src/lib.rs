//! The `nk` command line: `gen`, `solve`, `verify`, `compare` and `bench`.

mod run;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use nk_core::toolkit::{self, Gadget};
use nk_core::{Graph, Instance, NkError, Variant, oracle};
use serde_json::json;

pub use run::{Algo, Run, SolveOptions, solve};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "nk", version, about = "Neighborhood knapsack solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate an instance file.
    Gen(GenArgs),
    /// Solve an instance.
    Solve(SolveArgs),
    /// Evaluate a solution file against an instance.
    Verify(VerifyArgs),
    /// Run every applicable algorithm and check that they agree.
    Compare(CompareArgs),
    /// Time the algorithms on a built-in suite and print CSV.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GenKind {
    Random,
    SetCover,
    Clique,
    Cutting,
    Star,
}

#[derive(Args, Debug)]
struct GenArgs {
    kind: GenKind,
    /// Output file; standard output when absent.
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Vertex count (random, clique, cutting) or universe size (set-cover).
    #[arg(long, default_value_t = 8)]
    n: usize,
    #[arg(long, default_value_t = 0.3)]
    edge_prob: f64,
    #[arg(long, default_value_t = 6)]
    wmax: u64,
    #[arg(long, default_value_t = 6)]
    pmax: u64,
    /// Knapsack size (random) or capacity (star).
    #[arg(long, default_value_t = 10)]
    s: u64,
    /// Demand (random) or target profit (star).
    #[arg(long, default_value_t = 0)]
    d: u64,
    #[arg(long)]
    directed: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// A set of the set-cover instance as comma-separated 0-based elements.
    #[arg(long = "set")]
    sets: Vec<String>,
    /// Clique size, cover size, or separator size.
    #[arg(short, long, default_value_t = 2)]
    k: usize,
    /// Size of the cut-off part (cutting).
    #[arg(short, long, default_value_t = 1)]
    l: usize,
    /// Edges of the source graph as `u-v,u-v,...`; a random graph with
    /// `--edge-prob` and `--seed` when absent.
    #[arg(long)]
    edges: Option<String>,
    /// Knapsack items as `w:p,w:p,...` (star).
    #[arg(long)]
    items: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Opt,
    Decision,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(long)]
    variant: Variant,
    #[arg(long, value_enum, default_value_t = Algo::Auto)]
    algo: Algo,
    /// Tree decomposition in PACE `.td` format.
    #[arg(long)]
    td: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    trials: Option<u64>,
    /// Color-coding budget in original vertices.
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long, value_enum, default_value_t = ModeArg::Opt)]
    mode: ModeArg,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(short, long)]
    solution: PathBuf,
    #[arg(long)]
    variant: Variant,
}

#[derive(Args, Debug)]
struct CompareArgs {
    #[arg(short, long)]
    input: PathBuf,
    #[arg(long)]
    variant: Variant,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct BenchArgs {
    /// One of `tiny`, `trees`, `uniform`.
    #[arg(long)]
    suite: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn exit_code(e: &NkError) -> i32 {
    match e {
        NkError::InvalidInstance(_)
        | NkError::InvalidDecomposition(_)
        | NkError::Parse { .. }
        | NkError::Io(_)
        | NkError::VertexOutOfRange { .. }
        | NkError::Overflow(_) => EXIT_IO,
        _ => EXIT_USAGE,
    }
}

struct Ctx<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

type CmdResult = std::result::Result<i32, (i32, String)>;

fn fail(e: NkError) -> (i32, String) {
    (exit_code(&e), e.to_string())
}

fn usage(msg: impl Into<String>) -> (i32, String) {
    (EXIT_USAGE, msg.into())
}

fn read(path: &Path) -> std::result::Result<String, (i32, String)> {
    fs::read_to_string(path).map_err(|e| (EXIT_IO, format!("{}: {e}", path.display())))
}

fn load_instance(path: &Path) -> std::result::Result<Instance, (i32, String)> {
    toolkit::parse_instance(&read(path)?).map_err(|e| (exit_code(&e), format!("{}: {e}", path.display())))
}

/// Runs the command line and returns the process exit code.
pub fn cli_main<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let (mut out, mut err) = (stdout.lock(), stderr.lock());
    cli_main_with(argv, &mut out, &mut err)
}

/// Like [`cli_main`], writing to the given streams.
pub fn cli_main_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_OK;
        }
    };
    let mut ctx = Ctx { out, err };
    let result = match cli.command {
        Command::Gen(a) => cmd_gen(&mut ctx, a),
        Command::Solve(a) => cmd_solve(&mut ctx, a),
        Command::Verify(a) => cmd_verify(&mut ctx, a),
        Command::Compare(a) => cmd_compare(&mut ctx, a),
        Command::Bench(a) => cmd_bench(&mut ctx, a),
    };
    match result {
        Ok(code) => code,
        Err((code, msg)) => {
            let _ = writeln!(ctx.err, "error: {msg}");
            code
        }
    }
}

fn parse_pairs<T: std::str::FromStr>(text: &str, sep: char, what: &str) -> std::result::Result<Vec<(T, T)>, (i32, String)> {
    text.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let (a, b) = t.trim().split_once(sep).ok_or_else(|| usage(format!("malformed {what} `{t}`")))?;
            let a = a.parse().map_err(|_| usage(format!("malformed {what} `{t}`")))?;
            let b = b.parse().map_err(|_| usage(format!("malformed {what} `{t}`")))?;
            Ok((a, b))
        })
        .collect()
}

fn source_graph(a: &GenArgs) -> std::result::Result<Graph, (i32, String)> {
    match &a.edges {
        Some(text) => Graph::new(false, a.n, parse_pairs::<usize>(text, '-', "edge")?).map_err(fail),
        None => Ok(toolkit::gen_random(a.n, a.edge_prob, 0, 0, 0, 0, false, a.seed).map_err(fail)?.graph().clone()),
    }
}

fn cmd_gen(ctx: &mut Ctx<'_>, a: GenArgs) -> CmdResult {
    let gadget: Gadget = match a.kind {
        GenKind::Random => {
            let inst = toolkit::gen_random(a.n, a.edge_prob, a.wmax, a.pmax, a.s, a.d, a.directed, a.seed).map_err(fail)?;
            Gadget { instance: inst, variant: Variant::Relaxed1N, expected: None }
        }
        GenKind::SetCover => {
            let sets = a
                .sets
                .iter()
                .map(|s| {
                    s.split(',')
                        .filter(|t| !t.trim().is_empty())
                        .map(|t| t.trim().parse().map_err(|_| usage(format!("malformed element `{t}`"))))
                        .collect::<std::result::Result<Vec<usize>, _>>()
                })
                .collect::<std::result::Result<Vec<_>, _>>()?;
            toolkit::gen_from_set_cover(a.n, &sets, a.k).map_err(fail)?
        }
        GenKind::Clique => toolkit::gen_from_clique(&source_graph(&a)?, a.k).map_err(fail)?,
        GenKind::Cutting => toolkit::gen_from_cutting(&source_graph(&a)?, a.k, a.l).map_err(fail)?,
        GenKind::Star => {
            let items = parse_pairs::<u64>(a.items.as_deref().unwrap_or(""), ':', "item")?;
            toolkit::gen_star_knapsack(&items, a.s, a.d).map_err(fail)?
        }
    };
    let text = toolkit::serialize_instance(&gadget.instance);
    match &a.output {
        Some(path) => {
            fs::write(path, text).map_err(|e| (EXIT_IO, format!("{}: {e}", path.display())))?;
            if a.kind != GenKind::Random {
                let _ = writeln!(ctx.out, "variant {}", gadget.variant);
            }
            if let Some(expected) = gadget.expected {
                let _ = writeln!(ctx.out, "expected {expected}");
            }
        }
        None => {
            let _ = write!(ctx.out, "{text}");
        }
    }
    Ok(EXIT_OK)
}

fn cmd_solve(ctx: &mut Ctx<'_>, a: SolveArgs) -> CmdResult {
    let inst = load_instance(&a.input)?;
    let td = match &a.td {
        Some(path) => Some(toolkit::parse_td(&read(path)?).map_err(|e| (exit_code(&e), format!("{}: {e}", path.display())))?),
        None => None,
    };
    let opts = SolveOptions {
        decision: a.mode == ModeArg::Decision,
        seed: a.seed,
        trials: a.trials,
        budget: a.budget,
        td,
    };
    let run = solve(&inst, a.variant, a.algo, &opts).map_err(fail)?;
    let meets = run.profit >= inst.demand();
    if opts.decision && !meets {
        let _ = writeln!(ctx.out, "infeasible");
    } else {
        let _ = writeln!(ctx.out, "profit {}", run.profit);
    }
    let _ = writeln!(ctx.out, "result {}", run.to_json(a.variant));
    Ok(if opts.decision && !meets { EXIT_FALSE } else { EXIT_OK })
}

fn cmd_verify(ctx: &mut Ctx<'_>, a: VerifyArgs) -> CmdResult {
    let inst = load_instance(&a.input)?;
    let picks = toolkit::parse_solution(&read(&a.solution)?, Some(inst.num_vertices()))
        .map_err(|e| (exit_code(&e), format!("{}: {e}", a.solution.display())))?;
    let e = oracle::evaluate(&inst, a.variant, &picks).map_err(fail)?;
    let feasible = oracle::decide(&inst, a.variant, &picks).map_err(fail)?;
    let _ = writeln!(ctx.out, "weight {}", e.weight);
    let _ = writeln!(ctx.out, "profit {}", e.profit);
    let _ = writeln!(ctx.out, "feasible {feasible}");
    let _ = writeln!(
        ctx.out,
        "result {}",
        json!({
            "variant": a.variant.tag(),
            "weight": e.weight,
            "profit": e.profit,
            "knapsack": inst.knapsack(),
            "demand": inst.demand(),
            "hard_feasible": e.hard_feasible,
            "profitable": e.profitable,
            "feasible": feasible,
        })
    );
    Ok(if feasible { EXIT_OK } else { EXIT_FALSE })
}

fn cmd_compare(ctx: &mut Ctx<'_>, a: CompareArgs) -> CmdResult {
    let inst = load_instance(&a.input)?;
    let runs = run::compare(&inst, a.variant, a.seed);
    for (algo, outcome) in &runs {
        let _ = match outcome {
            Ok(r) => writeln!(ctx.out, "{algo} {} {}", r.profit, if r.exact { "exact" } else { "bound" }),
            Err(e) => writeln!(ctx.out, "{algo} skipped: {e}"),
        };
    }
    match run::disagreement(&runs) {
        Some(msg) => {
            let _ = writeln!(ctx.out, "mismatch");
            Err((EXIT_MISMATCH, msg))
        }
        None => {
            let _ = writeln!(ctx.out, "agree {}", runs.iter().filter(|(_, r)| r.is_ok()).count());
            Ok(EXIT_OK)
        }
    }
}

fn cmd_bench(ctx: &mut Ctx<'_>, a: BenchArgs) -> CmdResult {
    let suite = run::bench_suite(&a.suite, a.seed).map_err(fail)?;
    let _ = writeln!(ctx.out, "instance,algorithm,width_or_b,wall_time_us,value");
    for case in suite {
        for &algo in &case.algos {
            let opts = SolveOptions { decision: false, seed: a.seed, trials: None, budget: None, td: None };
            let start = Instant::now();
            let outcome = solve(&case.instance, case.variant, algo, &opts);
            let us = start.elapsed().as_micros();
            match outcome {
                Ok(r) => {
                    let param = r.param.map(|p| p.to_string()).unwrap_or_default();
                    let _ = writeln!(ctx.out, "{},{algo},{param},{us},{}", case.name, r.profit);
                }
                Err(e) => {
                    let _ = writeln!(ctx.err, "{} {algo}: {e}", case.name);
                }
            }
        }
    }
    Ok(EXIT_OK)
}
