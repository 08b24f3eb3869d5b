//! Command-line surface for the game-coloring lab.
//!
//! Exit codes: 0 success; 1 usage or input error; 2 invariant violation
//! (a solved result contradicting a proved bound); 3 budget exhaustion
//! with partial output.

use clap::{Args, Parser, Subcommand, ValueEnum};
use ggc_core::activation::{activation_invariant, ActivationAlice, RestartRule};
use ggc_core::coloring::{game_chromatic, solve_coloring};
use ggc_core::graph::{ConflictGraph, ConflictMode, SimpleGraph};
use ggc_core::lab::{
    check_conjecture, read_rows_csv, run_corpus, write_rows_csv, write_rows_json, CorpusSpec,
    LabConfig, Task,
};
use ggc_core::marking::{gcol, solve_marking};
use ggc_core::orientation::{feasible_orientation, min_max_outdegree_orientation, OrientationResult};
use ggc_core::play::{
    exhaustive_verify_marking, play_marking_match, MatchTrace, VerifyOutcome,
};
use ggc_core::strategy::RandomMarking;
use ggc_core::{parse_graph6_with_cap, BudgetMeter, Player};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

const EXIT_OK: u8 = 0;
const EXIT_ERROR: u8 = 1;
const EXIT_INVARIANT: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(
    name = "ggc",
    about = "Exact solvers and strategy verification for coloring and marking games on small graphs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a game parameter or a fixed-k winner for one graph.
    Solve(SolveArgs),
    /// Minimum max outdegree orientation of a graph.
    Orient(OrientArgs),
    /// Verify a strategy against opponent play.
    Verify(VerifyArgs),
    /// Run solver tasks over a graph corpus and write a result table.
    Lab(LabArgs),
    /// Report on the conjectured gap gcol_total - gcol_edge = 2.
    Conjecture(ConjectureArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum ParamOpt {
    /// Game chromatic number (least k Alice wins the coloring game).
    #[value(name = "chi-g")]
    ChiG,
    /// Game coloring number (least k Alice wins the marking game).
    #[value(name = "gcol")]
    Gcol,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeOpt {
    Vertex,
    Edge,
    Total,
}

impl From<ModeOpt> for ConflictMode {
    fn from(m: ModeOpt) -> ConflictMode {
        match m {
            ModeOpt::Vertex => ConflictMode::Identity,
            ModeOpt::Edge => ConflictMode::Line,
            ModeOpt::Total => ConflictMode::Total,
        }
    }
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, value_enum)]
    param: ParamOpt,
    #[arg(long, value_enum)]
    mode: ModeOpt,
    /// graph6 string of the graph.
    #[arg(long)]
    graph6: String,
    /// Solve the winner at this k instead of searching for the least k.
    #[arg(long)]
    k: Option<u32>,
}

#[derive(Args)]
struct OrientArgs {
    #[arg(long)]
    graph6: String,
    /// Check feasibility at this outdegree bound instead of optimizing.
    #[arg(long)]
    k: Option<u32>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Strategy to verify (only `activation` exists).
    #[arg(long)]
    strategy: String,
    #[arg(long)]
    graph6: String,
    /// Orientation outdegree bound: `auto` optimizes, an integer requests a
    /// feasible orientation at that bound.
    #[arg(long, default_value = "auto")]
    k: String,
    /// Explore every opponent reply instead of one random match.
    #[arg(long)]
    exhaustive: bool,
    /// Write the (counterexample or sample) match trace here.
    #[arg(long)]
    trace: Option<PathBuf>,
    /// Seed for the random opponent in single-match mode.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Node budget for exhaustive exploration.
    #[arg(long)]
    budget_nodes: Option<u64>,
    /// Use the strict reading of the tour-restart rule, which may restart
    /// on a marked-but-inactive edge.
    #[arg(long)]
    strict_restart: bool,
}

#[derive(Args)]
struct LabArgs {
    /// Corpus spec: `file:<path>`, `g6:<string>`, `exhaustive:<n>[-<hi>][:connected]`,
    /// or a generator DSL string; join several with `;`.
    #[arg(long)]
    corpus: String,
    /// Comma-separated tasks: gcol_edge, gcol_total, chi_g_total, bounds,
    /// verify_activation, or all.
    #[arg(long, default_value = "bounds")]
    tasks: String,
    /// Output table path; `.json` writes JSON, anything else CSV.
    #[arg(long)]
    out: PathBuf,
    /// Result cache path, keyed by canonical graph key.
    #[arg(long)]
    cache: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Per-graph, per-task solver node budget.
    #[arg(long)]
    budget_nodes: Option<u64>,
    /// Per-graph, per-task wall-clock budget in seconds.
    #[arg(long)]
    budget_secs: Option<f64>,
    /// Keep only connected corpus graphs.
    #[arg(long)]
    connected: bool,
}

#[derive(Args)]
struct ConjectureArgs {
    /// CSV table produced by `ggc lab`.
    #[arg(long = "in")]
    input: PathBuf,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap's help/version "errors" are successful exits
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    };
    ExitCode::from(code)
}

fn run(cli: Cli) -> ggc_core::Result<u8> {
    let cap = ggc_core::object_cap_from_env()?;
    match cli.command {
        Command::Solve(args) => solve_cmd(args, cap),
        Command::Orient(args) => orient_cmd(args, cap),
        Command::Verify(args) => verify_cmd(args, cap),
        Command::Lab(args) => lab_cmd(args, cap),
        Command::Conjecture(args) => conjecture_cmd(args),
    }
}

fn load_graph(s: &str, cap: u32) -> ggc_core::Result<SimpleGraph> {
    parse_graph6_with_cap(s, cap)
}

fn solve_cmd(args: SolveArgs, cap: u32) -> ggc_core::Result<u8> {
    let g = load_graph(&args.graph6, cap)?;
    let mode: ConflictMode = args.mode.into();
    match (args.param, args.k) {
        (ParamOpt::ChiG, None) => {
            let report = game_chromatic(&g, mode)?;
            println!(
                "graph6={} mode={} param=chi-g value={}",
                args.graph6, mode, report.value
            );
            let vector: Vec<String> = report
                .winners
                .iter()
                .enumerate()
                .map(|(i, w)| format!("{}={}", i + 1, w.letter()))
                .collect();
            println!("k-winners: {}", vector.join(" "));
        }
        (ParamOpt::ChiG, Some(k)) => {
            let winner = solve_coloring(&ConflictGraph::build(&g, mode), k);
            println!(
                "graph6={} mode={} param=chi-g k={} winner={}",
                args.graph6, mode, k, winner
            );
        }
        (ParamOpt::Gcol, None) => {
            let value = gcol(&g, mode)?;
            println!(
                "graph6={} mode={} param=gcol value={}",
                args.graph6, mode, value
            );
        }
        (ParamOpt::Gcol, Some(k)) => {
            let winner = solve_marking(&ConflictGraph::build(&g, mode), k);
            println!(
                "graph6={} mode={} param=gcol k={} winner={}",
                args.graph6, mode, k, winner
            );
        }
    }
    Ok(EXIT_OK)
}

fn orient_cmd(args: OrientArgs, cap: u32) -> ggc_core::Result<u8> {
    let g = load_graph(&args.graph6, cap)?;
    match args.k {
        None => {
            let o = min_max_outdegree_orientation(&g);
            println!("graph6={} dplus={}", args.graph6, o.max_outdegree());
            println!("orientation: {}", o.arc_string());
        }
        Some(k) => match feasible_orientation(&g, k) {
            OrientationResult::Oriented(o) => {
                println!(
                    "graph6={} k={} feasible=yes dplus={}",
                    args.graph6,
                    k,
                    o.max_outdegree()
                );
                println!("orientation: {}", o.arc_string());
            }
            OrientationResult::Infeasible(cert) => {
                println!("graph6={} k={} feasible=no", args.graph6, k);
                println!(
                    "certificate: {} vertices {:?} induce {} edges > {k} * {}",
                    cert.vertices.len(),
                    cert.vertices,
                    cert.induced_edges,
                    cert.vertices.len()
                );
            }
        },
    }
    Ok(EXIT_OK)
}

fn verify_cmd(args: VerifyArgs, cap: u32) -> ggc_core::Result<u8> {
    if args.strategy != "activation" {
        return Err(ggc_core::Error::StrategyPrecondition(format!(
            "unknown strategy `{}`; only `activation` is available",
            args.strategy
        )));
    }
    let g = load_graph(&args.graph6, cap)?;
    let orientation = if args.k == "auto" {
        min_max_outdegree_orientation(&g)
    } else {
        let k: u32 = args.k.parse().map_err(|_| {
            ggc_core::Error::StrategyPrecondition(format!("--k must be `auto` or an integer, got `{}`", args.k))
        })?;
        match feasible_orientation(&g, k) {
            OrientationResult::Oriented(o) => o,
            OrientationResult::Infeasible(cert) => {
                return Err(ggc_core::Error::StrategyPrecondition(format!(
                    "no orientation with outdegree <= {k}: {} vertices induce {} edges",
                    cert.vertices.len(),
                    cert.induced_edges
                )))
            }
        }
    };
    let delta = g.max_degree();
    let dplus = orientation.max_outdegree();
    let parameter = delta + 3 * dplus + 1;
    let conflict = ggc_core::total_graph(&g);
    let arcs = orientation.arc_string();
    let restart_rule = if args.strict_restart {
        RestartRule::Strict
    } else {
        RestartRule::UnmarkedOnly
    };
    let alice = ActivationAlice::with_restart_rule(orientation, restart_rule);

    let write_trace = |trace: &MatchTrace| -> ggc_core::Result<()> {
        if let Some(path) = &args.trace {
            std::fs::write(path, format!("# orientation: {arcs}\n{}", trace.to_text()))?;
        }
        Ok(())
    };

    if args.exhaustive {
        let meter = match args.budget_nodes {
            Some(limit) => BudgetMeter::with_node_limit(limit),
            None => BudgetMeter::unlimited(),
        };
        let invariant = activation_invariant(delta, dplus);
        let outcome = exhaustive_verify_marking(
            &conflict,
            parameter,
            Player::Alice,
            &alice,
            &meter,
            Some(&invariant),
        );
        let prefix = format!(
            "graph6={} strategy=activation dplus={dplus} parameter={parameter} check=exhaustive",
            args.graph6
        );
        match outcome {
            VerifyOutcome::Ok { nodes } => {
                println!("{prefix} outcome=ok nodes={nodes}");
                Ok(EXIT_OK)
            }
            VerifyOutcome::Counterexample(trace) => {
                println!("{prefix} outcome=counterexample");
                print!("{}", trace.to_text());
                write_trace(&trace)?;
                Ok(EXIT_INVARIANT)
            }
            VerifyOutcome::InvariantBreach { detail, trace } => {
                println!("{prefix} outcome=invariant-breach detail={detail}");
                print!("{}", trace.to_text());
                write_trace(&trace)?;
                Ok(EXIT_INVARIANT)
            }
            VerifyOutcome::BudgetExceeded { nodes } => {
                println!("{prefix} outcome=budget nodes={nodes}");
                Ok(EXIT_BUDGET)
            }
        }
    } else {
        let mut alice = alice;
        let mut bob = RandomMarking::new(args.seed);
        let trace = play_marking_match(&conflict, parameter, &mut alice, &mut bob);
        println!(
            "graph6={} strategy=activation dplus={dplus} parameter={parameter} check=match seed={} winner={}",
            args.graph6, args.seed, trace.winner
        );
        write_trace(&trace)?;
        if trace.winner == Player::Alice {
            Ok(EXIT_OK)
        } else {
            print!("{}", trace.to_text());
            Ok(EXIT_INVARIANT)
        }
    }
}

fn lab_cmd(args: LabArgs, cap: u32) -> ggc_core::Result<u8> {
    let mut spec = CorpusSpec::parse(&args.corpus, cap)?;
    spec.connected_only = args.connected;
    let config = LabConfig {
        tasks: Task::parse_list(&args.tasks)?,
        budget_nodes: args.budget_nodes,
        budget_time: args.budget_secs.map(Duration::from_secs_f64),
        jobs: args.jobs,
        cache_path: args.cache.clone(),
    };
    let report = match run_corpus(&spec, &config) {
        Ok(report) => report,
        Err(ggc_core::Error::InternalInconsistency(msg)) => {
            eprintln!("invariant violation: {msg}");
            return Ok(EXIT_INVARIANT);
        }
        Err(e) => return Err(e),
    };
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    let text = if args.out.extension().is_some_and(|e| e == "json") {
        write_rows_json(&report.rows)
    } else {
        write_rows_csv(&report.rows)
    };
    std::fs::write(&args.out, text)?;
    println!(
        "rows={} skipped_cells={} cache_hits={} duplicates_dropped={} out={}",
        report.rows.len(),
        report.skipped_cells,
        report.cache_hits,
        report.duplicates_dropped,
        args.out.display()
    );
    if report.skipped_cells > 0 {
        Ok(EXIT_BUDGET)
    } else {
        Ok(EXIT_OK)
    }
}

fn conjecture_cmd(args: ConjectureArgs) -> ggc_core::Result<u8> {
    let text = std::fs::read_to_string(&args.input)?;
    let rows = read_rows_csv(&text)?;
    let report = check_conjecture(&rows);
    print!("{report}");
    Ok(EXIT_OK)
}
