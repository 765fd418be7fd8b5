//! `mbg`: simulate, sweep, box-game, oracle and audit front end.

mod config;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use config::{parse_b_values, Config};
use mbg_core::audit::{self, AuditConfig};
use mbg_core::boxgame::{self, BoxInstance, BoxPlayer};
use mbg_core::harness::{self, BreakerName, GameSpec, MakerName, StrategyOptions, SweepSpec};
use mbg_core::maker::{Pick, DEFAULT_STAGE1_DEGREE};
use mbg_core::oracles::{self, SimpleGraph};
use mbg_core::{board, numeric, GameParams, GameTrace, Goal};

#[derive(Parser, Debug)]
#[command(name = "mbg", version, about = "Biased Maker-Breaker games on K_n")]
struct Cli {
    /// key=value file supplying defaults for any flag
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads (overrides MBG_THREADS)
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Play one game and write its trace
    Simulate(SimulateArgs),
    /// Sweep Breaker's bias and estimate the threshold
    Sweep(SweepArgs),
    /// Box-game recursion, bounds and exhaustive solver
    #[command(subcommand)]
    Boxgame(BoxCommand),
    /// Graph predicates on an edge-list file
    Oracle(OracleArgs),
    /// Audit traces against the potential inequalities
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct GameFlags {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    a: Option<usize>,
    #[arg(long)]
    b: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// min-degree, connectivity or hamiltonicity
    #[arg(long)]
    goal: Option<Goal>,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[command(flatten)]
    game: GameFlags,
    /// min-deg, ham-3stage or random
    #[arg(long)]
    maker: Option<MakerName>,
    /// isolate, clique-box or random
    #[arg(long)]
    breaker: Option<BreakerName>,
    /// Vertex tie-break for Min-Deg: lowest or random
    #[arg(long)]
    tiebreak: Option<Pick>,
    /// Edge choice at the target vertex: lowest or random
    #[arg(long)]
    edgepick: Option<Pick>,
    #[arg(long)]
    stage1_degree: Option<usize>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    delta: Option<f64>,
    /// Trace output path
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    game: GameFlags,
    /// e.g. 1..20 or 2,4,8
    #[arg(long)]
    b_values: Option<String>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    maker: Option<MakerName>,
    #[arg(long)]
    breaker: Option<BreakerName>,
    /// CSV path; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum BoxCommand {
    /// f(k; p, q)
    F {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
    },
    /// f(k; p, q) against its harmonic lower bound
    Bound {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
    },
    /// Exact winner of B(k, t, p, q) by exhaustive search
    Solve {
        /// Box sizes, e.g. 2,2,3
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value = "boxmaker")]
        first: BoxPlayer,
    },
    /// CSV of f and its lower bound over a parameter grid
    Grid {
        #[arg(long)]
        max_k: usize,
        #[arg(long)]
        max_p: usize,
        #[arg(long)]
        max_q: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct OracleArgs {
    /// Edge-list file
    #[arg(long)]
    graph: PathBuf,
    /// hamiltonian, longest-path, expander:K, boosters, connected or mindeg
    #[arg(long, default_value = "hamiltonian")]
    check: String,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Trace to audit
    #[arg(long, conflicts_with = "random_games")]
    trace: Option<PathBuf>,
    /// Losing vertex; defaults to the trace's witness
    #[arg(long, requires = "trace")]
    vertex: Option<usize>,
    /// Audited round; defaults to the decisive round
    #[arg(long, requires = "trace")]
    round: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    /// Also list vertices whose Breaker degree passed (1-delta)n while dangerous
    #[arg(long)]
    delta: Option<f64>,
    /// Play and audit this many seeded Min-Deg games
    #[arg(long)]
    random_games: Option<usize>,
    #[command(flatten)]
    game: GameFlags,
    #[arg(long)]
    breaker: Option<BreakerName>,
    /// Check the harmonic bounds for every m up to this value
    #[arg(long, conflicts_with_all = ["trace", "random_games"])]
    harmonic: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(false)` means the command ran but a check failed.
fn run(cli: Cli) -> Result<bool> {
    let cfg = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    let threads = match cli.threads {
        Some(t) => Some(t),
        None => cfg.get("threads")?.or_else(harness::threads_from_env),
    };
    match cli.command {
        Command::Simulate(args) => simulate(&cfg, args),
        Command::Sweep(args) => sweep(&cfg, args, threads),
        Command::Boxgame(cmd) => boxgame_cmd(cmd),
        Command::Oracle(args) => oracle(args),
        Command::Verify(args) => verify(&cfg, args, threads),
    }
}

fn game_params(cfg: &Config, g: &GameFlags) -> Result<GameParams> {
    let n = cfg.require(g.n, "n")?;
    let a = cfg.pick(g.a, "a", 1)?;
    let b = cfg.require(g.b, "b")?;
    let k = cfg.pick(g.k, "k", 1)?;
    let goal = cfg.pick(g.goal, "goal", Goal::MinDegree)?;
    Ok(GameParams::new(n, a, b, k, goal)?)
}

fn out_writer(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(std::fs::File::create(p).with_context(|| format!("creating {}", p.display()))?),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn simulate(cfg: &Config, args: SimulateArgs) -> Result<bool> {
    let epsilon = args.epsilon.or(cfg.get("epsilon")?);
    let delta = args.delta.or(cfg.get("delta")?);
    let params = game_params(cfg, &args.game)?.with_margins(epsilon, delta)?;
    let goal_default = if params.goal == Goal::Hamiltonicity {
        MakerName::Ham3Stage
    } else {
        MakerName::MinDeg
    };
    let spec = GameSpec {
        params,
        maker: cfg.pick(args.maker, "maker", goal_default)?,
        breaker: cfg.pick(args.breaker, "breaker", BreakerName::Random)?,
        options: StrategyOptions {
            tiebreak: cfg.pick(args.tiebreak, "tiebreak", Pick::LowestIndex)?,
            edgepick: cfg.pick(args.edgepick, "edgepick", Pick::LowestIndex)?,
            stage1_degree: cfg.pick(args.stage1_degree, "stage1-degree", DEFAULT_STAGE1_DEGREE)?,
        },
    };
    let seed = cfg.pick(args.game.seed, "seed", 0)?;
    let run = harness::run_game(&spec, seed)?;
    let trace_path = match args.trace {
        Some(p) => p,
        None => cfg.pick(None, "out", PathBuf::from("trace.json"))?,
    };
    std::fs::write(&trace_path, run.trace.to_json() + "\n")
        .with_context(|| format!("writing {}", trace_path.display()))?;
    let o = &run.outcome;
    println!("winner={} rounds={} reason={}", o.winner, o.decisive_round, o.reason);
    for f in &o.fallbacks {
        eprintln!("note: {} fell back to random play in round {}: {}", f.player, f.round, f.error);
    }
    Ok(true)
}

fn sweep(cfg: &Config, args: SweepArgs, threads: Option<usize>) -> Result<bool> {
    let g = &args.game;
    let b_text: String = cfg.require(args.b_values, "b-values")?;
    let spec = SweepSpec {
        n: cfg.require(g.n, "n")?,
        a: cfg.pick(g.a, "a", 1)?,
        k: cfg.pick(g.k, "k", 1)?,
        goal: cfg.pick(g.goal, "goal", Goal::MinDegree)?,
        b_values: parse_b_values(&b_text)?,
        trials: cfg.pick(args.trials, "trials", 100)?,
        maker: cfg.pick(args.maker, "maker", MakerName::MinDeg)?,
        breaker: cfg.pick(args.breaker, "breaker", BreakerName::Random)?,
        master_seed: cfg.pick(g.seed, "seed", 0)?,
    };
    let result = harness::run_sweep(&spec, threads)?;
    let out = match args.out {
        Some(p) => Some(p),
        None => cfg.get::<PathBuf>("out")?,
    };
    let mut w = out_writer(out.as_deref())?;
    w.write_all(result.to_csv().as_bytes())?;
    w.flush()?;
    eprintln!("{}", result.summary());
    Ok(true)
}

fn boxgame_cmd(cmd: BoxCommand) -> Result<bool> {
    match cmd {
        BoxCommand::F { k, p, q } => {
            println!("{}", boxgame::f_box(k, p, q)?);
            Ok(true)
        }
        BoxCommand::Bound { k, p, q } => {
            let f = boxgame::f_box(k, p, q)?;
            let bound = boxgame::f_lower_bound(k, p, q)?;
            let holds = num_rational::BigRational::from_integer(f.into()) >= bound;
            println!("f={f} lowerBound={bound} ({:.6}) holds={holds}", numeric::to_f64(&bound));
            Ok(holds)
        }
        BoxCommand::Solve { sizes, p, q, first } => {
            let inst = BoxInstance::new(sizes, p, q, first)?;
            let winner = boxgame::solve_exhaustive(&inst)?;
            let f = boxgame::f_box(inst.k(), p, q)?;
            let sufficient = inst.t() as i64 <= f + p as i64;
            println!(
                "winner={winner} k={} t={} canonical={} sufficient={sufficient}",
                inst.k(),
                inst.t(),
                inst.canonical()
            );
            Ok(true)
        }
        BoxCommand::Grid {
            max_k,
            max_p,
            max_q,
            out,
        } => {
            let rows = boxgame::grid(max_k, max_p, max_q)?;
            let mut w = out_writer(out.as_deref())?;
            w.write_all(boxgame::grid_csv(&rows).as_bytes())?;
            w.flush()?;
            let bad = rows.iter().filter(|r| r.bound_holds == Some(false)).count();
            eprintln!("{} rows, {bad} bound violations", rows.len());
            Ok(bad == 0)
        }
    }
}

fn oracle(args: OracleArgs) -> Result<bool> {
    let text = std::fs::read_to_string(&args.graph).with_context(|| format!("reading {}", args.graph.display()))?;
    let (n, edges) = board::parse_edge_list(&text)?;
    let g = SimpleGraph::from_edges(n, &edges);
    let check = args.check.as_str();
    match check {
        "hamiltonian" => println!("hamiltonian={}", oracles::is_hamiltonian(&g)?),
        "longest-path" => println!("longest_path_order={}", oracles::longest_path_order(&g)?),
        "connected" => println!("connected={}", oracles::is_connected(&g)),
        "mindeg" => println!("min_degree={}", oracles::min_degree(&g)),
        "boosters" => {
            let b = oracles::boosters(&g)?;
            if b.already_hamiltonian {
                println!("already_hamiltonian=true boosters=0");
            } else {
                println!("boosters={}", b.edges.len());
                for e in &b.edges {
                    println!("{} {}", e.u, e.v);
                }
            }
        }
        other => {
            let k: usize = other
                .strip_prefix("expander:")
                .ok_or_else(|| anyhow!("unknown check '{other}'"))?
                .parse()
                .context("expander:K needs an integer K")?;
            let c = oracles::is_k_expander(&g, k)?;
            print!("expander={} exhaustive={}", c.holds, c.exhaustive);
            if let Some(w) = &c.witness {
                print!(" witness={w:?}");
            }
            println!();
        }
    }
    Ok(true)
}

fn verify(cfg: &Config, args: VerifyArgs, threads: Option<usize>) -> Result<bool> {
    let r = args.r.or(cfg.get("r")?);
    let config = AuditConfig {
        r,
        ..AuditConfig::default()
    };
    if let Some(m) = args.harmonic {
        let sweep = numeric::harmonic_sweep(m, 1e-12, &[m]);
        println!(
            "m<={m} bound_violations={} difference_violations={} checkpoint_error={:.3e}",
            sweep.bound_violations.len(),
            sweep.difference_violations.len(),
            sweep.checkpoint_error
        );
        return Ok(sweep.ok());
    }
    if let Some(path) = &args.trace {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let trace = GameTrace::from_json(&text)?;
        let report = match (args.round, args.vertex) {
            (Some(s), Some(v)) => audit::audit_at(&trace, s, v, &config)?,
            (None, None) => audit::audit_trace(&trace, &config)?,
            _ => bail!("--round and --vertex go together"),
        };
        println!("{}", report.to_json());
        if let Some(delta) = args.delta.or(cfg.get("delta")?) {
            for (v, d) in audit::breaker_degree_exceptions(&trace, delta)? {
                eprintln!("finite-size exception: vertex {v} reached Breaker degree {d}");
            }
        }
        return Ok(report.pass);
    }
    let Some(games) = args.random_games else {
        bail!("give --trace, --random-games or --harmonic");
    };
    let params = game_params(cfg, &args.game)?;
    if params.goal != Goal::MinDegree {
        bail!("the audit covers minimum-degree games only");
    }
    let breaker = cfg.pick(args.breaker, "breaker", BreakerName::Random)?;
    let seed = cfg.pick(args.game.seed, "seed", 0)?;
    let summary = harness::verify_random_games(&params, breaker, games, seed, &config, threads)?;
    println!(
        "games={} breaker_wins={} audited={} failed={} failed_by_repeats={} claim_bound_violations={}",
        summary.games,
        summary.breaker_wins,
        summary.audited,
        summary.failed,
        summary.failed_by_repeats,
        summary.claim_bound_violations
    );
    for (seed, report) in &summary.failures {
        let names: Vec<String> = report
            .failures()
            .map(|f| match f.index {
                Some(i) => format!("{}@{i}", f.name),
                None => f.name.clone(),
            })
            .collect();
        println!("seed={seed} s={} v={} failed: {}", report.s, report.v_s, names.join(" "));
    }
    Ok(summary.ok())
}
