//! Batch runs: seeded trials, bias sweeps, CSV output and audit campaigns.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::audit::{self, AuditConfig, AuditReport};
use crate::board::{GameParams, Goal, Player};
use crate::breaker::{CliqueBoxStrategy, IsolateStrategy};
use crate::engine::{self, Choice, GameOutcome, GameRng, GameTrace, RandomStrategy, Strategy, TurnContext};
use crate::error::{Error, Result};
use crate::maker::{HamMakerStrategy, HamStage, MinDegStrategy, Pick, DEFAULT_STAGE1_DEGREE};

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "MBG_THREADS";

fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Seed of trial `trial` in sweep cell `cell`, independent of scheduling.
pub fn trial_seed(master: u64, cell: u64, trial: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(master) ^ cell) ^ trial)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MakerName {
    MinDeg,
    Ham3Stage,
    Random,
}

impl FromStr for MakerName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "min-deg" => Ok(MakerName::MinDeg),
            "ham-3stage" => Ok(MakerName::Ham3Stage),
            "random" => Ok(MakerName::Random),
            other => Err(Error::InvalidParams(format!(
                "unknown maker strategy '{other}' (min-deg, ham-3stage, random)"
            ))),
        }
    }
}

impl std::fmt::Display for MakerName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            MakerName::MinDeg => "min-deg",
            MakerName::Ham3Stage => "ham-3stage",
            MakerName::Random => "random",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BreakerName {
    Isolate,
    CliqueBox,
    Random,
}

impl FromStr for BreakerName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "isolate" => Ok(BreakerName::Isolate),
            "clique-box" => Ok(BreakerName::CliqueBox),
            "random" => Ok(BreakerName::Random),
            other => Err(Error::InvalidParams(format!(
                "unknown breaker strategy '{other}' (isolate, clique-box, random)"
            ))),
        }
    }
}

impl std::fmt::Display for BreakerName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BreakerName::Isolate => "isolate",
            BreakerName::CliqueBox => "clique-box",
            BreakerName::Random => "random",
        })
    }
}

/// Knobs shared by every trial of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StrategyOptions {
    pub tiebreak: Pick,
    pub edgepick: Pick,
    pub stage1_degree: usize,
}

impl Default for StrategyOptions {
    fn default() -> Self {
        StrategyOptions {
            tiebreak: Pick::LowestIndex,
            edgepick: Pick::LowestIndex,
            stage1_degree: DEFAULT_STAGE1_DEGREE,
        }
    }
}

/// A Maker strategy chosen by name, with its concrete state kept reachable.
#[derive(Debug, Clone)]
pub enum MakerKind {
    MinDeg(MinDegStrategy),
    Ham(HamMakerStrategy),
    Random(RandomStrategy),
}

impl MakerKind {
    pub fn build(name: MakerName, opts: &StrategyOptions) -> MakerKind {
        match name {
            MakerName::MinDeg => MakerKind::MinDeg(MinDegStrategy::new(opts.tiebreak, opts.edgepick)),
            MakerName::Ham3Stage => MakerKind::Ham(HamMakerStrategy::new(opts.stage1_degree)),
            MakerName::Random => MakerKind::Random(RandomStrategy),
        }
    }

    fn inner(&mut self) -> &mut dyn Strategy {
        match self {
            MakerKind::MinDeg(s) => s,
            MakerKind::Ham(s) => s,
            MakerKind::Random(s) => s,
        }
    }
}

impl Strategy for MakerKind {
    fn name(&self) -> &str {
        match self {
            MakerKind::MinDeg(s) => s.name(),
            MakerKind::Ham(s) => s.name(),
            MakerKind::Random(s) => s.name(),
        }
    }

    fn choose(&mut self, ctx: &TurnContext<'_>, rng: &mut GameRng) -> Result<Choice> {
        self.inner().choose(ctx, rng)
    }
}

#[derive(Debug, Clone)]
pub enum BreakerKind {
    Isolate(IsolateStrategy),
    CliqueBox(CliqueBoxStrategy),
    Random(RandomStrategy),
}

impl BreakerKind {
    /// Fails with `StrategyInfeasible` when isolation is asked for with
    /// `b < n - k`.
    pub fn build(name: BreakerName, params: &GameParams) -> Result<BreakerKind> {
        Ok(match name {
            BreakerName::Isolate => BreakerKind::Isolate(IsolateStrategy::new(params)?),
            BreakerName::CliqueBox => BreakerKind::CliqueBox(CliqueBoxStrategy::new(params)),
            BreakerName::Random => BreakerKind::Random(RandomStrategy),
        })
    }

    fn inner(&mut self) -> &mut dyn Strategy {
        match self {
            BreakerKind::Isolate(s) => s,
            BreakerKind::CliqueBox(s) => s,
            BreakerKind::Random(s) => s,
        }
    }
}

impl Strategy for BreakerKind {
    fn name(&self) -> &str {
        match self {
            BreakerKind::Isolate(s) => s.name(),
            BreakerKind::CliqueBox(s) => s.name(),
            BreakerKind::Random(s) => s.name(),
        }
    }

    fn choose(&mut self, ctx: &TurnContext<'_>, rng: &mut GameRng) -> Result<Choice> {
        self.inner().choose(ctx, rng)
    }
}

/// One game set up by name.
#[derive(Debug, Clone)]
pub struct GameSpec {
    pub params: GameParams,
    pub maker: MakerName,
    pub breaker: BreakerName,
    pub options: StrategyOptions,
}

/// Everything recorded about a finished game.
#[derive(Debug, Clone)]
pub struct GameRun {
    pub outcome: GameOutcome,
    pub trace: GameTrace,
    pub maker: MakerKind,
    pub breaker: BreakerKind,
}

impl GameRun {
    /// Stage-I claims, for the three-stage Maker.
    pub fn stage1_claims(&self) -> Option<usize> {
        match &self.maker {
            MakerKind::Ham(h) => Some(h.claims_in(HamStage::I)),
            _ => None,
        }
    }

    /// Stages the three-stage Maker entered, in order.
    pub fn stages(&self) -> Vec<HamStage> {
        match &self.maker {
            MakerKind::Ham(h) => std::iter::once(HamStage::I)
                .chain(h.transitions().iter().map(|t| t.0))
                .collect(),
            _ => Vec::new(),
        }
    }
}

pub fn run_game(spec: &GameSpec, seed: u64) -> Result<GameRun> {
    let mut maker = MakerKind::build(spec.maker, &spec.options);
    let mut breaker = BreakerKind::build(spec.breaker, &spec.params)?;
    let (outcome, trace) = engine::play_game(&spec.params, &mut maker, &mut breaker, seed)?;
    Ok(GameRun {
        outcome,
        trace,
        maker,
        breaker,
    })
}

/// Worker count from `MBG_THREADS`, if set to a positive integer.
pub fn threads_from_env() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
}

/// Maps `f` over `0..count`, in parallel when the `parallel` feature is on.
/// Output order is the index order regardless of scheduling.
pub fn map_trials<T, F>(count: usize, threads: Option<usize>, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> Result<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        if threads != Some(1) {
            let mut builder = rayon::ThreadPoolBuilder::new();
            if let Some(t) = threads {
                builder = builder.num_threads(t);
            }
            let pool = builder
                .build()
                .map_err(|e| Error::InvalidParams(format!("thread pool: {e}")))?;
            return pool.install(|| (0..count).into_par_iter().map(&f).collect());
        }
    }
    let _ = threads;
    (0..count).map(f).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub n: usize,
    pub a: usize,
    pub k: usize,
    pub goal: Goal,
    pub b_values: Vec<usize>,
    pub trials: usize,
    pub maker: MakerName,
    pub breaker: BreakerName,
    pub master_seed: u64,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidParams("trials must be at least 1".into()));
        }
        if self.b_values.is_empty() {
            return Err(Error::InvalidParams("no Breaker biases given".into()));
        }
        if self.b_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParams("Breaker biases must be strictly ascending".into()));
        }
        for &b in &self.b_values {
            GameParams::new(self.n, self.a, b, self.k, self.goal)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    pub b: usize,
    pub trials: usize,
    pub maker_wins: usize,
    /// Trials in which a strategy reported itself infeasible; counted for
    /// neither side.
    pub infeasible: usize,
    pub win_rate: f64,
    pub mean_rounds: f64,
    pub mean_maker_claims: f64,
}

impl SweepCell {
    pub fn decided(&self) -> usize {
        self.trials - self.infeasible
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub spec: SweepSpec,
    pub cells: Vec<SweepCell>,
    /// Largest b with win rate at least 1/2.
    pub estimated_threshold: Option<usize>,
    /// Where linear interpolation between neighbouring cells crosses 1/2.
    pub interpolated_threshold: Option<f64>,
    pub reference_curve: f64,
}

/// Asymptotic threshold `a n / (a + ln n)`, or `n` once `a` reaches
/// `sqrt(n / ln n)`.
pub fn reference_curve(n: usize, a: usize) -> f64 {
    let (n, a) = (n as f64, a as f64);
    if a < (n / n.ln()).sqrt() {
        a * n / (a + n.ln())
    } else {
        n
    }
}

struct TrialSummary {
    maker_won: bool,
    infeasible: bool,
    rounds: usize,
    maker_claims: usize,
}

pub fn run_sweep(spec: &SweepSpec, threads: Option<usize>) -> Result<SweepResult> {
    spec.validate()?;
    let mut cells = Vec::with_capacity(spec.b_values.len());
    for (bi, &b) in spec.b_values.iter().enumerate() {
        let game = GameSpec {
            params: GameParams::new(spec.n, spec.a, b, spec.k, spec.goal)?,
            maker: spec.maker,
            breaker: spec.breaker,
            options: StrategyOptions::default(),
        };
        let runs = map_trials(spec.trials, threads, |t| {
            let seed = trial_seed(spec.master_seed, bi as u64, t as u64);
            let run = match run_game(&game, seed) {
                Ok(run) => run,
                Err(Error::StrategyInfeasible(_)) => {
                    return Ok(TrialSummary {
                        maker_won: false,
                        infeasible: true,
                        rounds: 0,
                        maker_claims: 0,
                    })
                }
                Err(e) => return Err(e),
            };
            Ok(TrialSummary {
                maker_won: run.outcome.winner == Player::Maker,
                infeasible: run.outcome.infeasible(),
                rounds: run.outcome.decisive_round,
                maker_claims: run.outcome.maker_claims,
            })
        })?;
        let decided: Vec<&TrialSummary> = runs.iter().filter(|r| !r.infeasible).collect();
        let count = decided.len();
        let maker_wins = decided.iter().filter(|r| r.maker_won).count();
        let mean = |f: fn(&TrialSummary) -> usize| {
            if count == 0 {
                0.0
            } else {
                decided.iter().map(|r| f(r) as f64).sum::<f64>() / count as f64
            }
        };
        cells.push(SweepCell {
            b,
            trials: spec.trials,
            maker_wins,
            infeasible: spec.trials - count,
            win_rate: if count == 0 { 0.0 } else { maker_wins as f64 / count as f64 },
            mean_rounds: mean(|r| r.rounds),
            mean_maker_claims: mean(|r| r.maker_claims),
        });
    }
    let (estimated_threshold, interpolated_threshold) = estimate_threshold(&cells);
    Ok(SweepResult {
        spec: spec.clone(),
        cells,
        estimated_threshold,
        interpolated_threshold,
        reference_curve: reference_curve(spec.n, spec.a),
    })
}

/// Largest b with win rate at least 1/2, and the interpolated crossing just
/// above it.
pub fn estimate_threshold(cells: &[SweepCell]) -> (Option<usize>, Option<f64>) {
    let Some(idx) = cells.iter().rposition(|c| c.win_rate >= 0.5) else {
        return (None, None);
    };
    let here = &cells[idx];
    let interp = match cells.get(idx + 1) {
        Some(next) => {
            let (x0, y0, x1, y1) = (here.b as f64, here.win_rate, next.b as f64, next.win_rate);
            Some(x0 + (y0 - 0.5) / (y0 - y1) * (x1 - x0))
        }
        None => Some(here.b as f64),
    };
    (Some(here.b), interp)
}

pub const SWEEP_CSV_HEADER: &str =
    "n,a,b,k,goal,maker,breaker,trials,maker_wins,win_rate,mean_rounds,mean_maker_claims,infeasible";

impl SweepResult {
    pub fn to_csv(&self) -> String {
        let s = &self.spec;
        let mut out = String::from(SWEEP_CSV_HEADER);
        out.push('\n');
        for c in &self.cells {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{:.6},{:.6},{:.6},{}",
                s.n,
                s.a,
                c.b,
                s.k,
                s.goal,
                s.maker,
                s.breaker,
                c.trials,
                c.maker_wins,
                c.win_rate,
                c.mean_rounds,
                c.mean_maker_claims,
                c.infeasible
            );
        }
        out
    }

    pub fn summary(&self) -> String {
        let est = self
            .estimated_threshold
            .map_or("none".to_string(), |b| b.to_string());
        let interp = self
            .interpolated_threshold
            .map_or("none".to_string(), |x| format!("{x:.3}"));
        format!(
            "estimatedThreshold={est} interpolated={interp} referenceCurve={:.3}",
            self.reference_curve
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub games: usize,
    pub breaker_wins: usize,
    pub audited: usize,
    pub failed: usize,
    /// Failed reports whose only failures are L1i excesses caused by a
    /// vertex occurring more than once in `A_j`.
    pub failed_by_repeats: usize,
    /// Min-Deg games whose Maker claims before the decision broke `kn + a`.
    pub claim_bound_violations: usize,
    /// Failing reports with the seed of their game.
    pub failures: Vec<(u64, AuditReport)>,
}

impl VerifySummary {
    pub fn ok(&self) -> bool {
        self.failed == 0 && self.claim_bound_violations == 0
    }
}

/// Plays `games` seeded Min-Deg games against `breaker` and audits every
/// Breaker win.
pub fn verify_random_games(
    params: &GameParams,
    breaker: BreakerName,
    games: usize,
    master_seed: u64,
    config: &AuditConfig,
    threads: Option<usize>,
) -> Result<VerifySummary> {
    let spec = GameSpec {
        params: params.clone(),
        maker: MakerName::MinDeg,
        breaker,
        options: StrategyOptions::default(),
    };
    let results = map_trials(games, threads, |t| {
        let seed = trial_seed(master_seed, 0, t as u64);
        let run = run_game(&spec, seed)?;
        let bound_ok = run.outcome.maker_claims < params.degree_target() * params.n + params.a;
        let report = if run.outcome.winner == Player::Breaker {
            let (audit, report) = audit::audit_trace_full(&run.trace, config)?;
            let repeats = audit::fails_only_by_repeats(&audit, &report);
            Some((report, repeats))
        } else {
            None
        };
        Ok((seed, bound_ok, report))
    })?;
    let mut summary = VerifySummary {
        games,
        breaker_wins: 0,
        audited: 0,
        failed: 0,
        failed_by_repeats: 0,
        claim_bound_violations: 0,
        failures: Vec::new(),
    };
    for (seed, bound_ok, report) in results {
        if !bound_ok {
            summary.claim_bound_violations += 1;
        }
        if let Some((report, repeats)) = report {
            summary.breaker_wins += 1;
            summary.audited += 1;
            if !report.pass {
                summary.failed += 1;
                summary.failed_by_repeats += usize::from(repeats);
                summary.failures.push((seed, report));
            }
        }
    }
    Ok(summary)
}
