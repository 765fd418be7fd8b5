//! Maker strategies: Min-Deg, the three-stage Hamiltonicity strategy, and
//! the random baseline (re-exported from the engine).

use num_rational::Rational64;
use rand::seq::IndexedRandom;
use serde::{Deserialize, Serialize};

use crate::board::{Board, Edge, GameParams};
use crate::engine::{Choice, GameRng, Strategy, TurnContext};
use crate::error::{Error, Result};
use crate::oracles::{self, OracleCaps};

pub use crate::engine::RandomStrategy;

/// `D(v) = d_B(v) - (2b/a) d_M(v)`, exactly.
pub fn danger(board: &Board, v: usize, a: usize, b: usize) -> Rational64 {
    Rational64::new(danger_numerator(board, v, a, b), a as i64)
}

/// `a * D(v)`, the integer used for comparisons.
pub fn danger_numerator(board: &Board, v: usize, a: usize, b: usize) -> i64 {
    a as i64 * board.breaker_degree(v) as i64 - 2 * b as i64 * board.maker_degree(v) as i64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pick {
    #[default]
    LowestIndex,
    UniformRandom,
}

impl std::str::FromStr for Pick {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lowest" | "lowest-index" => Ok(Pick::LowestIndex),
            "random" | "uniform" => Ok(Pick::UniformRandom),
            other => Err(Error::InvalidParams(format!("unknown pick rule '{other}' (lowest, random)"))),
        }
    }
}

impl std::fmt::Display for Pick {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Pick::LowestIndex => "lowest",
            Pick::UniformRandom => "random",
        })
    }
}

/// Max-danger vertex among those passing `eligible` that still have a free
/// incident edge. Ties follow `tiebreak`.
fn most_dangerous(
    board: &Board,
    a: usize,
    b: usize,
    tiebreak: Pick,
    rng: &mut GameRng,
    eligible: impl Fn(usize) -> bool,
) -> Option<usize> {
    let mut best: Option<i64> = None;
    let mut ties = Vec::new();
    for v in (0..board.n()).filter(|&v| eligible(v) && board.free_degree(v) > 0) {
        let d = danger_numerator(board, v, a, b);
        match best {
            Some(m) if d < m => {}
            Some(m) if d == m => ties.push(v),
            _ => {
                best = Some(d);
                ties.clear();
                ties.push(v);
            }
        }
    }
    match tiebreak {
        Pick::LowestIndex => ties.first().copied(),
        Pick::UniformRandom => ties.choose(rng).copied(),
    }
}

/// Min-Deg-Strategy: each step eases a dangerous vertex of maximum danger.
#[derive(Debug, Clone, Default)]
pub struct MinDegStrategy {
    pub tiebreak: Pick,
    pub edgepick: Pick,
    /// Overrides the degree goal; defaults to the game's degree target.
    pub k: Option<usize>,
}

impl MinDegStrategy {
    pub fn new(tiebreak: Pick, edgepick: Pick) -> MinDegStrategy {
        MinDegStrategy {
            tiebreak,
            edgepick,
            k: None,
        }
    }

    pub fn step(&self, board: &Board, params: &GameParams, rng: &mut GameRng) -> Result<Choice> {
        let k = self.k.unwrap_or_else(|| params.degree_target());
        let target = most_dangerous(board, params.a, params.b, self.tiebreak, rng, |v| {
            board.maker_degree(v) < k
        });
        match target {
            Some(v) => {
                let edge = match self.edgepick {
                    Pick::LowestIndex => board.first_free_incident_edge(v),
                    Pick::UniformRandom => board.free_incident_edges(v).choose(rng).copied(),
                };
                Ok(Choice::targeted(edge.expect("target has a free edge"), v))
            }
            None => board.first_free_edge().map(Choice::edge).ok_or(Error::NoFreeEdge),
        }
    }
}

impl Strategy for MinDegStrategy {
    fn name(&self) -> &str {
        "min-deg"
    }

    fn choose(&mut self, ctx: &TurnContext<'_>, rng: &mut GameRng) -> Result<Choice> {
        self.step(ctx.board, ctx.params, rng)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum HamStage {
    I,
    II,
    III,
    Done,
}

impl HamStage {
    pub fn label(self) -> &'static str {
        match self {
            HamStage::I => "I",
            HamStage::II => "II",
            HamStage::III => "III",
            HamStage::Done => "done",
        }
    }

    fn slot(self) -> usize {
        self as usize
    }
}

pub const DEFAULT_STAGE1_DEGREE: usize = 16;

/// Three-stage randomized Maker for the Hamiltonicity game.
#[derive(Debug, Clone)]
pub struct HamMakerStrategy {
    stage: HamStage,
    /// Configured Stage-I degree goal (the constant 16 by default).
    pub degree_target: usize,
    pub caps: OracleCaps,
    claims_in_stage: [usize; 4],
    transitions: Vec<(HamStage, usize)>,
}

impl Default for HamMakerStrategy {
    fn default() -> Self {
        HamMakerStrategy::new(DEFAULT_STAGE1_DEGREE)
    }
}

/// Expander parameter `max(1, floor(delta^5 n))`.
pub fn k0(n: usize, delta: Option<f64>) -> usize {
    let d = delta.unwrap_or(0.0);
    ((d.powi(5) * n as f64).floor() as usize).max(1)
}

impl HamMakerStrategy {
    pub fn new(degree_target: usize) -> HamMakerStrategy {
        HamMakerStrategy {
            stage: HamStage::I,
            degree_target,
            caps: OracleCaps::default(),
            claims_in_stage: [0; 4],
            transitions: Vec::new(),
        }
    }

    pub fn stage(&self) -> HamStage {
        self.stage
    }

    pub fn claims_in(&self, stage: HamStage) -> usize {
        self.claims_in_stage[stage.slot()]
    }

    /// Stages entered after Stage I, with the round of entry.
    pub fn transitions(&self) -> &[(HamStage, usize)] {
        &self.transitions
    }

    /// Stage-I degree goal used on K_n: the configured target, capped at
    /// `floor((n-1)/2)` so that it is reachable on small boards.
    pub fn effective_target(&self, n: usize) -> usize {
        self.degree_target.min((n - 1) / 2).max(1)
    }

    fn advance(&mut self, to: HamStage, round: usize) {
        if to > self.stage {
            self.stage = to;
            self.transitions.push((to, round));
        }
    }

    /// One Stage-I step; `None` once every vertex reached the degree goal.
    pub fn stage1_step(
        &self,
        board: &Board,
        params: &GameParams,
        rng: &mut GameRng,
    ) -> Result<Option<Choice>> {
        let target = self.effective_target(board.n());
        let v = most_dangerous(board, params.a, params.b, Pick::LowestIndex, rng, |v| {
            board.maker_degree(v) < target
        });
        match v {
            Some(v) => {
                let edge = *board
                    .free_incident_edges(v)
                    .choose(rng)
                    .expect("target has a free edge");
                Ok(Some(Choice::targeted(edge, v).in_stage("I")))
            }
            None if (0..board.n()).any(|v| board.maker_degree(v) < target) => {
                Err(Error::StrategyInfeasible(format!(
                    "every vertex below Maker degree {target} is saturated"
                )))
            }
            None => Ok(None),
        }
    }

    /// Stage II: join two Maker components, smallest pairs first. `None`
    /// once Maker's graph is connected.
    pub fn stage2_move(board: &Board) -> Result<Option<Choice>> {
        let comps = oracles::components(&board.maker_graph());
        if comps.len() < 2 {
            return Ok(None);
        }
        let mut pairs = Vec::new();
        for i in 0..comps.len() {
            for j in i + 1..comps.len() {
                let (si, sj) = (comps[i].len(), comps[j].len());
                pairs.push((si.max(sj), si.min(sj), i, j));
            }
        }
        pairs.sort_unstable_by_key(|&(big, small, i, j)| (small + big, big, i, j));
        for (_, _, i, j) in pairs {
            let mut best: Option<Edge> = None;
            for &x in &comps[i] {
                for &y in &comps[j] {
                    let e = Edge::new(x, y);
                    if board.is_free(e) && best.is_none_or(|b| e < b) {
                        best = Some(e);
                    }
                }
            }
            if let Some(e) = best {
                return Ok(Some(Choice::edge(e).in_stage("II")));
            }
        }
        Err(Error::StageBlocked(
            "every edge between Maker components is Breaker's".into(),
        ))
    }

    /// Stage III: the lowest free booster. `None` when Maker's graph is
    /// already Hamiltonian.
    pub fn stage3_move(board: &Board, caps: &OracleCaps) -> Result<Option<Choice>> {
        let found = oracles::boosters_with(&board.maker_graph(), caps)?;
        if found.already_hamiltonian {
            return Ok(None);
        }
        found
            .edges
            .into_iter()
            .find(|&e| board.is_free(e))
            .map(|e| Some(Choice::edge(e).in_stage("III")))
            .ok_or_else(|| Error::StageBlocked("every booster is Breaker's".into()))
    }
}

impl Strategy for HamMakerStrategy {
    fn name(&self) -> &str {
        "ham-3stage"
    }

    fn choose(&mut self, ctx: &TurnContext<'_>, rng: &mut GameRng) -> Result<Choice> {
        let board = ctx.board;
        if self.stage == HamStage::I {
            if let Some(choice) = self.stage1_step(board, ctx.params, rng)? {
                self.claims_in_stage[HamStage::I.slot()] += 1;
                return Ok(choice);
            }
            self.advance(HamStage::II, ctx.round);
        }
        if self.stage == HamStage::II {
            if let Some(choice) = Self::stage2_move(board)? {
                self.claims_in_stage[HamStage::II.slot()] += 1;
                return Ok(choice);
            }
            self.advance(HamStage::III, ctx.round);
        }
        if self.stage == HamStage::III {
            if let Some(choice) = Self::stage3_move(board, &self.caps)? {
                self.claims_in_stage[HamStage::III.slot()] += 1;
                return Ok(choice);
            }
            self.advance(HamStage::Done, ctx.round);
        }
        self.claims_in_stage[HamStage::Done.slot()] += 1;
        board
            .first_free_edge()
            .map(|e| Choice::edge(e).in_stage("done"))
            .ok_or(Error::NoFreeEdge)
    }
}
