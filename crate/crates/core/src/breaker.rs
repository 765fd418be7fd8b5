//! Breaker strategies: vertex isolation, clique construction followed by a
//! box game, and the random baseline (re-exported from the engine).

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::board::{Board, Edge, GameParams, Player};
use crate::boxgame::{self, BoxPlayState};
use crate::engine::{Choice, GameRng, Strategy, TurnContext};
use crate::error::{Error, Result};

pub use crate::engine::RandomStrategy;

/// Claims `n-k` edges at one vertex in the first move, then plays the
/// lowest free edges.
#[derive(Debug, Clone)]
pub struct IsolateStrategy {
    target: Option<usize>,
    quota: usize,
}

impl IsolateStrategy {
    pub fn new(params: &GameParams) -> Result<IsolateStrategy> {
        let quota = params.n - params.degree_target();
        if params.b < quota {
            return Err(Error::StrategyInfeasible(format!(
                "isolation needs b >= n-k = {quota}, got b = {}",
                params.b
            )));
        }
        Ok(IsolateStrategy {
            target: None,
            quota,
        })
    }

    pub fn target(&self) -> Option<usize> {
        self.target
    }

    /// Edges still to claim at the target.
    pub fn remaining(&self, board: &Board) -> usize {
        self.target
            .map_or(self.quota, |v| self.quota.saturating_sub(board.breaker_degree(v)))
    }
}

impl Strategy for IsolateStrategy {
    fn name(&self) -> &str {
        "isolate"
    }

    fn choose(&mut self, ctx: &TurnContext<'_>, _rng: &mut GameRng) -> Result<Choice> {
        let board = ctx.board;
        if self.target.is_none() {
            let v = (0..board.n())
                .find(|&v| board.maker_degree(v) == 0)
                .ok_or_else(|| Error::StrategyInfeasible("every vertex is touched by Maker".into()))?;
            self.target = Some(v);
        }
        let v = self.target.expect("target fixed above");
        if self.remaining(board) > 0 {
            if let Some(e) = board.first_free_incident_edge(v) {
                return Ok(Choice::targeted(e, v));
            }
        }
        board.first_free_edge().map(Choice::edge).ok_or(Error::NoFreeEdge)
    }
}

/// Target clique size `ceil(n / (2(a + ln n)))`.
pub fn clique_target(n: usize, a: usize) -> usize {
    (n as f64 / (2.0 * (a as f64 + (n as f64).ln()))).ceil() as usize
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CliqueStage {
    CliqueBuilding,
    BoxPlaying,
    DoneFallback,
}

/// Breaker's two-step strategy: grow a Breaker clique that Maker has not
/// touched until it has `h` vertices, then play BoxMaker on the edge sets
/// `E_v` of the surviving clique vertices.
#[derive(Debug, Clone)]
pub struct CliqueBoxStrategy {
    stage: CliqueStage,
    h: usize,
    /// `C_i`: the pruned clique carried into the next build.
    clique: Vec<usize>,
    /// `C'_i`: the clique as built in the last move, before Maker replied.
    built: Vec<usize>,
    /// Clique size after each build, in order.
    sizes: Vec<usize>,
    padded: Vec<usize>,
    v_star: Vec<usize>,
    boxes: Vec<Vec<Edge>>,
    destroyed: Vec<bool>,
    finished: Option<usize>,
    plan: VecDeque<Choice>,
}

impl CliqueBoxStrategy {
    pub fn new(params: &GameParams) -> CliqueBoxStrategy {
        CliqueBoxStrategy {
            stage: CliqueStage::CliqueBuilding,
            h: clique_target(params.n, params.a),
            clique: Vec::new(),
            built: Vec::new(),
            sizes: Vec::new(),
            padded: Vec::new(),
            v_star: Vec::new(),
            boxes: Vec::new(),
            destroyed: Vec::new(),
            finished: None,
            plan: VecDeque::new(),
        }
    }

    pub fn stage(&self) -> CliqueStage {
        self.stage
    }

    pub fn h(&self) -> usize {
        self.h
    }

    /// Candidate clique of the latest build (`C'_i`).
    pub fn built_clique(&self) -> &[usize] {
        &self.built
    }

    pub fn clique_sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn v_star(&self) -> &[usize] {
        &self.v_star
    }

    pub fn boxes(&self) -> &[Vec<Edge>] {
        &self.boxes
    }

    /// Clique vertices added to `A` only to bring it to size `a`.
    pub fn padding(&self) -> &[usize] {
        &self.padded
    }

    pub fn finished_vertex(&self) -> Option<usize> {
        self.finished
    }

    fn plan_move(&mut self, board: &Board, params: &GameParams, budget: usize) -> Result<()> {
        if self.stage == CliqueStage::CliqueBuilding && !self.built.is_empty() {
            let touched = self.built.iter().filter(|&&v| board.maker_degree(v) > 0).count();
            if self.built.len() >= self.h && self.built.len() - touched.min(params.a) >= 1 {
                self.start_boxes(board, params)?;
            } else {
                self.clique = self
                    .built
                    .iter()
                    .copied()
                    .filter(|&v| board.maker_degree(v) == 0)
                    .collect();
            }
        }
        let mut edges = match self.stage {
            CliqueStage::CliqueBuilding => self.build_clique(board, params, budget)?,
            CliqueStage::BoxPlaying => self.play_boxes(board, budget)?,
            CliqueStage::DoneFallback => Vec::new(),
        };
        let avoid: BTreeSet<usize> = match self.stage {
            CliqueStage::CliqueBuilding => self.built.iter().copied().collect(),
            _ => BTreeSet::new(),
        };
        fill_budget(board, &mut edges, budget, &avoid);
        self.plan = edges.into();
        Ok(())
    }

    fn build_clique(&mut self, board: &Board, params: &GameParams, budget: usize) -> Result<Vec<Choice>> {
        let a = params.a;
        if self.h <= a {
            return Err(Error::StrategyInfeasible(format!(
                "clique target h = {} does not exceed a = {a}",
                self.h
            )));
        }
        let fresh: Vec<usize> = (0..board.n())
            .filter(|v| board.maker_degree(*v) == 0 && !self.clique.contains(v))
            .take(a + 1)
            .collect();
        if fresh.len() < a + 1 {
            return Err(Error::StrategyInfeasible(format!(
                "only {} vertices untouched by Maker outside the clique, need {}",
                fresh.len(),
                a + 1
            )));
        }
        let mut needed = Vec::new();
        for (i, &u) in fresh.iter().enumerate() {
            for &w in fresh[i + 1..].iter().chain(&self.clique) {
                let e = Edge::new(u, w);
                match board.owner(e) {
                    None => needed.push(e),
                    Some(Player::Breaker) => {}
                    Some(Player::Maker) => unreachable!("clique candidates have Maker degree 0"),
                }
            }
        }
        if needed.len() > budget {
            return Err(Error::StrategyInfeasible(format!(
                "clique step needs {} edges, budget is {budget}",
                needed.len()
            )));
        }
        needed.sort_unstable();
        let mut built = self.clique.clone();
        built.extend(&fresh);
        built.sort_unstable();
        self.sizes.push(built.len());
        self.built = built;
        Ok(needed.into_iter().map(|e| Choice::edge(e).in_stage("clique")).collect())
    }

    fn start_boxes(&mut self, board: &Board, params: &GameParams) -> Result<()> {
        let (n, a, k) = (params.n, params.a, params.degree_target());
        let clique = &self.built;
        let mut in_a: Vec<usize> = clique
            .iter()
            .copied()
            .filter(|&v| board.maker_degree(v) > 0)
            .collect();
        for &v in clique.iter().rev() {
            if in_a.len() >= a {
                break;
            }
            if !in_a.contains(&v) {
                in_a.push(v);
                self.padded.push(v);
            }
        }
        let size = (n + 1).saturating_sub(k + self.h);
        self.v_star = clique
            .iter()
            .copied()
            .filter(|v| !in_a.contains(v))
            .take(self.h - a)
            .collect();
        self.boxes = self
            .v_star
            .iter()
            .map(|&v| {
                // Breaker's own edges at v are balls already in hand
                let mut edges: Vec<Edge> = (0..n)
                    .filter(|&w| w != v && !clique.contains(&w))
                    .map(|w| Edge::new(v, w))
                    .filter(|&e| board.owner(e) != Some(Player::Maker))
                    .collect();
                edges.sort_by_key(|&e| (board.is_free(e), e));
                edges.truncate(size);
                edges
            })
            .collect();
        self.destroyed = vec![false; self.boxes.len()];
        self.stage = CliqueStage::BoxPlaying;
        Ok(())
    }

    fn play_boxes(&mut self, board: &Board, budget: usize) -> Result<Vec<Choice>> {
        for (i, e_v) in self.boxes.iter().enumerate() {
            if e_v.iter().any(|&e| board.owner(e) == Some(Player::Maker)) {
                self.destroyed[i] = true;
            }
        }
        let state = BoxPlayState {
            remaining: self
                .boxes
                .iter()
                .map(|e_v| e_v.iter().filter(|&&e| board.is_free(e)).count())
                .collect(),
            destroyed: self.destroyed.clone(),
        };
        if state.surviving_count() == 0 {
            return Err(Error::BoxesExhausted);
        }
        let mv = boxgame::boxmaker_balancing_move(&state, budget);
        let mut per_box = vec![0usize; self.boxes.len()];
        for &(i, count) in &mv.claims {
            per_box[i] += count;
        }
        let mut out = Vec::new();
        for (i, &count) in per_box.iter().enumerate().filter(|(_, &c)| c > 0) {
            let v = self.v_star[i];
            out.extend(
                self.boxes[i]
                    .iter()
                    .filter(|&&e| board.is_free(e))
                    .take(count)
                    .map(|&e| Choice::targeted(e, v).in_stage("box")),
            );
        }
        if let Some(i) = mv.won {
            self.finished = Some(self.v_star[i]);
            self.stage = CliqueStage::DoneFallback;
        }
        Ok(out)
    }
}

/// Pads a planned move to `budget` claims with the lowest free edges,
/// preferring edges that avoid `avoid`.
fn fill_budget(board: &Board, plan: &mut Vec<Choice>, budget: usize, avoid: &BTreeSet<usize>) {
    let mut taken: BTreeSet<Edge> = plan.iter().map(|c| c.edge).collect();
    for pass in 0..2 {
        for e in board.free_edges() {
            if plan.len() >= budget {
                return;
            }
            let clear = !avoid.contains(&e.u) && !avoid.contains(&e.v);
            if (pass == 1 || clear) && taken.insert(e) {
                plan.push(Choice::edge(e));
            }
        }
    }
}

impl Strategy for CliqueBoxStrategy {
    fn name(&self) -> &str {
        "clique-box"
    }

    fn choose(&mut self, ctx: &TurnContext<'_>, _rng: &mut GameRng) -> Result<Choice> {
        if ctx.step == 0 {
            self.plan_move(ctx.board, ctx.params, ctx.move_len)?;
        }
        while let Some(c) = self.plan.pop_front() {
            if ctx.board.is_free(c.edge) {
                return Ok(c);
            }
        }
        ctx.board.first_free_edge().map(Choice::edge).ok_or(Error::NoFreeEdge)
    }
}
