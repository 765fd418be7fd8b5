//! The (a:b) round loop.
//!
//! Breaker moves first. Every move is played one edge at a time, and the
//! board is updated between a player's own steps so a strategy always sees
//! its earlier claims from the same move.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::board::{Board, Edge, GameParams, Goal, Player};
use crate::error::{Error, Result};
use crate::oracles::{self, OracleCaps};

pub type GameRng = ChaCha8Rng;

/// Everything a strategy may look at when choosing its next edge.
#[derive(Debug, Clone, Copy)]
pub struct TurnContext<'a> {
    pub board: &'a Board,
    pub params: &'a GameParams,
    pub role: Player,
    /// 1-based round index.
    pub round: usize,
    /// 0-based step within the current move.
    pub step: usize,
    /// Number of claims this move will make (the bias, or fewer at the end).
    pub move_len: usize,
}

/// A single claim chosen by a strategy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Choice {
    pub edge: Edge,
    /// Vertex the strategy was serving, if it works vertex by vertex.
    pub target: Option<usize>,
    /// Strategy phase label recorded in the trace.
    pub stage: Option<&'static str>,
}

impl Choice {
    pub fn edge(edge: Edge) -> Choice {
        Choice {
            edge,
            target: None,
            stage: None,
        }
    }

    pub fn targeted(edge: Edge, target: usize) -> Choice {
        Choice {
            edge,
            target: Some(target),
            stage: None,
        }
    }

    pub fn in_stage(mut self, stage: &'static str) -> Choice {
        self.stage = Some(stage);
        self
    }
}

/// A player's policy. Implementations keep their own per-game state and must
/// return a free edge without touching the board.
pub trait Strategy {
    fn name(&self) -> &str;

    fn choose(&mut self, ctx: &TurnContext<'_>, rng: &mut GameRng) -> Result<Choice>;
}

/// Uniformly random free edge.
pub fn random_free_edge(board: &Board, rng: &mut GameRng) -> Option<Edge> {
    let free = board.free_count();
    if free == 0 {
        return None;
    }
    // rejection sampling while the board is mostly free, rank lookup after
    if 2 * free >= board.edge_count() {
        for _ in 0..16 {
            let e = board.edge_at(rng.random_range(0..board.edge_count()));
            if board.is_free(e) {
                return Some(e);
            }
        }
    }
    board.nth_free_edge(rng.random_range(0..free))
}

/// Vertex `v` with `d_B(v) > n-1-k`, i.e. one that can no longer reach Maker
/// degree `k`. Returns the lowest such vertex.
pub fn detect_breaker_win_mindeg(board: &Board, k: usize) -> Option<usize> {
    (0..board.n()).find(|&v| vertex_doomed(board, v, k))
}

fn vertex_doomed(board: &Board, v: usize, k: usize) -> bool {
    board.breaker_degree(v) + k > board.n() - 1
}

/// Evaluates Maker's goal on the current board from scratch.
pub fn detect_maker_win(board: &Board, goal: Goal, k: usize) -> Result<bool> {
    let maker = board.maker_graph();
    Ok(match goal {
        Goal::MinDegree => oracles::min_degree(&maker) >= k,
        Goal::Connectivity => oracles::is_connected(&maker),
        Goal::Hamiltonicity => oracles::is_hamiltonian(&maker)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OutcomeReason {
    GoalAchieved,
    GoalImpossible,
    BoardExhausted,
}

impl std::fmt::Display for OutcomeReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            OutcomeReason::GoalAchieved => "goal-achieved",
            OutcomeReason::GoalImpossible => "goal-impossible",
            OutcomeReason::BoardExhausted => "board-exhausted",
        })
    }
}

/// A strategy error the engine absorbed by switching that side to random play.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fallback {
    pub player: Player,
    pub round: usize,
    pub error: String,
    /// True for infeasibility (preconditions of the strategy failed), false
    /// when a feasible strategy got blocked by the opponent.
    pub infeasible: bool,
}

#[derive(Debug, Clone)]
pub struct GameOutcome {
    pub winner: Player,
    pub decisive_round: usize,
    pub reason: OutcomeReason,
    pub final_board: Board,
    /// For a Breaker win by the degree obstruction, the doomed vertex.
    pub witness: Option<usize>,
    /// Winner announced by early detection, kept even when early stopping is
    /// disabled so it can be compared against the played-out result.
    pub early_winner: Option<Player>,
    pub maker_claims: usize,
    pub breaker_claims: usize,
    pub fallbacks: Vec<Fallback>,
}

impl GameOutcome {
    pub fn infeasible(&self) -> bool {
        self.fallbacks.iter().any(|f| f.infeasible)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveRecord {
    pub round: usize,
    pub step: usize,
    pub player: Player,
    pub u: usize,
    pub v: usize,
    #[serde(default)]
    pub target: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stage: Option<String>,
}

impl MoveRecord {
    pub fn edge(&self) -> Edge {
        Edge::new(self.u, self.v)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct OutcomeSummary {
    pub winner: Player,
    pub decisive_round: usize,
    pub reason: OutcomeReason,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub fallbacks: Vec<Fallback>,
}

/// Full record of a game, serializable to JSON.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameTrace {
    pub params: GameParams,
    pub seed: u64,
    #[serde(default)]
    pub maker: String,
    #[serde(default)]
    pub breaker: String,
    pub moves: Vec<MoveRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outcome: Option<OutcomeSummary>,
}

impl GameTrace {
    /// Target vertex of every Maker step, in order. `None` when any Maker
    /// step was played without one.
    pub fn maker_targets(&self) -> Option<Vec<usize>> {
        self.moves
            .iter()
            .filter(|m| m.player == Player::Maker)
            .map(|m| m.target)
            .collect()
    }

    pub fn rounds(&self) -> usize {
        self.moves.last().map_or(0, |m| m.round)
    }

    /// Re-applies every move to a fresh board.
    pub fn replay(&self) -> Result<Board> {
        let mut board = Board::new(self.params.n)?;
        for m in &self.moves {
            board.claim(m.player, m.edge())?;
        }
        Ok(board)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serializes")
    }

    pub fn from_json(text: &str) -> Result<GameTrace> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Checks the ordering invariants of a trace: contiguous rounds, Breaker
    /// before Maker inside a round, and per-round claim counts within bias.
    pub fn check_structure(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::TraceIncompatible(msg));
        let mut round = 0;
        let mut seen_maker = false;
        let (mut maker_steps, mut breaker_steps) = (0, 0);
        for m in &self.moves {
            if m.round != round {
                if m.round != round + 1 {
                    return bad(format!("round {} follows round {round}", m.round));
                }
                round = m.round;
                seen_maker = false;
                maker_steps = 0;
                breaker_steps = 0;
            }
            match m.player {
                Player::Breaker => {
                    if seen_maker {
                        return bad(format!("breaker step after maker in round {round}"));
                    }
                    breaker_steps += 1;
                }
                Player::Maker => {
                    seen_maker = true;
                    maker_steps += 1;
                }
            }
            if maker_steps > self.params.a || breaker_steps > self.params.b {
                return bad(format!("round {round} exceeds the bias"));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct EngineOptions {
    /// Stop as soon as the outcome is certain. When false the board is
    /// played out and the winner is read off the final Maker graph.
    pub early_stop: bool,
    pub caps: OracleCaps,
}

impl Default for EngineOptions {
    fn default() -> Self {
        EngineOptions {
            early_stop: true,
            caps: OracleCaps::default(),
        }
    }
}

/// Incremental bookkeeping for Maker's goal.
struct GoalTracker {
    goal: Goal,
    k: usize,
    deficient: usize,
    parent: Vec<usize>,
    components: usize,
}

impl GoalTracker {
    fn new(params: &GameParams) -> GoalTracker {
        let n = params.n;
        GoalTracker {
            goal: params.goal,
            k: params.degree_target(),
            deficient: n,
            parent: (0..n).collect(),
            components: n,
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    /// Called after Maker claims `e`; returns whether the goal now holds.
    fn maker_claimed(&mut self, board: &Board, e: Edge, caps: &OracleCaps) -> Result<bool> {
        for w in [e.u, e.v] {
            if board.maker_degree(w) == self.k {
                self.deficient -= 1;
            }
        }
        let (ru, rv) = (self.find(e.u), self.find(e.v));
        if ru != rv {
            self.parent[ru] = rv;
            self.components -= 1;
        }
        Ok(match self.goal {
            Goal::MinDegree => self.deficient == 0,
            Goal::Connectivity => self.components == 1,
            Goal::Hamiltonicity => {
                // min degree 2 and connectivity are necessary; only then run
                // the exact check
                self.components == 1
                    && (0..board.n()).all(|v| board.maker_degree(v) >= 2)
                    && oracles::is_hamiltonian_with(&board.maker_graph(), caps)?
            }
        })
    }

    /// Doomed endpoint of a Breaker claim, if any.
    fn breaker_claimed(&self, board: &Board, e: Edge) -> Option<usize> {
        [e.u, e.v]
            .into_iter()
            .filter(|&w| vertex_doomed(board, w, self.k))
            .min()
    }

    fn final_verdict(&mut self, board: &Board, caps: &OracleCaps) -> Result<bool> {
        let maker = board.maker_graph();
        Ok(match self.goal {
            Goal::MinDegree => oracles::min_degree(&maker) >= self.k,
            Goal::Connectivity => oracles::is_connected(&maker),
            Goal::Hamiltonicity => oracles::is_hamiltonian_with(&maker, caps)?,
        })
    }
}

fn recoverable(err: &Error) -> Option<bool> {
    match err {
        Error::StrategyInfeasible(_) | Error::BoxesExhausted => Some(true),
        Error::StageBlocked(_) => Some(false),
        _ => None,
    }
}

fn side_rng(seed: u64, player: Player) -> GameRng {
    let mut rng = GameRng::seed_from_u64(seed);
    rng.set_stream(match player {
        Player::Breaker => 1,
        Player::Maker => 2,
    });
    rng
}

/// Plays one game with early stopping.
pub fn play_game(
    params: &GameParams,
    maker: &mut dyn Strategy,
    breaker: &mut dyn Strategy,
    seed: u64,
) -> Result<(GameOutcome, GameTrace)> {
    play_game_with(params, maker, breaker, seed, &EngineOptions::default())
}

pub fn play_game_with(
    params: &GameParams,
    maker: &mut dyn Strategy,
    breaker: &mut dyn Strategy,
    seed: u64,
    options: &EngineOptions,
) -> Result<(GameOutcome, GameTrace)> {
    params.validate()?;
    if params.goal == Goal::Hamiltonicity && params.n > options.caps.hamiltonian_max_n {
        return Err(Error::InvalidParams(format!(
            "Hamiltonicity games are limited to n <= {}",
            options.caps.hamiltonian_max_n
        )));
    }
    let mut board = Board::new(params.n)?;
    let mut tracker = GoalTracker::new(params);
    let mut trace = GameTrace {
        params: params.clone(),
        seed,
        maker: maker.name().to_string(),
        breaker: breaker.name().to_string(),
        moves: Vec::new(),
        outcome: None,
    };
    let mut rngs = [side_rng(seed, Player::Breaker), side_rng(seed, Player::Maker)];
    let mut random_mode = [false, false];
    let mut fallbacks = Vec::new();
    let mut claims = [0usize, 0usize];
    // (winner, round, reason, witness, maker claims at that point)
    let mut decided: Option<(Player, usize, OutcomeReason, Option<usize>, usize)> = None;
    let mut round = 0;

    'game: while board.free_count() > 0 {
        round += 1;
        for (slot, player) in [(0usize, Player::Breaker), (1usize, Player::Maker)] {
            let bias = match player {
                Player::Breaker => params.b,
                Player::Maker => params.a,
            };
            let move_len = bias.min(board.free_count());
            for step in 0..move_len {
                let choice = if random_mode[slot] {
                    Choice::edge(random_free_edge(&board, &mut rngs[slot]).ok_or(Error::NoFreeEdge)?)
                } else {
                    let ctx = TurnContext {
                        board: &board,
                        params,
                        role: player,
                        round,
                        step,
                        move_len,
                    };
                    let strategy: &mut dyn Strategy = match player {
                        Player::Breaker => &mut *breaker,
                        Player::Maker => &mut *maker,
                    };
                    match strategy.choose(&ctx, &mut rngs[slot]) {
                        Ok(choice) => choice,
                        Err(err) => match recoverable(&err) {
                            Some(infeasible) => {
                                fallbacks.push(Fallback {
                                    player,
                                    round,
                                    error: err.to_string(),
                                    infeasible,
                                });
                                random_mode[slot] = true;
                                Choice::edge(
                                    random_free_edge(&board, &mut rngs[slot])
                                        .ok_or(Error::NoFreeEdge)?,
                                )
                            }
                            None => return Err(err),
                        },
                    }
                };
                if !board.contains(choice.edge) || !board.is_free(choice.edge) {
                    let name = match player {
                        Player::Breaker => breaker.name(),
                        Player::Maker => maker.name(),
                    };
                    return Err(Error::StrategyViolation {
                        strategy: name.to_string(),
                        edge: choice.edge,
                    });
                }
                board.claim(player, choice.edge)?;
                claims[slot] += 1;
                trace.moves.push(MoveRecord {
                    round,
                    step,
                    player,
                    u: choice.edge.u,
                    v: choice.edge.v,
                    target: choice.target,
                    stage: choice.stage.map(str::to_string),
                });

                if decided.is_none() {
                    match player {
                        Player::Maker => {
                            if tracker.maker_claimed(&board, choice.edge, &options.caps)? {
                                decided = Some((
                                    Player::Maker,
                                    round,
                                    OutcomeReason::GoalAchieved,
                                    None,
                                    claims[1],
                                ));
                            }
                        }
                        Player::Breaker => {
                            if let Some(v) = tracker.breaker_claimed(&board, choice.edge) {
                                decided = Some((
                                    Player::Breaker,
                                    round,
                                    OutcomeReason::GoalImpossible,
                                    Some(v),
                                    claims[1],
                                ));
                            }
                        }
                    }
                    if decided.is_some() && options.early_stop {
                        break 'game;
                    }
                } else if player == Player::Maker {
                    // keep the union-find current for the played-out verdict
                    tracker.maker_claimed(&board, choice.edge, &options.caps)?;
                }
            }
        }
    }

    let outcome = match (decided, options.early_stop) {
        (Some((winner, decisive_round, reason, witness, maker_claims)), true) => GameOutcome {
            winner,
            decisive_round,
            reason,
            final_board: board,
            witness,
            early_winner: Some(winner),
            maker_claims,
            breaker_claims: claims[0],
            fallbacks,
        },
        (decided, _) => {
            let maker_won = tracker.final_verdict(&board, &options.caps)?;
            let winner = if maker_won { Player::Maker } else { Player::Breaker };
            let (decisive_round, reason, witness, maker_claims) = match decided {
                Some((_, r, reason, w, mc)) => (r, reason, w, mc),
                None => (round, OutcomeReason::BoardExhausted, None, claims[1]),
            };
            GameOutcome {
                winner,
                decisive_round,
                reason,
                final_board: board,
                witness,
                early_winner: decided.map(|d| d.0),
                maker_claims,
                breaker_claims: claims[0],
                fallbacks,
            }
        }
    };
    trace.outcome = Some(OutcomeSummary {
        winner: outcome.winner,
        decisive_round: outcome.decisive_round,
        reason: outcome.reason,
        witness: outcome.witness,
        fallbacks: outcome.fallbacks.clone(),
    });
    Ok((outcome, trace))
}

/// Uniform random play, either side.
#[derive(Debug, Clone, Default)]
pub struct RandomStrategy;

impl Strategy for RandomStrategy {
    fn name(&self) -> &str {
        "random"
    }

    fn choose(&mut self, ctx: &TurnContext<'_>, rng: &mut GameRng) -> Result<Choice> {
        random_free_edge(ctx.board, rng)
            .map(Choice::edge)
            .ok_or(Error::NoFreeEdge)
    }
}
