//! Retrospective audit of Min-Deg games that Breaker won.
//!
//! A trace is replayed and the degree vectors are captured at two instants
//! per round: just before Breaker's move (the B-instant) and just before
//! Maker's move (the M-instant). From these the average dangers of the
//! target multisets `A_j` are computed and checked against the inequalities
//! of the Min-Deg analysis.

use std::collections::BTreeSet;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::board::{Board, Edge, GameParams, Player};
use crate::engine::GameTrace;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AuditConfig {
    /// Split parameter for the two-branch bound; defaults to
    /// `max(1, floor(n / (a^2 ln n)))`.
    pub r: Option<usize>,
    /// Slack allowed on logarithmic bounds.
    pub tolerance: f64,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            r: None,
            tolerance: 1e-9,
        }
    }
}

pub fn default_r(n: usize, a: usize) -> usize {
    let r = n as f64 / ((a * a) as f64 * (n as f64).ln());
    (r.floor() as usize).max(1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Degrees {
    maker: Vec<usize>,
    breaker: Vec<usize>,
}

impl Degrees {
    fn of(board: &Board) -> Degrees {
        Degrees {
            maker: board.maker_degrees().to_vec(),
            breaker: board.breaker_degrees().to_vec(),
        }
    }
}

/// Reconstructed potential objects for one losing vertex `v_s` at round `s`.
#[derive(Debug, Clone)]
pub struct PotentialAudit {
    pub params: GameParams,
    pub s: usize,
    pub v_s: usize,
    pub r: usize,
    /// `multisets[j]` is `A_j` for `1 <= j <= s`; entry 0 is empty.
    pub multisets: Vec<Vec<usize>>,
    /// `g[j]` for `1 <= j <= s`; entry 0 is unused.
    pub g: Vec<usize>,
    /// `avg_m[j] = D̄_M(A_j)` for `1 <= j <= s-1`.
    pub avg_m: Vec<Rational64>,
    /// `avg_b[j] = D̄_B(A_j)` for `1 <= j <= s`.
    pub avg_b: Vec<Rational64>,
    /// Breaker and Maker degree of `v_s` at the B-instant of round `s`.
    /// Breaker-degree gain of `A_j` during Breaker's move of round `j`,
    /// counted with multiplicity.
    pub gain_multiset: Vec<usize>,
    /// The same gain over the distinct vertices of `A_j`; never above `2b`.
    pub gain_support: Vec<usize>,
    pub d_b_vs: usize,
    pub d_m_vs: usize,
}

fn danger_sum(set: &[usize], deg: &Degrees, a: usize, b: usize) -> i64 {
    set.iter()
        .map(|&w| a as i64 * deg.breaker[w] as i64 - 2 * b as i64 * deg.maker[w] as i64)
        .sum()
}

/// Replays `trace` and builds `A_j`, `g(j)` and the average dangers.
pub fn reconstruct_multisets(trace: &GameTrace, s: usize, v_s: usize, r: Option<usize>) -> Result<PotentialAudit> {
    let params = &trace.params;
    let (n, a, b, k) = (params.n, params.a, params.b, params.degree_target());
    if s == 0 || s > trace.rounds().max(1) {
        return Err(Error::TraceIncompatible(format!("round {s} is not in the trace")));
    }
    if v_s >= n {
        return Err(Error::TraceIncompatible(format!("vertex {v_s} out of range")));
    }
    trace.check_structure()?;

    let mut board = Board::new(n)?;
    let mut b_inst: Vec<Option<Degrees>> = vec![None; s + 1];
    let mut m_inst: Vec<Option<Degrees>> = vec![None; s + 1];
    let mut targets: Vec<Vec<usize>> = vec![Vec::new(); s + 1];
    // (round claimed, edge)
    let mut breaker_edges: Vec<(usize, Edge)> = Vec::new();
    for m in &trace.moves {
        if m.round > s {
            break;
        }
        let slot = match m.player {
            Player::Breaker => &mut b_inst[m.round],
            Player::Maker => &mut m_inst[m.round],
        };
        if slot.is_none() {
            *slot = Some(Degrees::of(&board));
        }
        if m.round == s && m.player == Player::Breaker {
            // nothing after the B-instant of round s is needed
            break;
        }
        match m.player {
            Player::Maker => {
                let t = m.target.ok_or_else(|| {
                    Error::TraceIncompatible(format!("maker step in round {} has no target", m.round))
                })?;
                targets[m.round].push(t);
            }
            Player::Breaker => breaker_edges.push((m.round, m.edge())),
        }
        board.claim(m.player, m.edge())?;
    }
    if b_inst[s].is_none() {
        b_inst[s] = Some(Degrees::of(&board));
    }
    for j in 1..s {
        if b_inst[j].is_none() || m_inst[j].is_none() {
            return Err(Error::TraceIncompatible(format!("round {j} is incomplete")));
        }
    }
    let last = b_inst[s].clone().expect("set above");
    if last.maker[v_s] >= k {
        return Err(Error::TraceIncompatible(format!(
            "vertex {v_s} is not dangerous at round {s}"
        )));
    }

    let mut multisets = vec![Vec::new(); s + 1];
    multisets[s] = vec![v_s];
    for j in 1..s {
        let deg = m_inst[j].as_ref().expect("checked");
        multisets[j] = targets[j..s]
            .iter()
            .flatten()
            .copied()
            .chain(std::iter::once(v_s))
            .filter(|&w| deg.maker[w] < k)
            .collect();
    }

    let mut g = vec![0usize; s + 1];
    for j in 1..=s {
        let support: BTreeSet<usize> = multisets[j].iter().copied().collect();
        g[j] = breaker_edges
            .iter()
            .filter(|(round, e)| *round < j && support.contains(&e.u) && support.contains(&e.v))
            .count();
    }

    let denom = |j: usize| (a * (s - j) + 1) as i64;
    let avg = |set: &[usize], deg: &Degrees, j: usize| {
        Rational64::new(danger_sum(set, deg, a, b), a as i64 * denom(j))
    };
    let mut gain_multiset = vec![0usize; s];
    let mut gain_support = vec![0usize; s];
    for j in 1..s {
        let (before, after) = (b_inst[j].as_ref().expect("checked"), m_inst[j].as_ref().expect("checked"));
        let gain = |w: &usize| after.breaker[*w] - before.breaker[*w];
        gain_multiset[j] = multisets[j].iter().map(gain).sum();
        gain_support[j] = multisets[j].iter().copied().collect::<BTreeSet<_>>().iter().map(gain).sum();
    }

    let mut avg_m = vec![Rational64::from_integer(0); s];
    let mut avg_b = vec![Rational64::from_integer(0); s + 1];
    for j in 1..=s {
        avg_b[j] = avg(&multisets[j], b_inst[j].as_ref().expect("checked"), j);
        if j < s {
            avg_m[j] = avg(&multisets[j], m_inst[j].as_ref().expect("checked"), j);
        }
    }

    Ok(PotentialAudit {
        params: params.clone(),
        s,
        v_s,
        r: r.unwrap_or_else(|| default_r(n, a)).max(1),
        multisets,
        g,
        avg_m,
        avg_b,
        gain_multiset,
        gain_support,
        d_b_vs: last.breaker[v_s],
        d_m_vs: last.maker[v_s],
    })
}

impl PotentialAudit {
    pub fn multiset(&self, j: usize) -> &[usize] {
        &self.multisets[j]
    }

    /// `g(j)` as defined on round labels `1..=s`.
    pub fn compute_g(&self, j: usize) -> usize {
        self.g[j]
    }

    /// True when the L1i slack at round `j` is exceeded only because some
    /// vertex of `A_j` occurs more than once: the gain over distinct
    /// vertices is within `2b`, the gain with multiplicity is not.
    pub fn l1i_excess_from_repeats(&self, j: usize) -> bool {
        let b2 = 2 * self.params.b;
        self.gain_multiset[j] > b2 && self.gain_support[j] <= b2
    }

    pub fn avg_danger(&self, j: usize, side: Side) -> Rational64 {
        match side {
            Side::M => self.avg_m[j],
            Side::B => self.avg_b[j],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    M,
    B,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: String,
    /// The index `i` of the inequality (round `s - i`), when it has one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

impl CheckEntry {
    fn exact(name: &str, index: Option<usize>, lhs: Rational64, rhs: Rational64, pass: bool) -> CheckEntry {
        CheckEntry {
            name: name.into(),
            index,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            pass,
        }
    }

    fn approx(name: &str, index: Option<usize>, lhs: f64, rhs: f64, pass: bool) -> CheckEntry {
        CheckEntry {
            name: name.into(),
            index,
            lhs: format!("{lhs:.12}"),
            rhs: format!("{rhs:.12}"),
            pass,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub s: usize,
    pub v_s: usize,
    pub r: usize,
    pub entries: Vec<CheckEntry>,
    pub pass: bool,
}

impl AuditReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckEntry> {
        self.entries.iter().filter(|e| !e.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn ratio(x: Rational64) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

/// Runs every inequality check on a reconstructed audit.
pub fn check_potential_lemmas(audit: &PotentialAudit, config: &AuditConfig) -> AuditReport {
    let p = &audit.params;
    let (n, a, b, k) = (p.n as i64, p.a as i64, p.b as i64, p.degree_target() as i64);
    let s = audit.s;
    let tol = config.tolerance;
    let mut entries = Vec::new();
    let choose_a2 = a * (a - 1) / 2;

    for i in 1..s {
        let j = s - i;
        let (dm, db, db_next) = (audit.avg_m[j], audit.avg_b[j], audit.avg_b[j + 1]);
        entries.push(CheckEntry::exact("P1", Some(i), dm, db, dm >= db));
        entries.push(CheckEntry::exact("P2", Some(i), dm, db_next, dm >= db_next));
        let gap = dm - db;
        let ii = i as i64;
        let r1 = Rational64::new(2 * b, a * ii + 1);
        entries.push(CheckEntry::exact("L1i", Some(i), gap, r1, gap <= r1));
        let dg = audit.g[j + 1] as i64 - audit.g[j] as i64;
        let r2 = Rational64::new(b - a * a + a + choose_a2 + dg, a * ii) + Rational64::from_integer(a);
        entries.push(CheckEntry::exact("L1ii", Some(i), gap, r2, gap <= r2));
    }

    let lhs = ratio(audit.avg_b[s]);
    let (af, bf) = (a as f64, b as f64);
    if s >= 2 {
        let rhs = 2.0 * bf / af * (((s - 1) as f64).ln() + 1.0);
        entries.push(CheckEntry::approx("Lp", None, lhs, rhs, lhs <= rhs + tol));
    }
    let r = audit.r as f64;
    let tail = -(af - 1.0) / 2.0 * r.ln() + r * af;
    let (name, rhs) = if s > audit.r {
        ("Lr(i)", bf / af * (2.0 * ((s - 1) as f64).ln() - r.ln() + 1.0) + tail)
    } else {
        ("Lr(ii)", bf / af * (1.0 + r.ln()) + tail)
    };
    entries.push(CheckEntry::approx(name, None, lhs, rhs, lhs <= rhs + tol));

    let rounds = a * (s as i64 - 1);
    entries.push(CheckEntry::exact(
        "round-bound",
        None,
        Rational64::from_integer(rounds),
        Rational64::from_integer(k * n),
        rounds < k * n,
    ));
    let floor = n - k - b;
    entries.push(CheckEntry::exact(
        "loss-degree",
        None,
        Rational64::from_integer(audit.d_b_vs as i64),
        Rational64::from_integer(floor),
        audit.d_b_vs as i64 >= floor,
    ));

    let pass = entries.iter().all(|e| e.pass);
    AuditReport {
        s,
        v_s: audit.v_s,
        r: audit.r,
        entries,
        pass,
    }
}

/// Audits a finished trace at its decisive round and witness vertex.
pub fn audit_trace(trace: &GameTrace, config: &AuditConfig) -> Result<AuditReport> {
    audit_trace_full(trace, config).map(|(_, report)| report)
}

pub fn audit_at(trace: &GameTrace, s: usize, v_s: usize, config: &AuditConfig) -> Result<AuditReport> {
    let audit = reconstruct_multisets(trace, s, v_s, config.r)?;
    Ok(check_potential_lemmas(&audit, config))
}

/// Like [`audit_trace`] but also returns the reconstruction.
pub fn audit_trace_full(trace: &GameTrace, config: &AuditConfig) -> Result<(PotentialAudit, AuditReport)> {
    let outcome = trace
        .outcome
        .as_ref()
        .ok_or_else(|| Error::TraceIncompatible("trace has no outcome".into()))?;
    if outcome.winner != Player::Breaker {
        return Err(Error::TraceIncompatible("Maker won; nothing to audit".into()));
    }
    let v = outcome
        .witness
        .ok_or_else(|| Error::TraceIncompatible("no losing vertex recorded".into()))?;
    let audit = reconstruct_multisets(trace, outcome.decisive_round, v, config.r)?;
    let report = check_potential_lemmas(&audit, config);
    Ok((audit, report))
}

/// True when the report fails, and every failure is an L1i entry whose
/// excess comes from a repeated vertex in `A_j`.
pub fn fails_only_by_repeats(audit: &PotentialAudit, report: &AuditReport) -> bool {
    !report.pass
        && report.failures().all(|f| {
            f.name == "L1i" && f.index.is_some_and(|i| audit.l1i_excess_from_repeats(audit.s - i))
        })
}

/// Vertices whose Breaker degree exceeded `(1-delta) n` while their Maker
/// degree was below `k`, with the largest such Breaker degree. These are
/// finite-size exceptions, reported but not failed.
pub fn breaker_degree_exceptions(trace: &GameTrace, delta: f64) -> Result<Vec<(usize, usize)>> {
    let p = &trace.params;
    let limit = (1.0 - delta) * p.n as f64;
    let k = p.degree_target();
    let mut board = Board::new(p.n)?;
    let mut worst = vec![0usize; p.n];
    for m in &trace.moves {
        board.claim(m.player, m.edge())?;
        if m.player == Player::Breaker {
            for w in [m.u, m.v] {
                if board.maker_degree(w) < k {
                    worst[w] = worst[w].max(board.breaker_degree(w));
                }
            }
        }
    }
    Ok(worst
        .into_iter()
        .enumerate()
        .filter(|&(_, d)| d as f64 > limit)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::Goal;
    use crate::engine::{play_game, MoveRecord, OutcomeReason, OutcomeSummary, RandomStrategy};
    use crate::maker::MinDegStrategy;

    fn mv(round: usize, player: Player, u: usize, v: usize, target: Option<usize>) -> MoveRecord {
        MoveRecord {
            round,
            step: 0,
            player,
            u,
            v,
            target,
            stage: None,
        }
    }

    fn scripted(params: GameParams, moves: Vec<MoveRecord>) -> GameTrace {
        GameTrace {
            params,
            seed: 0,
            maker: "min-deg".into(),
            breaker: "scripted".into(),
            moves,
            outcome: None,
        }
    }

    fn q(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    /// n=6, a=b=1, k=1. Round 1: B (0,1), M (0,2) for 0.
    /// Round 2: B (1,3), M (1,4) for 1. Round 3: B (3,4) then audit v_s=3.
    fn two_round_fixture() -> GameTrace {
        let params = GameParams::min_degree(6, 1, 1, 1).unwrap();
        scripted(
            params,
            vec![
                mv(1, Player::Breaker, 0, 1, None),
                mv(1, Player::Maker, 0, 2, Some(0)),
                mv(2, Player::Breaker, 1, 3, None),
                mv(2, Player::Maker, 1, 4, Some(1)),
                mv(3, Player::Breaker, 3, 5, None),
            ],
        )
    }

    #[test]
    fn hand_computed_fixture() {
        let trace = two_round_fixture();
        let audit = reconstruct_multisets(&trace, 3, 3, None).unwrap();
        assert_eq!(audit.multiset(3), &[3]);
        assert_eq!(audit.multiset(2), &[1, 3]);
        assert_eq!(audit.multiset(1), &[0, 1, 3]);
        // round 1 B-instant: fresh board
        assert_eq!(audit.avg_danger(1, Side::B), q(0, 1));
        // round 1 M-instant: dB(0)=dB(1)=1, denominator a*2+1 = 3
        assert_eq!(audit.avg_danger(1, Side::M), q(2, 3));
        // round 2 B-instant: D(0) = 1-2 = -1 (not in A_2), D(1)=1, D(3)=0; denominator 2
        assert_eq!(audit.avg_danger(2, Side::B), q(1, 2));
        // round 2 M-instant: D(1)=2, D(3)=1
        assert_eq!(audit.avg_danger(2, Side::M), q(3, 2));
        // round 3 B-instant: D(3)=1
        assert_eq!(audit.avg_danger(3, Side::B), q(1, 1));
        // (1,3) was claimed in round 2, before round 3 but not before round 2
        assert_eq!(audit.compute_g(1), 0);
        assert_eq!(audit.compute_g(2), 0);
        assert_eq!(audit.compute_g(3), 0);

        let report = check_potential_lemmas(&audit, &AuditConfig::default());
        // vertex 3 is not actually lost, so only the degree check fails
        let failed: Vec<&str> = report.failures().map(|e| e.name.as_str()).collect();
        assert_eq!(failed, ["loss-degree"]);
        let l1i = report.entries.iter().find(|e| e.name == "L1i" && e.index == Some(2)).unwrap();
        assert_eq!((l1i.lhs.as_str(), l1i.rhs.as_str()), ("2/3", "2/3"));
    }

    #[test]
    fn g_counts_edges_inside_the_support() {
        let trace = two_round_fixture();
        let audit = reconstruct_multisets(&trace, 2, 1, None).unwrap();
        // A_2 = {1}; A_1 = {0, 1}; (0,1) was claimed in round 1
        assert_eq!(audit.multiset(1), &[0, 1]);
        assert_eq!(audit.compute_g(1), 0);
        let params = GameParams::min_degree(6, 1, 1, 1).unwrap();
        let trace = scripted(
            params,
            vec![
                mv(1, Player::Breaker, 2, 3, None),
                mv(1, Player::Maker, 0, 1, Some(0)),
                mv(2, Player::Breaker, 3, 4, None),
                mv(2, Player::Maker, 2, 5, Some(2)),
                mv(3, Player::Breaker, 3, 5, None),
            ],
        );
        let audit = reconstruct_multisets(&trace, 3, 3, None).unwrap();
        // A_2 = {2, 3} and Breaker took (2,3) in round 1
        assert_eq!(audit.multiset(2), &[2, 3]);
        assert_eq!(audit.compute_g(2), 1);
        assert_eq!(audit.compute_g(3), 0);
    }

    #[test]
    fn duplicates_are_summed() {
        // a=2, k=2: vertex 1 is the target of both steps in round 2
        let params = GameParams::min_degree(6, 2, 1, 2).unwrap();
        let trace = scripted(
            params,
            vec![
                mv(1, Player::Breaker, 1, 2, None),
                mv(1, Player::Maker, 0, 3, Some(0)),
                mv(1, Player::Maker, 0, 4, Some(0)),
                mv(2, Player::Breaker, 1, 3, None),
                mv(2, Player::Maker, 1, 5, Some(1)),
                mv(2, Player::Maker, 0, 1, Some(1)),
                mv(3, Player::Breaker, 2, 3, None),
            ],
        );
        let audit = reconstruct_multisets(&trace, 3, 2, None).unwrap();
        assert_eq!(audit.multiset(2), &[1, 1, 2]);
        assert_eq!(audit.multiset(1), &[0, 0, 1, 1, 2]);
        // M-instant of round 2: D(1) = 2 counted twice, D(2) = 1, over a*1+1 = 3
        assert_eq!(audit.avg_danger(2, Side::M), q(5, 3));
    }

    #[test]
    fn saturated_targets_are_filtered() {
        // a=2, k=2: vertex 0 already has Maker degree 2 when it is named
        // again in round 2, so that occurrence is not in A_2
        let params = GameParams::min_degree(6, 2, 1, 2).unwrap();
        let trace = scripted(
            params,
            vec![
                mv(1, Player::Breaker, 1, 2, None),
                mv(1, Player::Maker, 0, 3, Some(0)),
                mv(1, Player::Maker, 0, 4, Some(0)),
                mv(2, Player::Breaker, 1, 3, None),
                mv(2, Player::Maker, 1, 5, Some(1)),
                mv(2, Player::Maker, 0, 5, Some(0)),
                mv(3, Player::Breaker, 2, 3, None),
            ],
        );
        let audit = reconstruct_multisets(&trace, 3, 2, None).unwrap();
        assert_eq!(audit.multiset(2), &[1, 2]);
        assert_eq!(audit.multiset(1), &[0, 0, 1, 0, 2]);
        assert_eq!(audit.avg_danger(2, Side::M), q(1, 1));
    }

    #[test]
    fn vacuous_at_round_one() {
        let trace = two_round_fixture();
        let audit = reconstruct_multisets(&trace, 1, 0, None).unwrap();
        let report = check_potential_lemmas(&audit, &AuditConfig::default());
        assert!(report.entries.iter().all(|e| e.index.is_none()));
        assert!(report.entries.iter().all(|e| e.name != "Lp"));
    }

    #[test]
    fn missing_targets_are_rejected() {
        let params = GameParams::min_degree(6, 1, 1, 1).unwrap();
        let (_, trace) = play_game(&params, &mut RandomStrategy, &mut RandomStrategy, 1).unwrap();
        let s = trace.rounds().max(2);
        assert!(matches!(
            reconstruct_multisets(&trace, s, 0, None),
            Err(Error::TraceIncompatible(_))
        ));
    }

    #[test]
    fn seeded_min_deg_games_pass() {
        let mut audited = 0;
        for seed in 0..40 {
            let params = GameParams::min_degree(20, 1, 11, 1).unwrap();
            let (outcome, trace) =
                play_game(&params, &mut MinDegStrategy::default(), &mut RandomStrategy, seed).unwrap();
            if outcome.winner == Player::Breaker {
                let report = audit_trace(&trace, &AuditConfig::default()).unwrap();
                assert!(report.pass, "seed {seed}: {:#?}", report.failures().collect::<Vec<_>>());
                audited += 1;
            }
        }
        assert!(audited > 0);
    }

    #[test]
    fn repeated_targets_break_l1i_only() {
        // with k = 2 a vertex is targeted twice, and Breaker edges at it count
        // twice in the multiset sum
        let params = GameParams::min_degree(20, 1, 7, 2).unwrap();
        let mut l1i_failures = 0;
        for seed in 0..6 {
            let (outcome, trace) =
                play_game(&params, &mut MinDegStrategy::default(), &mut RandomStrategy, seed).unwrap();
            if outcome.winner != Player::Breaker {
                continue;
            }
            let (audit, report) = audit_trace_full(&trace, &AuditConfig::default()).unwrap();
            for j in 1..audit.s {
                assert!(audit.gain_support[j] <= 2 * params.b);
            }
            if !report.pass {
                assert!(fails_only_by_repeats(&audit, &report), "seed {seed}");
                l1i_failures += report.failures().count();
            }
        }
        assert!(l1i_failures > 0);
    }

    #[test]
    fn audit_requires_breaker_win() {
        let params = GameParams::new(6, 3, 1, 1, Goal::MinDegree).unwrap();
        let mut trace = two_round_fixture();
        trace.params = params;
        trace.outcome = Some(OutcomeSummary {
            winner: Player::Maker,
            decisive_round: 2,
            reason: OutcomeReason::GoalAchieved,
            witness: None,
            fallbacks: vec![],
        });
        assert!(audit_trace(&trace, &AuditConfig::default()).is_err());
    }
}
