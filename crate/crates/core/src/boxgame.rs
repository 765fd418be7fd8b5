//! The (p:q) box game B(k, t, p, q).

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoxPlayer {
    BoxMaker,
    BoxBreaker,
}

impl std::fmt::Display for BoxPlayer {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            BoxPlayer::BoxMaker => "boxmaker",
            BoxPlayer::BoxBreaker => "boxbreaker",
        })
    }
}

impl std::str::FromStr for BoxPlayer {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['-', '_'], "").as_str() {
            "boxmaker" | "maker" => Ok(BoxPlayer::BoxMaker),
            "boxbreaker" | "breaker" => Ok(BoxPlayer::BoxBreaker),
            other => Err(Error::Parse(format!("unknown box player '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxInstance {
    pub sizes: Vec<usize>,
    /// BoxMaker's bias.
    pub p: usize,
    /// BoxBreaker's bias.
    pub q: usize,
    pub first: BoxPlayer,
}

impl BoxInstance {
    pub fn new(sizes: Vec<usize>, p: usize, q: usize, first: BoxPlayer) -> Result<BoxInstance> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(Error::InvalidParams("boxes must be nonempty".into()));
        }
        if p == 0 || q == 0 {
            return Err(Error::InvalidParams("biases must be positive".into()));
        }
        Ok(BoxInstance { sizes, p, q, first })
    }

    pub fn k(&self) -> usize {
        self.sizes.len()
    }

    pub fn t(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn canonical(&self) -> bool {
        let max = self.sizes.iter().max().copied().unwrap_or(0);
        let min = self.sizes.iter().min().copied().unwrap_or(0);
        max - min <= 1
    }
}

/// Box sizes of the canonical hypergraph of type (k, t), larger boxes first.
pub fn canonical_sizes(k: usize, t: usize) -> Result<Vec<usize>> {
    if k == 0 || t < k {
        return Err(Error::InvalidParams(format!("need t >= k >= 1, got k={k}, t={t}")));
    }
    Ok((0..k).map(|i| t / k + usize::from(i < t % k)).collect())
}

pub fn canonical_instance(k: usize, t: usize, p: usize, q: usize, first: BoxPlayer) -> Result<BoxInstance> {
    BoxInstance::new(canonical_sizes(k, t)?, p, q, first)
}

/// `f(k; p, q)` from the recursion, with overflow checking.
pub fn f_box(k: usize, p: usize, q: usize) -> Result<i64> {
    f_table(k, p, q).map(|t| t[k])
}

/// `f(j; p, q)` for `j = 0..=max_k` (entry 0 is unused and set to 0).
pub fn f_table(max_k: usize, p: usize, q: usize) -> Result<Vec<i64>> {
    if p == 0 || q == 0 {
        return Err(Error::InvalidParams("biases must be positive".into()));
    }
    let overflow = || Error::TooLarge(format!("f({max_k}; {p}, {q}) overflows i64"));
    let (pi, qi) = (p as i64, q as i64);
    let mut f = vec![0i64; max_k + 1];
    for k in 1..=max_k {
        let ki = k as i64;
        f[k] = if k <= q {
            (ki - 1) * (pi + 1)
        } else if k <= 2 * q {
            ki * pi
        } else {
            let num = f[k - q]
                .checked_add(pi - qi)
                .and_then(|x| x.checked_mul(ki))
                .ok_or_else(overflow)?;
            num.div_euclid(ki - qi)
        };
    }
    Ok(f)
}

/// Right-hand side of the harmonic lower bound on `f(k; p, q)`:
/// `kp - 1 + (k(p-q-1)/q) * sum_{j=2}^{ceil(k/q)-1} 1/j`.
pub fn f_lower_bound(k: usize, p: usize, q: usize) -> Result<BigRational> {
    lower_bound_with(k, p, q, &numeric::harmonic_prefix(k.div_ceil(q.max(1))))
}

/// Same as [`f_lower_bound`] with a precomputed `[H_0, H_1, ...]` table long
/// enough for `ceil(k/q) - 1`.
pub fn lower_bound_with(k: usize, p: usize, q: usize, harmonic: &[BigRational]) -> Result<BigRational> {
    if q == 0 || k <= q || p <= q {
        return Err(Error::PreconditionFailed(format!(
            "need k > q and p > q, got k={k}, p={p}, q={q}"
        )));
    }
    let top = k.div_ceil(q) - 1;
    let sum = if top >= 2 {
        &harmonic[top] - &harmonic[1]
    } else {
        BigRational::zero()
    };
    let base = BigRational::from_integer(BigInt::from(k * p) - 1);
    let coef = BigRational::new(BigInt::from(k * (p - q - 1)), BigInt::from(q));
    Ok(base + coef * sum)
}

/// One-sided: true means BoxMaker (moving first) is known to win.
pub fn boxmaker_sufficient(k: usize, t: usize, p: usize, q: usize) -> Result<bool> {
    Ok(t as i64 <= f_box(k, p, q)? + p as i64)
}

/// Surviving boxes and their remaining (unclaimed) ball counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxPlayState {
    pub remaining: Vec<usize>,
    pub destroyed: Vec<bool>,
}

impl BoxPlayState {
    pub fn new(sizes: &[usize]) -> BoxPlayState {
        BoxPlayState {
            remaining: sizes.to_vec(),
            destroyed: vec![false; sizes.len()],
        }
    }

    pub fn surviving(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.remaining.len()).filter(|&i| !self.destroyed[i])
    }

    pub fn surviving_count(&self) -> usize {
        self.surviving().count()
    }

    pub fn apply(&mut self, mv: &BalancingMove) {
        for &(i, c) in &mv.claims {
            self.remaining[i] -= c;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalancingMove {
    /// `(box, balls)` in the order claimed.
    pub claims: Vec<(usize, usize)>,
    /// Box emptied by this move, if any.
    pub won: Option<usize>,
}

/// BoxMaker's balancing move with `p` balls: if some surviving box can be
/// emptied with the balls left, empty the smallest such box and stop;
/// otherwise take one ball from a largest surviving box (lowest index on
/// ties) and repeat.
pub fn boxmaker_balancing_move(state: &BoxPlayState, p: usize) -> BalancingMove {
    let mut rem = state.remaining.clone();
    let alive: Vec<usize> = state.surviving().collect();
    let mut claims: Vec<(usize, usize)> = Vec::new();
    let take = |claims: &mut Vec<(usize, usize)>, i: usize, c: usize| match claims.last_mut() {
        Some(last) if last.0 == i => last.1 += c,
        _ => claims.push((i, c)),
    };
    let mut left = p;
    while left > 0 {
        let finish = alive
            .iter()
            .copied()
            .filter(|&i| rem[i] <= left)
            .min_by_key(|&i| (rem[i], i));
        if let Some(i) = finish {
            if rem[i] > 0 {
                take(&mut claims, i, rem[i]);
            }
            return BalancingMove { claims, won: Some(i) };
        }
        let Some(i) = alive.iter().copied().max_by_key(|&i| (rem[i], std::cmp::Reverse(i))) else {
            break;
        };
        rem[i] -= 1;
        left -= 1;
        take(&mut claims, i, 1);
    }
    BalancingMove { claims, won: None }
}

/// Plays BoxMaker's balancing strategy against a BoxBreaker that destroys
/// the `q` surviving boxes with the fewest remaining balls. Returns the
/// winner.
pub fn play_balancing_vs_greedy(inst: &BoxInstance) -> BoxPlayer {
    let mut state = BoxPlayState::new(&inst.sizes);
    let mut turn = inst.first;
    loop {
        if state.surviving_count() == 0 {
            return BoxPlayer::BoxBreaker;
        }
        match turn {
            BoxPlayer::BoxMaker => {
                let mv = boxmaker_balancing_move(&state, inst.p);
                state.apply(&mv);
                if mv.won.is_some() {
                    return BoxPlayer::BoxMaker;
                }
            }
            BoxPlayer::BoxBreaker => {
                let mut alive: Vec<usize> = state.surviving().collect();
                alive.sort_by_key(|&i| (state.remaining[i], i));
                for &i in alive.iter().take(inst.q) {
                    state.destroyed[i] = true;
                }
            }
        }
        turn = match turn {
            BoxPlayer::BoxMaker => BoxPlayer::BoxBreaker,
            BoxPlayer::BoxBreaker => BoxPlayer::BoxMaker,
        };
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverCaps {
    pub max_t: usize,
    pub max_k: usize,
}

impl Default for SolverCaps {
    fn default() -> Self {
        SolverCaps { max_t: 12, max_k: 5 }
    }
}

/// Exact winner of the box game under optimal play.
pub fn solve_exhaustive(inst: &BoxInstance) -> Result<BoxPlayer> {
    solve_exhaustive_with(inst, &SolverCaps::default())
}

pub fn solve_exhaustive_with(inst: &BoxInstance, caps: &SolverCaps) -> Result<BoxPlayer> {
    if inst.t() > caps.max_t || inst.k() > caps.max_k {
        return Err(Error::TooLarge(format!(
            "box game with k={}, t={} exceeds caps k<={}, t<={}",
            inst.k(),
            inst.t(),
            caps.max_k,
            caps.max_t
        )));
    }
    let mut solver = Solver {
        p: inst.p,
        q: inst.q,
        memo: HashMap::new(),
    };
    let mut sizes = inst.sizes.clone();
    sizes.sort_unstable();
    let maker_wins = solver.maker_wins(sizes, inst.first == BoxPlayer::BoxMaker);
    Ok(if maker_wins { BoxPlayer::BoxMaker } else { BoxPlayer::BoxBreaker })
}

struct Solver {
    p: usize,
    q: usize,
    memo: HashMap<(Vec<usize>, bool), bool>,
}

impl Solver {
    /// `rem` is the sorted list of remaining counts of surviving boxes.
    fn maker_wins(&mut self, rem: Vec<usize>, maker_to_move: bool) -> bool {
        if rem.is_empty() {
            return false;
        }
        if maker_to_move && rem[0] <= self.p {
            return true;
        }
        let key = (rem, maker_to_move);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let rem = key.0.clone();
        let result = if maker_to_move {
            let mut found = false;
            let mut alloc = vec![0; rem.len()];
            self.distribute(&rem, &mut alloc, 0, self.p, &mut found);
            found
        } else {
            // every subset of at most q boxes to destroy
            let k = rem.len();
            let mut all_lose = true;
            for mask in 0u32..(1 << k) {
                if mask.count_ones() as usize > self.q {
                    continue;
                }
                let next: Vec<usize> = (0..k).filter(|&i| mask & (1 << i) == 0).map(|i| rem[i]).collect();
                if !self.maker_wins(next, true) {
                    all_lose = false;
                    break;
                }
            }
            all_lose
        };
        self.memo.insert(key, result);
        result
    }

    /// Tries every split of `left` balls over boxes `i..` that leaves each
    /// box at least one ball (emptying moves were handled as immediate wins).
    fn distribute(&mut self, rem: &[usize], alloc: &mut Vec<usize>, i: usize, left: usize, found: &mut bool) {
        if *found {
            return;
        }
        if i == rem.len() {
            if left == 0 {
                let mut next: Vec<usize> = rem.iter().zip(alloc.iter()).map(|(r, a)| r - a).collect();
                next.sort_unstable();
                if self.maker_wins(next, false) {
                    *found = true;
                }
            }
            return;
        }
        // identical boxes: only non-increasing allocations
        let cap = if i > 0 && rem[i] == rem[i - 1] { alloc[i - 1] } else { usize::MAX };
        let max = left.min(rem[i] - 1).min(cap);
        for c in (0..=max).rev() {
            alloc[i] = c;
            self.distribute(rem, alloc, i + 1, left - c, found);
        }
        alloc[i] = 0;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridRow {
    pub k: usize,
    pub p: usize,
    pub q: usize,
    pub f: i64,
    /// Lower bound, when its preconditions hold.
    pub lower_bound: Option<f64>,
    pub bound_holds: Option<bool>,
    /// Largest `t` for which `boxmaker_sufficient(k, t, p, q)` holds, `f + p`.
    pub sufficient_t: i64,
}

/// Every `(k, p, q)` with `k <= max_k`, `p <= max_p`, `q <= max_q`.
pub fn grid(max_k: usize, max_p: usize, max_q: usize) -> Result<Vec<GridRow>> {
    let h = numeric::harmonic_prefix(max_k.max(2));
    let mut rows = Vec::new();
    for p in 1..=max_p {
        for q in 1..=max_q {
            let f = f_table(max_k, p, q)?;
            for k in 1..=max_k {
                let (lower_bound, bound_holds) = match lower_bound_with(k, p, q, &h) {
                    Ok(lb) => {
                        let holds = BigRational::from_integer(BigInt::from(f[k])) >= lb;
                        (Some(numeric::to_f64(&lb)), Some(holds))
                    }
                    Err(_) => (None, None),
                };
                rows.push(GridRow {
                    k,
                    p,
                    q,
                    f: f[k],
                    lower_bound,
                    bound_holds,
                    sufficient_t: f[k] + p as i64,
                });
            }
        }
    }
    Ok(rows)
}

pub fn grid_csv(rows: &[GridRow]) -> String {
    let mut out = String::from("k,p,q,f,lowerBound,sufficient\n");
    for r in rows {
        let lb = r.lower_bound.map(|x| format!("{x:.6}")).unwrap_or_default();
        out.push_str(&format!("{},{},{},{},{},{}\n", r.k, r.p, r.q, r.f, lb, r.sufficient_t));
    }
    out
}
