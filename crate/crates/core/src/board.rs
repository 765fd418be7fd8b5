//! Claim state of the edges of K_n.
//!
//! Edges are stored in a dense upper-triangular array indexed in
//! lexicographic `(u, v)` order, so "lowest-index edge" and "lexicographically
//! smallest pair" coincide everywhere in the crate.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracles::SimpleGraph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Player {
    Maker,
    Breaker,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Maker => Player::Breaker,
            Player::Breaker => Player::Maker,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Player::Maker => f.write_str("maker"),
            Player::Breaker => f.write_str("breaker"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Claim {
    #[default]
    Free,
    Owned(Player),
}

/// Winning condition for Maker.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Goal {
    /// Maker's graph spans K_n with minimum degree at least `k`.
    MinDegree,
    Connectivity,
    Hamiltonicity,
}

impl fmt::Display for Goal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Goal::MinDegree => "min-degree",
            Goal::Connectivity => "connectivity",
            Goal::Hamiltonicity => "hamiltonicity",
        })
    }
}

impl FromStr for Goal {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "min-degree" | "min-degree-k" | "mindeg" => Ok(Goal::MinDegree),
            "connectivity" | "connected" => Ok(Goal::Connectivity),
            "hamiltonicity" | "hamiltonian" => Ok(Goal::Hamiltonicity),
            other => Err(Error::InvalidParams(format!("unknown goal '{other}'"))),
        }
    }
}

/// Configuration of a single (a:b) game on K_n.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameParams {
    pub n: usize,
    /// Maker's bias.
    pub a: usize,
    /// Breaker's bias.
    pub b: usize,
    /// Target minimum degree for [`Goal::MinDegree`].
    pub k: usize,
    pub goal: Goal,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
}

impl GameParams {
    pub fn new(n: usize, a: usize, b: usize, k: usize, goal: Goal) -> Result<Self> {
        let params = GameParams {
            n,
            a,
            b,
            k,
            goal,
            epsilon: None,
            delta: None,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn min_degree(n: usize, a: usize, b: usize, k: usize) -> Result<Self> {
        Self::new(n, a, b, k, Goal::MinDegree)
    }

    pub fn with_margins(mut self, epsilon: Option<f64>, delta: Option<f64>) -> Result<Self> {
        self.epsilon = epsilon;
        self.delta = delta;
        self.validate()?;
        Ok(self)
    }

    pub fn edge_count(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    /// Degree that Maker needs at every vertex for the goal's minimum-degree
    /// obstruction: `k` for the min-degree game, 1 otherwise.
    pub fn degree_target(&self) -> usize {
        match self.goal {
            Goal::MinDegree => self.k,
            Goal::Connectivity | Goal::Hamiltonicity => 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParams(msg));
        if self.n < 3 {
            return bad(format!("n must be at least 3, got {}", self.n));
        }
        let edges = self.edge_count();
        if self.a == 0 || self.a > edges {
            return bad(format!("a must lie in 1..={edges}, got {}", self.a));
        }
        if self.b == 0 || self.b > edges {
            return bad(format!("b must lie in 1..={edges}, got {}", self.b));
        }
        if self.k == 0 || self.k > self.n - 1 {
            return bad(format!("k must lie in 1..={}, got {}", self.n - 1, self.k));
        }
        for (name, value) in [("epsilon", self.epsilon), ("delta", self.delta)] {
            if let Some(x) = value {
                if !(x > 0.0 && x < 1.0) {
                    return bad(format!("{name} must lie in (0,1), got {x}"));
                }
            }
        }
        if let (Some(d), Some(e)) = (self.delta, self.epsilon) {
            if d >= e {
                return bad(format!("delta ({d}) must be smaller than epsilon ({e})"));
            }
        }
        Ok(())
    }
}

/// An unordered vertex pair, stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
}

impl Edge {
    /// Builds the canonical edge on `{x, y}`. Panics on a loop.
    pub fn new(x: usize, y: usize) -> Edge {
        assert_ne!(x, y, "loops are not edges of K_n");
        if x < y {
            Edge { u: x, v: y }
        } else {
            Edge { u: y, v: x }
        }
    }

    pub fn other(self, w: usize) -> usize {
        if w == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(self, w: usize) -> bool {
        self.u == w || self.v == w
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.u, self.v)
    }
}

/// Number of edges of K_n.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Board {
    n: usize,
    claims: Vec<Claim>,
    maker_degree: Vec<usize>,
    breaker_degree: Vec<usize>,
    free_count: usize,
}

impl Board {
    pub fn new(n: usize) -> Result<Board> {
        if n < 3 {
            return Err(Error::InvalidParams(format!(
                "board needs at least 3 vertices, got {n}"
            )));
        }
        let m = pair_count(n);
        Ok(Board {
            n,
            claims: vec![Claim::Free; m],
            maker_degree: vec![0; n],
            breaker_degree: vec![0; n],
            free_count: m,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.claims.len()
    }

    pub fn free_count(&self) -> usize {
        self.free_count
    }

    pub fn claimed_count(&self) -> usize {
        self.claims.len() - self.free_count
    }

    #[inline]
    pub fn index(&self, e: Edge) -> usize {
        debug_assert!(e.u < e.v && e.v < self.n);
        e.u * (2 * self.n - e.u - 1) / 2 + (e.v - e.u - 1)
    }

    /// Inverse of [`Board::index`].
    pub fn edge_at(&self, mut idx: usize) -> Edge {
        debug_assert!(idx < self.claims.len());
        let mut u = 0;
        loop {
            let row = self.n - u - 1;
            if idx < row {
                return Edge { u, v: u + 1 + idx };
            }
            idx -= row;
            u += 1;
        }
    }

    pub fn contains(&self, e: Edge) -> bool {
        e.u < e.v && e.v < self.n
    }

    pub fn claim_of(&self, e: Edge) -> Claim {
        self.claims[self.index(e)]
    }

    pub fn is_free(&self, e: Edge) -> bool {
        self.claim_of(e) == Claim::Free
    }

    pub fn owner(&self, e: Edge) -> Option<Player> {
        match self.claim_of(e) {
            Claim::Free => None,
            Claim::Owned(p) => Some(p),
        }
    }

    pub fn maker_degree(&self, v: usize) -> usize {
        self.maker_degree[v]
    }

    pub fn breaker_degree(&self, v: usize) -> usize {
        self.breaker_degree[v]
    }

    pub fn degree(&self, player: Player, v: usize) -> usize {
        match player {
            Player::Maker => self.maker_degree[v],
            Player::Breaker => self.breaker_degree[v],
        }
    }

    pub fn maker_degrees(&self) -> &[usize] {
        &self.maker_degree
    }

    pub fn breaker_degrees(&self) -> &[usize] {
        &self.breaker_degree
    }

    /// Number of unclaimed edges at `v`.
    pub fn free_degree(&self, v: usize) -> usize {
        self.n - 1 - self.maker_degree[v] - self.breaker_degree[v]
    }

    pub fn is_saturated(&self, v: usize) -> bool {
        self.free_degree(v) == 0
    }

    /// Claims `e` for `player`. A rejected claim leaves the board untouched.
    pub fn claim(&mut self, player: Player, e: Edge) -> Result<()> {
        if !self.contains(e) {
            return Err(Error::InvalidParams(format!(
                "edge {e} is not on K_{}",
                self.n
            )));
        }
        let idx = self.index(e);
        if self.claims[idx] != Claim::Free {
            return Err(Error::EdgeAlreadyClaimed(e));
        }
        self.claims[idx] = Claim::Owned(player);
        let degrees = match player {
            Player::Maker => &mut self.maker_degree,
            Player::Breaker => &mut self.breaker_degree,
        };
        degrees[e.u] += 1;
        degrees[e.v] += 1;
        self.free_count -= 1;
        Ok(())
    }

    /// Free edges at `v`, by ascending other endpoint.
    pub fn free_incident_edges(&self, v: usize) -> Vec<Edge> {
        (0..self.n)
            .filter(|&w| w != v)
            .map(|w| Edge::new(v, w))
            .filter(|&e| self.is_free(e))
            .collect()
    }

    /// First free edge at `v` by ascending other endpoint.
    pub fn first_free_incident_edge(&self, v: usize) -> Option<Edge> {
        (0..self.n)
            .filter(|&w| w != v)
            .map(|w| Edge::new(v, w))
            .find(|&e| self.is_free(e))
    }

    pub fn free_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges_with(Claim::Free)
    }

    pub fn player_edges(&self, player: Player) -> Vec<Edge> {
        self.edges_with(Claim::Owned(player)).collect()
    }

    fn edges_with(&self, claim: Claim) -> impl Iterator<Item = Edge> + '_ {
        let n = self.n;
        (0..n)
            .flat_map(move |u| (u + 1..n).map(move |v| Edge { u, v }))
            .zip(self.claims.iter())
            .filter(move |(_, &c)| c == claim)
            .map(|(e, _)| e)
    }

    /// Lowest-index free edge.
    pub fn first_free_edge(&self) -> Option<Edge> {
        self.claims
            .iter()
            .position(|&c| c == Claim::Free)
            .map(|idx| self.edge_at(idx))
    }

    /// The `rank`-th free edge in index order (0-based).
    pub fn nth_free_edge(&self, rank: usize) -> Option<Edge> {
        self.claims
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == Claim::Free)
            .nth(rank)
            .map(|(idx, _)| self.edge_at(idx))
    }

    pub fn graph_of(&self, player: Player) -> SimpleGraph {
        let mut g = SimpleGraph::new(self.n);
        for e in self.edges_with(Claim::Owned(player)) {
            g.add_edge(e.u, e.v);
        }
        g
    }

    pub fn maker_graph(&self) -> SimpleGraph {
        self.graph_of(Player::Maker)
    }

    pub fn breaker_graph(&self) -> SimpleGraph {
        self.graph_of(Player::Breaker)
    }
}

/// Writes an edge list: a `# n=<n>` header, then one `u v` pair per line in
/// ascending order.
pub fn write_edge_list(n: usize, edges: &[Edge]) -> String {
    let mut sorted = edges.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut out = format!("# n={n}\n");
    for e in sorted {
        out.push_str(&format!("{} {}\n", e.u, e.v));
    }
    out
}

/// Parses the edge-list format. Lines starting with `#` are comments, except
/// a `# n=<n>` header which fixes the vertex count; without it the count is
/// one more than the largest endpoint.
pub fn parse_edge_list(text: &str) -> Result<(usize, Vec<Edge>)> {
    let mut declared_n = None;
    let mut edges = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(value) = comment.trim().strip_prefix("n=") {
                let n = value
                    .trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
                declared_n = Some(n);
            }
            continue;
        }
        let mut parts = line.split_whitespace();
        let mut next = || -> Result<usize> {
            parts
                .next()
                .ok_or_else(|| Error::Parse(format!("line {}: expected 'u v'", lineno + 1)))?
                .parse::<usize>()
                .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))
        };
        let (x, y) = (next()?, next()?);
        if parts.next().is_some() {
            return Err(Error::Parse(format!(
                "line {}: trailing tokens after 'u v'",
                lineno + 1
            )));
        }
        if x == y {
            return Err(Error::Parse(format!("line {}: loop {x} {y}", lineno + 1)));
        }
        edges.push(Edge::new(x, y));
    }
    let max_vertex = edges.iter().map(|e| e.v + 1).max().unwrap_or(0);
    let n = match declared_n {
        Some(n) if n < max_vertex => {
            return Err(Error::Parse(format!(
                "declared n={n} but edge endpoint {} present",
                max_vertex - 1
            )))
        }
        Some(n) => n,
        None => max_vertex,
    };
    edges.sort_unstable();
    edges.dedup();
    Ok((n, edges))
}
