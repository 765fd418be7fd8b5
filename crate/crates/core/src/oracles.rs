//! Exact graph-property oracles.
//!
//! Hamiltonicity and longest paths use subset dynamic programming over
//! bitmask states, so both carry hard size caps (see [`OracleCaps`]).

use rand::Rng;

use crate::board::Edge;
use crate::error::{Error, Result};

/// Undirected simple graph on vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    neighbors: Vec<Vec<usize>>,
    edge_count: usize,
}

impl SimpleGraph {
    pub fn new(n: usize) -> SimpleGraph {
        SimpleGraph {
            n,
            neighbors: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn from_edges(n: usize, edges: &[Edge]) -> SimpleGraph {
        let mut g = SimpleGraph::new(n);
        for e in edges {
            g.add_edge(e.u, e.v);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Adds `{x, y}`; returns false if it was already present. Panics on loops
    /// and out-of-range vertices.
    pub fn add_edge(&mut self, x: usize, y: usize) -> bool {
        assert!(x != y, "loop at {x}");
        assert!(x < self.n && y < self.n, "vertex out of range");
        match self.neighbors[x].binary_search(&y) {
            Ok(_) => false,
            Err(pos) => {
                self.neighbors[x].insert(pos, y);
                let pos = self.neighbors[y].binary_search(&x).unwrap_err();
                self.neighbors[y].insert(pos, x);
                self.edge_count += 1;
                true
            }
        }
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.neighbors[x].binary_search(&y).is_ok()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.edge_count);
        for u in 0..self.n {
            for &v in &self.neighbors[u] {
                if u < v {
                    out.push(Edge { u, v });
                }
            }
        }
        out
    }

    /// Pairs `u < v` that are not edges.
    pub fn non_edges(&self) -> Vec<Edge> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    out.push(Edge { u, v });
                }
            }
        }
        out
    }

    pub fn with_edge(&self, e: Edge) -> SimpleGraph {
        let mut g = self.clone();
        g.add_edge(e.u, e.v);
        g
    }

    fn adjacency_masks(&self) -> Vec<u32> {
        debug_assert!(self.n <= 32);
        self.neighbors
            .iter()
            .map(|ns| ns.iter().fold(0u32, |m, &w| m | (1 << w)))
            .collect()
    }

    pub fn cycle(n: usize) -> SimpleGraph {
        let mut g = SimpleGraph::new(n);
        for v in 0..n {
            g.add_edge(v, (v + 1) % n);
        }
        g
    }

    pub fn path(n: usize) -> SimpleGraph {
        let mut g = SimpleGraph::new(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    pub fn complete(n: usize) -> SimpleGraph {
        let mut g = SimpleGraph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn star(n: usize) -> SimpleGraph {
        let mut g = SimpleGraph::new(n);
        for v in 1..n {
            g.add_edge(0, v);
        }
        g
    }

    pub fn petersen() -> SimpleGraph {
        let mut g = SimpleGraph::new(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5);
            g.add_edge(i, i + 5);
            g.add_edge(5 + i, 5 + (i + 2) % 5);
        }
        g
    }
}

/// Size limits for the exponential oracles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleCaps {
    pub hamiltonian_max_n: usize,
    pub longest_path_max_n: usize,
    pub expander_max_subsets: u64,
}

impl Default for OracleCaps {
    fn default() -> Self {
        OracleCaps {
            hamiltonian_max_n: 24,
            longest_path_max_n: 20,
            expander_max_subsets: 10_000_000,
        }
    }
}

pub fn min_degree(g: &SimpleGraph) -> usize {
    (0..g.n()).map(|v| g.degree(v)).min().unwrap_or(0)
}

pub fn components(g: &SimpleGraph) -> Vec<Vec<usize>> {
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    for root in 0..g.n() {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut comp = vec![root];
        let mut head = 0;
        while head < comp.len() {
            let v = comp[head];
            head += 1;
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub fn is_connected(g: &SimpleGraph) -> bool {
    g.n() == 0 || components(g).len() == 1
}

pub fn is_hamiltonian(g: &SimpleGraph) -> Result<bool> {
    is_hamiltonian_with(g, &OracleCaps::default())
}

pub fn is_hamiltonian_with(g: &SimpleGraph, caps: &OracleCaps) -> Result<bool> {
    let n = g.n();
    if n > caps.hamiltonian_max_n || n > 32 {
        return Err(Error::TooLarge(format!(
            "Hamiltonicity check limited to n <= {}, got {n}",
            caps.hamiltonian_max_n.min(32)
        )));
    }
    if n <= 2 {
        return Ok(false);
    }
    if min_degree(g) < 2 || !is_connected(g) {
        return Ok(false);
    }
    let adj = g.adjacency_masks();
    // Paths start at vertex 0; states range over subsets of 1..n, stored as
    // (n-1)-bit masks with vertex v at bit v-1.
    let m = n - 1;
    let shifted: Vec<u32> = (1..n).map(|v| adj[v] >> 1).collect();
    let from_root = adj[0] >> 1;
    let full = (1u32 << m) - 1;
    let mut ends = vec![0u32; 1 << m];
    for s in 1..=full {
        let mut bits = s;
        let mut reach = 0u32;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let rest = s & !(1 << i);
            let ok = if rest == 0 {
                from_root & (1 << i) != 0
            } else {
                ends[rest as usize] & shifted[i] != 0
            };
            if ok {
                reach |= 1 << i;
            }
        }
        ends[s as usize] = reach;
    }
    Ok(ends[full as usize] & from_root != 0)
}

/// `table[S]` holds the set of vertices at which some path covering exactly
/// the vertex set `S` ends.
fn path_end_table(adj: &[u32]) -> Vec<u32> {
    let n = adj.len();
    let mut table = vec![0u32; 1usize << n];
    for s in 1u32..(1u32 << n) {
        if s.count_ones() == 1 {
            table[s as usize] = s;
            continue;
        }
        let mut bits = s;
        let mut reach = 0u32;
        while bits != 0 {
            let v = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if table[(s & !(1 << v)) as usize] & adj[v] != 0 {
                reach |= 1 << v;
            }
        }
        table[s as usize] = reach;
    }
    table
}

fn check_path_cap(n: usize, caps: &OracleCaps) -> Result<()> {
    if n > caps.longest_path_max_n || n > 30 {
        return Err(Error::TooLarge(format!(
            "longest-path search limited to n <= {}, got {n}",
            caps.longest_path_max_n.min(30)
        )));
    }
    Ok(())
}

/// Number of vertices on a longest path.
pub fn longest_path_order(g: &SimpleGraph) -> Result<usize> {
    longest_path_order_with(g, &OracleCaps::default())
}

pub fn longest_path_order_with(g: &SimpleGraph, caps: &OracleCaps) -> Result<usize> {
    check_path_cap(g.n(), caps)?;
    if g.n() == 0 {
        return Ok(0);
    }
    let table = path_end_table(&g.adjacency_masks());
    Ok(max_path_order(&table))
}

fn max_path_order(table: &[u32]) -> usize {
    table
        .iter()
        .enumerate()
        .filter(|(_, &ends)| ends != 0)
        .map(|(s, _)| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// `N_G(U)`: vertices outside `U` with a neighbour in `U`, ascending.
pub fn external_neighborhood(g: &SimpleGraph, set: &[usize]) -> Vec<usize> {
    let mut inside = vec![false; g.n()];
    for &u in set {
        inside[u] = true;
    }
    let mut hit = vec![false; g.n()];
    for &u in set {
        for &w in g.neighbors(u) {
            if !inside[w] {
                hit[w] = true;
            }
        }
    }
    (0..g.n()).filter(|&v| hit[v]).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpanderCheck {
    pub holds: bool,
    /// A set `U` with `|N(U)| < 2|U|`, when one was found.
    pub witness: Option<Vec<usize>>,
    /// False when the answer comes from sampling and "holds" only means no
    /// violation was found.
    pub exhaustive: bool,
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

fn violates(g: &SimpleGraph, set: &[usize]) -> bool {
    external_neighborhood(g, set).len() < 2 * set.len()
}

/// Exhaustive (k,2)-expansion check over all `U` with `1 <= |U| <= k`.
pub fn is_k_expander(g: &SimpleGraph, k: usize) -> Result<ExpanderCheck> {
    is_k_expander_with(g, k, &OracleCaps::default())
}

pub fn is_k_expander_with(g: &SimpleGraph, k: usize, caps: &OracleCaps) -> Result<ExpanderCheck> {
    let n = g.n();
    let k = k.min(n);
    let total: u64 = (1..=k as u64).map(|i| binomial(n as u64, i)).fold(0, u64::saturating_add);
    if total > caps.expander_max_subsets {
        return Err(Error::TooLarge(format!(
            "{total} subsets exceed the exhaustive expansion cap of {}",
            caps.expander_max_subsets
        )));
    }
    for size in 1..=k {
        let mut combo: Vec<usize> = (0..size).collect();
        loop {
            if violates(g, &combo) {
                return Ok(ExpanderCheck {
                    holds: false,
                    witness: Some(combo),
                    exhaustive: true,
                });
            }
            // next combination in lexicographic order
            let mut i = size;
            while i > 0 && combo[i - 1] == n - size + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            combo[i - 1] += 1;
            for j in i..size {
                combo[j] = combo[j - 1] + 1;
            }
        }
    }
    Ok(ExpanderCheck {
        holds: true,
        witness: None,
        exhaustive: true,
    })
}

/// One-sided expansion check on `samples` random sets of size `1..=k`.
pub fn sample_k_expander<R: Rng + ?Sized>(
    g: &SimpleGraph,
    k: usize,
    samples: usize,
    rng: &mut R,
) -> ExpanderCheck {
    let n = g.n();
    let k = k.min(n);
    let mut pool: Vec<usize> = (0..n).collect();
    for _ in 0..samples {
        if k == 0 {
            break;
        }
        let size = rng.random_range(1..=k);
        for i in 0..size {
            let j = rng.random_range(i..n);
            pool.swap(i, j);
        }
        let mut set = pool[..size].to_vec();
        set.sort_unstable();
        if violates(g, &set) {
            return ExpanderCheck {
                holds: false,
                witness: Some(set),
                exhaustive: false,
            };
        }
    }
    ExpanderCheck {
        holds: true,
        witness: None,
        exhaustive: false,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Boosters {
    /// Boosting non-edges in ascending order.
    pub edges: Vec<Edge>,
    /// Set when the input is already Hamiltonian; `edges` is then empty.
    pub already_hamiltonian: bool,
}

/// Non-edges whose addition makes `g` Hamiltonian or lengthens its longest
/// path.
pub fn boosters(g: &SimpleGraph) -> Result<Boosters> {
    boosters_with(g, &OracleCaps::default())
}

pub fn boosters_with(g: &SimpleGraph, caps: &OracleCaps) -> Result<Boosters> {
    let n = g.n();
    check_path_cap(n, caps)?;
    if !is_connected(g) {
        return Err(Error::NotConnected);
    }
    if is_hamiltonian_with(g, caps)? {
        return Ok(Boosters {
            edges: Vec::new(),
            already_hamiltonian: true,
        });
    }
    let adj = g.adjacency_masks();
    let table = path_end_table(&adj);
    let longest = max_path_order(&table);
    let full = (1u32 << n) - 1;
    let mut found = vec![false; n * n];

    if longest == n {
        // G has a Hamiltonian path but no cycle: only a non-edge joining the
        // two ends of some Hamiltonian path helps, and it closes a cycle.
        let mut ends = vec![0u32; 1 << n];
        for x in 0..n {
            ends.iter_mut().for_each(|m| *m = 0);
            ends[1 << x] = 1 << x;
            for s in 1u32..=full {
                if s & (1 << x) == 0 || s == 1 << x {
                    continue;
                }
                let mut bits = s & !(1 << x);
                let mut reach = 0u32;
                while bits != 0 {
                    let v = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    if ends[(s & !(1 << v)) as usize] & adj[v] != 0 {
                        reach |= 1 << v;
                    }
                }
                ends[s as usize] = reach;
            }
            let mut tips = ends[full as usize];
            while tips != 0 {
                let y = tips.trailing_zeros() as usize;
                tips &= tips - 1;
                if !g.has_edge(x, y) {
                    found[x * n + y] = true;
                    found[y * n + x] = true;
                }
            }
        }
    } else {
        // A longer path in G+xy must use xy: a path ending at x on S1, then a
        // path starting at y on a disjoint S2. `best[T]` is the largest |S2|
        // with S2 ⊆ T and y an end of a path covering S2.
        let mut best = vec![0u8; 1 << n];
        for y in 0..n {
            for (s, slot) in best.iter_mut().enumerate() {
                *slot = if table[s] & (1 << y) != 0 {
                    (s as u32).count_ones() as u8
                } else {
                    0
                };
            }
            for bit in 0..n {
                for t in 0..(1usize << n) {
                    if t & (1 << bit) != 0 {
                        let sub = best[t ^ (1 << bit)];
                        if sub > best[t] {
                            best[t] = sub;
                        }
                    }
                }
            }
            for x in 0..n {
                if x == y || g.has_edge(x, y) || found[x * n + y] {
                    continue;
                }
                let longer = (1u32..=full).any(|s| {
                    table[s as usize] & (1 << x) != 0
                        && s & (1 << y) == 0
                        && s.count_ones() as usize + best[(full & !s) as usize] as usize > longest
                });
                if longer {
                    found[x * n + y] = true;
                    found[y * n + x] = true;
                }
            }
        }
    }

    let edges = g
        .non_edges()
        .into_iter()
        .filter(|e| found[e.u * n + e.v])
        .collect();
    Ok(Boosters {
        edges,
        already_hamiltonian: false,
    })
}
