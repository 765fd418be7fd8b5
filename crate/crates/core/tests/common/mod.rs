//! Naive brute-force graph predicates shared by the integration tests.
#![allow(dead_code)]

use mbg_core::oracles::SimpleGraph;
use mbg_core::Edge;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub struct Naive {
    n: usize,
    adj: Vec<Vec<bool>>,
}

impl Naive {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Naive {
        let mut adj = vec![vec![false; n]; n];
        for &(x, y) in edges {
            adj[x][y] = true;
            adj[y][x] = true;
        }
        Naive { n, adj }
    }

    pub fn with(&self, x: usize, y: usize) -> Naive {
        let mut adj = self.adj.clone();
        adj[x][y] = true;
        adj[y][x] = true;
        Naive { n: self.n, adj }
    }

    // longest simple path found by DFS from every start, in vertices
    pub fn longest_path(&self) -> usize {
        let mut best = 0;
        let mut seen = vec![false; self.n];
        for s in 0..self.n {
            seen[s] = true;
            self.extend(s, 1, &mut seen, &mut best);
            seen[s] = false;
            if best == self.n {
                break;
            }
        }
        best
    }

    fn extend(&self, v: usize, len: usize, seen: &mut [bool], best: &mut usize) {
        *best = (*best).max(len);
        if *best == self.n {
            return;
        }
        for w in 0..self.n {
            if self.adj[v][w] && !seen[w] {
                seen[w] = true;
                self.extend(w, len + 1, seen, best);
                seen[w] = false;
            }
        }
    }

    pub fn hamiltonian(&self) -> bool {
        if self.n < 3 {
            return false;
        }
        let mut seen = vec![false; self.n];
        seen[0] = true;
        self.cycle_from(0, 1, &mut seen)
    }

    fn cycle_from(&self, v: usize, len: usize, seen: &mut [bool]) -> bool {
        if len == self.n {
            return self.adj[v][0];
        }
        for w in 1..self.n {
            if self.adj[v][w] && !seen[w] {
                seen[w] = true;
                if self.cycle_from(w, len + 1, seen) {
                    return true;
                }
                seen[w] = false;
            }
        }
        false
    }

    pub fn connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for w in 0..self.n {
                if self.adj[v][w] && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    pub fn boosters(&self) -> Vec<(usize, usize)> {
        let base = self.longest_path();
        let mut out = Vec::new();
        for x in 0..self.n {
            for y in x + 1..self.n {
                if self.adj[x][y] {
                    continue;
                }
                let h = self.with(x, y);
                if h.hamiltonian() || h.longest_path() > base {
                    out.push((x, y));
                }
            }
        }
        out
    }
}

pub fn random_graph(rng: &mut ChaCha8Rng) -> (usize, Vec<(usize, usize)>) {
    let n = rng.random_range(3..=10);
    let density: f64 = rng.random_range(0.15..0.85);
    let mut edges = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            if rng.random_bool(density) {
                edges.push((x, y));
            }
        }
    }
    (n, edges)
}

pub fn simple(n: usize, edges: &[(usize, usize)]) -> SimpleGraph {
    let list: Vec<Edge> = edges.iter().map(|&(x, y)| Edge::new(x, y)).collect();
    SimpleGraph::from_edges(n, &list)
}
