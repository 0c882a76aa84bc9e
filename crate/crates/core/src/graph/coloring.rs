//! Exact chromatic number.
//!
//! Iterative deepening on the number of colors: a greedy clique gives the
//! lower bound, a DSATUR greedy pass gives the upper bound and a
//! DSATUR-ordered backtracking search decides each `k` in between. The
//! search runs on a compacted copy of the induced subgraph with one `u64`
//! row per vertex, which is why the cap can never exceed 64.

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::bits::VertexSet;
use crate::error::{Error, Result};

pub const DEFAULT_COLORING_CAP: usize = 40;

/// A proper coloring of some vertex subset. `colors[v]` is `None` for
/// vertices outside the colored set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    colors: Vec<Option<usize>>,
    k: usize,
}

impl Coloring {
    pub fn new(colors: Vec<Option<usize>>, k: usize) -> Self {
        Self { colors, k }
    }

    pub fn num_colors(&self) -> usize {
        self.k
    }

    pub fn color_of(&self, v: usize) -> Option<usize> {
        self.colors.get(v).copied().flatten()
    }

    pub fn colored(&self) -> VertexSet {
        self.colors
            .iter()
            .enumerate()
            .filter_map(|(v, c)| c.map(|_| v))
            .collect()
    }

    /// The color classes, indexed by color. Some may be empty.
    pub fn classes(&self) -> Vec<VertexSet> {
        let mut out = vec![VertexSet::new(); self.k];
        for (v, c) in self.colors.iter().enumerate() {
            if let Some(c) = c {
                out[*c].insert(v);
            }
        }
        out
    }

    pub fn is_proper(&self, g: &Graph) -> bool {
        g.edges().all(|(u, v)| match (self.color_of(u), self.color_of(v)) {
            (Some(a), Some(b)) => a != b,
            _ => true,
        }) && self.colors.iter().flatten().all(|&c| c < self.k)
    }
}

/// Exact coloring with a vertex cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactColorer {
    cap: usize,
}

impl Default for ExactColorer {
    fn default() -> Self {
        Self { cap: DEFAULT_COLORING_CAP }
    }
}

impl ExactColorer {
    /// A solver accepting sets up to `cap` vertices (at most 64).
    pub fn with_cap(cap: usize) -> Self {
        Self { cap: cap.min(64) }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn chromatic_number(&self, g: &Graph, sub: VertexSet) -> Result<usize> {
        Ok(self.color(g, sub)?.num_colors())
    }

    /// An optimal coloring of `G[sub]`.
    pub fn color(&self, g: &Graph, sub: VertexSet) -> Result<Coloring> {
        let size = sub.len();
        if size > self.cap {
            return Err(Error::SizeLimit { size, cap: self.cap });
        }
        let local = Local::new(g, sub);
        let colors = local.solve();
        let k = colors.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
        let mut out = vec![None; g.n()];
        for (i, &v) in local.names.iter().enumerate() {
            out[v] = Some(colors[i] as usize);
        }
        Ok(Coloring::new(out, k))
    }
}

/// `χ(G[sub])` with the default cap; `χ(∅) = 0`.
pub fn chromatic_number(g: &Graph, sub: VertexSet) -> Result<usize> {
    ExactColorer::default().chromatic_number(g, sub)
}

pub fn optimal_coloring(g: &Graph, sub: VertexSet) -> Result<Coloring> {
    ExactColorer::default().color(g, sub)
}

struct Local {
    names: Vec<usize>,
    adj: Vec<u64>,
}

impl Local {
    fn new(g: &Graph, sub: VertexSet) -> Self {
        let names = sub.to_vec();
        let mut index = vec![usize::MAX; g.n()];
        for (i, &v) in names.iter().enumerate() {
            index[v] = i;
        }
        let adj = names
            .iter()
            .map(|&v| {
                (g.neighbors(v) & sub)
                    .iter()
                    .fold(0u64, |acc, w| acc | 1 << index[w])
            })
            .collect();
        Self { names, adj }
    }

    fn m(&self) -> usize {
        self.names.len()
    }

    fn solve(&self) -> Vec<u8> {
        let m = self.m();
        if m == 0 {
            return Vec::new();
        }
        let (ub, greedy) = self.dsatur_greedy();
        let lb = self.greedy_clique();
        for k in lb..ub {
            if let Some(c) = self.k_color(k) {
                return c;
            }
        }
        greedy
    }

    fn greedy_clique(&self) -> usize {
        let m = self.m();
        let mut best = 1;
        for seed in 0..m {
            let mut clique = 1u64 << seed;
            let mut cand = self.adj[seed];
            while cand != 0 {
                // take the candidate with most neighbors among candidates
                let mut pick = usize::MAX;
                let mut pick_deg = 0;
                let mut c = cand;
                while c != 0 {
                    let v = c.trailing_zeros() as usize;
                    c &= c - 1;
                    let d = (self.adj[v] & cand).count_ones() as usize + 1;
                    if pick == usize::MAX || d > pick_deg {
                        pick = v;
                        pick_deg = d;
                    }
                }
                clique |= 1 << pick;
                cand &= self.adj[pick];
            }
            best = best.max(clique.count_ones() as usize);
        }
        best
    }

    fn dsatur_greedy(&self) -> (usize, Vec<u8>) {
        let m = self.m();
        let mut color = vec![u8::MAX; m];
        let mut classes: Vec<u64> = Vec::new();
        let mut uncolored: u64 = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
        while uncolored != 0 {
            let v = self.pick(uncolored, &classes);
            let c = (0..classes.len())
                .find(|&c| classes[c] & self.adj[v] == 0)
                .unwrap_or(classes.len());
            if c == classes.len() {
                classes.push(0);
            }
            classes[c] |= 1 << v;
            color[v] = c as u8;
            uncolored &= !(1 << v);
        }
        (classes.len(), color)
    }

    /// Max saturation, then max degree into the uncolored part, then
    /// smallest index.
    fn pick(&self, uncolored: u64, classes: &[u64]) -> usize {
        let mut best = usize::MAX;
        let mut key = (0usize, 0usize);
        let mut u = uncolored;
        while u != 0 {
            let v = u.trailing_zeros() as usize;
            u &= u - 1;
            let sat = classes.iter().filter(|&&c| c & self.adj[v] != 0).count();
            let deg = (self.adj[v] & uncolored).count_ones() as usize;
            if best == usize::MAX || (sat, deg) > key {
                best = v;
                key = (sat, deg);
            }
        }
        best
    }

    fn k_color(&self, k: usize) -> Option<Vec<u8>> {
        let m = self.m();
        let uncolored: u64 = if m == 64 { u64::MAX } else { (1u64 << m) - 1 };
        let mut classes = vec![0u64; k];
        if self.backtrack(k, uncolored, 0, &mut classes) {
            let mut color = vec![0u8; m];
            for (c, &mask) in classes.iter().enumerate() {
                let mut s = mask;
                while s != 0 {
                    let v = s.trailing_zeros() as usize;
                    s &= s - 1;
                    color[v] = c as u8;
                }
            }
            Some(color)
        } else {
            None
        }
    }

    fn backtrack(&self, k: usize, uncolored: u64, used: usize, classes: &mut [u64]) -> bool {
        if uncolored == 0 {
            return true;
        }
        let v = self.pick(uncolored, &classes[..used]);
        // a fresh color is interchangeable with any other fresh color
        let limit = (used + 1).min(k);
        for c in 0..limit {
            if classes[c] & self.adj[v] != 0 {
                continue;
            }
            classes[c] |= 1 << v;
            let next_used = if c == used { used + 1 } else { used };
            if self.backtrack(k, uncolored & !(1 << v), next_used, classes) {
                return true;
            }
            classes[c] &= !(1 << v);
        }
        false
    }
}
