//! Simple undirected graphs with bit-row adjacency, and the set/path
//! utilities everything else in the crate is built from.

mod coloring;
pub mod io;
mod levelling;
pub mod named;
mod paths;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use coloring::{chromatic_number, optimal_coloring, Coloring, ExactColorer, DEFAULT_COLORING_CAP};
pub use levelling::{alternating_coloring, bfs_levelling, colorful_level, upper_path, Levelling};
pub(crate) use levelling::colorful_level_with;
pub use paths::{for_each_induced_path, induced_paths, shortest_path_within};

use crate::bits::{VertexSet, MAX_VERTICES};
use crate::error::{Error, Result};

/// Simple undirected graph on vertices `0..n`.
///
/// Row `i` of the adjacency holds the neighbors of `i`. Rows are kept
/// symmetric and irreflexive by construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    ///
    /// Panics if `n` exceeds [`MAX_VERTICES`]; use [`Graph::try_new`] for
    /// untrusted sizes.
    pub fn new(n: usize) -> Self {
        Self::try_new(n).expect("vertex count within bounds")
    }

    pub fn try_new(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        Ok(Self {
            n,
            adj: vec![VertexSet::new(); n],
        })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::new(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Every vertex, `{0, .., n-1}`.
    #[inline]
    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Adds the edge `uv`. Panics on loops or out-of-range endpoints.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.try_add_edge(u, v).expect("valid edge");
    }

    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::ViolatedPrecondition(format!("self-loop at {u}")));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.adj[u].remove(v);
        self.adj[v].remove(u);
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> VertexSet {
        self.adj[v]
    }

    /// Closed neighborhood `N[v]`.
    #[inline]
    pub fn closed_neighbors(&self, v: usize) -> VertexSet {
        let mut s = self.adj[v];
        s.insert(v);
        s
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.adj[u].above(u).iter().map(move |v| (u, v)))
    }

    /// Edges of the subgraph induced by `sub`, lexicographic.
    pub fn edges_within(&self, sub: VertexSet) -> impl Iterator<Item = (usize, usize)> + '_ {
        sub.iter()
            .flat_map(move |u| (self.adj[u] & sub).above(u).iter().map(move |v| (u, v)))
    }

    /// The graph with vertex `v` renamed `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        Graph::from_edges(self.n, self.edges().map(|(u, v)| (perm[u], perm[v])))
    }

    /// Induced subgraph on `sub`, relabelled to `0..|sub|` in ascending
    /// order. Also returns the original name of each new vertex.
    pub fn induced_subgraph(&self, sub: VertexSet) -> (Graph, Vec<usize>) {
        let names = sub.to_vec();
        let mut index = vec![usize::MAX; self.n];
        for (i, &v) in names.iter().enumerate() {
            index[v] = i;
        }
        let g = Graph::from_edges(
            names.len(),
            self.edges_within(sub).map(|(u, v)| (index[u], index[v])),
        );
        (g, names)
    }

    /// `N(S)`: every vertex with a neighbor in `s`. May intersect `s`.
    pub fn neighbors_of_set(&self, s: VertexSet) -> VertexSet {
        s.iter().fold(VertexSet::new(), |acc, v| acc | self.adj[v])
    }

    pub fn is_stable(&self, s: VertexSet) -> bool {
        s.iter().all(|v| !self.adj[v].intersects(&s))
    }

    /// Consecutive vertices adjacent and all vertices distinct.
    pub fn is_path(&self, verts: &[usize]) -> bool {
        if verts.is_empty() || verts.iter().any(|&v| v >= self.n) {
            return false;
        }
        let set: VertexSet = verts.iter().collect();
        set.len() == verts.len() && verts.windows(2).all(|w| self.has_edge(w[0], w[1]))
    }

    /// A path with no chord: non-consecutive vertices are non-adjacent.
    pub fn is_induced_path(&self, verts: &[usize]) -> bool {
        if !self.is_path(verts) {
            return false;
        }
        verts.iter().enumerate().all(|(i, &v)| {
            verts[i + 1..]
                .iter()
                .skip(1)
                .all(|&w| !self.has_edge(v, w))
        })
    }

    /// Connected components of the subgraph induced by `sub`, ordered by
    /// smallest vertex.
    pub fn components(&self, sub: VertexSet) -> Vec<VertexSet> {
        let mut rest = sub;
        let mut out = Vec::new();
        while let Some(start) = rest.first() {
            let comp = self.component_of(sub, start);
            rest -= comp;
            out.push(comp);
        }
        out
    }

    /// The component of `start` inside `sub`.
    pub fn component_of(&self, sub: VertexSet, start: usize) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let next = self.neighbors_of_set(frontier) & sub;
            frontier = next - seen;
            seen |= frontier;
        }
        seen
    }

    pub fn is_connected(&self, sub: VertexSet) -> bool {
        match sub.first() {
            None => true,
            Some(v) => self.component_of(sub, v) == sub,
        }
    }

    /// A component `C` of `sub` with `χ(C) = χ(sub)`; ties go to the
    /// component with the smallest minimum vertex.
    pub fn major_component(&self, sub: VertexSet) -> Result<VertexSet> {
        self.major_component_with(&ExactColorer::default(), sub)
    }

    pub fn major_component_with(&self, colorer: &ExactColorer, sub: VertexSet) -> Result<VertexSet> {
        let mut best: Option<(usize, VertexSet)> = None;
        for comp in self.components(sub) {
            let chi = colorer.chromatic_number(self, comp)?;
            if best.as_ref().map_or(true, |(b, _)| chi > *b) {
                best = Some((chi, comp));
            }
        }
        Ok(best.map(|(_, c)| c).unwrap_or_default())
    }

    /// Inclusion-maximal stable subsets of `sub`.
    pub fn maximal_stable_sets(&self, sub: VertexSet) -> Vec<VertexSet> {
        let mut out = Vec::new();
        self.bron_kerbosch_stable(VertexSet::new(), sub, VertexSet::new(), sub, &mut out);
        out.sort();
        out
    }

    // Bron–Kerbosch with pivoting on the complement of G[sub].
    fn bron_kerbosch_stable(
        &self,
        r: VertexSet,
        p: VertexSet,
        x: VertexSet,
        sub: VertexSet,
        out: &mut Vec<VertexSet>,
    ) {
        if p.is_empty() {
            if x.is_empty() {
                out.push(r);
            }
            return;
        }
        let non_nbrs = |v: usize| sub - self.closed_neighbors(v);
        let pivot = (p | x)
            .iter()
            .max_by_key(|&u| (non_nbrs(u) & p).len())
            .expect("p nonempty");
        let mut p = p;
        let mut x = x;
        for v in (p - non_nbrs(pivot)).iter() {
            let mut r2 = r;
            r2.insert(v);
            self.bron_kerbosch_stable(r2, p & non_nbrs(v), x & non_nbrs(v), sub, out);
            p.remove(v);
            x.insert(v);
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=", self.n)?;
        f.debug_list().entries(self.edges()).finish()?;
        write!(f, ")")
    }
}

/// Free-function spelling of [`Graph::components`].
pub fn components(g: &Graph, sub: VertexSet) -> Vec<VertexSet> {
    g.components(sub)
}

pub fn neighbors_of_set(g: &Graph, s: VertexSet) -> VertexSet {
    g.neighbors_of_set(s)
}

pub fn is_stable(g: &Graph, s: VertexSet) -> bool {
    g.is_stable(s)
}

pub fn is_induced_path(g: &Graph, verts: &[usize]) -> bool {
    g.is_induced_path(verts)
}

pub fn major_component(g: &Graph, sub: VertexSet) -> Result<VertexSet> {
    g.major_component(sub)
}

/// An ordered sequence of distinct vertices. Its length counts edges.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Path {
    verts: Vec<usize>,
}

impl Path {
    pub fn new(verts: Vec<usize>) -> Self {
        Self { verts }
    }

    pub fn verts(&self) -> &[usize] {
        &self.verts
    }

    pub fn into_verts(self) -> Vec<usize> {
        self.verts
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.verts.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn is_odd(&self) -> bool {
        self.len() % 2 == 1
    }

    pub fn origin(&self) -> Option<usize> {
        self.verts.first().copied()
    }

    pub fn end(&self) -> Option<usize> {
        self.verts.last().copied()
    }

    pub fn interior(&self) -> &[usize] {
        if self.verts.len() <= 2 {
            &[]
        } else {
            &self.verts[1..self.verts.len() - 1]
        }
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.verts.iter().collect()
    }

    pub fn reversed(&self) -> Path {
        let mut v = self.verts.clone();
        v.reverse();
        Path::new(v)
    }

    /// Appends `tail`, whose origin must equal this path's end.
    pub fn join(&self, tail: &Path) -> Path {
        assert_eq!(self.end(), tail.origin(), "paths do not meet");
        let mut v = self.verts.clone();
        v.extend_from_slice(&tail.verts[1..]);
        Path::new(v)
    }

    pub fn push(&mut self, v: usize) {
        self.verts.push(v);
    }
}

impl From<Vec<usize>> for Path {
    fn from(verts: Vec<usize>) -> Self {
        Path::new(verts)
    }
}
