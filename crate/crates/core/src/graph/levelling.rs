//! Breadth-first levellings, colorful levels and upper paths.

use serde::{Deserialize, Serialize};

use super::{Coloring, ExactColorer, Graph, Path};
use crate::bits::VertexSet;
use crate::error::{Error, Result};

/// Partition of the root's component by distance to the root:
/// `levels[k]` holds the vertices at distance exactly `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Levelling {
    root: usize,
    levels: Vec<VertexSet>,
}

impl Levelling {
    pub fn new(g: &Graph, root: usize) -> Result<Self> {
        Self::within(g, g.vertices(), root)
    }

    /// Levelling of `G[domain]` from `root`.
    pub fn within(g: &Graph, domain: VertexSet, root: usize) -> Result<Self> {
        g.check_vertex(root)?;
        if !domain.contains(root) {
            return Err(Error::ViolatedPrecondition(format!("root {root} outside domain")));
        }
        let mut seen = VertexSet::singleton(root);
        let mut levels = vec![seen];
        loop {
            let next = (g.neighbors_of_set(*levels.last().unwrap()) & domain) - seen;
            if next.is_empty() {
                break;
            }
            seen |= next;
            levels.push(next);
        }
        Ok(Self { root, levels })
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn levels(&self) -> &[VertexSet] {
        &self.levels
    }

    /// Number of nonempty levels.
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// `N_k`, empty past the last level.
    pub fn level(&self, k: usize) -> VertexSet {
        self.levels.get(k).copied().unwrap_or_default()
    }

    pub fn level_of(&self, v: usize) -> Option<usize> {
        self.levels.iter().position(|l| l.contains(v))
    }

    /// `N_0 ∪ … ∪ N_{k-1}`.
    pub fn below(&self, k: usize) -> VertexSet {
        self.levels
            .iter()
            .take(k)
            .fold(VertexSet::new(), |acc, l| acc | *l)
    }

    /// The vertex set covered, i.e. the root's component.
    pub fn component(&self) -> VertexSet {
        self.below(self.levels.len())
    }

    /// Root-to-`v` path with exactly one vertex per level, taking the
    /// smallest parent at every step.
    pub fn descending_path(&self, g: &Graph, v: usize) -> Result<Path> {
        let k = self
            .level_of(v)
            .ok_or_else(|| Error::ViolatedPrecondition(format!("{v} not levelled")))?;
        let mut verts = vec![v];
        let mut cur = v;
        for j in (0..k).rev() {
            cur = (g.neighbors(cur) & self.levels[j])
                .first()
                .ok_or_else(|| Error::InternalConsistency(format!("{cur} has no parent")))?;
            verts.push(cur);
        }
        verts.reverse();
        Ok(Path::new(verts))
    }

    /// Smallest neighbor of `v` one level up.
    pub fn parent(&self, g: &Graph, v: usize) -> Option<usize> {
        let k = self.level_of(v)?;
        if k == 0 {
            return None;
        }
        (g.neighbors(v) & self.levels[k - 1]).first()
    }
}

pub fn bfs_levelling(g: &Graph, v: usize) -> Result<Levelling> {
    Levelling::new(g, v)
}

/// Smallest `k` with `2·χ(N_k) ≥ χ(component)`.
pub fn colorful_level(g: &Graph, lv: &Levelling) -> Result<usize> {
    colorful_level_with(&ExactColorer::default(), g, lv).map(|(k, _)| k)
}

/// Colorful level together with the chromatic number of the component.
pub(crate) fn colorful_level_with(
    colorer: &ExactColorer,
    g: &Graph,
    lv: &Levelling,
) -> Result<(usize, usize)> {
    let total = colorer.chromatic_number(g, lv.component())?;
    for (k, level) in lv.levels().iter().enumerate() {
        if 2 * colorer.chromatic_number(g, *level)? >= total {
            return Ok((k, total));
        }
    }
    Err(Error::InternalConsistency(
        "no level reaches half the chromatic number".into(),
    ))
}

/// The `2t`-coloring that colors odd levels from `0..t` and even levels
/// from `t..2t`, `t` being the largest level chromatic number.
pub fn alternating_coloring(g: &Graph, lv: &Levelling) -> Result<Coloring> {
    let colorer = ExactColorer::default();
    let per_level = lv
        .levels()
        .iter()
        .map(|l| colorer.color(g, *l))
        .collect::<Result<Vec<_>>>()?;
    let t = per_level.iter().map(Coloring::num_colors).max().unwrap_or(0);
    let mut colors = vec![None; g.n()];
    for (k, (level, col)) in lv.levels().iter().zip(&per_level).enumerate() {
        let offset = if k % 2 == 1 { 0 } else { t };
        for v in level.iter() {
            colors[v] = col.color_of(v).map(|c| c + offset);
        }
    }
    Ok(Coloring::new(colors, 2 * t))
}

/// Shortest `x`–`y` path whose interior lies in `N_0 ∪ … ∪ N_{k-1}`, for
/// `x`, `y` in the same level `N_k`. Lexicographically smallest among the
/// shortest ones. Such a path is always induced.
pub fn upper_path(g: &Graph, lv: &Levelling, x: usize, y: usize) -> Result<Path> {
    let k = lv
        .level_of(x)
        .ok_or_else(|| Error::ViolatedPrecondition(format!("{x} not levelled")))?;
    if lv.level_of(y) != Some(k) || x == y || k == 0 {
        return Err(Error::ViolatedPrecondition(format!(
            "upper path needs distinct {x}, {y} in one level k >= 1"
        )));
    }
    super::shortest_path_within(g, lv.below(k), x, y).ok_or_else(|| {
        Error::InternalConsistency(format!("no upper path between {x} and {y}"))
    })
}
