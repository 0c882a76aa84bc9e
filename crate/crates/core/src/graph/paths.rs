use std::ops::ControlFlow;

use super::{Graph, Path};
use crate::bits::VertexSet;

/// Visits every induced `x`–`y` path whose interior lies in `interior`,
/// in lexicographic order of vertex sequences. The visitor can stop the
/// walk early by returning `ControlFlow::Break`.
///
/// Worst case exponential in `|interior|`; callers keep it small.
pub fn for_each_induced_path<F>(g: &Graph, interior: VertexSet, x: usize, y: usize, mut visit: F)
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    if x == y {
        return;
    }
    let mut allowed = interior;
    allowed.insert(y);
    allowed.remove(x);
    let mut path = vec![x];
    let _ = extend(g, allowed, y, &mut path, VertexSet::singleton(x), &mut visit);
}

// `blocked` is the closed neighborhood of every path vertex except the
// last one (plus the path itself): no later vertex may touch it.
fn extend<F>(
    g: &Graph,
    allowed: VertexSet,
    y: usize,
    path: &mut Vec<usize>,
    blocked: VertexSet,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    if blocked.contains(y) {
        return ControlFlow::Continue(());
    }
    let last = *path.last().unwrap();
    let cands = (g.neighbors(last) & allowed) - blocked;
    let next_blocked = blocked | g.closed_neighbors(last);
    for w in cands.iter() {
        path.push(w);
        let flow = if w == y {
            visit(path)
        } else {
            extend(g, allowed, y, path, next_blocked, visit)
        };
        path.pop();
        flow?;
    }
    ControlFlow::Continue(())
}

/// All induced `x`–`y` paths with interior in `interior`.
pub fn induced_paths(g: &Graph, interior: VertexSet, x: usize, y: usize) -> Vec<Path> {
    let mut out = Vec::new();
    for_each_induced_path(g, interior, x, y, |p| {
        out.push(Path::new(p.to_vec()));
        ControlFlow::Continue(())
    });
    out
}

/// Lexicographically smallest shortest `x`–`y` path with interior in
/// `interior`.
pub fn shortest_path_within(g: &Graph, interior: VertexSet, x: usize, y: usize) -> Option<Path> {
    if x == y {
        return Some(Path::new(vec![x]));
    }
    let mut inner = interior;
    inner.remove(x);
    inner.remove(y);
    // distances to y through the interior
    let mut dist = vec![usize::MAX; g.n()];
    dist[y] = 0;
    let mut frontier = VertexSet::singleton(y);
    let mut seen = frontier;
    let mut d = 0;
    while !frontier.is_empty() {
        d += 1;
        let next = (g.neighbors_of_set(frontier) & inner) - seen;
        for v in next.iter() {
            dist[v] = d;
        }
        seen |= next;
        frontier = next;
    }
    let best = g
        .neighbors(x)
        .iter()
        .filter(|&w| w == y || inner.contains(w))
        .map(|w| dist[w])
        .min()
        .filter(|&d| d != usize::MAX)?;
    let mut verts = vec![x];
    let mut remaining = best;
    let mut cur = x;
    loop {
        let next = g
            .neighbors(cur)
            .iter()
            .find(|&w| dist[w] == remaining && (w == y || inner.contains(w)))?;
        verts.push(next);
        if next == y {
            return Some(Path::new(verts));
        }
        cur = next;
        remaining -= 1;
    }
}
