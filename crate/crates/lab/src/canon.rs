//! Canonical labelling and isomorph-free enumeration of small graphs.
//!
//! The canonical form is the labelling, among the leaves of an
//! individualization-refinement tree, whose upper-triangle bit string (in
//! graph6 order) is largest. Twins are individualized only once per node.
//! Enumeration grows graphs one vertex at a time and keeps a vertex of
//! minimum degree as the last one added, which reaches every isomorphism
//! class of a hereditary family.

use std::collections::HashSet;

use pcp_core::detection::{class_membership, find_triangle};
use pcp_core::{ClassId, Graph};

/// Largest order handled by the canonical labelling.
pub const MAX_CANON: usize = 16;

/// Hereditary families the enumerator can restrict to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    All,
    TriangleFree,
    Class(ClassId),
}

impl Family {
    fn needs_stable_extension(self) -> bool {
        !matches!(self, Family::All)
    }

    fn accepts(self, g: &Graph) -> bool {
        match self {
            Family::All => true,
            Family::TriangleFree => find_triangle(g, g.vertices()).is_none(),
            Family::Class(c) => class_membership(g, c).is_member(),
        }
    }
}

type Rows = [u16; MAX_CANON];

fn rows_of(g: &Graph) -> Rows {
    assert!(g.n() <= MAX_CANON, "canonical form is limited to {MAX_CANON} vertices");
    let mut rows = [0u16; MAX_CANON];
    for (u, v) in g.edges() {
        rows[u] |= 1 << v;
        rows[v] |= 1 << u;
    }
    rows
}

fn bits(mut m: u16) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

/// Splits cells by neighbor counts into other cells until the ordered
/// partition is equitable.
fn refine(rows: &Rows, cells: &mut Vec<u16>) {
    'again: loop {
        for s in 0..cells.len() {
            let splitter = cells[s];
            for c in 0..cells.len() {
                let cell = cells[c];
                if cell.count_ones() == 1 {
                    continue;
                }
                let mut groups = [0u16; MAX_CANON + 1];
                for v in bits(cell) {
                    groups[(rows[v] & splitter).count_ones() as usize] |= 1 << v;
                }
                if groups.iter().filter(|&&m| m != 0).count() > 1 {
                    let parts: Vec<u16> = groups.iter().copied().filter(|&m| m != 0).collect();
                    cells.splice(c..=c, parts);
                    continue 'again;
                }
            }
        }
        return;
    }
}

fn leaf_key(rows: &Rows, n: usize, cells: &[u16]) -> u128 {
    let order: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
    let mut key = 0u128;
    for j in 1..n {
        for i in 0..j {
            key = key << 1 | u128::from(rows[order[i]] >> order[j] & 1);
        }
    }
    key
}

fn search(rows: &Rows, n: usize, mut cells: Vec<u16>, best: &mut Option<u128>) {
    refine(rows, &mut cells);
    let Some(t) = cells.iter().position(|c| c.count_ones() > 1) else {
        let key = leaf_key(rows, n, &cells);
        if best.map_or(true, |b| key > b) {
            *best = Some(key);
        }
        return;
    };
    let cell = cells[t];
    let mut tried = 0u16;
    for v in bits(cell) {
        let twin = bits(tried).any(|w| rows[v] & !(1 << w) == rows[w] & !(1 << v));
        if twin {
            continue;
        }
        tried |= 1 << v;
        let mut next = cells.clone();
        next.splice(t..=t, [1 << v, cell & !(1 << v)]);
        search(rows, n, next, best);
    }
}

/// Canonical key: equal for two graphs of the same order iff they are
/// isomorphic.
pub fn canonical_key(g: &Graph) -> u128 {
    canonical_key_rows(&rows_of(g), g.n())
}

fn canonical_key_rows(rows: &Rows, n: usize) -> u128 {
    if n <= 1 {
        return 0;
    }
    let mut best = None;
    let all = if n == 16 { u16::MAX } else { (1u16 << n) - 1 };
    let mut cells = vec![all];
    // start from the degree partition
    refine(rows, &mut cells);
    search(rows, n, cells, &mut best);
    best.expect("the search tree has a leaf")
}

/// The graph on `n` vertices encoded by a canonical key.
pub fn graph_from_key(n: usize, key: u128) -> Graph {
    let mut g = Graph::new(n);
    let total = n * n.saturating_sub(1) / 2;
    let mut pos = total;
    for j in 1..n {
        for i in 0..j {
            pos -= 1;
            if key >> pos & 1 == 1 {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// The canonically labelled copy of `g`.
pub fn canonical_form(g: &Graph) -> Graph {
    graph_from_key(g.n(), canonical_key(g))
}

/// Every graph of `family` on `1..=max_n` vertices up to isomorphism,
/// indexed by order (`levels[n]`), each level sorted by canonical key
/// descending.
pub fn enumerate(max_n: usize, family: Family) -> Vec<Vec<Graph>> {
    assert!(max_n < MAX_CANON, "enumeration is limited to {} vertices", MAX_CANON - 1);
    let mut levels: Vec<Vec<(u128, Graph)>> = vec![Vec::new(); max_n + 1];
    if max_n >= 1 {
        levels[1].push((0, Graph::new(1)));
    }
    for n in 2..=max_n {
        let mut seen: HashSet<u128> = HashSet::new();
        let mut next: Vec<(u128, Graph)> = Vec::new();
        for (_, g) in &levels[n - 1] {
            let m = n - 1;
            let rows = rows_of(g);
            let deg: Vec<u32> = (0..m).map(|v| rows[v].count_ones()).collect();
            for s in 0u16..(1 << m) {
                let size = s.count_ones();
                // the new vertex must have minimum degree in the result
                if (0..m).any(|w| size > deg[w] + u32::from(s >> w & 1)) {
                    continue;
                }
                if family.needs_stable_extension() && bits(s).any(|v| rows[v] & s != 0) {
                    continue;
                }
                let mut r = rows;
                for v in bits(s) {
                    r[v] |= 1 << m;
                }
                r[m] = s;
                let key = canonical_key_rows(&r, n);
                if !seen.insert(key) {
                    continue;
                }
                let h = graph_from_key(n, key);
                if family.accepts(&h) {
                    next.push((key, h));
                }
            }
        }
        next.sort_by(|a, b| b.0.cmp(&a.0));
        levels[n] = next;
    }
    levels.into_iter().map(|l| l.into_iter().map(|(_, g)| g).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use pcp_core::graph::named::*;

    fn counts(levels: &[Vec<Graph>]) -> Vec<usize> {
        levels[1..].iter().map(Vec::len).collect()
    }

    #[test]
    fn graph_counts() {
        assert_eq!(counts(&enumerate(7, Family::All)), vec![1, 2, 4, 11, 34, 156, 1044]);
    }

    #[test]
    fn triangle_free_counts() {
        assert_eq!(counts(&enumerate(8, Family::TriangleFree)), vec![1, 2, 3, 7, 14, 38, 107, 410]);
    }

    #[test]
    fn relabellings_share_a_key() {
        let p = petersen();
        let perm = [3, 7, 1, 9, 0, 5, 2, 8, 6, 4];
        assert_eq!(canonical_key(&p), canonical_key(&p.relabel(&perm)));
        assert_ne!(canonical_key(&cycle(10)), canonical_key(&p));
        let c = canonical_form(&p);
        assert_eq!(canonical_form(&c), c);
    }
}
