//! Induced cycles: triangles, holes by length and parity, class
//! membership and certificate checking.
//!
//! Hole search is exhaustive. Cycles are enumerated from their smallest
//! vertex `s`; the DFS only visits vertices above `s` and never extends a
//! path with a vertex adjacent to an earlier interior vertex, so each
//! candidate is an induced path and closing it through `s` yields a hole.
//! Worst case is exponential in `|sub|`, fine at the sizes used here.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bits::VertexSet;
use crate::error::Error;
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HoleKind {
    Triangle,
    C4,
    C5,
    EvenGe6,
    OddGe7,
}

impl HoleKind {
    pub fn of_len(len: usize) -> Option<Self> {
        match len {
            0..=2 => None,
            3 => Some(Self::Triangle),
            4 => Some(Self::C4),
            5 => Some(Self::C5),
            l if l % 2 == 0 => Some(Self::EvenGe6),
            _ => Some(Self::OddGe7),
        }
    }
}

/// An induced cycle, listed in cyclic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HoleCertificate {
    pub verts: Vec<usize>,
    pub kind: HoleKind,
}

impl HoleCertificate {
    /// Panics on fewer than three vertices.
    pub fn new(verts: Vec<usize>) -> Self {
        let kind = HoleKind::of_len(verts.len()).expect("a cycle has at least three vertices");
        Self { verts, kind }
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.verts.iter().collect()
    }

    pub fn is_even_ge6(&self) -> bool {
        self.kind == HoleKind::EvenGe6
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Any,
}

impl Parity {
    pub fn accepts(self, len: usize) -> bool {
        match self {
            Parity::Even => len % 2 == 0,
            Parity::Odd => len % 2 == 1,
            Parity::Any => true,
        }
    }
}

/// The two graph classes: triangle-free with no even hole of length at
/// least 6, optionally also without `C5`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassId {
    #[serde(rename = "C_3_2k_ge6")]
    C3_2kGe6,
    #[serde(rename = "C_3_5_2k_ge6")]
    C3_5_2kGe6,
}

impl ClassId {
    pub fn tag(self) -> &'static str {
        match self {
            ClassId::C3_2kGe6 => "C_3_2k_ge6",
            ClassId::C3_5_2kGe6 => "C_3_5_2k_ge6",
        }
    }

    pub fn forbids_c5(self) -> bool {
        self == ClassId::C3_5_2kGe6
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for ClassId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "C_3_2k_ge6" => Ok(ClassId::C3_2kGe6),
            "C_3_5_2k_ge6" => Ok(ClassId::C3_5_2kGe6),
            _ => Err(Error::Parse(format!("unknown class {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Member,
    Violation(HoleCertificate),
}

impl Verdict {
    pub fn is_member(&self) -> bool {
        matches!(self, Verdict::Member)
    }

    pub fn certificate(&self) -> Option<&HoleCertificate> {
        match self {
            Verdict::Member => None,
            Verdict::Violation(c) => Some(c),
        }
    }
}

/// Lexicographically smallest triangle inside `sub`.
pub fn find_triangle(g: &Graph, sub: VertexSet) -> Option<HoleCertificate> {
    for a in sub.iter() {
        let na = g.neighbors(a) & sub;
        for b in na.above(a).iter() {
            if let Some(c) = (na & g.neighbors(b)).above(b).first() {
                return Some(HoleCertificate::new(vec![a, b, c]));
            }
        }
    }
    None
}

/// First induced cycle in `G[sub]` whose length lies in `min_len..=max_len`
/// and matches `parity`. Lengths below 3 are raised to 3.
pub fn find_hole(
    g: &Graph,
    sub: VertexSet,
    min_len: usize,
    max_len: usize,
    parity: Parity,
) -> Option<HoleCertificate> {
    let mut found = None;
    for_each_hole(g, sub, min_len, max_len, |c| {
        if parity.accepts(c.len()) {
            found = Some(HoleCertificate::new(c.to_vec()));
            true
        } else {
            false
        }
    });
    found
}

/// Every induced cycle of `G[sub]` with length in the window, each listed
/// once: smallest vertex first, then its smaller cycle neighbor. The
/// visitor returns `true` to stop.
pub fn for_each_hole<F>(g: &Graph, sub: VertexSet, min_len: usize, max_len: usize, mut visit: F)
where
    F: FnMut(&[usize]) -> bool,
{
    let min_len = min_len.max(3);
    let max_len = max_len.min(sub.len());
    if min_len > max_len {
        return;
    }
    let mut search = HoleSearch { g, min_len, max_len, path: Vec::new(), visit: &mut visit };
    for s in sub.iter() {
        let allowed = sub.above(s);
        let ns = g.neighbors(s) & allowed;
        search.path.clear();
        search.path.push(s);
        for p1 in ns.iter() {
            search.path.push(p1);
            // interior vertices may not touch s: N(s) is handled separately
            if search.extend(allowed, ns, VertexSet::singleton(s) | VertexSet::singleton(p1)) {
                return;
            }
            search.path.pop();
        }
    }
}

struct HoleSearch<'a, F> {
    g: &'a Graph,
    min_len: usize,
    max_len: usize,
    path: Vec<usize>,
    visit: &'a mut F,
}

impl<F: FnMut(&[usize]) -> bool> HoleSearch<'_, F> {
    // `blocked` holds the path and the closed neighborhoods of all path
    // vertices strictly between s and the last one.
    fn extend(&mut self, allowed: VertexSet, ns: VertexSet, blocked: VertexSet) -> bool {
        let last = *self.path.last().unwrap();
        let p1 = self.path[1];
        let cands = (self.g.neighbors(last) & allowed) - blocked;
        let len = self.path.len() + 1;
        if len <= self.max_len && len >= self.min_len {
            for w in (cands & ns).iter() {
                if w > p1 {
                    self.path.push(w);
                    let stop = (self.visit)(&self.path);
                    self.path.pop();
                    if stop {
                        return true;
                    }
                }
            }
        }
        if len < self.max_len {
            let next_blocked = blocked | self.g.closed_neighbors(last);
            for w in (cands - ns).iter() {
                self.path.push(w);
                let stop = self.extend(allowed, ns, next_blocked | VertexSet::singleton(w));
                self.path.pop();
                if stop {
                    return true;
                }
            }
        }
        false
    }
}

/// All induced cycles of `G[sub]` with length in the window.
pub fn holes(g: &Graph, sub: VertexSet, min_len: usize, max_len: usize) -> Vec<HoleCertificate> {
    let mut out = Vec::new();
    for_each_hole(g, sub, min_len, max_len, |c| {
        out.push(HoleCertificate::new(c.to_vec()));
        false
    });
    out
}

/// Searches short windows first: the DFS is much cheaper when long
/// induced paths are cut off, and most even holes found in practice are
/// short. The result is still deterministic.
pub fn find_even_hole_ge6(g: &Graph, sub: VertexSet) -> Option<HoleCertificate> {
    let n = sub.len();
    let mut lo = 6;
    let mut hi = 8;
    while lo <= n {
        if let Some(c) = find_hole(g, sub, lo, hi.min(n), Parity::Even) {
            return Some(c);
        }
        lo = hi + 1;
        hi *= 2;
    }
    None
}

pub fn find_c5(g: &Graph, sub: VertexSet) -> Option<HoleCertificate> {
    find_hole(g, sub, 5, 5, Parity::Any)
}

pub fn class_membership(g: &Graph, cls: ClassId) -> Verdict {
    class_membership_in(g, g.vertices(), cls)
}

/// Membership of `G[sub]`. Checks triangles first, then even holes of
/// length at least 6, then `C5` when the class forbids it.
pub fn class_membership_in(g: &Graph, sub: VertexSet, cls: ClassId) -> Verdict {
    let found = find_triangle(g, sub)
        .or_else(|| find_even_hole_ge6(g, sub))
        .or_else(|| if cls.forbids_c5() { find_c5(g, sub) } else { None });
    match found {
        Some(c) => Verdict::Violation(c),
        None => Verdict::Member,
    }
}

/// Whether `c` lists a chordless cycle of `g` with the right kind.
pub fn verify_certificate(g: &Graph, c: &HoleCertificate) -> bool {
    let m = c.verts.len();
    if HoleKind::of_len(m) != Some(c.kind) {
        return false;
    }
    if c.verts.iter().any(|&v| v >= g.n()) {
        return false;
    }
    if c.vertex_set().len() != m {
        return false;
    }
    for i in 0..m {
        for j in i + 1..m {
            let consecutive = j == i + 1 || (i == 0 && j == m - 1);
            if g.has_edge(c.verts[i], c.verts[j]) != consecutive {
                return false;
            }
        }
    }
    true
}
