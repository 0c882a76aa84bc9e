//! Parity Changing Paths: data types, definitional validation and the
//! growth procedures.
//!
//! A PCP of order `ℓ` is a chain `G_1, P_1, …, G_ℓ, P_ℓ, H`. Each regular
//! block `G_i` joins its entry `x_i` to its exit `y_i` by both an odd and
//! an even induced path, each connector `P_i` runs from `y_i` to `x_{i+1}`,
//! and `H` is the connected last block whose chromatic number is the
//! leftovers.
//!
//! # JSON layout
//!
//! ```json
//! {
//!   "order": 1,
//!   "blocks": [[0, 1, 2, 3, 4]],
//!   "last": [7],
//!   "connectors": [[2, 6, 7]],
//!   "origin": 0,
//!   "entries": [0, 7],
//!   "exits": [2],
//!   "leftovers": 1
//! }
//! ```
//!
//! Vertex sets are sorted arrays and connectors are vertex sequences. A
//! rooted PCP wraps this object as `{"pcp": {...}, "root": 9, "level": 2}`.

mod c5;
mod grow;

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::bits::VertexSet;
use crate::detection::{find_c5, HoleCertificate};
use crate::error::{Error, Result};
use crate::graph::{for_each_induced_path, ExactColorer, Graph, Levelling, Path};

pub use c5::{c5_parity_paths, C5ParityPaths};
pub use grow::{
    grow_pcp1_c5free, grow_pcp_order, grow_rooted_pcp_c5free, grow_strong_pcp1,
    grow_strong_rooted_pcp, GrowthOptions, Grower,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pcp {
    pub order: usize,
    pub blocks: Vec<VertexSet>,
    pub last: VertexSet,
    pub connectors: Vec<Path>,
    pub origin: usize,
    pub entries: Vec<usize>,
    pub exits: Vec<usize>,
    pub leftovers: usize,
}

impl Pcp {
    /// Every vertex of every block and connector.
    pub fn vertex_set(&self) -> VertexSet {
        let blocks = self.blocks.iter().fold(self.last, |acc, b| acc | *b);
        self.connectors.iter().fold(blocks, |acc, p| acc | p.vertex_set())
    }

    /// `G_ℓ`, the last regular block.
    pub fn last_regular(&self) -> Option<VertexSet> {
        self.blocks.last().copied()
    }

    /// The PCP of order `order` obtained by folding `G_{order+1}, P_{order+1},
    /// …, H` into a single last block. Its entries are still valid paths
    /// of the original chain; the leftovers are recomputed.
    pub fn truncated(&self, g: &Graph, order: usize) -> Result<Pcp> {
        if order == 0 || order > self.blocks.len() {
            return Err(Error::ViolatedPrecondition(format!(
                "cannot truncate a PCP of order {} to order {order}",
                self.blocks.len()
            )));
        }
        let mut last = self.last;
        for b in &self.blocks[order..] {
            last |= *b;
        }
        for p in &self.connectors[order..] {
            last |= p.vertex_set();
        }
        let leftovers = ExactColorer::with_cap(64).chromatic_number(g, last)?;
        Ok(Pcp {
            order,
            blocks: self.blocks[..order].to_vec(),
            last,
            connectors: self.connectors[..order].to_vec(),
            origin: self.origin,
            entries: self.entries[..=order].to_vec(),
            exits: self.exits[..order].to_vec(),
            leftovers,
        })
    }
}

/// A PCP inside level `N_level` together with a root in `N_{level-1}`
/// whose only neighbor in the PCP is the origin.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootedPcp {
    pub pcp: Pcp,
    pub root: usize,
    pub level: usize,
}

/// Result of a growth procedure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum GrowthOutcome<P> {
    Success { pcp: P },
    PreconditionUnmet { step: String, detail: String },
    ClassViolation { certificate: HoleCertificate },
}

impl<P> GrowthOutcome<P> {
    pub fn success(self) -> Option<P> {
        match self {
            GrowthOutcome::Success { pcp } => Some(pcp),
            _ => None,
        }
    }

    pub fn is_success(&self) -> bool {
        matches!(self, GrowthOutcome::Success { .. })
    }

    pub fn unmet_step(&self) -> Option<&str> {
        match self {
            GrowthOutcome::PreconditionUnmet { step, .. } => Some(step),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    /// Sequence lengths disagree, vertices out of range, or empty pieces.
    Shape,
    EntryNotInBlock,
    ExitNotInBlock,
    ConnectorEndpoints,
    ConnectorNotInduced,
    ConnectorTooShort,
    /// Two pieces share a vertex other than their common special vertex.
    Overlap,
    /// An edge joins two different pieces.
    StrayEdge,
    MissingParityPair,
    BlockChromatic,
    LastDisconnected,
    LeftoversMismatch,
    MissingC5,
    OutsideLevel,
    RootNotInPreviousLevel,
    RootNeighbors,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PcpViolation {
    pub kind: ViolationKind,
    pub detail: String,
}

impl PcpViolation {
    fn new(kind: ViolationKind, detail: impl Into<String>) -> Self {
        Self { kind, detail: detail.into() }
    }
}

/// Induced `x`–`y` paths of both parities inside `G[block]`, returned as
/// `(odd, even)`: the lexicographically first of each parity.
pub fn parity_paths_in_block(g: &Graph, block: VertexSet, x: usize, y: usize) -> Option<(Path, Path)> {
    if !block.contains(x) || !block.contains(y) || x == y {
        return None;
    }
    let mut odd = None;
    let mut even = None;
    for_each_induced_path(g, block, x, y, |p| {
        let slot = if (p.len() - 1) % 2 == 1 { &mut odd } else { &mut even };
        if slot.is_none() {
            *slot = Some(Path::new(p.to_vec()));
        }
        if odd.is_some() && even.is_some() {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    Some((odd?, even?))
}

/// Checks every definitional requirement of a (strong) PCP. An empty
/// list means the PCP is valid.
pub fn validate_pcp(g: &Graph, p: &Pcp, strong: bool) -> Result<Vec<PcpViolation>> {
    use ViolationKind::*;
    let mut out = Vec::new();
    let l = p.blocks.len();
    if l == 0
        || p.order != l
        || p.connectors.len() != l
        || p.exits.len() != l
        || p.entries.len() != l + 1
        || p.entries.first() != Some(&p.origin)
    {
        out.push(PcpViolation::new(Shape, "sequence lengths or origin disagree with the order"));
        return Ok(out);
    }
    let full = g.vertices();
    let in_range = p.blocks.iter().all(|b| b.is_subset(&full))
        && p.last.is_subset(&full)
        && p.connectors.iter().all(|c| c.verts().iter().all(|&v| v < g.n()))
        && p.entries.iter().chain(&p.exits).all(|&v| v < g.n());
    if !in_range || p.last.is_empty() || p.blocks.iter().any(VertexSet::is_empty) {
        out.push(PcpViolation::new(Shape, "empty block or vertex out of range"));
        return Ok(out);
    }

    for i in 0..l {
        if !p.blocks[i].contains(p.entries[i]) {
            out.push(PcpViolation::new(EntryNotInBlock, format!("x_{} not in G_{}", i + 1, i + 1)));
        }
        if !p.blocks[i].contains(p.exits[i]) {
            out.push(PcpViolation::new(ExitNotInBlock, format!("y_{} not in G_{}", i + 1, i + 1)));
        }
    }
    if !p.last.contains(p.entries[l]) {
        out.push(PcpViolation::new(EntryNotInBlock, format!("x_{} not in H", l + 1)));
    }

    for (i, c) in p.connectors.iter().enumerate() {
        if c.origin() != Some(p.exits[i]) || c.end() != Some(p.entries[i + 1]) {
            out.push(PcpViolation::new(
                ConnectorEndpoints,
                format!("P_{} does not run from y_{} to x_{}", i + 1, i + 1, i + 2),
            ));
        }
        if !g.is_induced_path(c.verts()) {
            out.push(PcpViolation::new(ConnectorNotInduced, format!("P_{} is not an induced path", i + 1)));
        }
        if c.len() < 2 {
            out.push(PcpViolation::new(ConnectorTooShort, format!("P_{} has length {} < 2", i + 1, c.len())));
        }
    }

    // pieces in chain order: G_1, P_1, G_2, …, P_ℓ, H
    let mut pieces: Vec<(String, VertexSet)> = Vec::with_capacity(2 * l + 1);
    for i in 0..l {
        pieces.push((format!("G_{}", i + 1), p.blocks[i]));
        pieces.push((format!("P_{}", i + 1), p.connectors[i].vertex_set()));
    }
    pieces.push(("H".into(), p.last));
    for a in 0..pieces.len() {
        for b in a + 1..pieces.len() {
            let shared = pieces[a].1 & pieces[b].1;
            let allowed = if b == a + 1 {
                // consecutive pieces meet in y_i (block, connector) or x_{i+1}
                let special = if a % 2 == 0 { p.exits[a / 2] } else { p.entries[a / 2 + 1] };
                VertexSet::singleton(special)
            } else {
                VertexSet::new()
            };
            if !shared.is_subset(&allowed) {
                out.push(PcpViolation::new(
                    Overlap,
                    format!("{} and {} share {:?}", pieces[a].0, pieces[b].0, (shared - allowed).to_vec()),
                ));
            }
        }
    }

    let union = pieces.iter().fold(VertexSet::new(), |acc, (_, s)| acc | *s);
    for (u, v) in g.edges_within(union) {
        if !pieces.iter().any(|(_, s)| s.contains(u) && s.contains(v)) {
            out.push(PcpViolation::new(StrayEdge, format!("edge {u}-{v} joins two pieces")));
        }
    }

    let colorer = ExactColorer::with_cap(64);
    for i in 0..l {
        let (x, y) = (p.entries[i], p.exits[i]);
        if parity_paths_in_block(g, p.blocks[i], x, y).is_none() {
            out.push(PcpViolation::new(
                MissingParityPair,
                format!("G_{} lacks induced x-y paths of both parities between {x} and {y}", i + 1),
            ));
        }
        let chi = colorer.chromatic_number(g, p.blocks[i])?;
        if chi > 4 {
            out.push(PcpViolation::new(BlockChromatic, format!("chi(G_{}) = {chi} > 4", i + 1)));
        }
        if strong && find_c5(g, p.blocks[i]).is_none() {
            out.push(PcpViolation::new(MissingC5, format!("G_{} has no induced C5", i + 1)));
        }
    }
    if !g.is_connected(p.last) {
        out.push(PcpViolation::new(LastDisconnected, "H is not connected"));
    }
    let chi_h = colorer.chromatic_number(g, p.last)?;
    if chi_h != p.leftovers {
        out.push(PcpViolation::new(
            LeftoversMismatch,
            format!("leftovers {} but chi(H) = {chi_h}", p.leftovers),
        ));
    }
    Ok(out)
}

/// [`validate_pcp`] plus the level and root requirements.
pub fn validate_rooted_pcp(g: &Graph, lv: &Levelling, rp: &RootedPcp, strong: bool) -> Result<Vec<PcpViolation>> {
    use ViolationKind::*;
    let mut out = validate_pcp(g, &rp.pcp, strong)?;
    if out.iter().any(|v| v.kind == Shape) {
        return Ok(out);
    }
    let k = rp.level;
    let verts = rp.pcp.vertex_set();
    if k == 0 || !verts.is_subset(&lv.level(k)) {
        out.push(PcpViolation::new(OutsideLevel, format!("PCP not inside N_{k}")));
    }
    if k == 0 || !lv.level(k - 1).contains(rp.root) {
        out.push(PcpViolation::new(RootNotInPreviousLevel, format!("root {} not in N_{}", rp.root, k.saturating_sub(1))));
    }
    let seen = g.neighbors(rp.root) & verts;
    if seen != VertexSet::singleton(rp.pcp.origin) {
        out.push(PcpViolation::new(
            RootNeighbors,
            format!("root sees {:?} in the PCP, expected only the origin {}", seen.to_vec(), rp.pcp.origin),
        ));
    }
    Ok(out)
}

/// The active lift `N(G_ℓ) ∩ N_{k-1}` of a rooted PCP in level `k ≥ 2`.
pub fn active_lift(g: &Graph, lv: &Levelling, p: &RootedPcp) -> Result<VertexSet> {
    if p.level < 2 {
        return Err(Error::ViolatedPrecondition(format!("PCP lives in level {} < 2", p.level)));
    }
    let last = p
        .pcp
        .last_regular()
        .ok_or_else(|| Error::ViolatedPrecondition("PCP has no regular block".into()))?;
    Ok(g.neighbors_of_set(last) & lv.level(p.level - 1))
}
