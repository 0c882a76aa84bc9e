//! Graph sources: exhaustive enumeration, seeded random generation and
//! graph6 streams.

use std::ops::ControlFlow;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pcp_core::detection::class_membership;
use pcp_core::graph::for_each_induced_path;
use pcp_core::{ClassId, Graph};

use crate::canon::{enumerate, Family};

/// Largest order accepted by exhaustive mode.
pub const MAX_EXHAUSTIVE: usize = 12;
/// Largest order accepted by random mode.
pub const MAX_RANDOM: usize = 64;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum CapExceeded {
    #[error("exhaustive mode is capped at {MAX_EXHAUSTIVE} vertices, got {0}")]
    Exhaustive(usize),
    #[error("random mode is capped at {MAX_RANDOM} vertices, got {0}")]
    Random(usize),
}

/// Which cycle lengths an added edge may not close.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    TriangleFree,
    Class(ClassId),
}

/// Whether adding `uv` to `g` keeps it inside `target`: every new hole
/// passes through `uv`, so it is enough to look at induced `u`–`v` paths.
pub fn edge_allowed(g: &Graph, u: usize, v: usize, target: Target) -> bool {
    if g.neighbors(u).intersects(&g.neighbors(v)) {
        return false;
    }
    let Target::Class(cls) = target else {
        return true;
    };
    let mut ok = true;
    for_each_induced_path(g, g.vertices(), u, v, |p| {
        let len = p.len() - 1;
        // closing a path of length `len` makes a hole of length len + 1
        if (len % 2 == 1 && len >= 5) || (cls.forbids_c5() && len == 4) {
            ok = false;
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    ok
}

/// One random member of `target` on `n` vertices: pairs are offered in a
/// random order, each with probability `density`, and kept when allowed.
pub fn random_member(rng: &mut ChaCha8Rng, n: usize, density: f64, target: Target) -> Graph {
    let mut g = Graph::new(n);
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    pairs.shuffle(rng);
    for (u, v) in pairs {
        if rng.gen_bool(density) && edge_allowed(&g, u, v, target) {
            g.add_edge(u, v);
        }
    }
    g
}

/// How graphs are produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    /// `count` graphs with orders drawn from `min_n..=n`.
    Random { seed: u64, count: usize, min_n: usize },
}

/// Class members on `n` vertices (exhaustive, up to isomorphism) or on at
/// most `n` vertices (random). Random graphs are filtered through
/// `class_membership` as well as built to avoid the forbidden holes.
pub fn generate_class_members(n: usize, cls: ClassId, mode: Mode) -> Result<Vec<Graph>, CapExceeded> {
    match mode {
        Mode::Exhaustive => {
            if n > MAX_EXHAUSTIVE {
                return Err(CapExceeded::Exhaustive(n));
            }
            if n == 0 {
                return Ok(vec![Graph::new(0)]);
            }
            Ok(enumerate(n, Family::Class(cls)).swap_remove(n))
        }
        Mode::Random { seed, count, min_n } => {
            random_graphs(n, Target::Class(cls), seed, count, min_n).map(|v| {
                v.into_iter().filter(|g| class_membership(g, cls).is_member()).collect()
            })
        }
    }
}

/// `count` random graphs of `target` with orders in `min_n..=max_n`. The
/// density is log-uniform in `[1/n, 0.9]`, so deep sparse graphs show up
/// next to nearly maximal ones.
pub fn random_graphs(
    max_n: usize,
    target: Target,
    seed: u64,
    count: usize,
    min_n: usize,
) -> Result<Vec<Graph>, CapExceeded> {
    if max_n > MAX_RANDOM {
        return Err(CapExceeded::Random(max_n));
    }
    let lo = min_n.clamp(1, max_n.max(1));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|_| {
            let n = rng.gen_range(lo..=max_n.max(lo));
            let lo_d = (1.0 / n as f64).min(0.9_f64).ln();
            let density = rng.gen_range(lo_d..=0.9_f64.ln()).exp();
            random_member(&mut rng, n, density, target)
        })
        .collect())
}

/// Reads graph6 lines, skipping blank lines.
pub fn parse_graph6_stream(text: &str) -> pcp_core::Result<Vec<Graph>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .map(pcp_core::graph::io::from_graph6)
        .collect()
}
