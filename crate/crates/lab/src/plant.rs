//! Planted instances: graphs built so that a chosen level carries a given
//! base graph, every vertex of which has a private parent.
//!
//! `stack(b, tail)` is a path `0 – 1 – … – tail` followed by one parent per
//! vertex of `b`, adjacent to `tail`, and then `b` itself. Levelled from 0,
//! the parents form `N_{tail+1}` and `b` forms `N_{tail+2}`. Stacking a
//! stack puts a whole private-parent structure inside one level, which is
//! what the rooted constructions need.
//!
//! Private parents double the order at every stacking, and the drivers
//! color whole graphs of at most 64 vertices, so `stack_grouped` lets one
//! parent serve a small stable group instead.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pcp_core::detection::find_triangle;
use pcp_core::Graph;

use crate::generate::{edge_allowed, random_member, Target};

/// Base vertices first (offset `tail + 1`), parents after them.
pub fn stack(b: &Graph, tail: usize) -> Graph {
    let m = b.n();
    let base = tail + 1;
    let mut g = Graph::new(base + 2 * m);
    for i in 0..tail {
        g.add_edge(i, i + 1);
    }
    for (u, v) in b.edges() {
        g.add_edge(base + u, base + v);
    }
    for w in 0..m {
        g.add_edge(tail, base + m + w);
        g.add_edge(base + m + w, base + w);
    }
    g
}

/// Like `stack`, with each parent adjacent to a random stable group of at
/// most `group` vertices of `b`.
pub fn stack_grouped(rng: &mut ChaCha8Rng, b: &Graph, tail: usize, group: usize) -> Graph {
    let m = b.n();
    let base = tail + 1;
    let mut order: Vec<usize> = (0..m).collect();
    order.shuffle(rng);
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for w in order {
        match groups.iter_mut().find(|gr| gr.len() < group && gr.iter().all(|&x| !b.has_edge(x, w))) {
            Some(gr) => gr.push(w),
            None => groups.push(vec![w]),
        }
    }
    let mut g = Graph::new(base + m + groups.len());
    for i in 0..tail {
        g.add_edge(i, i + 1);
    }
    for (u, v) in b.edges() {
        g.add_edge(base + u, base + v);
    }
    for (j, gr) in groups.iter().enumerate() {
        g.add_edge(tail, base + m + j);
        for &w in gr {
            g.add_edge(base + m + j, base + w);
        }
    }
    g
}

/// Largest order of a driver instance.
pub const DRIVER_MAX_N: usize = 64;

/// A triangle-free graph on at most 64 vertices whose level 3 (from 0)
/// holds a grouped double lift of a random base, with a little noise. The
/// drivers get through levelling on these and usually into growth.
pub fn driver_instance(seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let n = rng.gen_range(10..=16);
        let with_c5 = rng.gen_bool(0.9);
        let b = random_base(&mut rng, n, with_c5);
        let a = stack_grouped(&mut rng, &b, 0, 2);
        let a = stack_grouped(&mut rng, &a, 0, 2);
        let mut g = stack_grouped(&mut rng, &a, 1, 2);
        if g.n() > DRIVER_MAX_N {
            continue;
        }
        let noise = rng.gen_range(0..4);
        add_noise(&mut rng, &mut g, noise);
        return g;
    }
}

/// Index of base vertex `w` inside `stack(b, tail)`.
pub fn stacked_index(tail: usize, w: usize) -> usize {
    tail + 1 + w
}

/// Random triangle-free base on `n` vertices, optionally around a 5-hole
/// on `0..5`.
pub fn random_base(rng: &mut ChaCha8Rng, n: usize, with_c5: bool) -> Graph {
    let density = rng.gen_range((1.5 / n as f64).ln()..=0.6_f64.ln()).exp();
    let mut g = if with_c5 && n >= 5 {
        let mut g = Graph::new(n);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5);
        }
        g
    } else {
        Graph::new(n)
    };
    let extra = random_member(rng, n, density, Target::TriangleFree);
    for (u, v) in extra.edges() {
        if !g.has_edge(u, v) && edge_allowed(&g, u, v, Target::TriangleFree) {
            g.add_edge(u, v);
        }
    }
    g
}

/// Adds about `count` random edges that keep `g` triangle-free.
pub fn add_noise(rng: &mut ChaCha8Rng, g: &mut Graph, count: usize) {
    let n = g.n();
    if n < 2 {
        return;
    }
    for _ in 0..count {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v && !g.has_edge(u, v) && edge_allowed(g, u, v, Target::TriangleFree) {
            g.add_edge(u, v);
        }
    }
}

/// Shapes of planted graphs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    /// `stack(B, 0)`: `B` at level 2 of vertex 0.
    Lift,
    /// `stack(stack(B, 0), tail)`: a lift inside level `tail + 2`.
    DeepLift { tail: usize },
}

/// A planted triangle-free graph drawn from `seed`.
pub fn planted(seed: u64, shape: Shape, base_n: usize, with_c5: bool, noise: usize) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = random_base(&mut rng, base_n, with_c5);
    let mut g = match shape {
        Shape::Lift => stack(&b, 0),
        Shape::DeepLift { tail } => stack(&stack(&b, 0), tail),
    };
    add_noise(&mut rng, &mut g, noise);
    debug_assert!(find_triangle(&g, g.vertices()).is_none());
    g
}
