//! Graph-level invariants on random small graphs, each against a naive
//! oracle written here.

use std::collections::{BTreeSet, VecDeque};

use proptest::prelude::*;

use pcp_core::certify::Certifier;
use pcp_core::detection::{class_membership, find_hole, holes, verify_certificate};
use pcp_core::graph::{alternating_coloring, colorful_level, upper_path, ExactColorer, Levelling};
use pcp_core::pcp::{c5_parity_paths, validate_pcp, validate_rooted_pcp, Grower, GrowthOptions};
use pcp_core::{ClassId, CertifyOptions, Exact, Graph, GrowthOutcome, HoleCertificate, Overrides, Parity, Status, VertexSet};

fn graph_from(n: usize, bits: &[bool]) -> Graph {
    let mut g = Graph::new(n);
    let mut i = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits[i] {
                g.add_edge(u, v);
            }
            i += 1;
        }
    }
    g
}

/// A graph on `lo..=hi` vertices with edge probability drawn per graph.
fn graphs(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi, 0.05f64..0.7).prop_flat_map(|(n, p)| {
        proptest::collection::vec(proptest::bool::weighted(p), n * n.saturating_sub(1) / 2)
            .prop_map(move |bits| graph_from(n, &bits))
    })
}

/// Triangle-free graphs: edges are offered in order and kept when they
/// close no triangle.
fn triangle_free(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    graphs(lo, hi).prop_map(|g| {
        let mut h = Graph::new(g.n());
        for (u, v) in g.edges() {
            if !h.neighbors(u).intersects(&h.neighbors(v)) {
                h.add_edge(u, v);
            }
        }
        h
    })
}

fn masks(g: &Graph) -> Vec<u32> {
    (0..g.n()).map(|v| g.neighbors(v).iter().fold(0, |m, w| m | 1 << w)).collect()
}

fn oracle_chi(g: &Graph, sub: VertexSet) -> usize {
    let rows = masks(g);
    let verts = sub.to_vec();
    fn fits(rows: &[u32], verts: &[usize], i: usize, k: usize, col: &mut Vec<usize>) -> bool {
        if i == verts.len() {
            return true;
        }
        for c in 0..k {
            if (0..i).all(|j| rows[verts[i]] >> verts[j] & 1 == 0 || col[j] != c) {
                col[i] = c;
                if fits(rows, verts, i + 1, k, col) {
                    return true;
                }
            }
        }
        false
    }
    let mut col = vec![0; verts.len()];
    (0..=verts.len()).find(|&k| fits(&rows, &verts, 0, k, &mut col)).unwrap()
}

fn oracle_holes(g: &Graph) -> BTreeSet<u32> {
    let rows = masks(g);
    (1u32..1 << g.n())
        .filter(|&m| {
            m.count_ones() >= 3
                && (0..g.n()).filter(|v| m >> v & 1 == 1).all(|v| (rows[v] & m).count_ones() == 2)
                && {
                    let mut seen = 1u32 << m.trailing_zeros();
                    loop {
                        let next = (0..g.n()).filter(|v| seen >> v & 1 == 1).fold(seen, |s, v| s | (rows[v] & m));
                        if next == seen {
                            break seen == m;
                        }
                        seen = next;
                    }
                }
        })
        .collect()
}

fn bfs_dist(g: &Graph, sub: VertexSet, from: usize) -> Vec<Option<usize>> {
    let mut d = vec![None; g.n()];
    d[from] = Some(0);
    let mut q = VecDeque::from([from]);
    while let Some(u) = q.pop_front() {
        for w in (g.neighbors(u) & sub).iter() {
            if d[w].is_none() {
                d[w] = Some(d[u].unwrap() + 1);
                q.push_back(w);
            }
        }
    }
    d
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn chromatic_number_matches_assignment(g in graphs(1, 9)) {
        let colorer = ExactColorer::default();
        let chi = colorer.chromatic_number(&g, g.vertices()).unwrap();
        prop_assert_eq!(chi, oracle_chi(&g, g.vertices()));
        let c = colorer.color(&g, g.vertices()).unwrap();
        prop_assert!(c.is_proper(&g));
        prop_assert_eq!(c.num_colors(), chi);
    }

    #[test]
    fn levels_partition_the_component(g in graphs(1, 12), root in 0usize..12) {
        let root = root % g.n();
        let lv = Levelling::new(&g, root).unwrap();
        let dist = bfs_dist(&g, g.vertices(), root);
        let mut union = VertexSet::new();
        for (k, level) in lv.levels().iter().enumerate() {
            prop_assert!(!union.intersects(level));
            union |= *level;
            for v in level.iter() {
                prop_assert_eq!(dist[v], Some(k));
            }
        }
        prop_assert_eq!(union, lv.component());
        for (u, v) in g.edges() {
            if let (Some(a), Some(b)) = (lv.level_of(u), lv.level_of(v)) {
                prop_assert!(a.abs_diff(b) <= 1);
            }
        }
    }

    #[test]
    fn colorful_level_and_alternating_coloring(g in graphs(1, 10), root in 0usize..10) {
        let lv = Levelling::new(&g, root % g.n()).unwrap();
        let k = colorful_level(&g, &lv).unwrap();
        let chi = oracle_chi(&g, lv.component());
        prop_assert!(2 * oracle_chi(&g, lv.level(k)) >= chi);
        prop_assert!((0..k).all(|j| 2 * oracle_chi(&g, lv.level(j)) < chi));
        let t = lv.levels().iter().map(|l| oracle_chi(&g, *l)).max().unwrap();
        let c = alternating_coloring(&g, &lv).unwrap();
        prop_assert!(c.is_proper(&g));
        prop_assert!(lv.component().iter().all(|v| c.color_of(v).is_some_and(|x| x < 2 * t)));
    }

    #[test]
    fn upper_paths_are_shortest_and_induced(g in graphs(2, 12), root in 0usize..12) {
        let lv = Levelling::new(&g, root % g.n()).unwrap();
        for k in 1..lv.depth() {
            let level = lv.level(k).to_vec();
            for (i, &x) in level.iter().enumerate() {
                for &y in &level[i + 1..] {
                    let p = upper_path(&g, &lv, x, y).unwrap();
                    let above: VertexSet = (0..k).fold(VertexSet::new(), |s, j| s | lv.level(j));
                    prop_assert!(g.is_induced_path(p.verts()));
                    prop_assert!(p.interior().iter().all(|&w| above.contains(w)));
                    let d = bfs_dist(&g, above | VertexSet::singleton(x) | VertexSet::singleton(y), x);
                    // x and y may be adjacent, which the BFS sees as well
                    prop_assert_eq!(Some(p.len()), d[y]);
                }
            }
        }
    }

    #[test]
    fn hole_search_matches_subsets(g in graphs(3, 10), lo in 3usize..11, parity in 0usize..3) {
        let parity = [Parity::Even, Parity::Odd, Parity::Any][parity];
        let n = g.n();
        let want = oracle_holes(&g);
        let listed: BTreeSet<u32> = holes(&g, g.vertices(), 3, n)
            .iter()
            .map(|c| c.verts.iter().fold(0, |m, v| m | 1 << v))
            .collect();
        prop_assert_eq!(&listed, &want);
        let lo = lo.min(n);
        let fits = |len: usize| len >= lo && match parity {
            Parity::Even => len % 2 == 0,
            Parity::Odd => len % 2 == 1,
            Parity::Any => true,
        };
        match find_hole(&g, g.vertices(), lo, n, parity) {
            Some(c) => prop_assert!(fits(c.len()) && verify_certificate(&g, &c)),
            None => prop_assert!(!want.iter().any(|m| fits(m.count_ones() as usize))),
        }
    }

    #[test]
    fn membership_is_monotone_between_classes(g in triangle_free(1, 12)) {
        let narrow = class_membership(&g, ClassId::C3_5_2kGe6);
        let wide = class_membership(&g, ClassId::C3_2kGe6);
        if narrow.is_member() {
            prop_assert!(wide.is_member());
        }
        for v in [narrow, wide] {
            if let pcp_core::Verdict::Violation(c) = v {
                prop_assert!(verify_certificate(&g, &c));
            }
        }
    }

    #[test]
    fn parity_paths_through_every_five_hole(g in triangle_free(6, 11)) {
        for c in holes(&g, g.vertices(), 5, 5) {
            let cset = c.vertex_set();
            // the set of all outside neighbors, pruned to an inclusion-minimal dominating set
            let mut s = g.neighbors_of_set(cset) - cset;
            for v in s.iter() {
                let smaller = s - VertexSet::singleton(v);
                if cset.is_subset(&g.neighbors_of_set(smaller)) {
                    s = smaller;
                }
            }
            if !cset.is_subset(&g.neighbors_of_set(s)) {
                continue;
            }
            for t in s.iter() {
                let out = c5_parity_paths(&g, &c, s, t).unwrap();
                prop_assert!(s.contains(out.t_prime) && out.t_prime != t);
                prop_assert_eq!(out.p4.len(), 4);
                prop_assert!([3, 5].contains(&out.p35.len()));
                for p in [&out.p4, &out.p35] {
                    prop_assert_eq!(p.origin(), Some(t));
                    prop_assert_eq!(p.end(), Some(out.t_prime));
                    prop_assert!(p.interior().iter().all(|&w| cset.contains(w)));
                    let v = p.verts();
                    for i in 0..v.len() {
                        for j in i + 1..v.len() {
                            let edge = g.has_edge(v[i], v[j]) && !(s.contains(v[i]) && s.contains(v[j]));
                            prop_assert_eq!(edge, j == i + 1);
                        }
                    }
                }
            }
        }
    }
}

fn check_hole(g: &Graph, c: &HoleCertificate) -> bool {
    verify_certificate(g, c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    /// Every success of every growth validates; failures name a step.
    #[test]
    fn growth_successes_validate(g in triangle_free(8, 24), v in 0usize..24, order in 1usize..3) {
        let v = v % g.n();
        let opts = GrowthOptions::relaxed().unchecked();
        let delta = Exact::from_integer(2);
        let mut gr = Grower::new(&g, opts.clone());
        for (out, strong) in [
            (gr.pcp1_c5free(v, delta).unwrap(), false),
            (gr.pcp_order(v, order, delta).unwrap(), false),
            (gr.strong_pcp1(v, delta).unwrap(), true),
        ] {
            match out {
                GrowthOutcome::Success { pcp } => prop_assert!(validate_pcp(&g, &pcp, strong).unwrap().is_empty()),
                GrowthOutcome::PreconditionUnmet { step, .. } => prop_assert!(!step.is_empty()),
                GrowthOutcome::ClassViolation { certificate } => prop_assert!(check_hole(&g, &certificate)),
            }
        }
        let lv = Levelling::new(&g, v).unwrap();
        for k in 1..lv.depth() {
            let mut gr = Grower::new(&g, opts.clone());
            for (out, strong) in [
                (gr.rooted_pcp_c5free(&lv, k, order, delta).unwrap(), false),
                (gr.strong_rooted_pcp(&lv, k, delta).unwrap(), true),
            ] {
                match out {
                    GrowthOutcome::Success { pcp } => {
                        prop_assert!(validate_rooted_pcp(&g, &lv, &pcp, strong).unwrap().is_empty())
                    }
                    GrowthOutcome::PreconditionUnmet { step, .. } => prop_assert!(!step.is_empty()),
                    GrowthOutcome::ClassViolation { certificate } => prop_assert!(check_hole(&g, &certificate)),
                }
            }
        }
    }

    /// Drivers without entry checks and with every gate at 1: whatever
    /// they emit verifies, and an unmet precondition ends the trace.
    #[test]
    fn driver_certificates_verify(g in triangle_free(5, 30)) {
        let opts = CertifyOptions { overrides: Overrides::all(1), entry_check: false, ..CertifyOptions::default() };
        let mut c = Certifier::new(&g, opts);
        for r in [c.extract_even_hole_c5free().unwrap(), c.extract_even_hole_general().unwrap()] {
            if let Some(cert) = r.certificate() {
                prop_assert!(check_hole(&g, cert));
                if r.status == Status::CounterexampleFound {
                    prop_assert!(cert.is_even_ge6());
                }
            }
            if r.status == Status::PreconditionUnmet {
                prop_assert_eq!(r.trace.last().map(|s| s.stage.as_str()), Some("unmet"));
            }
        }
    }
}
