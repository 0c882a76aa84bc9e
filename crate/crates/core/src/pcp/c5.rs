//! Odd and even paths through a 5-hole and a minimal dominating set.

use serde::{Deserialize, Serialize};

use crate::bits::VertexSet;
use crate::detection::{verify_certificate, HoleCertificate, HoleKind};
use crate::error::{Error, Result};
use crate::graph::{Graph, Path};

/// `t'` together with an induced `tt'`-path of length 4 and one of length
/// 3 or 5, both with interior in the 5-hole.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct C5ParityPaths {
    pub t_prime: usize,
    pub p4: Path,
    pub p35: Path,
}

/// Whether `verts` is an induced path of `g` once edges inside `s` are
/// deleted.
pub(crate) fn induced_ignoring(g: &Graph, verts: &[usize], s: VertexSet) -> bool {
    let m = verts.len();
    if verts.iter().collect::<VertexSet>().len() != m {
        return false;
    }
    for i in 0..m {
        for j in i + 1..m {
            let (a, b) = (verts[i], verts[j]);
            let edge = g.has_edge(a, b) && !(s.contains(a) && s.contains(b));
            if edge != (j == i + 1) {
                return false;
            }
        }
    }
    true
}

/// Labels the hole from a neighbor `v_1` of `t` so that `t v_3 ∉ E`, takes
/// `t'` dominating `v_3`, and returns `t v_1 v_2 v_3 t'` together with
/// `t v_1 v_5 v_4 v_3 t'` or its length-3 shortcut. Edges inside `s` are
/// ignored throughout.
///
/// Choices run in a fixed order: `v_1` in cycle order, forward labelling
/// before backward, `t'` ascending. The first choice whose two paths are
/// both induced wins.
pub fn c5_parity_paths(g: &Graph, c5: &HoleCertificate, s: VertexSet, t: usize) -> Result<C5ParityPaths> {
    check_preconditions(g, c5, s, t)?;
    let c = &c5.verts;
    for (i, &v1) in c.iter().enumerate() {
        if !g.has_edge(t, v1) {
            continue;
        }
        for dir in [1usize, 4] {
            let lab = |j: usize| c[(i + dir * j) % 5];
            let (v2, v3, v4, v5) = (lab(1), lab(2), lab(3), lab(4));
            if g.has_edge(t, v3) {
                continue;
            }
            for tp in (g.neighbors(v3) & s).iter() {
                if tp == t {
                    continue;
                }
                let p4 = vec![t, v1, v2, v3, tp];
                if !induced_ignoring(g, &p4, s) {
                    continue;
                }
                let candidates = [
                    vec![t, v1, v5, v4, v3, tp],
                    vec![t, v4, v3, tp],
                    vec![t, v1, v5, tp],
                ];
                if let Some(p35) = candidates.into_iter().find(|p| is_path(g, p) && induced_ignoring(g, p, s)) {
                    return Ok(C5ParityPaths { t_prime: tp, p4: Path::new(p4), p35: Path::new(p35) });
                }
            }
        }
    }
    Err(Error::InternalConsistency(format!(
        "no labelling of {c:?} yields parity paths from {t}"
    )))
}

fn is_path(g: &Graph, verts: &[usize]) -> bool {
    verts.windows(2).all(|w| g.has_edge(w[0], w[1]))
}

fn check_preconditions(g: &Graph, c5: &HoleCertificate, s: VertexSet, t: usize) -> Result<()> {
    let bad = |m: String| Err(Error::ViolatedPrecondition(m));
    if c5.kind != HoleKind::C5 || !verify_certificate(g, c5) {
        return bad(format!("{:?} is not an induced C5", c5.verts));
    }
    let cset = c5.vertex_set();
    if s.intersects(&cset) {
        return bad("dominating set meets the hole".into());
    }
    if !s.contains(t) {
        return bad(format!("{t} is not in the dominating set"));
    }
    if !s.is_subset(&g.vertices()) {
        return bad("dominating set out of range".into());
    }
    if !cset.is_subset(&g.neighbors_of_set(s)) {
        return bad("set does not dominate the hole".into());
    }
    for w in s.iter() {
        let mut rest = s;
        rest.remove(w);
        if cset.is_subset(&g.neighbors_of_set(rest)) {
            return bad(format!("dominating set is not minimal: {w} is redundant"));
        }
    }
    // triangle-freeness where it matters, S-internal edges deleted
    let dom = cset | s;
    for a in dom.iter() {
        for b in (g.neighbors(a) & dom).above(a).iter() {
            if s.contains(a) && s.contains(b) {
                continue;
            }
            let common = g.neighbors(a) & g.neighbors(b) & dom;
            if common
                .iter()
                .any(|c| !(s.contains(a) && s.contains(c)) && !(s.contains(b) && s.contains(c)))
            {
                return bad(format!("triangle through {a}-{b}"));
            }
        }
    }
    Ok(())
}
