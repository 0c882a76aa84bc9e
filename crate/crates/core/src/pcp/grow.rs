//! Growth procedures for plain and strong PCPs, rooted or not.
//!
//! Every procedure is a single deterministic pass: at each choice the
//! smallest valid vertex is taken, and the first step whose set comes out
//! empty is reported as [`GrowthOutcome::PreconditionUnmet`]. Successful
//! payloads are validated before they are returned.

use num_traits::One;

use super::{c5_parity_paths, validate_pcp, validate_rooted_pcp, GrowthOutcome, Pcp, RootedPcp};
use crate::bits::VertexSet;
use crate::detection::{
    class_membership_in, find_c5, ClassId, HoleCertificate, Verdict,
};
use crate::error::{Error, Result};
use crate::graph::{colorful_level_with, ExactColorer, Graph, Levelling, Path};
use crate::thresholds::{f, h, h_iter, Exact};
use crate::trace::TraceStep;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GrowthOptions {
    /// Refuse to start unless the numeric hypotheses hold (`δ ≥ 18`,
    /// `h^(ℓ-1)(δ) ≥ 18`). When off they are only recorded in the trace.
    pub enforce_thresholds: bool,
    /// Check class membership on entry.
    pub check_class: bool,
    pub colorer: ExactColorer,
}

impl Default for GrowthOptions {
    fn default() -> Self {
        Self { enforce_thresholds: true, check_class: true, colorer: ExactColorer::with_cap(64) }
    }
}

impl GrowthOptions {
    /// Thresholds recorded but not enforced.
    pub fn relaxed() -> Self {
        Self { enforce_thresholds: false, ..Self::default() }
    }

    pub fn unchecked(mut self) -> Self {
        self.check_class = false;
        self
    }
}

/// Why a pass stopped early.
pub(crate) enum Stop {
    Unmet { step: String, detail: String },
    Violation(HoleCertificate),
    Fail(Error),
}

impl From<Error> for Stop {
    fn from(e: Error) -> Self {
        Stop::Fail(e)
    }
}

pub(crate) type Step<T> = std::result::Result<T, Stop>;

pub(crate) fn unmet<T>(step: &str, detail: impl Into<String>) -> Step<T> {
    Err(Stop::Unmet { step: step.into(), detail: detail.into() })
}

fn ex(n: usize) -> Exact {
    Exact::from_integer(n as i128)
}

/// Growth context: the graph, options and the trace of every step taken.
pub struct Grower<'g> {
    g: &'g Graph,
    opts: GrowthOptions,
    trace: Vec<TraceStep>,
}

impl<'g> Grower<'g> {
    pub fn new(g: &'g Graph, opts: GrowthOptions) -> Self {
        Self { g, opts, trace: Vec::new() }
    }

    pub fn trace(&self) -> &[TraceStep] {
        &self.trace
    }

    pub fn into_trace(self) -> Vec<TraceStep> {
        self.trace
    }

    fn log(&mut self, stage: &str, detail: impl Into<String>) {
        self.trace.push(TraceStep::new(stage, detail));
    }

    fn chi(&self, sub: VertexSet) -> Result<usize> {
        self.opts.colorer.chromatic_number(self.g, sub)
    }

    fn finish<P>(&mut self, r: Step<P>) -> Result<GrowthOutcome<P>> {
        match r {
            Ok(pcp) => Ok(GrowthOutcome::Success { pcp }),
            Err(Stop::Unmet { step, detail }) => {
                self.log("unmet", format!("{step}: {detail}"));
                Ok(GrowthOutcome::PreconditionUnmet { step, detail })
            }
            Err(Stop::Violation(certificate)) => {
                self.log("class violation", format!("{:?} {:?}", certificate.kind, certificate.verts));
                Ok(GrowthOutcome::ClassViolation { certificate })
            }
            Err(Stop::Fail(e)) => Err(e),
        }
    }

    fn entry_check(&mut self, sub: VertexSet, cls: ClassId) -> Step<()> {
        if !self.opts.check_class {
            return Ok(());
        }
        match class_membership_in(self.g, sub, cls) {
            Verdict::Member => Ok(()),
            Verdict::Violation(c) => Err(Stop::Violation(c)),
        }
    }

    /// Turns a failed consistency check into a class violation found in
    /// `local` (or else anywhere in `domain`), or into an internal error
    /// when the graph really is in the class.
    pub(crate) fn explain(&mut self, local: VertexSet, domain: VertexSet, strong: bool, what: String) -> Stop {
        let cls = if strong { ClassId::C3_2kGe6 } else { ClassId::C3_5_2kGe6 };
        for sub in [local, domain] {
            if let Verdict::Violation(c) = class_membership_in(self.g, sub, cls) {
                self.log("consistency", format!("{what}; explained by {:?} {:?}", c.kind, c.verts));
                return Stop::Violation(c);
            }
        }
        Stop::Fail(Error::InternalConsistency(what))
    }

    pub fn pcp1_c5free(&mut self, v: usize, delta: Exact) -> Result<GrowthOutcome<Pcp>> {
        self.g.check_vertex(v)?;
        let dom = self.g.component_of(self.g.vertices(), v);
        let r = self
            .entry_check(self.g.vertices(), ClassId::C3_5_2kGe6)
            .and_then(|()| self.connected_entry(v))
            .and_then(|()| self.pcp1_in(dom, v, &delta, false));
        self.finish(r)
    }

    pub fn pcp_order(&mut self, x1: usize, order: usize, delta: Exact) -> Result<GrowthOutcome<Pcp>> {
        self.g.check_vertex(x1)?;
        let dom = self.g.component_of(self.g.vertices(), x1);
        let r = self
            .entry_check(self.g.vertices(), ClassId::C3_5_2kGe6)
            .and_then(|()| self.connected_entry(x1))
            .and_then(|()| self.order_in(dom, x1, order, &delta));
        self.finish(r)
    }

    pub fn rooted_pcp_c5free(&mut self, lv: &Levelling, k: usize, order: usize, delta: Exact) -> Result<GrowthOutcome<RootedPcp>> {
        let r = self
            .entry_check(self.g.vertices(), ClassId::C3_5_2kGe6)
            .and_then(|()| self.rooted_in(lv, k, lv.level(k), order, &delta, false));
        self.finish(r)
    }

    /// Rooted growth restricted to `sub ⊆ N_k`.
    pub fn rooted_pcp_c5free_in(
        &mut self,
        lv: &Levelling,
        k: usize,
        sub: VertexSet,
        order: usize,
        delta: Exact,
    ) -> Result<GrowthOutcome<RootedPcp>> {
        let r = self
            .entry_check(self.g.vertices(), ClassId::C3_5_2kGe6)
            .and_then(|()| self.rooted_in(lv, k, sub & lv.level(k), order, &delta, false));
        self.finish(r)
    }

    pub fn strong_pcp1(&mut self, v: usize, delta: Exact) -> Result<GrowthOutcome<Pcp>> {
        self.g.check_vertex(v)?;
        let dom = self.g.component_of(self.g.vertices(), v);
        let r = self
            .entry_check(self.g.vertices(), ClassId::C3_2kGe6)
            .and_then(|()| self.connected_entry(v))
            .and_then(|()| self.pcp1_in(dom, v, &delta, true));
        self.finish(r)
    }

    pub fn strong_rooted_pcp(&mut self, lv: &Levelling, k: usize, delta: Exact) -> Result<GrowthOutcome<RootedPcp>> {
        let r = self
            .entry_check(self.g.vertices(), ClassId::C3_2kGe6)
            .and_then(|()| self.rooted_in(lv, k, lv.level(k), 1, &delta, true));
        self.finish(r)
    }

    /// Strong rooted growth restricted to `sub ⊆ N_k`.
    pub fn strong_rooted_pcp_in(
        &mut self,
        lv: &Levelling,
        k: usize,
        sub: VertexSet,
        delta: Exact,
    ) -> Result<GrowthOutcome<RootedPcp>> {
        let r = self
            .entry_check(self.g.vertices(), ClassId::C3_2kGe6)
            .and_then(|()| self.rooted_in(lv, k, sub & lv.level(k), 1, &delta, true));
        self.finish(r)
    }

    fn connected_entry(&mut self, v: usize) -> Step<()> {
        if self.g.is_connected(self.g.vertices()) {
            Ok(())
        } else {
            self.log("connected", format!("graph disconnected, working in the component of {v}"));
            Ok(())
        }
    }

    fn order_in(&mut self, dom: VertexSet, x1: usize, order: usize, delta: &Exact) -> Step<Pcp> {
        if order == 0 {
            return unmet("order", "order must be at least 1");
        }
        let it = h_iter(delta.clone(), order - 1);
        let eighteen = ex(18);
        if it < eighteen {
            if self.opts.enforce_thresholds {
                return unmet("iterate threshold", format!("h^({})({delta}) = {it} < 18", order - 1));
            }
            self.log("iterate threshold", format!("waived: h^({})({delta}) = {it} < 18", order - 1));
        }
        let first = self.pcp1_in(dom, x1, delta, false)?;
        if order == 1 {
            return Ok(first);
        }
        let x2 = first.entries[1];
        let next_delta = h(delta.clone());
        self.log("recurse", format!("order {} inside H from {x2} with delta {next_delta}", order - 1));
        let rest = self.order_in(first.last, x2, order - 1, &next_delta)?;
        let mut blocks = first.blocks.clone();
        blocks.extend(rest.blocks.iter().copied());
        let mut connectors = first.connectors.clone();
        connectors.extend(rest.connectors.iter().cloned());
        let mut entries = vec![x1];
        entries.extend(rest.entries.iter().copied());
        let mut exits = first.exits.clone();
        exits.extend(rest.exits.iter().copied());
        let glued = Pcp {
            order,
            blocks,
            last: rest.last,
            connectors,
            origin: x1,
            entries,
            exits,
            leftovers: rest.leftovers,
        };
        let bound = h_iter(delta.clone(), order);
        if ex(glued.leftovers) < bound {
            let what = format!("leftovers {} below h^({order})({delta}) = {bound}", glued.leftovers);
            return Err(self.explain(glued.vertex_set(), dom, false, what));
        }
        self.validated(glued, dom, false)
    }

    fn validated(&mut self, p: Pcp, dom: VertexSet, strong: bool) -> Step<Pcp> {
        let violations = validate_pcp(self.g, &p, strong)?;
        if violations.is_empty() {
            Ok(p)
        } else {
            let what = format!("grown PCP fails validation: {violations:?}");
            Err(self.explain(p.vertex_set(), dom, strong, what))
        }
    }

    fn rooted_in(
        &mut self,
        lv: &Levelling,
        k: usize,
        level: VertexSet,
        order: usize,
        delta: &Exact,
        strong: bool,
    ) -> Step<RootedPcp> {
        if k == 0 || k >= lv.depth() {
            return unmet("level", format!("level {k} has no level above it inside the levelling"));
        }
        let chi = self.chi(level)?;
        if ex(chi) < delta.clone() + Exact::one() {
            return unmet("chromatic", format!("chi(N_{k}) = {chi} < {delta} + 1"));
        }
        let nk1 = self.g.major_component_with(&self.opts.colorer, level)?;
        let u = nk1.first().expect("major component of a nonempty set");
        let u_root = (self.g.neighbors(u) & lv.level(k - 1))
            .first()
            .ok_or_else(|| Stop::Fail(Error::InternalConsistency(format!("{u} has no parent"))))?;
        let rest = nk1 - self.g.neighbors(u_root);
        let nk2 = self.g.major_component_with(&self.opts.colorer, rest)?;
        if nk2.is_empty() {
            return unmet("N''_k nonempty", format!("N'_k is dominated by the root {u_root}"));
        }
        let z = (self.g.neighbors(u_root) & nk1)
            .iter()
            .find(|&z| self.g.neighbors(z).intersects(&nk2))
            .ok_or_else(|| Stop::Fail(Error::InternalConsistency("no z next to N''_k".into())))?;
        self.log(
            "root",
            format!("u = {u}, root u' = {u_root}, |N''_k| = {}, origin z = {z}", nk2.len()),
        );
        let dom = nk2 | VertexSet::singleton(z);
        let pcp = if strong {
            self.pcp1_in(dom, z, delta, true)?
        } else {
            self.order_in(dom, z, order, delta)?
        };
        let rp = RootedPcp { pcp, root: u_root, level: k };
        let violations = validate_rooted_pcp(self.g, lv, &rp, strong)?;
        if violations.is_empty() {
            Ok(rp)
        } else {
            let what = format!("rooted PCP fails validation: {violations:?}");
            Err(self.explain(rp.pcp.vertex_set() | VertexSet::singleton(u_root), lv.component(), strong, what))
        }
    }

    /// Order-1 growth inside `G[dom]` from `v`, plain or strong.
    fn pcp1_in(&mut self, dom: VertexSet, v: usize, delta: &Exact, strong: bool) -> Step<Pcp> {
        let g = self.g;
        let chi = self.chi(dom)?;
        if ex(chi) < *delta {
            return unmet("chromatic", format!("chi = {chi} < delta = {delta}"));
        }
        if strong {
            self.log("delta", format!("delta = {delta}; the lemma assumes delta >= 2c'"));
        } else if *delta < ex(18) {
            if self.opts.enforce_thresholds {
                return unmet("delta threshold", format!("delta = {delta} < 18"));
            }
            self.log("delta threshold", format!("waived: delta = {delta} < 18"));
        }
        let lv = Levelling::within(g, dom, v)?;
        let (k, _) = colorful_level_with(&self.opts.colorer, g, &lv)?;
        let nk = lv.level(k);
        let nk1 = g.major_component_with(&self.opts.colorer, nk)?;
        self.log(
            "levelling",
            format!("root {v}, {} levels, colorful level k = {k}, |N'_k| = {}", lv.depth(), nk1.len()),
        );

        let (seed, z_prime, paths_for): (VertexSet, VertexSet, Box<dyn Fn(&mut Self, usize) -> Step<(Path, Path)>>) =
            if strong {
                let c = match find_c5(g, nk1) {
                    Some(c) => c,
                    None => return unmet("no C5 found", format!("N'_{k} has no induced C5")),
                };
                if k == 0 {
                    return unmet("level", "C5 in level 0");
                }
                let d = min_dominating_set(g, c.vertex_set(), lv.level(k - 1))
                    .ok_or_else(|| Stop::Fail(Error::InternalConsistency("hole has no dominating set above".into())))?;
                self.log("hole", format!("C = {:?}, D = {:?}", c.verts, d.to_vec()));
                let cset = c.vertex_set();
                let zp = g.neighbors_of_set(d | cset) & nk1;
                let lv2 = lv.clone();
                (
                    cset,
                    zp,
                    Box::new(move |s: &mut Self, z| s.strong_paths(&lv2, &c, d, z, dom)),
                )
            } else {
                let Some((x, y)) = g.edges_within(nk1).next() else {
                    return unmet("edge in N'_k", format!("N'_{k} is stable"));
                };
                if k == 0 {
                    return unmet("level", "edge in level 0");
                }
                let (xp, yp) = match (lv.parent(g, x), lv.parent(g, y)) {
                    (Some(a), Some(b)) => (a, b),
                    _ => return Err(Stop::Fail(Error::InternalConsistency("missing lift".into()))),
                };
                self.log("edge", format!("xy = {x}{y}, lifts x' = {xp}, y' = {yp}"));
                let four: VertexSet = [x, y, xp, yp].iter().collect();
                let zp = g.neighbors_of_set(four) & nk1;
                let lv2 = lv.clone();
                (
                    [x, y].iter().collect(),
                    zp,
                    Box::new(move |s: &mut Self, z| s.plain_paths(&lv2, x, y, xp, yp, z, dom)),
                )
            };
        let z_set = z_prime - seed;
        let rest = nk1 - z_prime;
        if rest.is_empty() {
            return unmet("N'_k \\ Z' nonempty", format!("Z' covers N'_{k} ({} vertices)", nk1.len()));
        }
        let m1 = g.major_component_with(&self.opts.colorer, rest)?;
        self.log("Z'", format!("|Z'| = {}, |M_1| = {}", z_prime.len(), m1.len()));

        let mut tuned = None;
        for z in z_set.iter() {
            if !g.neighbors(z).intersects(&m1) {
                continue;
            }
            if let Some(t) = self.fine_tune(z, m1)? {
                tuned = Some(t);
                break;
            }
        }
        let Some((z, z1, z2, m3)) = tuned else {
            return unmet("fine tuning", "no z in Z admits z_1, z_2 with nonempty M_2, M_3");
        };
        self.log("fine tuning", format!("z = {z}, z_1 = {z1}, z_2 = {z2}, |M_3| = {}", m3.len()));

        let (p, pp) = paths_for(self, z)?;
        for q in [&p, &pp] {
            if !g.is_induced_path(q.verts()) {
                let what = format!("constructed path {:?} is not induced", q.verts());
                return Err(self.explain(q.vertex_set(), dom, strong, what));
            }
        }
        if p.len() % 2 == pp.len() % 2 {
            let what = format!("paths {:?} and {:?} have equal parity", p.verts(), pp.verts());
            return Err(self.explain(p.vertex_set() | pp.vertex_set(), dom, strong, what));
        }
        let mut block = p.vertex_set() | pp.vertex_set();
        if strong {
            block |= seed;
        }
        let block_chi = self.chi(block)?;
        if block_chi > 4 {
            let what = format!("chi(G_1) = {block_chi} > 4");
            return Err(self.explain(block, dom, strong, what));
        }
        self.log("paths", format!("P = {:?}, P' = {:?}, chi(G_1) = {block_chi}", p.verts(), pp.verts()));

        let last = m3 | VertexSet::singleton(z2);
        let leftovers = self.chi(last)?;
        let pcp = Pcp {
            order: 1,
            blocks: vec![block],
            last,
            connectors: vec![Path::new(vec![z, z1, z2])],
            origin: v,
            entries: vec![v, z2],
            exits: vec![z],
            leftovers,
        };
        let bound = if strong { f(delta.clone()) } else { h(delta.clone()) };
        if ex(leftovers) < bound {
            let what = format!("leftovers {leftovers} below the bound {bound}");
            return Err(self.explain(pcp.vertex_set() | z_prime, dom, strong, what));
        }
        self.validated(pcp, dom, strong)
    }

    /// `z_1 ∈ M_1 ∩ N(z)` next to a major component `M_2` of `M_1 \ N(z)`,
    /// and `z_2 ∈ M_2 ∩ N(z_1)` next to a major component `M_3` of
    /// `M_2 \ N(z_1)`.
    fn fine_tune(&mut self, z: usize, m1: VertexSet) -> Step<Option<(usize, usize, usize, VertexSet)>> {
        let g = self.g;
        let m2 = g.major_component_with(&self.opts.colorer, m1 - g.neighbors(z))?;
        if m2.is_empty() {
            return Ok(None);
        }
        let Some(z1) = (m1 & g.neighbors(z)).iter().find(|&w| g.neighbors(w).intersects(&m2)) else {
            return Ok(None);
        };
        let m3 = g.major_component_with(&self.opts.colorer, m2 - g.neighbors(z1))?;
        if m3.is_empty() {
            return Ok(None);
        }
        let Some(z2) = (m2 & g.neighbors(z1)).iter().find(|&w| g.neighbors(w).intersects(&m3)) else {
            return Ok(None);
        };
        Ok(Some((z, z1, z2, m3)))
    }

    /// Cases (i) and (ii) of the C5-free construction.
    #[allow(clippy::too_many_arguments)]
    fn plain_paths(
        &mut self,
        lv: &Levelling,
        x: usize,
        y: usize,
        xp: usize,
        yp: usize,
        z: usize,
        dom: VertexSet,
    ) -> Step<(Path, Path)> {
        let g = self.g;
        let desc = |w: usize| lv.descending_path(g, w);
        if g.has_edge(z, x) || g.has_edge(z, y) {
            let (x, y, xp, yp) = if g.has_edge(z, x) { (x, y, xp, yp) } else { (y, x, yp, xp) };
            self.log("case", format!("(i): z sees x = {x}"));
            let mut p = desc(xp)?;
            p.push(x);
            p.push(z);
            let mut pp = desc(yp)?;
            if g.has_edge(yp, z) {
                pp.push(z);
            } else {
                pp.push(y);
                pp.push(x);
                pp.push(z);
            }
            Ok((p, pp))
        } else {
            let (a, b) = (g.has_edge(z, xp), g.has_edge(z, yp));
            if a && b {
                let set: VertexSet = [z, x, y, xp, yp].iter().collect();
                let what = format!("z = {z} sees both lifts {xp} and {yp}");
                return Err(self.explain(set, dom, false, what));
            }
            let (x, y, xp, yp) = if a { (x, y, xp, yp) } else { (y, x, yp, xp) };
            self.log("case", format!("(ii): z sees x' = {xp}"));
            let mut p = desc(xp)?;
            p.push(z);
            let mut pp = desc(yp)?;
            if g.has_edge(yp, xp) {
                pp.push(xp);
            } else {
                pp.push(y);
                pp.push(x);
                pp.push(xp);
            }
            pp.push(z);
            Ok((p, pp))
        }
    }

    /// Cases (i) and (ii) of the strong construction.
    fn strong_paths(
        &mut self,
        lv: &Levelling,
        c: &HoleCertificate,
        d: VertexSet,
        z: usize,
        dom: VertexSet,
    ) -> Step<(Path, Path)> {
        let g = self.g;
        let desc = |w: usize| lv.descending_path(g, w);
        let cset = c.vertex_set();
        if let Some(x) = (g.neighbors(z) & cset).first() {
            let i = c.verts.iter().position(|&w| w == x).expect("x on the hole");
            let y = c.verts[(i + 1) % 5].min(c.verts[(i + 4) % 5]);
            let xp = (g.neighbors(x) & d).first();
            let yp = (g.neighbors(y) & d).first();
            let (Some(xp), Some(yp)) = (xp, yp) else {
                return Err(Stop::Fail(Error::InternalConsistency("D does not dominate C".into())));
            };
            self.log("case", format!("(i): z sees x = {x} on C, y = {y}, x' = {xp}, y' = {yp}"));
            let mut p = desc(xp)?;
            p.push(x);
            p.push(z);
            let mut pp = desc(yp)?;
            if g.has_edge(yp, z) {
                pp.push(z);
            } else {
                pp.push(y);
                pp.push(x);
                pp.push(z);
            }
            Ok((p, pp))
        } else {
            let Some(xp) = (g.neighbors(z) & d).first() else {
                return Err(Stop::Fail(Error::InternalConsistency(format!("{z} sees neither C nor D"))));
            };
            let pp_paths = match c5_parity_paths(g, c, d, xp) {
                Ok(r) => r,
                Err(Error::ViolatedPrecondition(m)) | Err(Error::InternalConsistency(m)) => {
                    let what = format!("parity paths through C failed: {m}");
                    return Err(self.explain(cset | d, dom, true, what));
                }
                Err(e) => return Err(Stop::Fail(e)),
            };
            let yp = pp_paths.t_prime;
            self.log("case", format!("(ii): z sees x' = {xp} in D, t' = {yp}"));
            let mut p = desc(xp)?;
            p.push(z);
            let mut pp = desc(yp)?;
            if g.has_edge(yp, xp) {
                pp.push(xp);
            } else {
                for &w in pp_paths.p35.reversed().verts().iter().skip(1) {
                    pp.push(w);
                }
            }
            pp.push(z);
            Ok((p, pp))
        }
    }
}

/// Smallest dominating set of `target` drawn from `pool`, by size then
/// lexicographically.
pub(crate) fn min_dominating_set(g: &Graph, target: VertexSet, pool: VertexSet) -> Option<VertexSet> {
    let cands: Vec<usize> = (g.neighbors_of_set(target) & pool).to_vec();
    for size in 1..=target.len().min(cands.len()) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let set: VertexSet = idx.iter().map(|&i| cands[i]).collect();
            if target.is_subset(&g.neighbors_of_set(set)) {
                return Some(set);
            }
            // next combination in lexicographic order
            let mut i = size;
            while i > 0 && idx[i - 1] == cands.len() - size + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    if target.is_empty() {
        Some(VertexSet::new())
    } else {
        None
    }
}

fn delta_of(d: usize) -> Exact {
    ex(d)
}

/// Order-1 PCP from `v` in a graph of `C_{3,5,2k≥6}`, with the default
/// options.
pub fn grow_pcp1_c5free(g: &Graph, v: usize, delta: usize) -> Result<GrowthOutcome<Pcp>> {
    Grower::new(g, GrowthOptions::default()).pcp1_c5free(v, delta_of(delta))
}

/// Order-`ℓ` PCP from `x1` by repeated growth inside the last block.
pub fn grow_pcp_order(g: &Graph, x1: usize, order: usize, delta: usize) -> Result<GrowthOutcome<Pcp>> {
    Grower::new(g, GrowthOptions::default()).pcp_order(x1, order, delta_of(delta))
}

pub fn grow_rooted_pcp_c5free(
    g: &Graph,
    lv: &Levelling,
    k: usize,
    order: usize,
    delta: usize,
) -> Result<GrowthOutcome<RootedPcp>> {
    Grower::new(g, GrowthOptions::default()).rooted_pcp_c5free(lv, k, order, delta_of(delta))
}

/// Strong order-1 PCP. The `δ ≥ 2c'` hypothesis is only recorded.
pub fn grow_strong_pcp1(g: &Graph, v: usize, delta: usize) -> Result<GrowthOutcome<Pcp>> {
    Grower::new(g, GrowthOptions::default()).strong_pcp1(v, delta_of(delta))
}

pub fn grow_strong_rooted_pcp(g: &Graph, lv: &Levelling, k: usize, delta: usize) -> Result<GrowthOutcome<RootedPcp>> {
    Grower::new(g, GrowthOptions::default()).strong_rooted_pcp(lv, k, delta_of(delta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::graph::bfs_levelling;

    #[test]
    fn low_chromatic_number_is_reported() {
        let c7 = cycle(7);
        let out = grow_pcp1_c5free(&c7, 0, 4).unwrap();
        assert_eq!(out.unmet_step(), Some("chromatic"));
    }

    #[test]
    fn c4_cannot_host_the_construction() {
        let c4 = cycle(4);
        let out = grow_pcp1_c5free(&c4, 0, 2).unwrap();
        assert!(out.unmet_step().is_some(), "{out:?}");
        let relaxed = Grower::new(&c4, GrowthOptions::relaxed()).pcp1_c5free(0, ex(2)).unwrap();
        assert!(relaxed.unmet_step().is_some(), "{relaxed:?}");
    }

    #[test]
    fn iterate_threshold_refuses_order_three_at_100() {
        let k23 = complete_bipartite(2, 3);
        let out = grow_pcp_order(&k23, 0, 3, 100).unwrap();
        assert_eq!(out.unmet_step(), Some("iterate threshold"));
    }

    #[test]
    fn out_of_class_input_is_a_class_violation() {
        let c5 = cycle(5);
        let out = grow_pcp1_c5free(&c5, 0, 1).unwrap();
        assert!(matches!(out, GrowthOutcome::ClassViolation { .. }));
    }

    #[test]
    fn rooted_needs_chromatic_level() {
        let c7 = cycle(7);
        let lv = bfs_levelling(&c7, 0).unwrap();
        let out = grow_rooted_pcp_c5free(&c7, &lv, 3, 1, 2).unwrap();
        assert_eq!(out.unmet_step(), Some("chromatic"));
    }

    #[test]
    fn strong_growth_without_c5() {
        let k23 = complete_bipartite(2, 3);
        let out = grow_strong_pcp1(&k23, 0, 1).unwrap();
        assert_eq!(out.unmet_step(), Some("no C5 found"));
    }

    // root 0, level path w_j = 1 + j, private parent 1 + len + j of w_j
    fn layered(len: usize) -> Graph {
        let mut g = Graph::new(1 + 2 * len);
        for j in 0..len {
            g.add_edge(0, 1 + len + j);
            g.add_edge(1 + len + j, 1 + j);
            if j + 1 < len {
                g.add_edge(1 + j, 2 + j);
            }
        }
        g
    }

    #[test]
    fn layered_growth_takes_case_one() {
        let g = layered(8);
        let opts = GrowthOptions::relaxed().unchecked();
        let mut grower = Grower::new(&g, opts);
        let pcp = grower.pcp1_c5free(0, ex(3)).unwrap().success().expect("grows");
        assert_eq!(pcp.entries, vec![0, 5]);
        assert_eq!(pcp.exits, vec![3]);
        assert_eq!(pcp.connectors[0].verts(), &[3, 4, 5]);
        assert_eq!(pcp.blocks[0].to_vec(), vec![0, 1, 2, 3, 9, 10]);
        assert_eq!(pcp.last.to_vec(), (5..=8).collect::<Vec<_>>());
        assert_eq!(pcp.leftovers, 2);
        assert!(validate_pcp(&g, &pcp, false).unwrap().is_empty());
        assert!(grower.trace().iter().any(|s| s.stage == "case" && s.detail.starts_with("(i)")));

        // the same graph has 6-holes, so the checked run refuses it
        let checked = Grower::new(&g, GrowthOptions::relaxed()).pcp1_c5free(0, ex(3)).unwrap();
        assert!(matches!(checked, GrowthOutcome::ClassViolation { .. }));
        // and strict thresholds refuse a small delta
        let strict = Grower::new(&g, GrowthOptions::default().unchecked()).pcp1_c5free(0, ex(3)).unwrap();
        assert_eq!(strict.unmet_step(), Some("delta threshold"));
    }

    // root 0, hole c_i = 1 + i, tail t_j = 6 + j with t_0 ~ c_0, all with
    // private parents
    fn hole_with_tail(len: usize) -> Graph {
        let n = 6 + len;
        let mut g = Graph::new(n + 5 + len);
        for i in 0..5 {
            g.add_edge(1 + i, 1 + (i + 1) % 5);
        }
        g.add_edge(1, 6);
        for j in 0..len.saturating_sub(1) {
            g.add_edge(6 + j, 7 + j);
        }
        for v in 1..n {
            g.add_edge(0, n + v - 1);
            g.add_edge(n + v - 1, v);
        }
        g
    }

    #[test]
    fn strong_growth_around_a_hole() {
        let g = hole_with_tail(6);
        let opts = GrowthOptions::relaxed().unchecked();
        let pcp = Grower::new(&g, opts).strong_pcp1(0, ex(3)).unwrap().success().expect("grows");
        assert!(validate_pcp(&g, &pcp, true).unwrap().is_empty());
        assert!((1..=5).all(|c| pcp.blocks[0].contains(c)));
        assert_eq!(pcp.exits, vec![6]);
        assert_eq!(pcp.connectors[0].verts(), &[6, 7, 8]);
        assert_eq!(pcp.leftovers, 2);
    }

    #[test]
    fn dominating_sets_are_minimum() {
        let g = petersen();
        let outer: VertexSet = (0..5).collect();
        let d = min_dominating_set(&g, outer, (5..10).collect()).unwrap();
        assert_eq!(d.len(), 5);
        let d = min_dominating_set(&g, outer, g.vertices() - outer).unwrap();
        assert_eq!(d.len(), 5);
        let c6 = cycle(6);
        let d = min_dominating_set(&c6, [0usize, 2].iter().collect(), c6.vertices()).unwrap();
        assert_eq!(d.to_vec(), vec![1]);
    }
}
