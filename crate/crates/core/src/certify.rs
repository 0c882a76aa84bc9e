//! Executable lemmas: the rich-vertex property, the shadow bounds, the
//! active-lift bound and the two end-to-end drivers.
//!
//! Each check either confirms its statement on the given input, reports the
//! first step whose hypothesis is not met, or runs the contradiction branch
//! of the argument and returns the even hole it closes. Every emitted hole
//! is verified against the input graph; a construction that does not
//! verify falls back to an exhaustive search over the vertices it used.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::bits::VertexSet;
use crate::detection::{
    class_membership, class_membership_in, find_c5, find_even_hole_ge6, verify_certificate, ClassId,
    HoleCertificate, Verdict,
};
use crate::error::{Error, Result};
use crate::graph::{colorful_level_with, for_each_induced_path, upper_path, ExactColorer, Graph, Levelling, Path};
use crate::pcp::{
    active_lift, c5_parity_paths, parity_paths_in_block, validate_rooted_pcp, Grower, GrowthOptions, GrowthOutcome,
    RootedPcp,
};
use crate::thresholds::{f, g as g_map, h_iter, thresholds, Exact, Scalar, ThresholdsExact};
use crate::trace::TraceStep;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LemmaId {
    RichVertex,
    StableShadowC5free,
    StableShadowGeneral,
    ActiveLiftBound,
    ShadowBoundC5free,
    ShadowBoundGeneral,
    ExtractEvenHoleC5free,
    ExtractEvenHoleGeneral,
}

impl LemmaId {
    pub const ALL: [LemmaId; 8] = [
        LemmaId::RichVertex,
        LemmaId::StableShadowC5free,
        LemmaId::StableShadowGeneral,
        LemmaId::ActiveLiftBound,
        LemmaId::ShadowBoundC5free,
        LemmaId::ShadowBoundGeneral,
        LemmaId::ExtractEvenHoleC5free,
        LemmaId::ExtractEvenHoleGeneral,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            LemmaId::RichVertex => "rich_vertex",
            LemmaId::StableShadowC5free => "stable_shadow_c5free",
            LemmaId::StableShadowGeneral => "stable_shadow_general",
            LemmaId::ActiveLiftBound => "active_lift_bound",
            LemmaId::ShadowBoundC5free => "shadow_bound_c5free",
            LemmaId::ShadowBoundGeneral => "shadow_bound_general",
            LemmaId::ExtractEvenHoleC5free => "extract_even_hole_c5free",
            LemmaId::ExtractEvenHoleGeneral => "extract_even_hole_general",
        }
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for LemmaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LemmaId::ALL
            .into_iter()
            .find(|l| l.tag() == s)
            .ok_or_else(|| Error::Parse(format!("unknown lemma {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    PreconditionUnmet,
    /// The contradiction branch closed an even hole of length at least 6.
    CounterexampleFound,
    /// The input is outside the class the statement is about.
    ClassViolation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    Hole(HoleCertificate),
    Chromatic { value: usize },
    Vertices { vertices: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub lemma: LemmaId,
    pub status: Status,
    /// The failing step when the status is `PreconditionUnmet`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub trace: Vec<TraceStep>,
}

impl LemmaReport {
    pub fn is_counterexample(&self) -> bool {
        self.status == Status::CounterexampleFound
    }

    pub fn certificate(&self) -> Option<&HoleCertificate> {
        match &self.witness {
            Some(Witness::Hole(c)) => Some(c),
            _ => None,
        }
    }

    /// A counterexample whose certificate is an induced even cycle of
    /// length at least 6 in `g`.
    pub fn is_verified_counterexample(&self, g: &Graph) -> bool {
        self.is_counterexample()
            && self.certificate().is_some_and(|c| c.is_even_ge6() && verify_certificate(g, c))
    }
}

/// Stage gates of the drivers that may be overridden.
pub const STAGES: [&str; 5] = ["chi", "lift", "lift2", "split", "gamma"];

/// Threshold overrides keyed by stage name.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Overrides(BTreeMap<String, Exact>);

impl Overrides {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, stage: &str, value: Exact) -> Result<()> {
        if !STAGES.contains(&stage) {
            return Err(Error::Parse(format!("unknown stage {stage:?}, expected one of {STAGES:?}")));
        }
        self.0.insert(stage.to_string(), value);
        Ok(())
    }

    pub fn with(mut self, stage: &str, value: i128) -> Self {
        self.set(stage, Exact::from_integer(value)).expect("known stage");
        self
    }

    /// Every gate set to `value`.
    pub fn all(value: i128) -> Self {
        STAGES.iter().fold(Self::new(), |o, s| o.with(s, value))
    }

    pub fn get(&self, stage: &str) -> Option<&Exact> {
        self.0.get(stage)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Parses `stage=value` where value is an integer or `p/q`.
    pub fn parse_assignment(s: &str) -> Result<(String, Exact)> {
        let (stage, value) = s
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected stage=value, got {s:?}")))?;
        let stage = stage.trim();
        if !STAGES.contains(&stage) {
            return Err(Error::Parse(format!("unknown stage {stage:?}, expected one of {STAGES:?}")));
        }
        let value: Exact = value
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad value in {s:?}")))?;
        Ok((stage.to_string(), value))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifyOptions {
    pub overrides: Overrides,
    /// Drivers check class membership of the whole input first.
    pub entry_check: bool,
    pub colorer: ExactColorer,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        Self { overrides: Overrides::new(), entry_check: true, colorer: ExactColorer::with_cap(64) }
    }
}

fn constants() -> &'static ThresholdsExact {
    static T: OnceLock<ThresholdsExact> = OnceLock::new();
    T.get_or_init(thresholds)
}

fn ex(n: usize) -> Exact {
    Exact::from_integer(n as i128)
}

/// Default gates of a driver, derived from the constants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gates {
    pub chi: Exact,
    pub lift: Exact,
    pub lift2: Exact,
    pub split: Exact,
    pub gamma: Exact,
}

impl Gates {
    pub fn c5free() -> Self {
        let t = constants();
        let one = Exact::from_integer(1);
        let c1 = t.c_prime / 2 - one;
        let c3 = g_map(h_iter(c1, 2));
        let c5 = g_map(h_iter(c3 - one, 2));
        Gates { chi: t.c_prime, lift: c3, lift2: c5, split: c5 / 4, gamma: Exact::from_integer(52) }
    }

    pub fn general() -> Self {
        let t = constants();
        let one = Exact::from_integer(1);
        let c1 = t.c / 2 - one;
        let c3 = t.phi(f(c1));
        let c5 = t.phi(f(c3 - one));
        Gates { chi: t.c, lift: c3, lift2: c5, split: c5 / 4, gamma: t.two_c_prime() }
    }

    pub fn apply(mut self, o: &Overrides) -> Self {
        for (slot, key) in [
            (&mut self.chi, "chi"),
            (&mut self.lift, "lift"),
            (&mut self.lift2, "lift2"),
            (&mut self.split, "split"),
            (&mut self.gamma, "gamma"),
        ] {
            if let Some(v) = o.get(key) {
                *slot = *v;
            }
        }
        self
    }
}

enum Exit {
    Unmet { step: String, detail: String },
    Hole(HoleCertificate),
    Violation(HoleCertificate),
    Fail(Error),
}

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        Exit::Fail(e)
    }
}

type Flow<T> = std::result::Result<T, Exit>;

fn unmet<T>(step: &str, detail: impl Into<String>) -> Flow<T> {
    Err(Exit::Unmet { step: step.into(), detail: detail.into() })
}

fn pre<T>(detail: impl Into<String>) -> Flow<T> {
    Err(Exit::Fail(Error::ViolatedPrecondition(detail.into())))
}

/// Runs the checks on one graph with fixed options.
pub struct Certifier<'g> {
    g: &'g Graph,
    opts: CertifyOptions,
    trace: Vec<TraceStep>,
}

impl<'g> Certifier<'g> {
    pub fn new(g: &'g Graph, opts: CertifyOptions) -> Self {
        Self { g, opts, trace: Vec::new() }
    }

    fn log(&mut self, stage: &str, detail: impl Into<String>) {
        self.trace.push(TraceStep::new(stage, detail));
    }

    fn chi(&self, sub: VertexSet) -> Result<usize> {
        self.opts.colorer.chromatic_number(self.g, sub)
    }

    fn report(&mut self, lemma: LemmaId, r: Flow<Option<Witness>>) -> Result<LemmaReport> {
        let trace = std::mem::take(&mut self.trace);
        let (status, step, witness) = match r {
            Ok(w) => (Status::Holds, None, w),
            Err(Exit::Unmet { step, detail }) => {
                let mut trace = trace;
                trace.push(TraceStep::new("unmet", format!("{step}: {detail}")));
                return Ok(LemmaReport { lemma, status: Status::PreconditionUnmet, step: Some(step), witness: None, trace });
            }
            Err(Exit::Hole(c)) => (Status::CounterexampleFound, None, Some(Witness::Hole(c))),
            Err(Exit::Violation(c)) => (Status::ClassViolation, None, Some(Witness::Hole(c))),
            Err(Exit::Fail(e)) => return Err(e),
        };
        Ok(LemmaReport { lemma, status, step, witness, trace })
    }

    fn growth_options(&self) -> GrowthOptions {
        GrowthOptions { colorer: self.opts.colorer, ..GrowthOptions::relaxed().unchecked() }
    }

    fn grow<P>(&mut self, f: impl FnOnce(&mut Grower<'g>) -> Result<GrowthOutcome<P>>) -> Flow<P> {
        let mut gr = Grower::new(self.g, self.growth_options());
        let out = f(&mut gr);
        self.trace.extend(gr.into_trace());
        match out? {
            GrowthOutcome::Success { pcp } => Ok(pcp),
            GrowthOutcome::PreconditionUnmet { step, detail } => Err(Exit::Unmet { step: format!("growth: {step}"), detail }),
            GrowthOutcome::ClassViolation { certificate } => Err(self.violation(certificate)),
        }
    }

    /// Even holes are reported with their certificate; a triangle or a
    /// 5-hole only stops the pass.
    fn violation(&mut self, c: HoleCertificate) -> Exit {
        if c.is_even_ge6() && verify_certificate(self.g, &c) {
            Exit::Violation(c)
        } else {
            Exit::Unmet { step: "class".into(), detail: format!("{:?} at {:?}", c.kind, c.verts) }
        }
    }

    /// Turns a closed cycle into the final exit. A cycle that is not an
    /// induced even cycle of length at least 6 triggers a search inside
    /// `construction`, then an explanation over the whole graph.
    fn close(&mut self, cycle: Vec<usize>, construction: VertexSet, cls: ClassId, what: &str) -> Exit {
        let cert = HoleCertificate::new(cycle);
        if cert.is_even_ge6() && verify_certificate(self.g, &cert) {
            self.log("hole", format!("{what}: {:?}", cert.verts));
            return Exit::Hole(cert);
        }
        let local = construction | cert.vertex_set();
        self.log("divergence", format!("{what}: {:?} does not verify, searching {} vertices", cert.verts, local.len()));
        if let Some(h) = find_even_hole_ge6(self.g, local) {
            self.log("hole", format!("found by search: {:?}", h.verts));
            return Exit::Hole(h);
        }
        match class_membership_in(self.g, self.g.vertices(), cls) {
            Verdict::Violation(c) => self.violation(c),
            Verdict::Member => Exit::Fail(Error::InternalConsistency(format!(
                "{what}: cycle {:?} fails verification in a class member",
                cert.verts
            ))),
        }
    }

    fn impossible(&mut self, what: String, cls: ClassId) -> Exit {
        match class_membership_in(self.g, self.g.vertices(), cls) {
            Verdict::Violation(c) => {
                self.log("consistency", format!("{what}; explained by {:?} {:?}", c.kind, c.verts));
                self.violation(c)
            }
            Verdict::Member => Exit::Fail(Error::InternalConsistency(what)),
        }
    }

    // ---- rich vertices ----

    pub fn rich_vertex_check(&mut self, lv: &Levelling, p: &RootedPcp, x_prime: usize) -> Result<LemmaReport> {
        let r = self.rich_entry(lv, p, x_prime).and_then(|()| self.rich(lv, p, x_prime));
        self.report(LemmaId::RichVertex, r)
    }

    fn rich_entry(&mut self, lv: &Levelling, p: &RootedPcp, xp: usize) -> Flow<()> {
        self.g.check_vertex(xp)?;
        let bad = validate_rooted_pcp(self.g, lv, p, false)?;
        if !bad.is_empty() {
            return pre(format!("invalid rooted PCP: {bad:?}"));
        }
        if !lv.level(p.level - 1).contains(xp) {
            return pre(format!("{xp} is not in N_{}", p.level - 1));
        }
        if !self.g.neighbors(xp).intersects(&p.pcp.last) {
            return pre(format!("{xp} has no neighbor in H"));
        }
        Ok(())
    }

    /// Either every regular block meets `N(x')`, or the detour through the
    /// first block that does not closes an even hole.
    fn rich(&mut self, lv: &Levelling, rp: &RootedPcp, xp: usize) -> Flow<Option<Witness>> {
        let g = self.g;
        let p = &rp.pcp;
        let nx = g.neighbors(xp);
        let Some(i) = p.blocks.iter().position(|b| !nx.intersects(b)) else {
            let firsts: Vec<usize> = p.blocks.iter().filter_map(|b| (nx & *b).first()).collect();
            self.log("rich vertex", format!("{xp} sees every block, at {firsts:?}"));
            return Ok(Some(Witness::Vertices { vertices: firsts }));
        };
        let x = (nx & p.last).first().expect("checked on entry");
        self.log("rich vertex", format!("{xp} sees {x} in H but misses G_{}", i + 1));
        let mut pieces = Vec::with_capacity(p.blocks.len());
        for (b, block) in p.blocks.iter().enumerate() {
            match parity_paths_in_block(g, *block, p.entries[b], p.exits[b]) {
                Some(pair) => pieces.push(pair),
                None => return pre(format!("block {} has no parity pair", b + 1)),
            }
        }
        let last_entry = p.entries[p.blocks.len()];
        let Some(tail) = crate::graph::shortest_path_within(g, p.last, last_entry, x) else {
            return pre("H does not connect its entry to x");
        };
        // the u-x path, with the parity of the path through G_i selectable
        let chain = |odd: bool| -> Vec<usize> {
            let mut seq: Vec<usize> = Vec::new();
            for (b, (o, e)) in pieces.iter().enumerate() {
                let path = if b == i && !odd { e } else { o };
                let skip = usize::from(!seq.is_empty());
                seq.extend_from_slice(&path.verts()[skip..]);
                seq.extend_from_slice(&p.connectors[b].verts()[1..]);
            }
            seq.extend_from_slice(&tail.verts()[1..]);
            seq
        };
        let base = chain(true);
        let pos = |seq: &[usize], v: usize| seq.iter().position(|&w| w == v).expect("on the chain");
        let xi = pos(&base, p.entries[i]);
        let before = base[..xi].iter().rev().copied().find(|&w| nx.contains(w));
        let after = base[xi..]
            .iter()
            .copied()
            .find(|&w| nx.contains(w))
            .expect("x ends the chain");
        let construction = p.vertex_set() | VertexSet::singleton(xp) | VertexSet::singleton(rp.root);
        let cls = ClassId::C3_2kGe6;
        let exit = match before {
            Some(a) => {
                self.log("rich vertex", format!("detour between neighbors {a} and {after} of {xp}"));
                let (seg, _) = [true, false]
                    .iter()
                    .map(|&odd| {
                        let seq = chain(odd);
                        (seq[pos(&seq, a)..=pos(&seq, after)].to_vec(), odd)
                    })
                    .find(|(seg, _)| (seg.len() - 1) % 2 == 0)
                    .expect("the two choices differ in parity");
                let mut cycle = seg;
                cycle.push(xp);
                self.close(cycle, construction, cls, "detour closed through x'")
            }
            None => {
                let up = upper_path(g, lv, xp, rp.root)?;
                self.log(
                    "rich vertex",
                    format!("no neighbor of {xp} before G_{}, closing through P_up {:?}", i + 1, up.verts()),
                );
                let (seg, _) = [true, false]
                    .iter()
                    .map(|&odd| {
                        let seq = chain(odd);
                        (seq[..=pos(&seq, after)].to_vec(), odd)
                    })
                    .find(|(seg, _)| (seg.len() - 1 + up.len()) % 2 == 0)
                    .expect("the two choices differ in parity");
                let mut cycle = vec![rp.root];
                cycle.extend(seg);
                cycle.push(xp);
                cycle.extend_from_slice(up.interior());
                self.close(cycle, construction | up.vertex_set(), cls, "detour closed through P_up")
            }
        };
        Err(exit)
    }

    // ---- stable shadows ----

    pub fn stable_shadow_check_c5free(&mut self, lv: &Levelling, s: VertexSet, k: usize) -> Result<LemmaReport> {
        let r = self.stable_shadow_c5free(lv, s, k);
        self.report(LemmaId::StableShadowC5free, r)
    }

    pub fn stable_shadow_check_general(&mut self, lv: &Levelling, s: VertexSet, k: usize) -> Result<LemmaReport> {
        let r = self.stable_shadow_general(lv, s, k);
        self.report(LemmaId::StableShadowGeneral, r)
    }

    fn shadow_entry(&mut self, lv: &Levelling, s: VertexSet, k: usize) -> Flow<(VertexSet, usize)> {
        if k == 0 || !s.is_subset(&lv.level(k - 1)) {
            return pre(format!("stable set not inside N_{}", k.saturating_sub(1)));
        }
        if !self.g.is_stable(s) {
            return pre("set is not stable");
        }
        let shadow = self.g.neighbors_of_set(s) & lv.level(k);
        let chi = self.chi(shadow)?;
        self.log("shadow", format!("|S| = {}, chi(N(S) cap N_{k}) = {chi}", s.len()));
        Ok((shadow, chi))
    }

    fn gamma_c5free(&self) -> Exact {
        self.opts.overrides.get("gamma").copied().unwrap_or(Exact::from_integer(52))
    }

    fn gamma_general(&self) -> Exact {
        self.opts.overrides.get("gamma").copied().unwrap_or(constants().two_c_prime())
    }

    fn stable_shadow_c5free(&mut self, lv: &Levelling, s: VertexSet, k: usize) -> Flow<Option<Witness>> {
        let (shadow, chi) = self.shadow_entry(lv, s, k)?;
        let gamma = self.gamma_c5free();
        if ex(chi) <= gamma {
            return Ok(Some(Witness::Chromatic { value: chi }));
        }
        let delta = ex(chi - 1);
        let rp = self.grow(|gr| gr.rooted_pcp_c5free_in(lv, k, shadow, 2, delta))?;
        let (g1, g2) = (rp.pcp.blocks[0], rp.pcp.blocks[1]);
        let (x, y) = self.g.edges_within(g2).next().expect("a block with a parity pair has edges");
        let xp = (self.g.neighbors(x) & s).first().expect("S dominates the shadow");
        let yp = (self.g.neighbors(y) & s).first().expect("S dominates the shadow");
        self.log("shadow", format!("edge {x}{y} in G_2, lifts {xp}, {yp}"));
        if xp == yp {
            return unmet("class", format!("triangle {xp} {x} {y}"));
        }
        self.require_rich(lv, &rp, &[xp, yp], g1)?;
        let cls = ClassId::C3_5_2kGe6;
        let construction = g1 | VertexSet::from(vec![x, y, xp, yp]);
        let (odd, even4, even2) = self.down_paths(g1, xp, yp);
        if let Some(p) = odd {
            let mut cycle = p.into_verts();
            cycle.extend([y, x]);
            return Err(self.close(cycle, construction, cls, "odd P_down closed with x'xyy'"));
        }
        let Some(down) = even4 else {
            return match even2 {
                Some(p) => unmet("class", format!("5-hole {:?} with {x}{y}", p.verts())),
                None => Err(self.impossible(format!("no {xp}-{yp} path through G_1"), cls)),
            };
        };
        let up = upper_path(self.g, lv, xp, yp)?;
        self.log("shadow", format!("P_down = {:?}, P_up = {:?}", down.verts(), up.verts()));
        let mut cycle = up.verts().to_vec();
        let construction = construction | up.vertex_set();
        if (up.len() + 3) % 2 == 0 {
            cycle.extend([y, x]);
            Err(self.close(cycle, construction, cls, "P_up closed with x'xyy'"))
        } else {
            cycle.extend(down.interior().iter().rev());
            Err(self.close(cycle, construction, cls, "P_up closed with P_down"))
        }
    }

    /// First odd, first even of length at least 4 and first even of length
    /// 2 among the induced `a`–`b` paths through `block`.
    fn down_paths(&self, block: VertexSet, a: usize, b: usize) -> (Option<Path>, Option<Path>, Option<Path>) {
        let (mut odd, mut even4, mut even2) = (None, None, None);
        for_each_induced_path(self.g, block, a, b, |p| {
            let len = p.len() - 1;
            let slot = if len % 2 == 1 {
                &mut odd
            } else if len >= 4 {
                &mut even4
            } else {
                &mut even2
            };
            if slot.is_none() {
                *slot = Some(Path::new(p.to_vec()));
            }
            if odd.is_some() {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        (odd, even4, even2)
    }

    /// Each of `verts` sees `H` of the order-1 truncation of `rp`; one that
    /// misses `G_1` is handed to the rich-vertex argument.
    fn require_rich(&mut self, lv: &Levelling, rp: &RootedPcp, verts: &[usize], g1: VertexSet) -> Flow<()> {
        for &w in verts {
            if self.g.neighbors(w).intersects(&g1) {
                continue;
            }
            let cut = RootedPcp { pcp: rp.pcp.truncated(self.g, 1)?, root: rp.root, level: rp.level };
            self.log("rich vertex", format!("{w} misses G_1, truncating to order 1"));
            self.rich(lv, &cut, w)?;
            return Err(Exit::Fail(Error::InternalConsistency(format!("{w} misses G_1 yet sees every block"))));
        }
        Ok(())
    }

    fn stable_shadow_general(&mut self, lv: &Levelling, s: VertexSet, k: usize) -> Flow<Option<Witness>> {
        let (shadow, chi) = self.shadow_entry(lv, s, k)?;
        let gamma = self.gamma_general();
        if ex(chi) <= gamma {
            return Ok(Some(Witness::Chromatic { value: chi }));
        }
        let delta = ex(chi - 1);
        let rp = self.grow(|gr| gr.strong_rooted_pcp_in(lv, k, shadow, delta))?;
        let g1 = rp.pcp.blocks[0];
        let c = find_c5(self.g, g1).expect("a strong block holds a 5-hole");
        let (sp, t) = self.minimal_dominators(c.vertex_set(), s)?;
        let cls = ClassId::C3_2kGe6;
        let paths = self.parity_paths(&c, sp, t, cls)?;
        let up = upper_path(self.g, lv, t, paths.t_prime)?;
        self.log(
            "shadow",
            format!("C = {:?}, S' = {:?}, t = {t}, t' = {}, P_up = {:?}", c.verts, sp.to_vec(), paths.t_prime, up.verts()),
        );
        let closing = if up.len() % 2 == 0 { &paths.p4 } else { &paths.p35 };
        let mut cycle = up.verts().to_vec();
        cycle.extend(closing.interior().iter().rev());
        let construction = c.vertex_set() | sp | up.vertex_set();
        Err(self.close(cycle, construction, cls, "P_up closed through the 5-hole"))
    }

    /// An inclusion-minimal subset of `s` dominating `target`, obtained by
    /// dropping redundant vertices in increasing order, and its first vertex.
    fn minimal_dominators(&mut self, target: VertexSet, s: VertexSet) -> Flow<(VertexSet, usize)> {
        let mut sp = self.g.neighbors_of_set(target) & s;
        if !target.is_subset(&self.g.neighbors_of_set(sp)) {
            return Err(Exit::Fail(Error::InternalConsistency("S does not dominate the hole".into())));
        }
        for w in sp.iter() {
            let mut rest = sp;
            rest.remove(w);
            if target.is_subset(&self.g.neighbors_of_set(rest)) {
                sp = rest;
            }
        }
        let t = sp.first().expect("a hole needs dominators");
        Ok((sp, t))
    }

    fn parity_paths(
        &mut self,
        c: &HoleCertificate,
        sp: VertexSet,
        t: usize,
        cls: ClassId,
    ) -> Flow<crate::pcp::C5ParityPaths> {
        match c5_parity_paths(self.g, c, sp, t) {
            Ok(r) => Ok(r),
            Err(Error::ViolatedPrecondition(m)) => unmet("class", format!("around the 5-hole: {m}")),
            Err(Error::InternalConsistency(m)) => Err(self.impossible(m, cls)),
            Err(e) => Err(Exit::Fail(e)),
        }
    }

    // ---- lifts ----

    pub fn active_lift_bound<T: Scalar>(&mut self, lv: &Levelling, p: &RootedPcp, gamma: T) -> Result<LemmaReport> {
        let r = self.lift_bound(lv, p, gamma);
        self.report(LemmaId::ActiveLiftBound, r)
    }

    fn lift_bound<T: Scalar>(&mut self, lv: &Levelling, rp: &RootedPcp, gamma: T) -> Flow<Option<Witness>> {
        let a = active_lift(self.g, lv, rp)?;
        let r = self.chi(a)?;
        let delta = rp.pcp.leftovers;
        let lhs = T::from_usize(r).expect("small integer") * gamma.clone();
        let rhs = T::from_usize(delta).expect("small integer");
        self.log("lift", format!("|A| = {}, chi(A) = {r}, leftovers {delta}, gamma {gamma}", a.len()));
        if lhs >= rhs {
            return Ok(Some(Witness::Chromatic { value: r }));
        }
        let k = rp.level;
        let covered = self.g.neighbors_of_set(a) & lv.level(k);
        let free = rp.pcp.last - covered;
        let Some(x) = free.first() else {
            let c = self.chi(covered)?;
            return unmet("shadow hypothesis", format!("H inside N(A), chi(N(A) cap N_{k}) = {c}"));
        };
        let xp = lv.parent(self.g, x).expect("levels above the PCP are nonempty");
        self.log("lift", format!("{x} in H outside N(A), parent {xp} outside A"));
        self.rich(lv, rp, xp)?;
        Err(Exit::Fail(Error::InternalConsistency(format!("{xp} outside A sees the last regular block"))))
    }

    pub fn shadow_bound_c5free(&mut self, lv: &Levelling, p: &RootedPcp) -> Result<LemmaReport> {
        let r = self.shadow_bound(lv, p, false);
        self.report(LemmaId::ShadowBoundC5free, r)
    }

    pub fn shadow_bound_general(&mut self, lv: &Levelling, p: &RootedPcp) -> Result<LemmaReport> {
        let r = self.shadow_bound(lv, p, true);
        self.report(LemmaId::ShadowBoundGeneral, r)
    }

    fn shadow_bound(&mut self, lv: &Levelling, rp: &RootedPcp, general: bool) -> Flow<Option<Witness>> {
        let gamma = if general { self.gamma_general() } else { self.gamma_c5free() };
        let a = active_lift(self.g, lv, rp)?;
        let k = rp.level;
        let covered = self.g.neighbors_of_set(a) & lv.level(k);
        let c = self.chi(covered)?;
        if ex(c) <= gamma {
            self.log("shadow bound", format!("chi(N(A) cap N_{k}) = {c} <= {gamma}, every stable set of A complies"));
        } else {
            for s in self.g.maximal_stable_sets(a) {
                if general {
                    self.stable_shadow_general(lv, s, k)?;
                } else {
                    self.stable_shadow_c5free(lv, s, k)?;
                }
            }
        }
        self.lift_bound(lv, rp, gamma)
    }

    // ---- drivers ----

    pub fn extract_even_hole_c5free(&mut self) -> Result<LemmaReport> {
        let r = self.driver(false);
        self.report(LemmaId::ExtractEvenHoleC5free, r)
    }

    pub fn extract_even_hole_general(&mut self) -> Result<LemmaReport> {
        let r = self.driver(true);
        self.report(LemmaId::ExtractEvenHoleGeneral, r)
    }

    /// Runs a sub-lemma; only a hole or a class violation stops the driver.
    fn sub_lemma(&mut self, lv: &Levelling, rp: &RootedPcp, general: bool) -> Flow<()> {
        match self.shadow_bound(lv, rp, general) {
            Ok(_) => Ok(()),
            Err(Exit::Unmet { step, detail }) => {
                self.log("shadow bound", format!("not established: {step}: {detail}"));
                Ok(())
            }
            Err(e) => Err(e),
        }
    }

    fn gate(&mut self, stage: &str, value: usize, gate: Exact) -> Flow<()> {
        if ex(value) >= gate {
            self.log(stage, format!("{value} >= {gate}"));
            Ok(())
        } else {
            unmet(stage, format!("{value} < {gate}"))
        }
    }

    fn driver(&mut self, general: bool) -> Flow<Option<Witness>> {
        let g = self.g;
        let cls = if general { ClassId::C3_2kGe6 } else { ClassId::C3_5_2kGe6 };
        let gates = if general { Gates::general() } else { Gates::c5free() }.apply(&self.opts.overrides);
        if self.opts.entry_check {
            if let Verdict::Violation(c) = class_membership(g, cls) {
                self.log("entry", format!("{:?} at {:?}", c.kind, c.verts));
                return Err(Exit::Violation(c));
            }
        }
        if g.n() == 0 || !g.is_connected(g.vertices()) {
            return unmet("connected", "input is empty or disconnected");
        }
        let lv = Levelling::new(g, 0)?;
        let (k, total) = colorful_level_with(&self.opts.colorer, g, &lv)?;
        self.log("levelling", format!("root 0, {} levels, chi = {total}, colorful level {k}", lv.depth()));
        self.gate("chi", total, gates.chi)?;
        if k < 3 {
            return unmet("level", format!("colorful level {k} < 3 leaves no room for two lifts"));
        }
        let nk = self.chi(lv.level(k))?;
        let delta = ex(nk - 1);
        let rp = if general {
            self.grow(|gr| gr.strong_rooted_pcp(&lv, k, delta))?
        } else {
            self.grow(|gr| gr.rooted_pcp_c5free(&lv, k, 2, delta))?
        };
        self.sub_lemma(&lv, &rp, general)?;
        let a = active_lift(g, &lv, &rp)?;
        let chi_a = self.chi(a)?;
        self.gate("lift", chi_a, gates.lift)?;
        if chi_a == 0 {
            return unmet("lift", "empty active lift");
        }
        let delta = ex(chi_a - 1);
        let rp2 = if general {
            self.grow(|gr| gr.strong_rooted_pcp_in(&lv, k - 1, a, delta))?
        } else {
            self.grow(|gr| gr.rooted_pcp_c5free_in(&lv, k - 1, a, 2, delta))?
        };
        self.sub_lemma(&lv, &rp2, general)?;
        let a2 = active_lift(g, &lv, &rp2)?;
        let chi_a2 = self.chi(a2)?;
        self.gate("lift2", chi_a2, gates.lift2)?;
        let last = *rp2.pcp.blocks.last().expect("order at least 1");
        let coloring = self.opts.colorer.color(g, last)?;
        let mut best = (0, VertexSet::new());
        for class in coloring.classes() {
            let v = self.chi(g.neighbors_of_set(class) & a2)?;
            if v > best.0 {
                best = (v, class);
            }
        }
        let (split, s) = best;
        self.log("split", format!("{} color classes on the last block, S = {:?}", coloring.num_colors(), s.to_vec()));
        self.gate("split", split, gates.split)?;
        let shadow = g.neighbors_of_set(s) & a2;
        if general {
            self.finish_general(&rp, s, shadow)
        } else {
            self.finish_c5free(&lv, &rp, s, shadow)
        }
    }

    fn finish_c5free(&mut self, lv: &Levelling, rp: &RootedPcp, s: VertexSet, shadow: VertexSet) -> Flow<Option<Witness>> {
        let g = self.g;
        let Some((x, y)) = g.edges_within(shadow).next() else {
            return unmet("edge", "N(S) cap A' is stable");
        };
        let xp = (g.neighbors(x) & s).first().expect("S dominates its shadow");
        let yp = (g.neighbors(y) & s).first().expect("S dominates its shadow");
        self.log("edge", format!("xy = {x}{y}, x' = {xp}, y' = {yp}"));
        if xp == yp {
            return unmet("class", format!("triangle {xp} {x} {y}"));
        }
        let (g1, g2) = (rp.pcp.blocks[0], rp.pcp.blocks[1]);
        self.require_rich(lv, rp, &[xp, yp], g1)?;
        let cls = ClassId::C3_5_2kGe6;
        let construction = g1 | g2 | VertexSet::from(vec![x, y, xp, yp]);
        let (o1, e1, s1) = self.down_paths(g1, xp, yp);
        let (o2, e2, s2) = self.down_paths(g2, xp, yp);
        if let Some(p) = o1.or(o2) {
            let mut cycle = p.into_verts();
            cycle.extend([y, x]);
            return Err(self.close(cycle, construction, cls, "odd path closed with x'xyy'"));
        }
        match (e1, e2) {
            (Some(p1), Some(p2)) => {
                self.log("paths", format!("P_1 = {:?}, P_2 = {:?}", p1.verts(), p2.verts()));
                let mut cycle = p1.into_verts();
                cycle.extend(p2.interior().iter().rev());
                Err(self.close(cycle, construction, cls, "P_1 and P_2 concatenated"))
            }
            _ => match s1.or(s2) {
                Some(p) => unmet("class", format!("5-hole {:?} with {x}{y}", p.verts())),
                None => Err(self.impossible(format!("no {xp}-{yp} path through G_1 or G_2"), cls)),
            },
        }
    }

    fn finish_general(&mut self, rp: &RootedPcp, s: VertexSet, shadow: VertexSet) -> Flow<Option<Witness>> {
        let g = self.g;
        let Some(c) = find_c5(g, shadow) else {
            return unmet("hole in shadow", "N(S) cap A' has no 5-hole");
        };
        let cls = ClassId::C3_2kGe6;
        let (sp, t) = self.minimal_dominators(c.vertex_set(), s)?;
        let paths = self.parity_paths(&c, sp, t, cls)?;
        let g1 = rp.pcp.blocks[0];
        let tp = paths.t_prime;
        let mut down = None;
        for_each_induced_path(g, g1, t, tp, |p| {
            down = Some(Path::new(p.to_vec()));
            ControlFlow::Break(())
        });
        let Some(down) = down else {
            return Err(self.impossible(format!("no {t}-{tp} path through G_1"), cls));
        };
        self.log(
            "paths",
            format!("C = {:?}, t = {t}, t' = {tp}, P_down = {:?}", c.verts, down.verts()),
        );
        let closing = if down.len() % 2 == 0 { &paths.p4 } else { &paths.p35 };
        let mut cycle = down.verts().to_vec();
        cycle.extend(closing.interior().iter().rev());
        let construction = g1 | c.vertex_set() | sp;
        Err(self.close(cycle, construction, cls, "P_down closed through the 5-hole"))
    }
}

pub fn rich_vertex_check(g: &Graph, lv: &Levelling, p: &RootedPcp, x_prime: usize) -> Result<LemmaReport> {
    Certifier::new(g, CertifyOptions::default()).rich_vertex_check(lv, p, x_prime)
}

pub fn stable_shadow_check_c5free(g: &Graph, lv: &Levelling, s: VertexSet, k: usize) -> Result<LemmaReport> {
    Certifier::new(g, CertifyOptions::default()).stable_shadow_check_c5free(lv, s, k)
}

pub fn stable_shadow_check_general(g: &Graph, lv: &Levelling, s: VertexSet, k: usize) -> Result<LemmaReport> {
    Certifier::new(g, CertifyOptions::default()).stable_shadow_check_general(lv, s, k)
}

pub fn active_lift_bound<T: Scalar>(g: &Graph, lv: &Levelling, p: &RootedPcp, gamma: T) -> Result<LemmaReport> {
    Certifier::new(g, CertifyOptions::default()).active_lift_bound(lv, p, gamma)
}

pub fn shadow_bound_c5free(g: &Graph, lv: &Levelling, p: &RootedPcp) -> Result<LemmaReport> {
    Certifier::new(g, CertifyOptions::default()).shadow_bound_c5free(lv, p)
}

pub fn shadow_bound_general(g: &Graph, lv: &Levelling, p: &RootedPcp) -> Result<LemmaReport> {
    Certifier::new(g, CertifyOptions::default()).shadow_bound_general(lv, p)
}

pub fn extract_even_hole_c5free(g: &Graph) -> Result<LemmaReport> {
    Certifier::new(g, CertifyOptions::default()).extract_even_hole_c5free()
}

pub fn extract_even_hole_general(g: &Graph) -> Result<LemmaReport> {
    Certifier::new(g, CertifyOptions::default()).extract_even_hole_general()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detection::HoleKind;
    use crate::graph::named::*;
    use crate::pcp::Pcp;

    // Root 0. Level 2 holds the 5-hole b = 1..6 (entry 1, exit 3), the
    // connector 3-6-7 and H = 7-8. The root 9 sees only 1, vertex 10 sees
    // only 8, and 11..17 are private parents of 2, 3, 4, 5, 6, 7.
    fn planted() -> (Graph, Levelling, RootedPcp) {
        let mut g = Graph::new(17);
        for i in 0..5 {
            g.add_edge(1 + i, 1 + (i + 1) % 5);
        }
        for (u, v) in [(3, 6), (6, 7), (7, 8), (0, 9), (9, 1), (0, 10), (10, 8)] {
            g.add_edge(u, v);
        }
        for (j, w) in [2, 3, 4, 5, 6, 7].into_iter().enumerate() {
            g.add_edge(0, 11 + j);
            g.add_edge(11 + j, w);
        }
        let lv = Levelling::new(&g, 0).unwrap();
        let pcp = Pcp {
            order: 1,
            blocks: vec![(1..6).collect()],
            last: [7usize, 8].iter().collect(),
            connectors: vec![Path::new(vec![3, 6, 7])],
            origin: 1,
            entries: vec![1, 7],
            exits: vec![3],
            leftovers: 2,
        };
        let rp = RootedPcp { pcp, root: 9, level: 2 };
        assert!(validate_rooted_pcp(&g, &lv, &rp, true).unwrap().is_empty());
        (g, lv, rp)
    }

    #[test]
    fn rich_vertex_holds_when_every_block_is_seen() {
        let (mut g, _, rp) = planted();
        g.add_edge(10, 4);
        let lv = Levelling::new(&g, 0).unwrap();
        let r = rich_vertex_check(&g, &lv, &rp, 10).unwrap();
        assert_eq!(r.status, Status::Holds);
        assert_eq!(r.witness, Some(Witness::Vertices { vertices: vec![4] }));
    }

    #[test]
    fn rich_vertex_contradiction_closes_a_verified_hole() {
        let (g, lv, rp) = planted();
        let r = rich_vertex_check(&g, &lv, &rp, 10).unwrap();
        assert!(r.is_verified_counterexample(&g), "{r:?}");
        let c = r.certificate().unwrap();
        assert_eq!(c.verts, vec![9, 1, 5, 4, 3, 6, 7, 8, 10, 0]);
        assert_eq!(c.kind, HoleKind::EvenGe6);
    }

    #[test]
    fn rich_vertex_needs_a_neighbor_in_h() {
        let (g, lv, rp) = planted();
        // 11 is the private parent of 2
        let e = rich_vertex_check(&g, &lv, &rp, 11).unwrap_err();
        assert!(matches!(e, Error::ViolatedPrecondition(_)));
    }

    #[test]
    fn active_lift_bound_both_ways() {
        let (g, lv, rp) = planted();
        let r = active_lift_bound(&g, &lv, &rp, 2i64).unwrap();
        assert_eq!(r.status, Status::Holds);
        assert_eq!(r.witness, Some(Witness::Chromatic { value: 1 }));
        let r = active_lift_bound(&g, &lv, &rp, Exact::new(3, 2)).unwrap();
        assert!(r.is_verified_counterexample(&g), "{r:?}");
        assert_eq!(r.certificate().unwrap().verts, vec![9, 1, 2, 3, 6, 7, 16, 0]);
        let mut empty = rp.clone();
        empty.pcp.leftovers = 0;
        let r = active_lift_bound(&g, &lv, &empty, 0.0f64).unwrap();
        assert_eq!(r.status, Status::Holds);
    }

    #[test]
    fn stable_shadow_of_a_single_vertex_holds() {
        let (g, lv, _) = planted();
        for s in lv.level(1).iter() {
            let r = stable_shadow_check_c5free(&g, &lv, VertexSet::singleton(s), 2).unwrap();
            assert_eq!(r.status, Status::Holds);
            assert!(matches!(r.witness, Some(Witness::Chromatic { value }) if value <= 1));
            let r = stable_shadow_check_general(&g, &lv, VertexSet::singleton(s), 2).unwrap();
            assert_eq!(r.status, Status::Holds);
        }
        let e = stable_shadow_check_c5free(&g, &lv, [1usize, 2].iter().collect(), 3).unwrap_err();
        assert!(matches!(e, Error::ViolatedPrecondition(_)));
    }

    #[test]
    fn shadow_bound_composition() {
        let (g, lv, rp) = planted();
        assert_eq!(shadow_bound_c5free(&g, &lv, &rp).unwrap().status, Status::Holds);
        assert_eq!(shadow_bound_general(&g, &lv, &rp).unwrap().status, Status::Holds);
        let opts = CertifyOptions { overrides: Overrides::new().with("gamma", 1), ..Default::default() };
        let r = Certifier::new(&g, opts).shadow_bound_c5free(&lv, &rp).unwrap();
        assert_eq!(r.status, Status::PreconditionUnmet);
        assert!(r.step.unwrap().starts_with("growth"));
    }

    #[test]
    fn drivers_stop_at_the_first_gate() {
        for g in [cycle(7), complete_bipartite(2, 3)] {
            let r = extract_even_hole_c5free(&g).unwrap();
            assert_eq!(r.status, Status::PreconditionUnmet);
            assert_eq!(r.step.as_deref(), Some("chi"));
        }
        let r = extract_even_hole_general(&cycle(5)).unwrap();
        assert_eq!(r.step.as_deref(), Some("chi"));
    }

    #[test]
    fn drivers_reject_out_of_class_input() {
        let p = petersen();
        for r in [extract_even_hole_general(&p).unwrap(), extract_even_hole_c5free(&p).unwrap()] {
            assert_eq!(r.status, Status::ClassViolation);
            let c = r.certificate().unwrap();
            assert_eq!(c.len(), 6);
            assert!(verify_certificate(&p, c));
        }
    }

    #[test]
    fn overrides_parse() {
        assert_eq!(Overrides::parse_assignment("chi=3").unwrap(), ("chi".into(), Exact::from_integer(3)));
        assert_eq!(Overrides::parse_assignment("gamma = 5/2").unwrap().1, Exact::new(5, 2));
        assert!(Overrides::parse_assignment("nope=1").is_err());
        assert!(Overrides::parse_assignment("chi").is_err());
        let g = Gates::c5free();
        assert_eq!(g.chi, Exact::from_integer(453122));
        assert!(g.split > Exact::from_integer(1));
        assert!(Gates::general().split >= Gates::general().gamma / 2);
    }

    #[test]
    fn report_json_shape() {
        let (g, lv, rp) = planted();
        let r = rich_vertex_check(&g, &lv, &rp, 10).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["lemma"], "rich_vertex");
        assert_eq!(v["status"], "counterexample_found");
        assert_eq!(v["witness"]["type"], "hole");
        let back: LemmaReport = serde_json::from_value(v).unwrap();
        assert_eq!(back, r);
    }
}
