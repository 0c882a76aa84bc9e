//! Seeded fixtures: growth instances found by search, the PCP validator
//! suite and planted certify instances. Every fixture records its graph6
//! string and the seed that regenerates it.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path as FsPath;

use anyhow::Context;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use pcp_core::certify::Certifier;
use pcp_core::graph::io::{from_graph6, to_graph6};
use pcp_core::graph::{ExactColorer, Levelling, Path};
use pcp_core::pcp::{validate_pcp, validate_rooted_pcp, Grower, GrowthOptions, ViolationKind};
use pcp_core::{
    CertifyOptions, ClassId, Exact, Graph, GrowthOutcome, LemmaReport, Overrides, Pcp, RootedPcp, Status, VertexSet,
};

use crate::canon::Family;
use crate::experiment::{max_chi_experiment, ExperimentConfig, Source};
use crate::generate::{edge_allowed, Target};
use crate::plant::{random_base, stack};

/// Seeds tried by each search before giving up.
pub const SEARCH_LIMIT: u64 = 20_000;

fn colorer() -> ExactColorer {
    ExactColorer::with_cap(64)
}

fn chi(g: &Graph, sub: VertexSet) -> usize {
    colorer().chromatic_number(g, sub).expect("fixture graphs stay under the coloring cap")
}

fn ex(n: usize) -> Exact {
    Exact::from_integer(n as i128)
}

// ---- growth ----

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GrowthKind {
    Pcp1C5free,
    PcpOrder2,
    StrongPcp1,
    RootedC5freeOrder1,
    RootedC5freeOrder2,
    StrongRooted,
}

impl GrowthKind {
    pub const ALL: [GrowthKind; 6] = [
        GrowthKind::Pcp1C5free,
        GrowthKind::PcpOrder2,
        GrowthKind::StrongPcp1,
        GrowthKind::RootedC5freeOrder1,
        GrowthKind::RootedC5freeOrder2,
        GrowthKind::StrongRooted,
    ];

    pub fn is_rooted(self) -> bool {
        matches!(self, GrowthKind::RootedC5freeOrder1 | GrowthKind::RootedC5freeOrder2 | GrowthKind::StrongRooted)
    }

    pub fn is_strong(self) -> bool {
        matches!(self, GrowthKind::StrongPcp1 | GrowthKind::StrongRooted)
    }
}

/// A growth run that succeeded with relaxed thresholds and class checks
/// off. Rooted kinds grow in level 3 of vertex 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthFixture {
    pub kind: GrowthKind,
    pub seed: u64,
    pub graph6: String,
    pub delta: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pcp: Option<Pcp>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rooted: Option<RootedPcp>,
}

/// Level of the rooted growth fixtures.
pub const ROOTED_LEVEL: usize = 3;

/// `stack(stack(B, t), 0)` for a random base `B` and tail `t`, and one
/// more stacking with tail 1 for rooted kinds.
pub fn growth_instance(kind: GrowthKind, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(5..12);
    let with_c5 = rng.gen_bool(0.5);
    let inner = random_base(&mut rng, n, with_c5);
    let t = rng.gen_range(0..5);
    let g = stack(&stack(&inner, t), 0);
    if kind.is_rooted() {
        stack(&g, 1)
    } else {
        g
    }
}

fn not_run<P>() -> GrowthOutcome<P> {
    GrowthOutcome::PreconditionUnmet { step: "not run".into(), detail: String::new() }
}

/// Runs the growth of `kind` on `g`; the delta used is returned with it.
pub fn grow(kind: GrowthKind, g: &Graph) -> pcp_core::Result<(usize, GrowthOutcome<Pcp>, GrowthOutcome<RootedPcp>)> {
    let opts = GrowthOptions::relaxed().unchecked();
    if kind.is_rooted() {
        let lv = Levelling::new(g, 0)?;
        let delta = chi(g, lv.level(ROOTED_LEVEL)).saturating_sub(1).max(1);
        let mut gr = Grower::new(g, opts);
        let out = match kind {
            GrowthKind::RootedC5freeOrder1 => gr.rooted_pcp_c5free(&lv, ROOTED_LEVEL, 1, ex(delta))?,
            GrowthKind::RootedC5freeOrder2 => gr.rooted_pcp_c5free(&lv, ROOTED_LEVEL, 2, ex(delta))?,
            _ => gr.strong_rooted_pcp(&lv, ROOTED_LEVEL, ex(delta))?,
        };
        Ok((delta, not_run(), out))
    } else {
        let delta = chi(g, g.vertices());
        let mut gr = Grower::new(g, opts);
        let out = match kind {
            GrowthKind::Pcp1C5free => gr.pcp1_c5free(0, ex(delta))?,
            GrowthKind::PcpOrder2 => gr.pcp_order(0, 2, ex(delta))?,
            _ => gr.strong_pcp1(0, ex(delta))?,
        };
        Ok((delta, out, not_run()))
    }
}

/// The first seed from `start` whose instance grows successfully.
pub fn search_growth(kind: GrowthKind, start: u64) -> anyhow::Result<GrowthFixture> {
    for seed in start..start + SEARCH_LIMIT {
        let g = growth_instance(kind, seed);
        let (delta, plain, rooted) = grow(kind, &g)?;
        let (pcp, rooted) = (plain.success(), rooted.success());
        if pcp.is_some() || rooted.is_some() {
            return Ok(GrowthFixture { kind, seed, graph6: to_graph6(&g), delta, pcp, rooted });
        }
    }
    anyhow::bail!("no {kind:?} instance among {SEARCH_LIMIT} seeds from {start}")
}

/// Two fixtures per kind.
pub fn growth_fixtures() -> anyhow::Result<Vec<GrowthFixture>> {
    let mut out = Vec::new();
    for kind in GrowthKind::ALL {
        let first = search_growth(kind, 0)?;
        let second = search_growth(kind, first.seed + 1)?;
        out.push(first);
        out.push(second);
    }
    Ok(out)
}

/// Problems with a stored growth fixture: graph, regrown PCP, validity.
pub fn check_growth_fixture(f: &GrowthFixture) -> anyhow::Result<Vec<String>> {
    let mut problems = Vec::new();
    let g = growth_instance(f.kind, f.seed);
    if to_graph6(&g) != f.graph6 {
        problems.push("seed does not regenerate the graph".to_string());
    }
    let (delta, plain, rooted) = grow(f.kind, &g)?;
    if delta != f.delta {
        problems.push(format!("delta {delta} != {}", f.delta));
    }
    if plain.success() != f.pcp || rooted.success() != f.rooted {
        problems.push("regrown PCP differs".into());
    }
    let strong = f.kind.is_strong();
    let violations = match (&f.pcp, &f.rooted) {
        (Some(p), None) => validate_pcp(&g, p, strong)?,
        (None, Some(rp)) => validate_rooted_pcp(&g, &Levelling::new(&g, 0)?, rp, strong)?,
        _ => {
            problems.push("exactly one of pcp and rooted must be present".into());
            Vec::new()
        }
    };
    if !violations.is_empty() {
        problems.push(format!("invalid: {violations:?}"));
    }
    Ok(problems)
}

// ---- validator suite ----

/// A rooted PCP in level 2 of vertex 0, valid or with one planted defect.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PcpFixture {
    pub name: String,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub defect: Option<ViolationKind>,
    pub graph6: String,
    pub rooted: RootedPcp,
}

/// Defects planted in the suite, five fixtures each.
pub const DEFECTS: [ViolationKind; 5] = [
    ViolationKind::MissingParityPair,
    ViolationKind::ConnectorTooShort,
    ViolationKind::BlockChromatic,
    ViolationKind::LastDisconnected,
    ViolationKind::RootNeighbors,
];

/// Builds the PCP piece by piece; each PCP vertex gets a private parent
/// next to vertex 0 once the chain is complete.
struct Chain {
    g: Graph,
    used: usize,
    pcp_verts: Vec<usize>,
}

impl Chain {
    fn new() -> Self {
        // 0 is the levelling root, 1 the PCP root
        let mut g = Graph::new(pcp_core::bits::MAX_VERTICES);
        g.add_edge(0, 1);
        Self { g, used: 2, pcp_verts: Vec::new() }
    }

    fn fresh(&mut self) -> usize {
        let v = self.used;
        self.used += 1;
        self.pcp_verts.push(v);
        v
    }

    fn cycle(&mut self, len: usize) -> Vec<usize> {
        let vs: Vec<usize> = (0..len).map(|_| self.fresh()).collect();
        for i in 0..len {
            self.g.add_edge(vs[i], vs[(i + 1) % len]);
        }
        vs
    }

    fn finish(mut self, origin: usize) -> Graph {
        self.g.add_edge(1, origin);
        for &w in &self.pcp_verts.clone() {
            if w != origin {
                let q = self.used;
                self.used += 1;
                self.g.add_edge(0, q);
                self.g.add_edge(q, w);
            }
        }
        let (g, _) = self.g.induced_subgraph(VertexSet::full(self.used));
        g
    }
}

/// A valid chain (`defect = None`) or the same kind of chain with one
/// defect, drawn from `seed`.
pub fn chain_fixture(seed: u64, defect: Option<ViolationKind>) -> PcpFixture {
    use ViolationKind::*;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let order = rng.gen_range(1..=3usize);
    let bad_block = rng.gen_range(0..order);
    let mut c = Chain::new();
    let mut blocks = Vec::new();
    let mut entries = Vec::new();
    let mut exits = Vec::new();
    let mut connectors = Vec::new();
    // the connector leaving the previous block, waiting for its end
    let mut pending: Option<Vec<usize>> = None;
    for i in 0..order {
        let even = defect == Some(MissingParityPair) && i == bad_block;
        let len = if even { *[6, 8].choose(&mut rng).unwrap() } else { *[5, 7].choose(&mut rng).unwrap() };
        let cyc = c.cycle(len);
        let x = cyc[0];
        if let Some(mut p) = pending.take() {
            c.g.add_edge(*p.last().unwrap(), x);
            p.push(x);
            connectors.push(Path::new(p));
        }
        // both arcs are induced only if y is not next to x
        let y = cyc[rng.gen_range(2..=len - 2)];
        let mut block: VertexSet = cyc.iter().collect();
        if defect == Some(BlockChromatic) && i == bad_block {
            // a K5 hanging off a cycle vertex other than the entry and exit
            let anchor = *cyc.iter().find(|&&w| w != y && w != x).expect("cycles have more than two vertices");
            let k5: Vec<usize> = (0..5).map(|_| c.fresh()).collect();
            for a in 0..5 {
                for b in a + 1..5 {
                    c.g.add_edge(k5[a], k5[b]);
                }
            }
            c.g.add_edge(anchor, k5[0]);
            block |= k5.iter().collect::<VertexSet>();
        }
        blocks.push(block);
        entries.push(x);
        exits.push(y);
        let len = if defect == Some(ConnectorTooShort) && i == bad_block { 1 } else { rng.gen_range(2..=4) };
        let mut path = vec![y];
        for _ in 1..len {
            let w = c.fresh();
            c.g.add_edge(*path.last().unwrap(), w);
            path.push(w);
        }
        pending = Some(path);
    }
    // H: a random tree grown from the last connector's end, plus a few
    // triangle-free chords
    let h_root = c.fresh();
    let mut p = pending.expect("order >= 1");
    c.g.add_edge(*p.last().unwrap(), h_root);
    p.push(h_root);
    connectors.push(Path::new(p));
    let mut h = vec![h_root];
    for _ in 0..rng.gen_range(0..5usize) {
        let w = c.fresh();
        let p = h[rng.gen_range(0..h.len())];
        c.g.add_edge(p, w);
        h.push(w);
    }
    for _ in 0..3 {
        let (a, b) = (h[rng.gen_range(0..h.len())], h[rng.gen_range(0..h.len())]);
        if a != b && !c.g.has_edge(a, b) && edge_allowed(&c.g, a, b, Target::TriangleFree) {
            c.g.add_edge(a, b);
        }
    }
    if defect == Some(LastDisconnected) {
        h.push(c.fresh());
    }
    entries.push(h_root);
    let last: VertexSet = h.iter().collect();
    let origin = entries[0];
    let root_extra = if defect == Some(RootNeighbors) {
        let far: Vec<usize> = c
            .pcp_verts
            .iter()
            .copied()
            .filter(|&w| w != origin && !c.g.has_edge(w, origin))
            .collect();
        Some(far[rng.gen_range(0..far.len())])
    } else {
        None
    };
    let mut g = c.finish(origin);
    if let Some(w) = root_extra {
        g.add_edge(1, w);
    }
    let leftovers = chi(&g, last);
    let pcp = Pcp { order, blocks, last, connectors, origin, entries, exits, leftovers };
    let name = match defect {
        None => format!("valid_{seed}"),
        Some(d) => format!("{}_{seed}", serde_json::to_value(d).unwrap().as_str().unwrap()),
    };
    PcpFixture { name, seed, defect, graph6: to_graph6(&g), rooted: RootedPcp { pcp, root: 1, level: 2 } }
}

/// 25 valid chains and five chains per defect.
pub fn pcp_suite() -> Vec<PcpFixture> {
    let mut out: Vec<PcpFixture> = (0..25).map(|s| chain_fixture(s, None)).collect();
    for (i, d) in DEFECTS.into_iter().enumerate() {
        for s in 0..5 {
            out.push(chain_fixture(100 * (i as u64 + 1) + s, Some(d)));
        }
    }
    out
}

/// The kinds the validators report on a fixture, from the rooted check
/// and from the plain check.
pub fn flagged(f: &PcpFixture) -> anyhow::Result<(BTreeSet<ViolationKind>, BTreeSet<ViolationKind>)> {
    let g = from_graph6(&f.graph6)?;
    let lv = Levelling::new(&g, 0)?;
    let rooted = validate_rooted_pcp(&g, &lv, &f.rooted, false)?.into_iter().map(|v| v.kind).collect();
    let plain = validate_pcp(&g, &f.rooted.pcp, false)?.into_iter().map(|v| v.kind).collect();
    Ok((rooted, plain))
}

// ---- planted certify instances ----

/// A graph on which a certify check closes a verified even hole. The
/// graphs are outside the class; they exercise the constructions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifyFixture {
    pub check: String,
    pub seed: u64,
    pub graph6: String,
    pub overrides: Overrides,
    /// Levelling root, level and vertex set or vertex the check ran on.
    pub level: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub set: Option<VertexSet>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rooted: Option<RootedPcp>,
    pub report: LemmaReport,
}

fn loose(overrides: Overrides) -> CertifyOptions {
    CertifyOptions { overrides, entry_check: false, colorer: colorer() }
}

/// Runs the check a fixture describes.
pub fn rerun_certify(f: &CertifyFixture) -> anyhow::Result<LemmaReport> {
    let g = from_graph6(&f.graph6)?;
    let lv = Levelling::new(&g, 0)?;
    let mut c = Certifier::new(&g, loose(f.overrides.clone()));
    let set = || f.set.context("fixture has no set");
    let rooted = || f.rooted.as_ref().context("fixture has no rooted PCP");
    Ok(match f.check.as_str() {
        "stable_shadow_c5free" => c.stable_shadow_check_c5free(&lv, set()?, f.level)?,
        "stable_shadow_general" => c.stable_shadow_check_general(&lv, set()?, f.level)?,
        "rich_vertex" => c.rich_vertex_check(&lv, rooted()?, f.vertex.context("fixture has no vertex")?)?,
        other => anyhow::bail!("unknown check {other}"),
    })
}

/// First deep planted instance where a stable-shadow check with `gamma =
/// 1` emits a hole.
pub fn search_stable_shadow(general: bool, start: u64) -> anyhow::Result<CertifyFixture> {
    let overrides = Overrides::new().with("gamma", 1);
    for seed in start..start + SEARCH_LIMIT {
        let g = growth_instance(GrowthKind::StrongRooted, seed);
        let lv = Levelling::new(&g, 0)?;
        let s = lv.level(ROOTED_LEVEL - 1);
        if !g.is_stable(s) {
            continue;
        }
        let mut c = Certifier::new(&g, loose(overrides.clone()));
        let report = if general {
            c.stable_shadow_check_general(&lv, s, ROOTED_LEVEL)?
        } else {
            c.stable_shadow_check_c5free(&lv, s, ROOTED_LEVEL)?
        };
        if report.status == Status::CounterexampleFound {
            let check = if general { "stable_shadow_general" } else { "stable_shadow_c5free" };
            return Ok(CertifyFixture {
                check: check.into(),
                seed,
                graph6: to_graph6(&g),
                overrides,
                level: ROOTED_LEVEL,
                set: Some(s),
                vertex: None,
                rooted: None,
                report,
            });
        }
    }
    anyhow::bail!("no stable-shadow hole among {SEARCH_LIMIT} seeds from {start}")
}

/// First rooted growth fixture instance with a vertex `x'` that misses a
/// block, so the rich-vertex check closes a hole.
pub fn search_rich_vertex(start: u64) -> anyhow::Result<CertifyFixture> {
    for seed in start..start + SEARCH_LIMIT {
        let g = growth_instance(GrowthKind::RootedC5freeOrder1, seed);
        let (_, _, out) = grow(GrowthKind::RootedC5freeOrder1, &g)?;
        let Some(rp) = out.success() else { continue };
        let lv = Levelling::new(&g, 0)?;
        for xp in lv.level(rp.level - 1).iter() {
            if !g.neighbors(xp).intersects(&rp.pcp.last) {
                continue;
            }
            let report = Certifier::new(&g, loose(Overrides::new())).rich_vertex_check(&lv, &rp, xp)?;
            if report.status == Status::CounterexampleFound {
                return Ok(CertifyFixture {
                    check: "rich_vertex".into(),
                    seed,
                    graph6: to_graph6(&g),
                    overrides: Overrides::new(),
                    level: rp.level,
                    set: None,
                    vertex: Some(xp),
                    rooted: Some(rp),
                    report,
                });
            }
        }
    }
    anyhow::bail!("no rich-vertex hole among {SEARCH_LIMIT} seeds from {start}")
}

pub fn certify_fixtures() -> anyhow::Result<Vec<CertifyFixture>> {
    Ok(vec![search_stable_shadow(true, 0)?, search_stable_shadow(false, 0)?, search_rich_vertex(0)?])
}

// ---- max chi ----

pub const MAXCHI_N: usize = 9;

pub fn maxchi_config(class: ClassId) -> ExperimentConfig {
    ExperimentConfig::new(Source::Exhaustive { max_n: MAXCHI_N, family: Family::Class(class) }, class)
}

pub fn maxchi_file_name(class: ClassId) -> String {
    format!("maxchi_{}_n{MAXCHI_N}.jsonl", class.tag())
}

// ---- files ----

pub const GROWTH_FILE: &str = "growth.json";
pub const PCP_SUITE_FILE: &str = "pcp_suite.json";
pub const CERTIFY_FILE: &str = "certify.json";

pub fn to_pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("fixtures serialize");
    s.push('\n');
    s
}

/// Writes every fixture file into `dir`.
pub fn write_all(dir: &FsPath) -> anyhow::Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join(GROWTH_FILE), to_pretty(&growth_fixtures()?))?;
    fs::write(dir.join(PCP_SUITE_FILE), to_pretty(&pcp_suite()))?;
    fs::write(dir.join(CERTIFY_FILE), to_pretty(&certify_fixtures()?))?;
    for class in [ClassId::C3_2kGe6, ClassId::C3_5_2kGe6] {
        let report = max_chi_experiment(&maxchi_config(class))?;
        fs::write(dir.join(maxchi_file_name(class)), report.to_jsonl())?;
    }
    Ok(())
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &FsPath) -> anyhow::Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}
