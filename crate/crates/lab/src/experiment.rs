//! Experiments over graph streams: class verdicts, chromatic numbers and
//! the lemma suite, reported as JSON lines.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use anyhow::{bail, Context};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use pcp_core::certify::{Certifier, Gates};
use pcp_core::detection::{class_membership, find_c5, find_triangle, holes, verify_certificate};
use pcp_core::graph::io::to_graph6;
use pcp_core::graph::{alternating_coloring, colorful_level, ExactColorer, Levelling};
use pcp_core::pcp::{c5_parity_paths, validate_pcp, validate_rooted_pcp, C5ParityPaths, Grower, GrowthOptions};
use pcp_core::{
    ClassId, CertifyOptions, Exact, Graph, GrowthOutcome, HoleCertificate, LemmaId, LemmaReport, Overrides, RootedPcp,
    Status, Verdict, VertexSet, Witness,
};

use crate::canon::{enumerate, Family};
use crate::generate::{random_graphs, CapExceeded, Target, MAX_EXHAUSTIVE};
use crate::plant::driver_instance;

/// Where the graphs come from.
#[derive(Clone, Debug)]
pub enum Source {
    /// An already parsed graph6 stream.
    Graphs(Vec<Graph>),
    /// Every graph of `family` on `1..=max_n` vertices up to isomorphism.
    Exhaustive { max_n: usize, family: Family },
    Random { seed: u64, count: usize, min_n: usize, max_n: usize, target: Target },
    /// `count` driver instances, seeds `seed..seed + count`.
    Planted { seed: u64, count: usize },
}

impl Source {
    pub fn graphs(&self) -> Result<Vec<Graph>, CapExceeded> {
        match self {
            Source::Graphs(gs) => Ok(gs.clone()),
            &Source::Exhaustive { max_n, family } => {
                if max_n > MAX_EXHAUSTIVE {
                    return Err(CapExceeded::Exhaustive(max_n));
                }
                Ok(enumerate(max_n, family).into_iter().flatten().collect())
            }
            &Source::Random { seed, count, min_n, max_n, target } => random_graphs(max_n, target, seed, count, min_n),
            &Source::Planted { seed, count } => Ok((seed..seed + count as u64).map(driver_instance).collect()),
        }
    }
}

/// Checks the lemma suite can run on each graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteItem {
    /// `2·χ(N_k) ≥ χ` and a proper alternating coloring, for every root
    /// of a connected graph.
    ColorfulLevel,
    /// Every induced 5-hole, minimal dominating set outside it and start.
    C5ParityPaths,
    /// Rooted and unrooted growth from every root and level, validated.
    Growth,
    /// Both stable-shadow checks over every root, level and maximal stable
    /// set of the level above.
    StableShadow,
    /// Rich-vertex, active-lift and shadow-bound checks on every PCP the
    /// growth step produced.
    ShadowBound,
    Drivers,
}

impl SuiteItem {
    pub const ALL: [SuiteItem; 6] = [
        SuiteItem::ColorfulLevel,
        SuiteItem::C5ParityPaths,
        SuiteItem::Growth,
        SuiteItem::StableShadow,
        SuiteItem::ShadowBound,
        SuiteItem::Drivers,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            SuiteItem::ColorfulLevel => "colorful_level",
            SuiteItem::C5ParityPaths => "c5_parity_paths",
            SuiteItem::Growth => "growth",
            SuiteItem::StableShadow => "stable_shadow",
            SuiteItem::ShadowBound => "shadow_bound",
            SuiteItem::Drivers => "drivers",
        }
    }
}

impl fmt::Display for SuiteItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for SuiteItem {
    type Err = anyhow::Error;

    /// Accepts the item tags and the lemma identifiers they cover.
    fn from_str(s: &str) -> anyhow::Result<Self> {
        if let Some(item) = SuiteItem::ALL.into_iter().find(|i| i.tag() == s) {
            return Ok(item);
        }
        let lemma: LemmaId = s.parse().with_context(|| format!("unknown suite item {s:?}"))?;
        Ok(match lemma {
            LemmaId::StableShadowC5free | LemmaId::StableShadowGeneral => SuiteItem::StableShadow,
            LemmaId::RichVertex
            | LemmaId::ActiveLiftBound
            | LemmaId::ShadowBoundC5free
            | LemmaId::ShadowBoundGeneral => SuiteItem::ShadowBound,
            LemmaId::ExtractEvenHoleC5free | LemmaId::ExtractEvenHoleGeneral => SuiteItem::Drivers,
        })
    }
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub source: Source,
    pub class: ClassId,
    pub suite: Vec<SuiteItem>,
    /// Written by the CLI; the library only builds the report.
    pub output: Option<PathBuf>,
    pub overrides: Overrides,
    pub entry_check: bool,
    pub workers: usize,
    /// Keep only records of class members.
    pub members_only: bool,
    /// Add wall-clock time to the aggregate (breaks byte-exact output).
    pub timing: bool,
}

impl ExperimentConfig {
    pub fn new(source: Source, class: ClassId) -> Self {
        Self {
            source,
            class,
            suite: Vec::new(),
            output: None,
            overrides: Overrides::new(),
            entry_check: true,
            workers: 1,
            members_only: false,
            timing: false,
        }
    }

    pub fn with_suite(mut self, suite: &[SuiteItem]) -> Self {
        self.suite = suite.to_vec();
        self
    }

    pub fn with_overrides(mut self, overrides: Overrides) -> Self {
        self.overrides = overrides;
        self
    }
}

/// Outcome counts of one check.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub runs: usize,
    pub holds: usize,
    pub unmet: usize,
    pub counterexamples: usize,
    pub class_violations: usize,
    /// Hole certificates emitted, whatever the status.
    pub certificates: usize,
    /// Largest chromatic value witnessed by a passing run.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_value: Option<usize>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub unmet_steps: BTreeMap<String, usize>,
}

impl Tally {
    fn merge(&mut self, o: &Tally) {
        self.runs += o.runs;
        self.holds += o.holds;
        self.unmet += o.unmet;
        self.counterexamples += o.counterexamples;
        self.class_violations += o.class_violations;
        self.certificates += o.certificates;
        self.max_value = self.max_value.max(o.max_value);
        for (k, v) in &o.unmet_steps {
            *self.unmet_steps.entry(k.clone()).or_default() += v;
        }
    }

    fn pass(&mut self, value: Option<usize>) {
        self.runs += 1;
        self.holds += 1;
        self.max_value = self.max_value.max(value);
    }

    fn unmet(&mut self, step: &str) {
        self.runs += 1;
        self.unmet += 1;
        *self.unmet_steps.entry(step.to_string()).or_default() += 1;
    }
}

/// A check that errored, produced an invalid object or emitted a
/// certificate that does not verify.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub check: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphRecord {
    pub index: usize,
    pub graph6: String,
    pub n: usize,
    pub member: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violation: Option<HoleCertificate>,
    pub chi: usize,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub checks: BTreeMap<String, Tally>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub counterexamples: Vec<LemmaReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<Failure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaxChiRow {
    pub n: usize,
    pub chi: usize,
    /// First member in stream order attaining `chi`.
    pub witness: String,
    pub attained_by: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Aggregate {
    pub class: Option<ClassId>,
    pub graphs: usize,
    pub members: usize,
    pub max_chi: Vec<MaxChiRow>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub checks: BTreeMap<String, Tally>,
    /// Counterexamples whose certificate verifies.
    pub counterexamples: usize,
    pub unsound_certificates: usize,
    pub failures: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

/// One line of a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Line {
    Graph(GraphRecord),
    Aggregate(Aggregate),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub records: Vec<GraphRecord>,
    pub aggregate: Aggregate,
}

impl Report {
    /// JSON lines: one per graph, then the aggregate.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            out.push_str(&serde_json::to_string(&Line::Graph(r.clone())).expect("records serialize"));
            out.push('\n');
        }
        out.push_str(&serde_json::to_string(&Line::Aggregate(self.aggregate.clone())).expect("aggregate serializes"));
        out.push('\n');
        out
    }

    pub fn from_jsonl(text: &str) -> anyhow::Result<Self> {
        let mut records = Vec::new();
        let mut aggregate = None;
        for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            match serde_json::from_str(line).with_context(|| format!("line {}", i + 1))? {
                Line::Graph(r) if aggregate.is_none() => records.push(r),
                Line::Aggregate(a) if aggregate.is_none() => aggregate = Some(a),
                _ => bail!("line {}: record after the aggregate", i + 1),
            }
        }
        Ok(Report { records, aggregate: aggregate.context("missing aggregate line")? })
    }

    pub fn has_counterexample(&self) -> bool {
        self.aggregate.counterexamples > 0
    }
}

/// Per-graph class verdict and χ, aggregated into the largest χ per order
/// among class members.
pub fn max_chi_experiment(cfg: &ExperimentConfig) -> anyhow::Result<Report> {
    let cfg = ExperimentConfig { suite: Vec::new(), members_only: true, ..cfg.clone() };
    run(&cfg)
}

/// Runs `cfg.suite` on every graph of the stream.
pub fn run_lemma_suite(cfg: &ExperimentConfig) -> anyhow::Result<Report> {
    run(cfg)
}

/// Shared driver of every experiment.
pub fn run(cfg: &ExperimentConfig) -> anyhow::Result<Report> {
    let start = Instant::now();
    let graphs = cfg.source.graphs()?;
    let examine_one = |(i, g): (usize, &Graph)| examine(i, g, cfg);
    let records: Vec<GraphRecord> = if cfg.workers <= 1 {
        graphs.iter().enumerate().map(examine_one).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.workers).build()?;
        pool.install(|| graphs.par_iter().enumerate().map(examine_one).collect())
    };
    let records: Vec<GraphRecord> = records.into_iter().filter(|r| r.member || !cfg.members_only).collect();
    let mut aggregate = aggregate(&records, cfg.class);
    if cfg.timing {
        aggregate.runtime_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(Report { records, aggregate })
}

/// Class verdicts of one graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub index: usize,
    pub graph6: String,
    pub n: usize,
    pub verdicts: BTreeMap<ClassId, Verdict>,
    /// The first certificate in class order (the wider class first).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub first_violation: Option<HoleCertificate>,
}

pub fn scan(graphs: &[Graph]) -> Vec<ScanRecord> {
    graphs
        .iter()
        .enumerate()
        .map(|(index, g)| {
            let verdicts: BTreeMap<ClassId, Verdict> =
                CLASSES.into_iter().map(|c| (c, class_membership(g, c))).collect();
            let first_violation = CLASSES.iter().find_map(|c| match &verdicts[c] {
                Verdict::Violation(cert) => Some(cert.clone()),
                Verdict::Member => None,
            });
            ScanRecord { index, graph6: to_graph6(g), n: g.n(), verdicts, first_violation }
        })
        .collect()
}

const CLASSES: [ClassId; 2] = [ClassId::C3_2kGe6, ClassId::C3_5_2kGe6];

fn aggregate(records: &[GraphRecord], class: ClassId) -> Aggregate {
    let mut agg = Aggregate { class: Some(class), graphs: records.len(), ..Aggregate::default() };
    let mut best: BTreeMap<usize, MaxChiRow> = BTreeMap::new();
    for r in records {
        for (name, t) in &r.checks {
            agg.checks.entry(name.clone()).or_default().merge(t);
        }
        agg.counterexamples += r.counterexamples.len();
        agg.unsound_certificates += r.failures.iter().filter(|f| f.check == UNSOUND).count();
        agg.failures += r.failures.len();
        if !r.member {
            continue;
        }
        agg.members += 1;
        let row = best.entry(r.n).or_insert_with(|| MaxChiRow { n: r.n, chi: r.chi, witness: r.graph6.clone(), attained_by: 0 });
        if r.chi > row.chi {
            *row = MaxChiRow { n: r.n, chi: r.chi, witness: r.graph6.clone(), attained_by: 0 };
        }
        if r.chi == row.chi {
            row.attained_by += 1;
        }
    }
    agg.max_chi = best.into_values().collect();
    agg
}

const UNSOUND: &str = "unsound_certificate";

struct Examiner<'a> {
    g: &'a Graph,
    cfg: &'a ExperimentConfig,
    colorer: ExactColorer,
    c5free: bool,
    rec: GraphRecord,
}

fn examine(index: usize, g: &Graph, cfg: &ExperimentConfig) -> GraphRecord {
    let verdict = class_membership(g, cfg.class);
    let colorer = ExactColorer::with_cap(64);
    let mut failures = Vec::new();
    let chi = colorer.chromatic_number(g, g.vertices()).unwrap_or_else(|e| {
        failures.push(Failure { check: "chi".into(), detail: e.to_string() });
        0
    });
    let rec = GraphRecord {
        index,
        graph6: to_graph6(g),
        n: g.n(),
        member: verdict.is_member(),
        violation: verdict.certificate().cloned(),
        chi,
        checks: BTreeMap::new(),
        counterexamples: Vec::new(),
        failures,
    };
    // without entry checks the C5-free procedures also run on graphs with 5-holes
    let c5free = !cfg.entry_check || find_c5(g, g.vertices()).is_none();
    let mut ex = Examiner { g, cfg, colorer, c5free, rec };
    let triangle_free = find_triangle(g, g.vertices()).is_none();
    let mut grown = Vec::new();
    for &item in &cfg.suite {
        match item {
            SuiteItem::ColorfulLevel => ex.colorful_levels(),
            SuiteItem::C5ParityPaths if triangle_free => ex.c5_parity(),
            SuiteItem::C5ParityPaths => {}
            SuiteItem::Growth if triangle_free => grown = ex.growth(),
            SuiteItem::Growth => {}
            SuiteItem::StableShadow if triangle_free => ex.stable_shadows(),
            SuiteItem::StableShadow => {}
            SuiteItem::ShadowBound => {
                if grown.is_empty() && triangle_free && !cfg.suite.contains(&SuiteItem::Growth) {
                    grown = ex.growth_quiet();
                }
                for (lv, rp) in &grown {
                    ex.shadow_bounds(lv, rp);
                }
            }
            SuiteItem::Drivers => ex.drivers(),
        }
    }
    ex.rec
}

impl Examiner<'_> {
    fn tally(&mut self, name: &str) -> &mut Tally {
        self.rec.checks.entry(name.to_string()).or_default()
    }

    fn fail(&mut self, check: &str, detail: impl Into<String>) {
        self.rec.failures.push(Failure { check: check.into(), detail: detail.into() });
    }

    fn certifier(&self) -> Certifier<'_> {
        Certifier::new(
            self.g,
            CertifyOptions { overrides: self.cfg.overrides.clone(), entry_check: self.cfg.entry_check, colorer: self.colorer },
        )
    }

    fn note(&mut self, r: pcp_core::Result<LemmaReport>) {
        let rep = match r {
            Ok(rep) => rep,
            Err(e) => {
                self.fail("certify", e.to_string());
                return;
            }
        };
        let name = rep.lemma.tag();
        if let Some(c) = rep.certificate() {
            let sound = verify_certificate(self.g, c) && (rep.status != Status::CounterexampleFound || c.is_even_ge6());
            if !sound {
                self.fail(UNSOUND, format!("{name}: {:?}", c.verts));
            }
        }
        let emitted = rep.certificate().is_some();
        let t = self.tally(name);
        t.certificates += usize::from(emitted);
        match rep.status {
            Status::Holds => {
                let value = match rep.witness {
                    Some(Witness::Chromatic { value }) => Some(value),
                    _ => None,
                };
                t.pass(value);
            }
            Status::PreconditionUnmet => t.unmet(rep.step.as_deref().unwrap_or("unknown")),
            Status::ClassViolation => {
                t.runs += 1;
                t.class_violations += 1;
            }
            Status::CounterexampleFound => {
                t.runs += 1;
                t.counterexamples += 1;
                if rep.is_verified_counterexample(self.g) {
                    self.rec.counterexamples.push(rep);
                }
            }
        }
    }

    fn levellings(&self) -> Vec<Levelling> {
        (0..self.g.n()).filter_map(|v| Levelling::new(self.g, v).ok()).collect()
    }

    fn colorful_levels(&mut self) {
        if self.g.n() == 0 || !self.g.is_connected(self.g.vertices()) {
            return;
        }
        for lv in self.levellings() {
            let r = (|| -> pcp_core::Result<Option<String>> {
                let k = colorful_level(self.g, &lv)?;
                let level_chi = self.colorer.chromatic_number(self.g, lv.level(k))?;
                if 2 * level_chi < self.rec.chi {
                    return Ok(Some(format!("root {}: 2 chi(N_{k}) = {} < {}", lv.root(), 2 * level_chi, self.rec.chi)));
                }
                let col = alternating_coloring(self.g, &lv)?;
                let t = lv
                    .levels()
                    .iter()
                    .map(|l| self.colorer.chromatic_number(self.g, *l))
                    .collect::<pcp_core::Result<Vec<_>>>()?
                    .into_iter()
                    .max()
                    .unwrap_or(0);
                if !col.is_proper(self.g) || col.colored() != self.g.vertices() || col.num_colors() > 2 * t {
                    return Ok(Some(format!("root {}: alternating coloring is not a proper {}-coloring", lv.root(), 2 * t)));
                }
                Ok(None)
            })();
            match r {
                Ok(None) => self.tally("colorful_level").pass(None),
                Ok(Some(m)) => {
                    self.tally("colorful_level").runs += 1;
                    self.fail("colorful_level", m);
                }
                Err(e) => self.fail("colorful_level", e.to_string()),
            }
        }
    }

    fn c5_parity(&mut self) {
        let g = self.g;
        for c5 in holes(g, g.vertices(), 5, 5) {
            let cset = c5.vertex_set();
            for s in minimal_external_dominating_sets(g, cset) {
                for t in s.iter() {
                    match c5_parity_paths(g, &c5, s, t) {
                        Ok(out) => match parity_output_problem(g, &c5, s, t, &out) {
                            None => self.tally("c5_parity_paths").pass(None),
                            Some(m) => {
                                self.tally("c5_parity_paths").runs += 1;
                                self.fail("c5_parity_paths", m);
                            }
                        },
                        Err(e) => {
                            self.tally("c5_parity_paths").runs += 1;
                            self.fail("c5_parity_paths", format!("{:?}, S = {:?}, t = {t}: {e}", c5.verts, s.to_vec()));
                        }
                    }
                }
            }
        }
    }

    fn growth_quiet(&mut self) -> Vec<(Levelling, RootedPcp)> {
        let saved = (self.rec.checks.clone(), self.rec.failures.len());
        let out = self.growth();
        self.rec.checks = saved.0;
        self.rec.failures.truncate(saved.1);
        out
    }

    /// Grows PCPs from every root and level; returns the rooted ones that
    /// validated.
    fn growth(&mut self) -> Vec<(Levelling, RootedPcp)> {
        let g = self.g;
        let opts = GrowthOptions { colorer: self.colorer, check_class: self.cfg.entry_check, ..GrowthOptions::relaxed() };
        let mut grown = Vec::new();
        for lv in self.levellings() {
            let comp_chi = self.colorer.chromatic_number(g, lv.component()).unwrap_or(1);
            let delta = ex(comp_chi.saturating_sub(1).max(1));
            let v = lv.root();
            if self.c5free {
                let out = Grower::new(g, opts).pcp1_c5free(v, delta);
                self.note_growth("growth_pcp1_c5free", out, |p| validate_pcp(g, p, false));
            }
            let out = Grower::new(g, opts).strong_pcp1(v, delta);
            self.note_growth("growth_strong_pcp1", out, |p| validate_pcp(g, p, true));
            for k in 1..lv.levels().len() {
                let level_chi = self.colorer.chromatic_number(g, lv.level(k)).unwrap_or(1);
                let delta = ex(level_chi.saturating_sub(1).max(1));
                if self.c5free {
                    for order in [1, 2] {
                        let out = Grower::new(g, opts).rooted_pcp_c5free(&lv, k, order, delta);
                        if let Some(rp) = self.note_growth("growth_rooted_c5free", out, |p| validate_rooted_pcp(g, &lv, p, false)) {
                            grown.push((lv.clone(), rp));
                        }
                    }
                }
                let out = Grower::new(g, opts).strong_rooted_pcp(&lv, k, delta);
                if let Some(rp) = self.note_growth("growth_strong_rooted", out, |p| validate_rooted_pcp(g, &lv, p, true)) {
                    grown.push((lv.clone(), rp));
                }
            }
        }
        grown
    }

    fn note_growth<P>(
        &mut self,
        name: &str,
        out: pcp_core::Result<GrowthOutcome<P>>,
        validate: impl FnOnce(&P) -> pcp_core::Result<Vec<pcp_core::pcp::PcpViolation>>,
    ) -> Option<P> {
        match out {
            Err(e) => {
                self.fail(name, e.to_string());
                None
            }
            Ok(GrowthOutcome::PreconditionUnmet { step, .. }) => {
                self.tally(name).unmet(&step);
                None
            }
            Ok(GrowthOutcome::ClassViolation { certificate }) => {
                if !verify_certificate(self.g, &certificate) {
                    self.fail(UNSOUND, format!("{name}: {:?}", certificate.verts));
                }
                let t = self.tally(name);
                t.runs += 1;
                t.class_violations += 1;
                t.certificates += 1;
                None
            }
            Ok(GrowthOutcome::Success { pcp }) => match validate(&pcp) {
                Ok(v) if v.is_empty() => {
                    self.tally(name).pass(None);
                    Some(pcp)
                }
                Ok(v) => {
                    self.tally(name).runs += 1;
                    self.fail(name, format!("invalid PCP: {v:?}"));
                    None
                }
                Err(e) => {
                    self.fail(name, e.to_string());
                    None
                }
            },
        }
    }

    fn stable_shadows(&mut self) {
        let g = self.g;
        for lv in self.levellings() {
            for k in 1..lv.levels().len() {
                for s in g.maximal_stable_sets(lv.level(k - 1)) {
                    if self.c5free {
                        let r = self.certifier().stable_shadow_check_c5free(&lv, s, k);
                        self.note(r);
                    }
                    let r = self.certifier().stable_shadow_check_general(&lv, s, k);
                    self.note(r);
                }
            }
        }
    }

    fn shadow_bounds(&mut self, lv: &Levelling, rp: &RootedPcp) {
        let g = self.g;
        let k = rp.level;
        for xp in lv.level(k - 1).iter() {
            if g.neighbors(xp).intersects(&rp.pcp.last) {
                let r = self.certifier().rich_vertex_check(lv, rp, xp);
                self.note(r);
            }
        }
        let gates = if self.c5free { Gates::c5free() } else { Gates::general() }.apply(&self.cfg.overrides);
        let r = self.certifier().active_lift_bound(lv, rp, gates.gamma);
        self.note(r);
        if self.c5free {
            let r = self.certifier().shadow_bound_c5free(lv, rp);
            self.note(r);
        }
        let r = self.certifier().shadow_bound_general(lv, rp);
        self.note(r);
    }

    fn drivers(&mut self) {
        if self.c5free {
            let r = self.certifier().extract_even_hole_c5free();
            self.note(r);
        }
        let r = self.certifier().extract_even_hole_general();
        self.note(r);
    }
}

fn ex(n: usize) -> Exact {
    Exact::from_integer(n as i128)
}

/// Inclusion-minimal sets of vertices outside `c` dominating `c`.
pub fn minimal_external_dominating_sets(g: &Graph, c: VertexSet) -> Vec<VertexSet> {
    let pool: Vec<usize> = (g.neighbors_of_set(c) - c).to_vec();
    let covers = |s: VertexSet| c.is_subset(&g.neighbors_of_set(s));
    let mut out = Vec::new();
    // a minimal dominating set has a private neighbor per vertex, so at most |c| vertices
    let mut stack: Vec<(usize, VertexSet)> = vec![(0, VertexSet::new())];
    while let Some((from, s)) = stack.pop() {
        if covers(s) {
            if s.iter().all(|w| {
                let mut rest = s;
                rest.remove(w);
                !covers(rest)
            }) {
                out.push(s);
            }
            continue;
        }
        if s.len() == c.len() {
            continue;
        }
        for i in (from..pool.len()).rev() {
            let mut next = s;
            next.insert(pool[i]);
            stack.push((i + 1, next));
        }
    }
    out.sort_by_key(|s| s.to_vec());
    out
}

/// Independent check of a parity-path output; `None` when it is correct.
pub fn parity_output_problem(g: &Graph, c5: &HoleCertificate, s: VertexSet, t: usize, out: &C5ParityPaths) -> Option<String> {
    let cset = c5.vertex_set();
    let induced = |p: &[usize]| {
        let m = p.len();
        p.iter().collect::<VertexSet>().len() == m
            && (0..m).all(|i| {
                (i + 1..m).all(|j| {
                    let edge = g.has_edge(p[i], p[j]) && !(s.contains(p[i]) && s.contains(p[j]));
                    edge == (j == i + 1)
                })
            })
    };
    let tp = out.t_prime;
    if tp == t || !s.contains(tp) {
        return Some(format!("t' = {tp} is not another vertex of S"));
    }
    for (name, p, lens) in [("p4", &out.p4, &[4usize][..]), ("p35", &out.p35, &[3usize, 5][..])] {
        let v = p.verts();
        if !lens.contains(&p.len()) {
            return Some(format!("{name} has length {}", p.len()));
        }
        if v.first() != Some(&t) || v.last() != Some(&tp) {
            return Some(format!("{name} does not run from {t} to {tp}"));
        }
        if !p.interior().iter().all(|&x| cset.contains(x)) {
            return Some(format!("{name} leaves the hole"));
        }
        if !induced(v) {
            return Some(format!("{name} = {v:?} is not induced"));
        }
    }
    None
}
