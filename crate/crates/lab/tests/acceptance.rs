//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! fails. The oracles below are deliberately naive and share no code with
//! the library beyond graph storage.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;

use pcp_core::detection::{class_membership, find_hole, holes, verify_certificate};
use pcp_core::graph::io::from_graph6;
use pcp_core::graph::{alternating_coloring, colorful_level, ExactColorer, Levelling};
use pcp_core::pcp::c5_parity_paths;
use pcp_core::{thresholds, ClassId, Graph, HoleCertificate, Overrides, Parity, VertexSet};
use pcp_lab::canon::{enumerate, Family};
use pcp_lab::experiment::{max_chi_experiment, run, Aggregate, ExperimentConfig, Report, Source, SuiteItem};
use pcp_lab::fixtures::{flagged, maxchi_config, maxchi_file_name, read_json, PcpFixture, PCP_SUITE_FILE};
use pcp_lab::generate::Target;
use pcp_lab::plant::{planted, Shape};

type Check = fn() -> Result<String, String>;

const CLASSES: [ClassId; 2] = [ClassId::C3_2kGe6, ClassId::C3_5_2kGe6];

fn main() -> ExitCode {
    let checks: [(u8, &str, Check); 9] = [
        (1, "coloring oracle", coloring_oracle),
        (2, "hole oracle", hole_oracle),
        (3, "colorful level", colorful_level_check),
        (4, "c5 parity paths", c5_parity_check),
        (5, "constants", constants_check),
        (6, "vacuous-truth fuzz", vacuous_truth_fuzz),
        (7, "certificate soundness fuzz", certificate_soundness_fuzz),
        (8, "pcp validator completeness", validator_completeness),
        (9, "max-chi table", max_chi_table),
    ];
    let mut failed = 0;
    for (id, name, check) in checks {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {id} PASS [{name}] {msg} ({secs:.1}s)"),
            Err(msg) => {
                failed += 1;
                println!("criterion {id} FAIL [{name}] {msg} ({secs:.1}s)");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn g6(g: &Graph) -> String {
    pcp_core::graph::io::to_graph6(g)
}

// ---- oracles ----

/// Adjacency rows as bit masks; every oracle graph has at most 16 vertices.
fn rows(g: &Graph) -> Vec<u32> {
    (0..g.n()).map(|v| g.neighbors(v).iter().fold(0, |m, w| m | 1 << w)).collect()
}

fn mask_of(s: VertexSet) -> u32 {
    s.iter().fold(0, |m, v| m | 1 << v)
}

fn set_of(mask: u32) -> VertexSet {
    (0..32).filter(|v| mask >> v & 1 == 1).collect()
}

/// Chromatic number of the subgraph on `mask`: try k = 1, 2, … and assign
/// colors vertex by vertex.
fn oracle_chi(rows: &[u32], mask: u32) -> usize {
    let verts: Vec<usize> = (0..32).filter(|v| mask >> v & 1 == 1).collect();
    if verts.is_empty() {
        return 0;
    }
    fn assign(rows: &[u32], verts: &[usize], i: usize, k: usize, color: &mut [usize]) -> bool {
        if i == verts.len() {
            return true;
        }
        let v = verts[i];
        for c in 0..k {
            let clash = verts[..i].iter().any(|&w| rows[v] >> w & 1 == 1 && color[w] == c);
            if !clash {
                color[v] = c;
                if assign(rows, verts, i + 1, k, color) {
                    return true;
                }
            }
        }
        false
    }
    let mut color = vec![usize::MAX; rows.len()];
    (1..=verts.len()).find(|&k| assign(rows, &verts, 0, k, &mut color)).expect("n colors always suffice")
}

/// Whether `mask` induces a cycle: 2-regular and connected.
fn induces_cycle(rows: &[u32], mask: u32) -> bool {
    if mask.count_ones() < 3 {
        return false;
    }
    let mut m = mask;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        if (rows[v] & mask).count_ones() != 2 {
            return false;
        }
    }
    let mut seen = 1u32 << mask.trailing_zeros();
    loop {
        let mut next = seen;
        let mut m = seen;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            next |= rows[v] & mask;
        }
        if next == seen {
            return seen == mask;
        }
        seen = next;
    }
}

/// Cyclic order of an induced cycle on `mask`.
fn cycle_order(rows: &[u32], mask: u32) -> Vec<usize> {
    let start = mask.trailing_zeros() as usize;
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let nb = rows[cur] & mask;
        let next = (0..32).find(|&w| nb >> w & 1 == 1 && w != prev).expect("2-regular");
        if next == start {
            return order;
        }
        order.push(next);
        prev = cur;
        cur = next;
    }
}

fn parity_ok(parity: Parity, len: usize) -> bool {
    match parity {
        Parity::Even => len % 2 == 0,
        Parity::Odd => len % 2 == 1,
        Parity::Any => true,
    }
}

/// Induced path after deleting the edges inside `s`.
fn induced_without(rows: &[u32], p: &[usize], s: u32) -> bool {
    let distinct: BTreeSet<usize> = p.iter().copied().collect();
    if distinct.len() != p.len() {
        return false;
    }
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            let (a, b) = (p[i], p[j]);
            let inside = s >> a & 1 == 1 && s >> b & 1 == 1;
            let edge = rows[a] >> b & 1 == 1 && !inside;
            if edge != (j == i + 1) {
                return false;
            }
        }
    }
    true
}

fn big(n: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

// ---- criteria ----

fn coloring_oracle() -> Result<String, String> {
    let colorer = ExactColorer::default();
    let mut count = 0;
    for g in enumerate(9, Family::All).into_iter().flatten() {
        let r = rows(&g);
        let want = oracle_chi(&r, (1 << g.n()) - 1);
        let got = colorer.chromatic_number(&g, g.vertices()).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("{}: chi {got}, oracle {want}", g6(&g)))?;
        let c = colorer.color(&g, g.vertices()).map_err(|e| e.to_string())?;
        let proper = g.edges().all(|(u, v)| c.color_of(u).is_some() && c.color_of(u) != c.color_of(v));
        let complete = (0..g.n()).all(|v| c.color_of(v).is_some_and(|x| x < want));
        ensure(proper && complete, || format!("{}: optimal coloring is not a proper {want}-coloring", g6(&g)))?;
        count += 1;
    }
    ensure(count >= 260_000, || format!("only {count} graphs"))?;
    Ok(format!("{count} graphs on at most 9 vertices, 0 mismatches"))
}

fn hole_oracle() -> Result<String, String> {
    let (mut graphs, mut queries) = (0, 0);
    for g in enumerate(8, Family::All).into_iter().flatten() {
        let n = g.n();
        let r = rows(&g);
        let cycles: Vec<u32> = (1u32..1 << n).filter(|&m| induces_cycle(&r, m)).collect();
        let listed: BTreeSet<u32> = holes(&g, g.vertices(), 3, n).iter().map(|c| mask_of(c.vertex_set())).collect();
        let want: BTreeSet<u32> = cycles.iter().copied().collect();
        ensure(listed == want && listed.len() == holes(&g, g.vertices(), 3, n).len(), || {
            format!("{}: hole enumeration differs from the subset oracle", g6(&g))
        })?;
        for min_len in 3..=n.max(3) {
            for max_len in min_len..=n.max(min_len) {
                for parity in [Parity::Even, Parity::Odd, Parity::Any] {
                    queries += 1;
                    let fits = |len: usize| len >= min_len && len <= max_len && parity_ok(parity, len);
                    let expected = cycles.iter().any(|m| fits(m.count_ones() as usize));
                    let got = find_hole(&g, g.vertices(), min_len, max_len, parity);
                    match got {
                        None => ensure(!expected, || {
                            format!("{}: missed a hole in [{min_len}, {max_len}] {parity:?}", g6(&g))
                        })?,
                        Some(c) => ensure(expected && fits(c.len()) && verify_certificate(&g, &c), || {
                            format!("{}: bad hole {:?} for [{min_len}, {max_len}] {parity:?}", g6(&g), c.verts)
                        })?,
                    }
                }
            }
        }
        graphs += 1;
    }
    Ok(format!("{graphs} graphs on at most 8 vertices, {queries} window queries, 0 mismatches"))
}

fn colorful_level_check() -> Result<String, String> {
    let (mut graphs, mut roots) = (0, 0);
    for g in enumerate(9, Family::All).into_iter().flatten() {
        if !g.is_connected(g.vertices()) {
            continue;
        }
        let r = rows(&g);
        let chi = oracle_chi(&r, (1 << g.n()) - 1);
        for v in 0..g.n() {
            let lv = Levelling::new(&g, v).map_err(|e| e.to_string())?;
            let k = colorful_level(&g, &lv).map_err(|e| e.to_string())?;
            let level_chi: Vec<usize> = lv.levels().iter().map(|l| oracle_chi(&r, mask_of(*l))).collect();
            ensure(2 * level_chi[k] >= chi, || format!("{} root {v}: 2 chi(N_{k}) < {chi}", g6(&g)))?;
            ensure(level_chi[..k].iter().all(|&c| 2 * c < chi), || format!("{} root {v}: level {k} not the first", g6(&g)))?;
            let t = *level_chi.iter().max().expect("root level");
            let col = alternating_coloring(&g, &lv).map_err(|e| e.to_string())?;
            let used: BTreeSet<usize> = (0..g.n()).filter_map(|w| col.color_of(w)).collect();
            let proper = g.edges().all(|(a, b)| col.color_of(a) != col.color_of(b));
            let complete = (0..g.n()).all(|w| col.color_of(w).is_some_and(|c| c < 2 * t));
            ensure(proper && complete && used.len() <= 2 * t, || {
                format!("{} root {v}: alternating coloring is not a proper {}-coloring", g6(&g), 2 * t)
            })?;
            roots += 1;
        }
        graphs += 1;
    }
    Ok(format!("{graphs} connected graphs on at most 9 vertices, {roots} roots"))
}

fn c5_parity_check() -> Result<String, String> {
    let mut cases = 0usize;
    let graphs: Vec<Graph> = enumerate(10, Family::TriangleFree).into_iter().flatten().collect();
    for g in &graphs {
        let n = g.n();
        let r = rows(g);
        for c in (0u32..1 << n).filter(|m| m.count_ones() == 5 && induces_cycle(&r, *m)) {
            let cert = HoleCertificate::new(cycle_order(&r, c));
            let pool: Vec<usize> = (0..n).filter(|&v| c >> v & 1 == 0 && r[v] & c != 0).collect();
            let dominates = |s: u32| (0..n).filter(|&v| c >> v & 1 == 1).all(|v| r[v] & s != 0);
            for pick in 1u32..1 << pool.len() {
                let s = pool.iter().enumerate().filter(|(i, _)| pick >> i & 1 == 1).fold(0, |m, (_, &v)| m | 1 << v);
                let minimal = (0..n).filter(|&v| s >> v & 1 == 1).all(|v| !dominates(s & !(1 << v)));
                if !dominates(s) || !minimal {
                    continue;
                }
                for t in (0..n).filter(|&v| s >> v & 1 == 1) {
                    cases += 1;
                    let ctx = || format!("{} C = {:?} S = {:?} t = {t}", g6(g), cert.verts, set_of(s).to_vec());
                    let out = c5_parity_paths(g, &cert, set_of(s), t).map_err(|e| format!("{}: {e}", ctx()))?;
                    let tp = out.t_prime;
                    ensure(tp != t && s >> tp & 1 == 1, || format!("{}: t' = {tp}", ctx()))?;
                    for (p, lens) in [(&out.p4, &[4usize][..]), (&out.p35, &[3, 5][..])] {
                        let v = p.verts();
                        let ends = v.first() == Some(&t) && v.last() == Some(&tp);
                        let inside = v[1..v.len() - 1].iter().all(|&w| c >> w & 1 == 1);
                        let ok = lens.contains(&(v.len() - 1)) && ends && inside && induced_without(&r, v, s);
                        ensure(ok, || format!("{}: bad path {v:?}", ctx()))?;
                    }
                }
            }
        }
    }
    ensure(cases > 0, || "no instance found".into())?;
    // the harness suite must see the same instances and agree
    let cfg = ExperimentConfig::new(Source::Graphs(graphs.clone()), ClassId::C3_2kGe6).with_suite(&[SuiteItem::C5ParityPaths]);
    let report = run(&cfg).map_err(|e| e.to_string())?;
    let tally = report.aggregate.checks.get("c5_parity_paths").cloned().unwrap_or_default();
    ensure(tally.runs == cases && tally.holds == cases && report.aggregate.failures == 0, || {
        format!("harness ran {} and passed {} of {cases} instances", tally.runs, tally.holds)
    })?;
    Ok(format!("{} triangle-free graphs on at most 10 vertices, {cases} (C, S, t) instances, 100% valid", graphs.len()))
}

fn constants_check() -> Result<String, String> {
    let t = thresholds();
    let (cp, c) = (t.c_prime, t.c);
    ensure(cp.is_integer() && c.is_integer(), || "constants are not integers".into())?;
    let (cp, c) = (cp.to_integer(), c.to_integer());
    let h = |x: BigRational| x / big(2) - big(8);
    let g = |x: BigRational| x / big(52);
    let f = |x: BigRational| x / big(2) - big(15);
    let cp_lhs = |n: i128| {
        let c1 = big(n) / big(2) - big(1);
        let c3 = g(h(h(c1)));
        g(h(h(c3 - big(1))))
    };
    let phi = |x: BigRational| x / (big(2) * big(cp));
    let c_lhs = |n: i128| {
        let c1 = big(n) / big(2) - big(1);
        let c3 = phi(f(c1));
        phi(f(c3 - big(1)))
    };
    ensure(cp_lhs(cp) >= big(5), || format!("c' = {cp} fails >= 5"))?;
    ensure(cp_lhs(cp - 1) < big(5), || format!("c' - 1 = {} passes >= 5", cp - 1))?;
    ensure(c_lhs(c) >= big(4) * big(cp), || format!("c = {c} fails >= 4c'"))?;
    ensure(c_lhs(c - 1) < big(4) * big(cp), || format!("c - 1 = {} passes >= 4c'", c - 1))?;
    ensure(cp == 453_122 && c == 11_908_454_876_678_370_862, || format!("unexpected constants c' = {cp}, c = {c}"))?;
    Ok(format!("c' = {cp}, c = {c}, both minimal"))
}

fn sound(a: &Aggregate, what: &str) -> Result<(), String> {
    ensure(a.unsound_certificates == 0 && a.failures == 0, || {
        format!("{what}: {} unsound certificates, {} failures", a.unsound_certificates, a.failures)
    })
}

fn certificates(a: &Aggregate) -> usize {
    a.checks.values().map(|t| t.certificates).sum()
}

fn stable_shadow_max(a: &Aggregate) -> usize {
    a.checks.iter().filter(|(k, _)| k.starts_with("stable_shadow")).filter_map(|(_, t)| t.max_value).max().unwrap_or(0)
}

fn vacuous_truth_fuzz() -> Result<String, String> {
    let (mut graphs, mut runs, mut shadow) = (0, 0, 0);
    // exhaustive part through the CLI, whose exit code must be 0
    for cls in CLASSES {
        let out = Command::new(env!("CARGO_BIN_EXE_pcp-lab"))
            .args(["suite", "--n", "10", "--class", cls.tag()])
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.code() == Some(0), || format!("pcp-lab suite --n 10 --class {cls} exited {:?}", out.status))?;
        let report = Report::from_jsonl(&String::from_utf8_lossy(&out.stdout)).map_err(|e| e.to_string())?;
        let a = &report.aggregate;
        ensure(a.counterexamples == 0 && a.members == a.graphs, || format!("{cls} exhaustive: {a:?}"))?;
        sound(a, "exhaustive")?;
        graphs += a.graphs;
        runs += a.checks.values().map(|t| t.runs).sum::<usize>();
        shadow = shadow.max(stable_shadow_max(a));
    }
    let small: Vec<Graph> = CLASSES
        .iter()
        .flat_map(|&c| enumerate(10, Family::Class(c)).into_iter().flatten())
        .collect();
    let cfg = ExperimentConfig::new(Source::Graphs(small), ClassId::C3_2kGe6)
        .with_suite(&SuiteItem::ALL)
        .with_overrides(Overrides::all(1));
    let report = run(&cfg).map_err(|e| e.to_string())?;
    ensure(report.aggregate.counterexamples == 0, || "exhaustive, all gates 1: counterexample".into())?;
    sound(&report.aggregate, "exhaustive, all gates 1")?;
    runs += report.aggregate.checks.values().map(|t| t.runs).sum::<usize>();
    let mut random = 0;
    for (i, cls) in CLASSES.into_iter().enumerate() {
        for overrides in [Overrides::new(), Overrides::all(1)] {
            let source = Source::Random { seed: 6 + i as u64, count: 25_000, min_n: 6, max_n: 16, target: Target::Class(cls) };
            let cfg = ExperimentConfig::new(source, cls).with_suite(&SuiteItem::ALL).with_overrides(overrides);
            let report = run(&cfg).map_err(|e| e.to_string())?;
            let a = &report.aggregate;
            ensure(a.members == a.graphs, || format!("{cls}: {} of {} random graphs are members", a.members, a.graphs))?;
            ensure(a.counterexamples == 0, || format!("{cls}: {} counterexamples", a.counterexamples))?;
            sound(a, "random")?;
            random += a.graphs;
            runs += a.checks.values().map(|t| t.runs).sum::<usize>();
            shadow = shadow.max(stable_shadow_max(a));
        }
    }
    ensure(random >= 100_000, || format!("only {random} random members"))?;
    Ok(format!(
        "{graphs} exhaustive and {random} random members, {runs} lemma runs, 0 verified counterexamples, \
         largest stable-shadow chi {shadow}"
    ))
}

fn certificate_soundness_fuzz() -> Result<String, String> {
    let drivers = |source: Source| {
        let mut cfg = ExperimentConfig::new(source, ClassId::C3_2kGe6)
            .with_suite(&[SuiteItem::Drivers])
            .with_overrides(Overrides::all(1));
        cfg.entry_check = false;
        run(&cfg).map_err(|e| e.to_string())
    };
    let random = drivers(Source::Random { seed: 70, count: 50_000, min_n: 6, max_n: 24, target: Target::TriangleFree })?;
    let planted_drivers = drivers(Source::Planted { seed: 0, count: 50_000 })?;
    let mut total = 0;
    let mut emitted = 0;
    for (what, r) in [("random", &random), ("planted", &planted_drivers)] {
        sound(&r.aggregate, what)?;
        total += r.aggregate.graphs;
        emitted += certificates(&r.aggregate);
    }
    ensure(total >= 100_000, || format!("only {total} graphs"))?;
    // the lemma checks on deep planted graphs close many more holes
    let deep: Vec<Graph> = (0..200)
        .map(|s| planted(s, Shape::DeepLift { tail: (s % 3) as usize }, 6 + (s % 5) as usize, s % 2 == 0, (s % 4) as usize))
        .collect();
    let mut cfg = ExperimentConfig::new(Source::Graphs(deep), ClassId::C3_2kGe6)
        .with_suite(&[SuiteItem::Growth, SuiteItem::StableShadow, SuiteItem::ShadowBound])
        .with_overrides(Overrides::all(1));
    cfg.entry_check = false;
    let lemmas = run(&cfg).map_err(|e| e.to_string())?;
    sound(&lemmas.aggregate, "lemma checks")?;
    let lemma_certs = certificates(&lemmas.aggregate);
    ensure(emitted > 0 && lemma_certs > 0, || format!("vacuous: {emitted} driver and {lemma_certs} lemma certificates"))?;
    Ok(format!(
        "{total} triangle-free graphs, {emitted} driver certificates, plus {lemma_certs} from lemma checks on 200 \
         planted graphs; all verified"
    ))
}

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn validator_completeness() -> Result<String, String> {
    let suite: Vec<PcpFixture> = read_json(&fixture_dir().join(PCP_SUITE_FILE)).map_err(|e| e.to_string())?;
    let valid = suite.iter().filter(|f| f.defect.is_none()).count();
    ensure(suite.len() == 50 && valid == 25, || format!("{} fixtures, {valid} valid", suite.len()))?;
    for f in &suite {
        let (rooted, plain) = flagged(f).map_err(|e| e.to_string())?;
        let want: BTreeSet<_> = f.defect.into_iter().collect();
        ensure(rooted == want, || format!("{}: flagged {rooted:?}, planted {want:?}", f.name))?;
        // the root condition only exists for rooted PCPs
        if f.defect != Some(pcp_core::pcp::ViolationKind::RootNeighbors) {
            ensure(plain == want, || format!("{}: plain validator flagged {plain:?}", f.name))?;
        }
    }
    let kinds: BTreeSet<_> = suite.iter().filter_map(|f| f.defect).collect();
    Ok(format!("50 fixtures, 25 valid, 25 with one of {} planted defects, 100% exact", kinds.len()))
}

fn max_chi_table() -> Result<String, String> {
    let mut rows_checked = 0;
    for cls in CLASSES {
        let stored = std::fs::read_to_string(fixture_dir().join(maxchi_file_name(cls))).map_err(|e| e.to_string())?;
        let first = max_chi_experiment(&maxchi_config(cls)).map_err(|e| e.to_string())?.to_jsonl();
        let mut parallel = maxchi_config(cls);
        parallel.workers = 2;
        let second = max_chi_experiment(&parallel).map_err(|e| e.to_string())?.to_jsonl();
        ensure(first == stored && second == stored, || format!("{cls}: table differs from the stored fixture"))?;
        let report = Report::from_jsonl(&stored).map_err(|e| e.to_string())?;
        for row in &report.aggregate.max_chi {
            let g = from_graph6(&row.witness).map_err(|e| e.to_string())?;
            let chi = oracle_chi(&rows(&g), (1 << g.n()) - 1);
            ensure(g.n() == row.n && class_membership(&g, cls).is_member() && chi == row.chi, || {
                format!("{cls}: witness {} does not reproduce n = {}, chi = {}", row.witness, row.n, row.chi)
            })?;
            let best = report.records.iter().filter(|r| r.n == row.n).map(|r| r.chi).max();
            ensure(best == Some(row.chi), || format!("{cls}: n = {} maximum disagrees with records", row.n))?;
            rows_checked += 1;
        }
    }
    Ok(format!("both tables byte-exact across runs and worker counts, {rows_checked} witnesses re-verified"))
}
