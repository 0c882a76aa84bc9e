//! `pcp-lab`: class scans, single-graph certification, the lemma suite and
//! the max-χ table, all reported as JSON lines.
//!
//! Exit codes: 0 on success, 1 when a verified counterexample to a lemma
//! appears, 2 on usage or input errors and when an internal check fails.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use pcp_core::graph::io::{from_edge_list, to_graph6};
use pcp_core::{ClassId, CertifyOptions, Graph, Overrides};
use pcp_lab::canon::Family;
use pcp_lab::experiment::{max_chi_experiment, run_lemma_suite, scan, ExperimentConfig, Report, Source, SuiteItem};
use pcp_lab::generate::{parse_graph6_stream, Target};

#[derive(Parser)]
#[command(name = "pcp-lab", version, about = "Experiments on triangle-free graphs without long even holes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Class verdicts and the first violating hole of every graph.
    Scan(SourceArgs),
    /// Runs an even-hole driver on every input graph.
    Certify(CertifyArgs),
    /// Runs the lemma suite over a graph stream.
    Suite(SuiteArgs),
    /// Largest χ among class members, per order.
    Maxchi(SourceArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Graph6,
    /// A single graph: `n m` followed by `m` lines `u v`.
    Edges,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    All,
    TriangleFree,
    Class,
    /// Planted driver instances (random mode only).
    Planted,
}

#[derive(Clone, Copy, ValueEnum)]
enum Driver {
    C5free,
    General,
}

#[derive(Args)]
struct SourceArgs {
    /// C_3_2k_ge6 or C_3_5_2k_ge6.
    #[arg(long, default_value = "C_3_2k_ge6")]
    class: ClassId,
    /// Exhaustive mode up to this order, or the largest order in random mode.
    #[arg(long)]
    n: Option<usize>,
    /// Random mode seed.
    #[arg(long)]
    seed: Option<u64>,
    /// Random mode graph count.
    #[arg(long)]
    count: Option<usize>,
    /// Smallest order in random mode.
    #[arg(long, default_value_t = 1)]
    min_n: usize,
    /// Graphs generated in exhaustive and random mode. Defaults to the class.
    #[arg(long, value_enum)]
    family: Option<FamilyArg>,
    /// Read graphs from this file instead of standard input.
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "graph6")]
    format: Format,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Record wall-clock time in the aggregate.
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct GateArgs {
    /// Gate override, `stage=value` with an integer or `p/q` value.
    #[arg(long = "override", value_name = "STAGE=VALUE")]
    overrides: Vec<String>,
    /// Skip the class membership check on entry.
    #[arg(long)]
    no_entry_check: bool,
}

#[derive(Args)]
struct CertifyArgs {
    #[arg(long, value_enum, default_value = "general")]
    driver: Driver,
    #[command(flatten)]
    gates: GateArgs,
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "graph6")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SuiteArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[command(flatten)]
    gates: GateArgs,
    /// Comma-separated suite items or lemma names. Defaults to every item.
    #[arg(long, value_delimiter = ',')]
    suite: Vec<SuiteItem>,
    /// Only keep records of class members.
    #[arg(long)]
    members_only: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => {
            eprintln!("pcp-lab: verified counterexample found");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("pcp-lab: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// Returns whether a verified counterexample appeared.
fn dispatch(command: Command) -> anyhow::Result<bool> {
    match command {
        Command::Scan(a) => {
            let graphs = a.source(Family::All)?.graphs()?;
            let mut out = String::new();
            for r in scan(&graphs) {
                out.push_str(&serde_json::to_string(&r)?);
                out.push('\n');
            }
            emit(a.out.as_ref(), &out)?;
            Ok(false)
        }
        Command::Certify(a) => {
            let graphs = read_graphs(a.file.as_ref(), a.format)?;
            let opts = CertifyOptions {
                overrides: a.gates.overrides()?,
                entry_check: !a.gates.no_entry_check,
                ..CertifyOptions::default()
            };
            let mut found = false;
            let mut out = String::new();
            for g in &graphs {
                let mut c = pcp_core::certify::Certifier::new(g, opts.clone());
                let report = match a.driver {
                    Driver::C5free => c.extract_even_hole_c5free(),
                    Driver::General => c.extract_even_hole_general(),
                }
                .with_context(|| format!("graph {}", to_graph6(g)))?;
                found |= report.is_verified_counterexample(g);
                out.push_str(&serde_json::to_string(&report)?);
                out.push('\n');
            }
            emit(a.out.as_ref(), &out)?;
            Ok(found)
        }
        Command::Suite(a) => {
            let suite = if a.suite.is_empty() { SuiteItem::ALL.to_vec() } else { a.suite.clone() };
            let mut cfg = a.source.config(Family::Class(a.source.class))?.with_suite(&suite);
            cfg.overrides = a.gates.overrides()?;
            cfg.entry_check = !a.gates.no_entry_check;
            cfg.members_only = a.members_only;
            finish(&run_lemma_suite(&cfg)?, a.source.out.as_ref())
        }
        Command::Maxchi(a) => {
            let cfg = a.config(Family::Class(a.class))?;
            finish(&max_chi_experiment(&cfg)?, a.out.as_ref())
        }
    }
}

fn finish(report: &Report, out: Option<&PathBuf>) -> anyhow::Result<bool> {
    emit(out, &report.to_jsonl())?;
    let a = &report.aggregate;
    eprintln!(
        "pcp-lab: {} graphs, {} members, {} counterexamples, {} unsound certificates, {} failures",
        a.graphs, a.members, a.counterexamples, a.unsound_certificates, a.failures
    );
    if a.unsound_certificates > 0 || a.failures > 0 {
        bail!("internal check failed, see the report");
    }
    Ok(report.has_counterexample())
}

impl SourceArgs {
    fn family(&self, default: Family) -> anyhow::Result<Family> {
        Ok(match self.family {
            None => default,
            Some(FamilyArg::All) => Family::All,
            Some(FamilyArg::TriangleFree) => Family::TriangleFree,
            Some(FamilyArg::Class) => Family::Class(self.class),
            Some(FamilyArg::Planted) => bail!("--family planted needs --seed or --count"),
        })
    }

    /// Random when a seed or count is given, exhaustive when only `--n`
    /// is, otherwise the input stream.
    fn source(&self, default: Family) -> anyhow::Result<Source> {
        let random = self.seed.is_some() || self.count.is_some();
        if random && matches!(self.family, Some(FamilyArg::Planted)) {
            return Ok(Source::Planted { seed: self.seed.unwrap_or(0), count: self.count.unwrap_or(1) });
        }
        let family = self.family(default)?;
        if random {
            let target = match family {
                Family::All | Family::TriangleFree => Target::TriangleFree,
                Family::Class(c) => Target::Class(c),
            };
            let max_n = self.n.context("random mode needs --n")?;
            return Ok(Source::Random {
                seed: self.seed.unwrap_or(0),
                count: self.count.unwrap_or(1),
                min_n: self.min_n,
                max_n,
                target,
            });
        }
        if let Some(max_n) = self.n {
            return Ok(Source::Exhaustive { max_n, family });
        }
        Ok(Source::Graphs(read_graphs(self.file.as_ref(), self.format)?))
    }

    fn config(&self, default: Family) -> anyhow::Result<ExperimentConfig> {
        let mut cfg = ExperimentConfig::new(self.source(default)?, self.class);
        cfg.workers = self.workers;
        cfg.output = self.out.clone();
        cfg.timing = self.timing;
        Ok(cfg)
    }
}

impl GateArgs {
    fn overrides(&self) -> anyhow::Result<Overrides> {
        let mut o = Overrides::new();
        for a in &self.overrides {
            let (stage, value) = Overrides::parse_assignment(a)?;
            o.set(&stage, value)?;
        }
        Ok(o)
    }
}

fn read_graphs(file: Option<&PathBuf>, format: Format) -> anyhow::Result<Vec<Graph>> {
    let text = match file {
        Some(p) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).context("reading standard input")?;
            s
        }
    };
    Ok(match format {
        Format::Graph6 => parse_graph6_stream(&text)?,
        Format::Edges => vec![from_edge_list(&text)?],
    })
}

fn emit(out: Option<&PathBuf>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => io::stdout().lock().write_all(text.as_bytes()).context("writing standard output"),
    }
}
