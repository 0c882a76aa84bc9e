//! The binary's exit codes and report shapes.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use pcp_core::detection::verify_certificate;
use pcp_core::graph::io::from_graph6;
use pcp_core::HoleCertificate;

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_pcp-lab"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn lines(o: &Output) -> Vec<serde_json::Value> {
    String::from_utf8_lossy(&o.stdout).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn scan_reports_verdicts_and_verified_holes() {
    let o = run(&["scan", "--n", "6"], "");
    assert_eq!(o.status.code(), Some(0));
    let recs = lines(&o);
    assert_eq!(recs.len(), 1 + 2 + 4 + 11 + 34 + 156);
    let mut violations = 0;
    for r in &recs {
        let g = from_graph6(r["graph6"].as_str().unwrap()).unwrap();
        assert_eq!(r["n"].as_u64(), Some(g.n() as u64));
        if let Some(c) = r.get("first_violation") {
            let c: HoleCertificate = serde_json::from_value(c.clone()).unwrap();
            assert!(verify_certificate(&g, &c));
            violations += 1;
        }
    }
    assert!(violations > 0);
}

#[test]
fn certify_reads_edge_lists_from_stdin() {
    let c6 = "6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n";
    let o = run(&["certify", "--format", "edges"], c6);
    assert_eq!(o.status.code(), Some(0));
    let r = &lines(&o)[0];
    assert_eq!(r["status"], "class_violation");
    assert_eq!(r["witness"]["kind"], "even_ge6");
}

#[test]
fn class_members_exit_zero() {
    let o = run(&["suite", "--n", "7", "--class", "C_3_5_2k_ge6"], "");
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let recs = lines(&o);
    let agg = recs.last().unwrap();
    assert_eq!(agg["type"], "aggregate");
    assert_eq!(agg["members"], agg["graphs"]);
    assert_eq!(agg["counterexamples"], 0);
}

#[test]
fn verified_counterexample_exits_one() {
    let args = ["suite", "--family", "planted", "--seed", "0", "--count", "3", "--suite", "growth,shadow_bound"];
    let o = run(&args, "");
    assert_eq!(o.status.code(), Some(0));
    let o = run(&[&args[..], &["--no-entry-check"]].concat(), "");
    assert_eq!(o.status.code(), Some(1));
    let mut found = 0;
    for r in lines(&o) {
        let Some(g6) = r.get("graph6").and_then(|v| v.as_str()) else { continue };
        let g = from_graph6(g6).unwrap();
        for c in r["counterexamples"].as_array().into_iter().flatten() {
            let h: HoleCertificate = serde_json::from_value(c["witness"].clone()).unwrap();
            assert!(h.is_even_ge6() && verify_certificate(&g, &h));
            found += 1;
        }
    }
    assert!(found > 0);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["scan", "--class", "C_9"][..],
        &["suite", "--override", "nope=1", "--n", "3"],
        &["suite", "--override", "chi", "--n", "3"],
        &["scan", "--seed", "1"],
        &["scan", "--file", "/nonexistent/graphs.g6"],
    ] {
        assert_eq!(run(args, "").status.code(), Some(2), "{args:?}");
    }
    assert_eq!(run(&["scan"], "not graph6 !!\n").status.code(), Some(2));
}
