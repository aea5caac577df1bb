use std::collections::BTreeSet;
use std::process::Command;

use hkgeom_cli::report::{Status, SuiteReport};
use hkgeom_cli::suite::CRITERIA;

/// Criteria that fail when checked literally, with the reason.
const KNOWN_FAILURES: [(u32, &str); 2] = [
    (5, "the printed sp(3) generators annihilate Υ², not Υ¹; the stabilizer of Υ¹ is their flip conjugate"),
    (8, "the printed 5-form on ℝ¹⁴ is not sp(3)-invariant; the computed invariant line has the same support"),
];

fn run_suite() -> (Vec<u8>, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_hkgeom"))
        .args(["suite", "all", "--slow", "--seed", "1"])
        .output()
        .expect("binary runs");
    (out.stdout, out.status.code().unwrap_or(-1))
}

fn acceptance() {
    let (first, code) = run_suite();
    let (second, _) = run_suite();
    let report: SuiteReport = serde_json::from_slice(&first).expect("suite prints a report");

    let mut failing = BTreeSet::new();
    for (i, claim) in CRITERIA.iter().enumerate() {
        let n = i as u32 + 1;
        let status = if n == 13 {
            Status::from_bool(!first.is_empty() && first == second)
        } else {
            report.criterion_status(n).unwrap_or(Status::Fail)
        };
        let word = match status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::SkippedSlow => "SKIPPED",
        };
        println!("criterion {n}: {word} ({claim})");
        if status != Status::Pass {
            failing.insert(n);
            for c in report.checks.iter().filter(|c| c.criterion() == Some(n) && c.status == Status::Fail) {
                println!("    {}: {}", c.id, c.claim);
            }
        }
    }
    for (n, why) in KNOWN_FAILURES {
        println!("known failure {n}: {why}");
    }

    let known: BTreeSet<u32> = KNOWN_FAILURES.iter().map(|(n, _)| *n).collect();
    assert_eq!(failing, known);
    assert_eq!(code, 1, "failing checks give exit status 1");
}

fn check_ids_are_unique_and_numbered() {
    let report = hkgeom_cli::suite::run_all(hkgeom_cli::suite::Options { seed: 3, slow: false });
    let ids: BTreeSet<&str> = report.checks.iter().map(|c| c.id.as_str()).collect();
    assert_eq!(ids.len(), report.checks.len());
    for n in 1..=12 {
        assert!(report.criterion_status(n).is_some(), "criterion {n} has checks");
    }
    assert!(report.checks.iter().all(|c| matches!(c.criterion(), Some(1..=12))));
}

fn main() {
    check_ids_are_unique_and_numbered();
    acceptance();
    println!("acceptance: ok");
}
