//! End-to-end acceptance gate. Runs every suite criterion, prints one
//! pass/fail line per criterion, and fails if any criterion fails.
//!
//! The same checks are reachable from the CLI via `pdcolor suite`.

use pdcolor::suite::{format_line, run_all, SuiteConfig};

#[test]
fn acceptance_criteria() {
    let cfg = SuiteConfig::default();
    let results = run_all(&cfg);
    for r in &results {
        println!("{}", format_line(r));
    }
    let failed: Vec<_> = results.iter().filter(|r| !r.passed).collect();
    assert!(
        failed.is_empty(),
        "{} criterion(s) failed: {:?}",
        failed.len(),
        failed.iter().map(|r| r.index).collect::<Vec<_>>()
    );
    assert_eq!(results.len(), 10);
}
