//! Runs all ten acceptance criteria, prints one line per criterion, then
//! fails if any did not pass.

use std::io::Write;

use heightgap::suites::{Suite, SuiteName};
use heightgap::RunConfig;

#[test]
fn acceptance() {
    let suite = Suite::new(&RunConfig::default());
    let mut failed = Vec::new();
    // Written to the raw handle so the lines show without --nocapture.
    let mut err = std::io::stderr().lock();
    for id in SuiteName::All.criteria() {
        let r = suite.run(id);
        writeln!(err, "{}", r.line()).unwrap();
        if !r.passed {
            failed.push(r.id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
