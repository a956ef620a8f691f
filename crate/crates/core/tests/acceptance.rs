//! One line per acceptance criterion; the test fails if any criterion fails.

use std::io::Write;

use qlocal::selftest::checks;
use qlocal::structure::SearchBudget;

#[test]
fn acceptance_criteria() {
    let budget = SearchBudget::default();
    let mut failed = Vec::new();
    for check in checks() {
        let o = check.execute(&budget);
        // Written to the raw handle so the lines survive output capture.
        let _ = writeln!(
            std::io::stdout().lock(),
            "[{}] {:>2} {}: {}",
            if o.passed { "PASS" } else { "FAIL" },
            o.id,
            o.title,
            o.detail
        );
        if !o.passed {
            failed.push(o.id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
