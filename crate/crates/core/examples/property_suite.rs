//! Runs the seeded property suite and the Rényi counterexample checks.

use fermifree::verify::{counterexample_reports, property_suite, SearchConfig};

fn main() {
    let mut reports = property_suite(42, 4, 50);
    reports.extend(counterexample_reports(&SearchConfig::default()));
    for r in &reports {
        println!(
            "{:<4} {:<46} worst {:.2e}",
            if r.passed { "ok" } else { "FAIL" },
            r.claim,
            r.worst_violation
        );
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    println!("{} claims, {failed} failed", reports.len());
}
