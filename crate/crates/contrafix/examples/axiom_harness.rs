//! Run every named verification suite at the quick depths and print the
//! report table. `CONTRAFIX_THREADS` caps the parallelism.
//!
//!     cargo run --example axiom_harness

use contrafix::harness::{run_checks, CheckParams, CHECK_IDS};
use contrafix::setfamily::Family;

fn main() {
    let family = Family::new();
    let params = CheckParams::shallow();
    let reports = run_checks(&family, &CHECK_IDS, &params).expect("checks run");
    for report in &reports {
        let status = if report.passed() { "pass" } else { "FAIL" };
        println!(
            "{:<12} {status} ({} ms)",
            report.check_id,
            report.runtime_ms.unwrap_or(0)
        );
        if let Some(details) = &report.details {
            println!("             {details}");
        }
        if let Some(counterexample) = &report.counterexample {
            println!("             reproducer: {counterexample}");
        }
    }
}
