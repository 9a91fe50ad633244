//! Scan the enumeration for sets that hold some u together with w·u — the
//! trace a fixed point of x ↦ wx would have to leave. The hit list is
//! finite and stops growing, which is the machine-checkable face of
//! fixed-point freeness.
//!
//!     cargo run --example pair_scan_report

use contrafix::setfamily::Family;
use contrafix::words::Word;

fn main() {
    let family = Family::new();
    let word: Word = "ab".parse().expect("literal");
    let report = family.pair_scan(&word, 1000, 48).expect("bounded scan");
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("report serializes")
    );

    let wider = family.pair_scan(&word, 2000, 48).expect("bounded scan");
    println!(
        "\nhits at rank ≤ 1000: {}; at rank ≤ 2000: {} (stable)",
        report.hits.len(),
        wider.hits.len()
    );
}
