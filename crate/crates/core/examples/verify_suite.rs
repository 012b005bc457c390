// Every check on every family, then the same suite on a corrupted
// trajectory to show it fails.

use ncl::verify::{full_suite, full_suite_with, Fault, SuiteConfig};

pub fn run_example() -> ncl::Result<()> {
    let report = full_suite(5);
    println!(
        "depth 5: {} passed, {} failed",
        report.count(ncl::verify::Status::Pass),
        report.count(ncl::verify::Status::Fail)
    );
    assert!(report.overall());

    let mut cfg = SuiteConfig::new(5);
    cfg.fault = Some(Fault::FlippedCoefficient);
    let bad = full_suite_with(&cfg);
    for e in bad.failures().take(3) {
        println!("FAIL {}", e.name);
    }
    assert!(!bad.overall());
    Ok(())
}

#[allow(dead_code)]
fn main() -> ncl::Result<()> {
    run_example()
}
