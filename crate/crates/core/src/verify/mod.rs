//! Property suites and independent oracles, aggregated into reports.

pub mod checks;
pub mod oracle;
pub mod report;
pub mod suite;

pub use checks::{
    c_inverse_witness, check_abelianization, check_c_inverse_term, check_paths, check_positivity,
    check_quantum, check_term_count, check_weights, comm_for, product_coeff,
};
pub use oracle::{comm_oracle, comm_oracle_seeded, CommTrajectory};
pub use report::{Counterexample, Entry, Status, VerifyReport};
pub use suite::{build_families, family_report, full_suite, full_suite_with, Families, Fault, SuiteConfig};
