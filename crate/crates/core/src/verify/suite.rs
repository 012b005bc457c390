use super::checks::{
    check_abelianization, check_c_inverse_term, check_paths, check_positivity, check_quantum,
    check_term_count, check_weights, comm_for,
};
use super::report::VerifyReport;
use crate::dynamics::{
    conserved_22, seq_14, seq_22, seq_22_with_conserved, verify_conserved, verify_nonlinear, CaseTag,
    InitialData, Trajectory,
};
use crate::ncpoly::p;
use crate::pathmodel::{build_model, DEFAULT_BUDGET};

/// Deliberate corruption of the `(2,2)` trajectory, so the suite is known to
/// be able to fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Drops the `x y^-1` term from `K`.
    WrongConserved,
    /// Adds 1 to one coefficient of `R_4` (or the last variable if shorter).
    FlippedCoefficient,
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub n_max: u32,
    /// How far below 0 to extend through the `star` symmetry.
    pub negative_depth: i64,
    pub budget: u64,
    pub fault: Option<Fault>,
}

impl SuiteConfig {
    pub fn new(n_max: u32) -> Self {
        SuiteConfig {
            n_max,
            negative_depth: 6,
            budget: DEFAULT_BUDGET,
            fault: None,
        }
    }
}

/// All five families of a depth, with negative indices attached.
#[derive(Clone, Debug)]
pub struct Families {
    pub f22: Trajectory,
    pub f14: Trajectory,
    pub g14: Trajectory,
    pub f41: Trajectory,
    pub g41: Trajectory,
}

impl Families {
    pub fn all(&self) -> [&Trajectory; 5] {
        [&self.f22, &self.f14, &self.g14, &self.f41, &self.g41]
    }
}

/// Largest `d <= depth` such that `partner` stores `R_{d + 1 + seed}`.
fn available_depth(case: CaseTag, partner: &Trajectory, depth: i64) -> i64 {
    let hi = partner.max_index();
    depth.min(hi - 1 - case.seed_index()).max(0)
}

fn with_negative(traj: &Trajectory, partner: &Trajectory, depth: i64) -> Trajectory {
    let d = available_depth(traj.case, partner, depth);
    // a missing R_0 can need more of the partner than is there
    traj.extend_negative(partner, d).unwrap_or_else(|_| traj.clone())
}

/// Builds every family to depth `n_max` and extends each to negative indices
/// through `star`.
pub fn build_families(n_max: u32, negative_depth: i64, fault: Option<Fault>) -> Families {
    let mut f22 = match fault {
        Some(Fault::WrongConserved) => seq_22_with_conserved(n_max, &conserved_22() - &p("x y^-1")),
        _ => seq_22(n_max),
    };
    if fault == Some(Fault::FlippedCoefficient) {
        let n = f22.max_index().min(4);
        f22 = f22.with_flipped_coefficient(n).expect("index exists");
    }
    let f14 = seq_14(InitialData::Xy, n_max);
    let g14 = seq_14(InitialData::XY, n_max);
    let f41 = Trajectory::translate_41(&g14).expect("14XY");
    let g41 = Trajectory::translate_41(&f14).expect("14xy");

    // partners only supply star images, so they may run past n_max
    let reach = (negative_depth.max(0) + 3) as u32;
    let f14_deep = seq_14(InitialData::Xy, n_max.max(reach));
    let f41_deep = Trajectory::translate_41(&seq_14(InitialData::XY, n_max.max(reach))).expect("14XY");
    let f22_deep = match fault {
        None => seq_22(n_max.max(reach)),
        Some(_) => f22.clone(),
    };

    Families {
        f22: with_negative(&f22, &f22_deep, negative_depth),
        f14: with_negative(&f14, &f41_deep, negative_depth),
        g14: with_negative(&g14, &f14_deep, negative_depth),
        f41: with_negative(&f41, &f14_deep, negative_depth),
        g41: with_negative(&g41, &f41_deep, negative_depth),
    }
}

/// Every identity, oracle comparison and path-model check for one family.
pub fn family_report(traj: &Trajectory, budget: u64) -> VerifyReport {
    let mut report = VerifyReport::new();
    report.extend(verify_nonlinear(traj));
    report.extend(verify_conserved(traj));
    report.extend(check_positivity(traj));
    match comm_for(traj) {
        Ok(comm) => report.extend(check_abelianization(traj, &comm)),
        Err(e) => report.check("abelianization oracle", e, "exact division", false),
    }
    report.extend(check_quantum(traj));
    if matches!(traj.case, CaseTag::B14Xy | CaseTag::B14XY) {
        report.extend(check_c_inverse_term(traj));
    }
    if let Ok(model) = build_model(traj.case) {
        report.extend(check_weights(&model));
        report.extend(check_paths(&model, traj, traj.max_index(), budget));
        if traj.case == CaseTag::B22 {
            report.extend(check_term_count(traj, &model, budget));
        }
    }
    report
}

/// Runs everything on every family to depth `n_max`.
pub fn full_suite(n_max: u32) -> VerifyReport {
    full_suite_with(&SuiteConfig::new(n_max))
}

pub fn full_suite_with(cfg: &SuiteConfig) -> VerifyReport {
    let fam = build_families(cfg.n_max, cfg.negative_depth, cfg.fault);
    let mut report = VerifyReport::new();
    for traj in fam.all() {
        report.extend(family_report(traj, cfg.budget).scoped(traj.case.label()));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn depth_zero_is_vacuous() {
        let mut cfg = SuiteConfig::new(0);
        cfg.negative_depth = 0;
        let rep = full_suite_with(&cfg);
        assert!(rep.overall(), "{rep}");
        assert!(rep.entry("22/nonlinear").unwrap().note.is_some());
    }

    #[test]
    fn small_depth_passes() {
        let rep = full_suite(5);
        assert!(rep.overall(), "{rep}");
        assert_eq!(rep.entry("22/positivity R[n]").unwrap().range, Some((-6, 5)));
    }

    #[test]
    fn faults_are_caught() {
        for fault in [Fault::WrongConserved, Fault::FlippedCoefficient] {
            let mut cfg = SuiteConfig::new(6);
            cfg.fault = Some(fault);
            let rep = full_suite_with(&cfg);
            assert!(!rep.overall());
            assert!(rep.failures().count() >= 2, "{fault:?}: correlated failures");
            assert!(rep.failures().all(|e| e.name.starts_with("22/")));
            assert!(rep.failures().all(|e| e.counterexample.is_some()));
        }
    }
}
