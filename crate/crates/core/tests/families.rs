use ncl::dynamics::{seq_14, trajectory_range, verify_conserved, verify_nonlinear, CaseTag, InitialData};
use ncl::verify::{check_c_inverse_term, comm_oracle_seeded};

#[test]
fn negative_indices_match_the_commutative_recursion() {
    // ab(R_n) for the (2,2) system run backwards from the same seeds
    let traj = trajectory_range(CaseTag::B22, -6, 4).unwrap();
    let comm = comm_oracle_seeded(2, 2, 0, -6, 4).unwrap();
    for n in -6..=4 {
        assert_eq!(traj.r(n).unwrap().abelianize(), *comm.r(n).unwrap(), "n={n}");
    }
}

#[test]
fn every_case_extends_through_zero() {
    for case in CaseTag::ALL {
        let traj = trajectory_range(case, -4, 5).unwrap();
        assert!(traj.r_range().0 <= -4, "{case}");
        let rep = verify_nonlinear(&traj);
        assert!(rep.overall(), "{case}: {rep}");
        assert!(traj.r.values().all(|v| v.is_positive()), "{case}");
    }
}

#[test]
fn conserved_quantities_on_both_data() {
    for data in [InitialData::Xy, InitialData::XY] {
        let traj = seq_14(data, 6);
        let mut rep = verify_conserved(&traj);
        rep.extend(check_c_inverse_term(&traj));
        assert!(rep.overall(), "{rep}");
    }
}

#[test]
fn out_of_range_requests_are_errors() {
    let traj = seq_14(InitialData::Xy, 4);
    assert!(matches!(traj.r(9), Err(ncl::Error::IndexUnavailable(9))));
}
