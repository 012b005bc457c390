// Extending a trajectory below its seed through `star`, and checking that
// the relation still holds there.

use ncl::dynamics::{trajectory_range, verify_nonlinear, CaseTag};

pub fn run_example() -> ncl::Result<()> {
    let traj = trajectory_range(CaseTag::B22, -3, 4)?;
    for n in -3..=4 {
        println!("R[{n}] = {}", traj.r(n)?);
    }
    // the (2,2) family is its own partner: R[1-n] = star(R[n])
    for n in 1..=4 {
        assert_eq!(*traj.r(1 - n)?, traj.r(n)?.star());
    }
    let report = verify_nonlinear(&traj);
    assert!(report.overall(), "{report}");

    let g41 = trajectory_range(CaseTag::B41XY, -2, 3)?;
    println!("{} from R[-2]: {} terms", g41.case.label(), g41.r(-2)?.len());
    assert!(verify_nonlinear(&g41).overall());
    Ok(())
}

#[allow(dead_code)]
fn main() -> ncl::Result<()> {
    run_example()
}
