// The (1,4) recursion from both initial data, its u variables, and the
// translation to (4,1).

use ncl::dynamics::{conserved_14, seq_14, verify_conserved, verify_nonlinear, InitialData, Trajectory};

pub fn run_example() -> ncl::Result<()> {
    for data in [InitialData::Xy, InitialData::XY] {
        let traj = seq_14(data, 6);
        println!("{}: K = {}", traj.case.label(), conserved_14(data));
        let (lo, hi) = traj.r_range();
        for n in lo..=hi.min(lo + 3) {
            println!("  R[{n}] = {}", traj.r(n)?);
        }
        println!("  u[1] = {}", traj.u(1)?);
        let mut report = verify_nonlinear(&traj);
        report.extend(verify_conserved(&traj));
        assert!(report.overall(), "{report}");

        let t41 = Trajectory::translate_41(&traj)?;
        let mut report = verify_nonlinear(&t41);
        report.extend(verify_conserved(&t41));
        println!("  {}: {} checks pass", t41.case.label(), report.count(ncl::verify::Status::Pass));
        assert!(report.overall(), "{report}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> ncl::Result<()> {
    run_example()
}
