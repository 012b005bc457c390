// What survives in commuting and q-commuting variables: the classical
// cluster variables, and `R_n R_{n+1} = q R_{n+1} R_n`.

use ncl::dynamics::seq_22;
use ncl::verify::{check_abelianization, check_quantum, comm_oracle};

pub fn run_example() -> ncl::Result<()> {
    let comm = comm_oracle(2, 2, 6)?;
    for n in 0..=6 {
        println!("classical R[{n}] = {}", comm.r(n)?);
    }
    let traj = seq_22(6);
    let mut report = check_abelianization(&traj, &comm);
    report.extend(check_quantum(&traj));
    print!("{}", report.to_text());
    assert!(report.overall());
    println!("q-specialized R[3] = {}", traj.r(3)?.q_specialize());
    Ok(())
}

#[allow(dead_code)]
fn main() -> ncl::Result<()> {
    run_example()
}
