// The (2,2) recursion: the first variables, their sizes, and the identities
// they satisfy.

use ncl::dynamics::{commutator, conserved_22, seq_22, verify_conserved, verify_nonlinear};

pub fn run_example() -> ncl::Result<()> {
    let traj = seq_22(7);
    for n in 0..=4 {
        println!("R[{n}] = {}", traj.r(n)?);
    }
    for n in 5..=7 {
        println!("R[{n}] has {} terms", traj.r(n)?.len());
    }
    println!("C = {}", commutator());
    println!("K = {}", conserved_22());

    let mut report = verify_nonlinear(&traj);
    report.extend(verify_conserved(&traj));
    print!("{}", report.to_text());
    assert!(report.overall());
    Ok(())
}

#[allow(dead_code)]
fn main() -> ncl::Result<()> {
    run_example()
}
