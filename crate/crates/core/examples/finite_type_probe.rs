// Experimental: the finite types (1,c), c <= 3, where the variables are
// obtained by right division.

use ncl::dynamics::finite_type_probe;
use ncl::ncpoly::DEFAULT_SUPPORT_ROUNDS;

pub fn run_example() -> ncl::Result<()> {
    for c in 1..=3 {
        let probe = finite_type_probe(1, c, 10, DEFAULT_SUPPORT_ROUNDS)?;
        println!(
            "(1,{c}): {} variables, abelian period {:?}, conjugation {:?}",
            probe.variables.len(),
            probe.abelian_period,
            probe.conjugation_period
        );
    }
    let a2 = finite_type_probe(1, 1, 10, DEFAULT_SUPPORT_ROUNDS)?;
    assert_eq!(a2.abelian_period, Some(5));
    assert!(a2.report.overall());
    Ok(())
}

#[allow(dead_code)]
fn main() -> ncl::Result<()> {
    run_example()
}
