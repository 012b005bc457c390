// Driving the `ncl` command line from code.

use ncl::cli::{run_with, EXIT_OK, EXIT_RANGE};

pub fn run_example() -> ncl::Result<()> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run_with(["ncl", "compute", "--case", "22", "--n", "3"], &mut out, &mut err);
    assert_eq!(code, EXIT_OK);
    let r3: ncl::NCPoly = String::from_utf8_lossy(&out).trim().parse()?;
    println!("R[3] = {r3}");

    out.clear();
    run_with(["ncl", "stats", "--case", "14XY", "--nmax", "6"], &mut out, &mut err);
    print!("{}", String::from_utf8_lossy(&out));

    let code = run_with(["ncl", "compute", "--n", "40"], &mut out, &mut err);
    assert_eq!(code, EXIT_RANGE);
    print!("{}", String::from_utf8_lossy(&err));
    Ok(())
}

#[allow(dead_code)]
fn main() -> ncl::Result<()> {
    run_example()
}
