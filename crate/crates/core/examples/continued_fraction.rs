// The generating function of a path model as a noncommutative continued
// fraction, expanded to a finite order.

use ncl::dynamics::{seq_14, CaseTag, InitialData};
use ncl::pathmodel::{build_model, cluster_series, continued_fraction_series, series_multiply_check};

pub fn run_example() -> ncl::Result<()> {
    let model = build_model(CaseTag::B14XY)?;
    let series = cluster_series(&model, 4)?;
    let traj = seq_14(InitialData::XY, 8);
    for k in 0..4 {
        let c = series.coeff(k);
        println!("t^{k}: {} terms", c.len());
        assert_eq!(c, traj.u(k as i64 + 1)?);
    }
    // the fraction itself satisfies a linear recursion in t
    let fraction = continued_fraction_series(&model, 6)?;
    let report = series_multiply_check(&model, &fraction);
    print!("{}", report.to_text());
    assert!(report.overall());
    Ok(())
}

#[allow(dead_code)]
fn main() -> ncl::Result<()> {
    run_example()
}
