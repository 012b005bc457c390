// Path models: the weighted graphs, closed-path enumeration, and the
// transfer-matrix partition function.

use ncl::dynamics::{seq_22, CaseTag};
use ncl::pathmodel::{build_model, enumerate_paths, partition_fn_matrix, DEFAULT_BUDGET};

pub fn run_example() -> ncl::Result<()> {
    let model = build_model(CaseTag::B14Xy)?;
    for ((from, to), edge) in &model.edges {
        println!("{from} -> {to}  {}  {}", edge.name, edge.weight);
    }
    for path in enumerate_paths(&model, 3, DEFAULT_BUDGET)? {
        println!("{path}");
    }

    // on the segment, 2n steps times the base give R[n]
    let seg = build_model(CaseTag::B22)?;
    let traj = seq_22(5);
    for n in 0..=4 {
        let paths = enumerate_paths(&seg, 2 * n, DEFAULT_BUDGET)?;
        let z = partition_fn_matrix(&seg, 2 * n);
        let cluster = traj.r(n as i64)?;
        println!("{} paths of length {}, {} terms in R[{}]", paths.len(), 2 * n, cluster.len(), n);
        assert_eq!(&z * &seg.base, *cluster);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> ncl::Result<()> {
    run_example()
}
