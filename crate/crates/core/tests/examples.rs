mod affine_14 {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/affine_14.rs"));
}

mod affine_22 {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/affine_22.rs"));
}

mod arithmetic {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/arithmetic.rs"));
}

mod command_line {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/command_line.rs"));
}

mod commutative_shadow {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/commutative_shadow.rs"));
}

mod continued_fraction {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/continued_fraction.rs"));
}

mod finite_type_probe {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/finite_type_probe.rs"));
}

mod negative_indices {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/negative_indices.rs"));
}

mod path_models {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/path_models.rs"));
}

mod verify_suite {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/verify_suite.rs"));
}

#[test]
fn affine_14_runs() {
    affine_14::run_example().expect("affine_14 example");
}

#[test]
fn affine_22_runs() {
    affine_22::run_example().expect("affine_22 example");
}

#[test]
fn arithmetic_runs() {
    arithmetic::run_example().expect("arithmetic example");
}

#[test]
fn command_line_runs() {
    command_line::run_example().expect("command_line example");
}

#[test]
fn commutative_shadow_runs() {
    commutative_shadow::run_example().expect("commutative_shadow example");
}

#[test]
fn continued_fraction_runs() {
    continued_fraction::run_example().expect("continued_fraction example");
}

#[test]
fn finite_type_probe_runs() {
    finite_type_probe::run_example().expect("finite_type_probe example");
}

#[test]
fn negative_indices_runs() {
    negative_indices::run_example().expect("negative_indices example");
}

#[test]
fn path_models_runs() {
    path_models::run_example().expect("path_models example");
}

#[test]
fn verify_suite_runs() {
    verify_suite::run_example().expect("verify_suite example");
}
