#[path = "support/kernel_props.rs"]
mod kernel_props;

#[test]
fn print_parse_roundtrip() {
    kernel_props::print_parse_roundtrip().unwrap();
}

#[test]
fn leibniz() {
    kernel_props::leibniz().unwrap();
}

#[test]
fn derivatives_commute() {
    kernel_props::derivatives_commute().unwrap();
}

#[test]
fn commutator_antisymmetry() {
    kernel_props::commutator_antisymmetry().unwrap();
}

#[test]
fn scalarize_is_a_homomorphism() {
    kernel_props::scalarize_is_a_homomorphism().unwrap();
}

#[test]
fn ideal_soundness() {
    kernel_props::ideal_soundness().unwrap();
}
