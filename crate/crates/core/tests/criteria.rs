#[path = "../examples/acceptance.rs"]
mod acceptance;

#[test]
fn chi_of_almost_stable_graphs() {
    acceptance::criterion_1().unwrap();
}

#[test]
fn defect_brute_force_matches_formula() {
    acceptance::criterion_2().unwrap();
}

#[test]
fn explicit_colorings_are_proper() {
    acceptance::criterion_3().unwrap();
}

#[test]
fn tucker_pipeline() {
    acceptance::criterion_4().unwrap();
}

#[test]
fn colorful_witness_routes() {
    acceptance::criterion_5().unwrap();
}

#[test]
fn local_chromatic_bound() {
    acceptance::criterion_6().unwrap();
}

#[test]
fn exact_values() {
    acceptance::criterion_7().unwrap();
}

#[test]
fn default_grid_bound_ordering() {
    let (_, open) = acceptance::ordering(&acceptance::default_grid_records()).unwrap();
    assert_eq!(open, vec!["12-3-2-2-cycle".to_string()]);
}
