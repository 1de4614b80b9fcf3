mod common;

use common::CASES;

#[test]
fn gcd_and_squarefree() {
    common::gcd_and_squarefree(CASES).unwrap();
}

#[test]
fn lowest_form_multiplicative() {
    common::lowest_form_multiplicative(CASES).unwrap();
}

#[test]
fn analysis_invariance() {
    common::analysis_invariance(CASES).unwrap();
}

#[test]
fn parse_print_round_trip() {
    common::parse_print_round_trip(CASES).unwrap();
}

#[test]
fn buchberger_presentation_independent() {
    common::buchberger_presentation_independent(CASES).unwrap();
}

#[test]
fn points_hilbert_function() {
    common::points_hilbert_function(CASES).unwrap();
}
