//! Property suites, one test each so they can be run on their own.

mod common;

fn check(result: common::SuiteResult) {
    match result {
        Ok(summary) => eprintln!("{summary}"),
        Err(counterexample) => panic!("{counterexample}"),
    }
}

#[test]
fn automorphism_congruence_and_bijectivity() {
    check(common::automorphism_suite(100));
}

#[test]
fn shift_law() {
    check(common::shift_law_suite(500));
}

#[test]
fn order_of_x() {
    check(common::x_order_suite());
}

#[test]
fn factors_multiply_to_unity_polynomial() {
    check(common::factorization_suite());
}

#[test]
fn crt_roundtrip_exhaustive() {
    check(common::crt_suite(1 << 14));
}

#[test]
fn function_sum_identity() {
    check(common::function_sum_suite(500));
}
