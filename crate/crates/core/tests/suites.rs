//! Every verification suite passes at its default degree.

use plethys::verify::{run_suite, Suite, VerifyConfig};

fn check(suite: Suite) {
    let report = run_suite(suite, &VerifyConfig::default()).unwrap();
    assert!(report.passed(), "{report}");
}

#[test]
fn bb() {
    check(Suite::Bb);
}

#[test]
fn generating() {
    check(Suite::Generating);
}

#[test]
fn deg1() {
    check(Suite::Deg1);
}

#[test]
fn cyclic() {
    check(Suite::Cyclic);
}

#[test]
fn necklaces() {
    let report = run_suite(Suite::Necklaces, &VerifyConfig::default()).unwrap();
    assert!(report.passed(), "{report}");
    let guard = &report.checks[2];
    assert!(guard.first_difference.unwrap() <= 4);
}

#[test]
fn theorem() {
    check(Suite::Theorem);
}

#[test]
fn negative_dih() {
    check(Suite::NegativeDih);
}
