mod props;

const CASES: u32 = 1000;

fn run(name: &str) {
    let suite = props::suites().into_iter().find(|s| s.name == name).expect("suite registered");
    if let Err(e) = (suite.run)(CASES) {
        panic!("{name}: {e}");
    }
}

#[test]
fn rational_field_axioms() {
    run("rational field axioms");
}

#[test]
fn gaussian_field_axioms() {
    run("gaussian rational field axioms");
}

#[test]
fn int_binomial_pascal() {
    run("integer binomial pascal rule");
}

#[test]
fn binom_poly_pascal() {
    run("polynomial binomial pascal rule");
}

#[test]
fn ring_axioms() {
    run("polynomial ring axioms");
}

#[test]
fn product_rule() {
    run("derivative product rule");
}

#[test]
fn difference_quotient() {
    run("derivative as difference quotient in t");
}

#[test]
fn substitution_composition() {
    run("substitution composes");
}

#[test]
fn binpow_additivity() {
    run("binomial series exponents add");
}

#[test]
fn delta_recurrence() {
    run("turan gap recurrence");
}

#[test]
fn weighted_square_sum() {
    run("weighted square sum closed form");
}

#[test]
fn every_suite_has_a_test() {
    assert_eq!(props::suites().len(), 11);
}
