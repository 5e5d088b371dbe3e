use spinorial::suite::{run_criterion, SuiteConfig};

fn criterion(id: usize) {
    let report = run_criterion(id, &SuiteConfig::default()).expect("criterion runs");
    for c in &report.checks {
        println!("  [{}] {}: {}", if c.pass { "ok" } else { "FAIL" }, c.name, c.detail);
    }
    println!("criterion {id} ({}): {}", report.title, if report.pass { "PASS" } else { "FAIL" });
    assert!(!report.checks.is_empty());
    assert!(report.pass, "criterion {id} has failing checks");
}

#[test]
fn criterion_01_clifford_relations() {
    criterion(1);
}

#[test]
fn criterion_02_spectrum_multiplicities() {
    criterion(2);
}

#[test]
fn criterion_03_characteristic_polynomials() {
    criterion(3);
}

#[test]
fn criterion_04_invariant_tower() {
    criterion(4);
}

#[test]
fn criterion_05_permutation_operator() {
    criterion(5);
}

#[test]
fn criterion_06_spinorial_construction() {
    criterion(6);
}

#[test]
fn criterion_07_yang_baxter_and_rll() {
    criterion(7);
}

#[test]
fn criterion_08_inversion_and_fusion() {
    criterion(8);
}

#[test]
fn criterion_09_coincidences_and_blocks() {
    criterion(9);
}

#[test]
fn criterion_10_chain_properties() {
    criterion(10);
}

#[test]
fn criterion_11_cross_checks() {
    criterion(11);
}
