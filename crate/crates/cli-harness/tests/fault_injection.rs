//! Flipping the sign of c(s) must be caught.

use cli_harness::{run_all, run_suite, CorpusSelection, RunConfig};
use special_functions::fault::set_c_sign_fault;

#[test]
fn sign_flip_in_c_fails_functional_equations() {
    let config = RunConfig::default();
    assert!(run_suite("functional-equations", &config).unwrap().pass);

    set_c_sign_fault(true);
    let faulty = run_suite("functional-equations", &config);
    let mut only = config.clone();
    only.corpus = CorpusSelection::Only(vec!["functional-equations".into()]);
    let all = run_all(&only);
    set_c_sign_fault(false);

    let faulty = faulty.unwrap();
    assert!(!faulty.pass);
    let failed: Vec<&str> = faulty.failures().map(|c| c.id.as_str()).collect();
    assert!(failed.contains(&"c_at_zero"), "{failed:?}");
    assert!(failed.contains(&"c_residue_at_one"), "{failed:?}");
    let at_zero = faulty.checks.iter().find(|c| c.id == "c_at_zero").unwrap();
    assert!((at_zero.got[0] - 1.0).abs() < 1e-8);

    let all = all.unwrap();
    assert!(!all.pass());
    assert_ne!(all.exit_code(), 0);

    assert!(run_suite("functional-equations", &config).unwrap().pass);
}
