use std::io::Write;

use cli_harness::report::CSV_COLUMNS;
use cli_harness::{
    emit_report, emit_reports, parse_reports, run_suite, CheckRecord, CorpusSelection, Format, HarnessError, RunConfig,
    SuiteReport, SUITES,
};
use num_complex::Complex64;

fn quick() -> RunConfig {
    RunConfig { random_pairs: 1, ..RunConfig::default() }
}

#[test]
fn json_roundtrip_preserves_records() {
    let report = run_suite("charged-core", &quick()).unwrap();
    let json = emit_report(&report, Format::Json).unwrap();
    let back = parse_reports(&json).unwrap();
    assert_eq!(back.len(), 1);
    assert_eq!(back[0].suite, "charged-core");
    assert_eq!(back[0].checks, report.checks);
    assert_eq!(back[0].config, report.config);
    assert!(back[0].pass);
}

#[test]
fn non_finite_values_survive_json() {
    let failed = CheckRecord::failed("broken".into(), "nothing".into(), 1e-6);
    let report = SuiteReport::new("x", vec![failed], Default::default());
    let json = emit_report(&report, Format::Json).unwrap();
    let back = parse_reports(&json).unwrap();
    let c = &back[0].checks[0];
    assert!(c.got[0].is_nan() && c.expected[1].is_nan());
    assert_eq!(c.deviation, f64::INFINITY);
    assert!(!c.pass && !back[0].pass);
}

#[test]
fn csv_has_declared_columns_and_one_row_per_check() {
    let a = run_suite("charged-core", &quick()).unwrap();
    let b = run_suite("functional-equations", &quick()).unwrap();
    let text = emit_reports(&[a.clone(), b.clone()], Format::Csv).unwrap();
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, CSV_COLUMNS);
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), a.checks.len() + b.checks.len());
    assert_eq!(&rows[0][0], "charged-core");
    assert_eq!(&rows[0][1], a.checks[0].id.as_str());
    let dev: f64 = rows[0][7].parse().unwrap();
    assert_eq!(dev, a.checks[0].deviation);
}

#[test]
fn same_seed_gives_identical_bytes() {
    let cfg = quick();
    for suite in ["torus-plancherel", "charged-core"] {
        let x = run_suite(suite, &cfg).unwrap();
        let y = run_suite(suite, &cfg).unwrap();
        for f in [Format::Json, Format::Csv] {
            assert_eq!(emit_report(&x, f).unwrap(), emit_report(&y, f).unwrap(), "{suite}");
        }
    }
}

#[test]
fn different_seed_changes_random_cases() {
    let mut other = quick();
    other.seed += 1;
    let a = run_suite("charged-core", &quick()).unwrap();
    let b = run_suite("charged-core", &other).unwrap();
    let inputs = |r: &SuiteReport| r.checks.iter().filter(|c| c.id.starts_with("random")).map(|c| c.inputs.clone()).collect::<Vec<_>>();
    assert_ne!(inputs(&a), inputs(&b));
}

#[test]
fn unknown_suite_is_an_error() {
    let e = run_suite("no-such-suite", &quick()).unwrap_err();
    assert!(matches!(e, HarnessError::UnknownSuite(_)));
    assert_eq!(e.exit_code(), 2);
}

#[test]
fn every_named_suite_resolves() {
    let mut cfg = quick();
    cfg.corpus = CorpusSelection::Only(Vec::new());
    for s in SUITES {
        let r = run_suite(s, &cfg).unwrap();
        assert!(r.checks.is_empty());
        assert!(!r.warnings.is_empty(), "{s}");
    }
}

#[test]
fn corpus_selection_filters_checks() {
    let mut cfg = quick();
    cfg.set("corpus", "functional-equations.c_at_zero, xi_reflection").unwrap();
    let r = run_suite("functional-equations", &cfg).unwrap();
    let ids: Vec<&str> = r.checks.iter().map(|c| c.id.as_str()).collect();
    assert_eq!(ids, ["xi_reflection", "c_at_zero"]);
    assert!(r.warnings.is_empty());
}

#[test]
fn config_text_parses_and_echo_roundtrips() {
    let text = "# comment\nseed = 7\ntol.maass-selberg = 1e-5\ntol.functional-equations.c_at_zero = 1e-12\n\
                fd.x_nodes = 64\nmaass_selberg.t = 1, 3\ncontour.step = 0.05\n";
    let cfg = RunConfig::from_text(text).unwrap();
    assert_eq!(cfg.seed, 7);
    assert_eq!(cfg.fd_x_nodes, 64);
    assert_eq!(cfg.maass_selberg_t, vec![1.0, 3.0]);
    assert_eq!(cfg.tolerance("maass-selberg", "pair_0_t_1", 1e-4), 1e-5);
    assert_eq!(cfg.tolerance("functional-equations", "c_at_zero", 1e-8), 1e-12);
    assert_eq!(cfg.tolerance("functional-equations", "c_unitarity", 1e-9), 1e-9);
    let echoed: String = cfg.echo().iter().map(|(k, v)| format!("{k} = {v}\n")).collect();
    let again = RunConfig::from_text(&echoed).unwrap();
    assert_eq!(again.echo(), cfg.echo());
}

#[test]
fn invalid_config_is_rejected() {
    for bad in ["nonsense = 1", "seed = -3", "fd.x_nodes = 0", "tol.charged-core = -1", "contour.step = abc", "just text"] {
        let e = RunConfig::from_text(bad).unwrap_err();
        assert!(matches!(e, HarnessError::Config(_)), "{bad}");
        assert_eq!(e.exit_code(), 2);
    }
}

#[test]
fn tolerance_flag_overrides_file() {
    let mut cfg = RunConfig::from_text("tol.charged-core = 1e-3").unwrap();
    cfg.set_tolerance_flag("charged-core=1e-30").unwrap();
    let r = run_suite("charged-core", &cfg).unwrap();
    assert!(r.checks.iter().all(|c| c.tolerance == 1e-30));
    assert!(!r.pass);
    assert!(cfg.set_tolerance_flag("no-equals").is_err());
}

#[test]
fn config_file_loads_from_disk() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "seed = 99\ncorpus.random_pairs = 2").unwrap();
    let cfg = RunConfig::resolve(Some(f.path())).unwrap();
    assert_eq!((cfg.seed, cfg.random_pairs), (99, 2));
    assert!(RunConfig::resolve(Some(std::path::Path::new("/nonexistent/regspec.conf"))).is_err());
}

#[test]
fn record_pass_is_deviation_within_tolerance() {
    let z = Complex64::new(0.0, 0.0);
    assert!(CheckRecord::new("a".into(), String::new(), z, z, 1e-6, 1e-6).pass);
    assert!(!CheckRecord::new("b".into(), String::new(), z, z, 2e-6, 1e-6).pass);
    assert!(!CheckRecord::new("c".into(), String::new(), z, z, f64::NAN, 1e-6).pass);
}
