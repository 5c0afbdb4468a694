//! One line per acceptance criterion, from a single `run_all` at the
//! default configuration. Tolerances here are the stated ones, independent
//! of the configured tolerance classes.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Duration;

use cli_harness::{run_all, AllRun, CheckRecord, RunConfig};

struct Line {
    pass: bool,
    detail: String,
}

fn records<'a>(run: &'a AllRun, suite: &str) -> Vec<&'a CheckRecord> {
    run.reports.iter().filter(|r| r.suite == suite).flat_map(|r| r.checks.iter()).collect()
}

fn wall_clock(run: &AllRun, suite: &str) -> Duration {
    run.summary.iter().find(|r| r.suite == suite).map_or(Duration::MAX, |r| r.wall_clock)
}

/// Every record passes `within` at `tol`; at least `min` of them.
fn bound(recs: &[&CheckRecord], tol: f64, min: usize, what: &str) -> Line {
    let worst = recs.iter().map(|r| r.deviation).fold(0.0, f64::max);
    let bad: Vec<&str> = recs.iter().filter(|r| !(r.deviation <= tol)).map(|r| r.id.as_str()).collect();
    Line {
        pass: bad.is_empty() && recs.len() >= min,
        detail: format!(
            "{what}: {} checks (need {min}), max deviation {worst:.2e} <= {tol:.0e}{}",
            recs.len(),
            if bad.is_empty() { String::new() } else { format!(", failing {bad:?}") }
        ),
    }
}

fn all_pass(recs: &[&CheckRecord], min: usize, what: &str) -> Line {
    let bad: Vec<&str> = recs.iter().filter(|r| !r.pass).map(|r| r.id.as_str()).collect();
    Line {
        pass: bad.is_empty() && recs.len() >= min,
        detail: format!(
            "{what}: {} checks (need {min}){}",
            recs.len(),
            if bad.is_empty() { String::new() } else { format!(", failing {bad:?}") }
        ),
    }
}

fn join(parts: Vec<Line>) -> Line {
    Line { pass: parts.iter().all(|l| l.pass), detail: parts.into_iter().map(|l| l.detail).collect::<Vec<_>>().join("; ") }
}

fn select<'a>(recs: &[&'a CheckRecord], pred: impl Fn(&str) -> bool) -> Vec<&'a CheckRecord> {
    recs.iter().copied().filter(|r| pred(&r.id)).collect()
}

fn runtime(run: &AllRun, suite: &str, limit: f64) -> Line {
    let t = wall_clock(run, suite).as_secs_f64();
    Line { pass: t < limit, detail: format!("{suite} took {t:.2} s (limit {limit} s)") }
}

fn criterion_1(run: &AllRun) -> Line {
    let recs = records(run, "torus-plancherel");
    let pairs = select(&recs, |id| !id.starts_with("residue_rule") && id != "sigma_independence");
    let has_worked = pairs.iter().any(|r| r.id == "worked_pair_exact" && (r.expected[0] - 2.0).abs() < 1e-15);
    join(vec![
        bound(&pairs, 1e-6, 6, "torus pairs"),
        Line { pass: has_worked, detail: format!("worked pair with value 2 present: {has_worked}") },
        runtime(run, "torus-plancherel", 10.0),
    ])
}

fn criterion_2(run: &AllRun) -> Line {
    let recs = records(run, "mellin-roundtrip");
    let roundtrip = select(&recs, |id| id.contains("_sigma_"));
    let mut abscissae = std::collections::BTreeMap::<&str, BTreeSet<&str>>::new();
    for r in &roundtrip {
        let (f, s) = r.id.split_once("_sigma_").unwrap();
        abscissae.entry(f).or_default().insert(s);
    }
    let fewest = abscissae.values().map(BTreeSet::len).min().unwrap_or(0);
    let pv = select(&recs, |id| id.starts_with("principal_value"));
    let torus = records(run, "torus-plancherel");
    join(vec![
        bound(&roundtrip, 1e-6, 3, "roundtrip sup errors"),
        Line { pass: fewest >= 3, detail: format!("{} functions, at least {fewest} abscissae each", abscissae.len()) },
        bound(&pv, 1e-6, 1, "principal value"),
        bound(&select(&torus, |id| id == "sigma_independence"), 1e-6, 1, "sigma independence"),
    ])
}

fn criterion_3(run: &AllRun) -> Line {
    let recs = records(run, "functional-equations");
    join(vec![
        bound(&select(&recs, |id| id == "xi_reflection"), 1e-10, 1, "xi reflection"),
        bound(&select(&recs, |id| id == "c_unitarity"), 1e-9, 1, "c unitarity"),
        bound(&select(&recs, |id| id == "c_at_zero"), 1e-8, 1, "c(0) = -1"),
        bound(&select(&recs, |id| id == "c_residue_at_one"), 1e-6, 1, "res c = 6/pi"),
    ])
}

fn criterion_4(run: &AllRun) -> Line {
    let recs = records(run, "hc-bound");
    let ratio = select(&recs, |id| id == "strip_bound.max_ratio");
    let minimal = recs.iter().find(|r| r.id == "strip_bound.minimal_t").map(|r| r.got[0]);
    let mut line = all_pass(&ratio, 1, "bound at T = 5");
    let reported = minimal.is_some_and(f64::is_finite);
    line.pass &= reported;
    line.detail = format!(
        "{}, max ratio {:.6}; minimal feasible T {}",
        line.detail,
        ratio.first().map_or(f64::NAN, |r| r.got[0]),
        minimal.map_or("missing".into(), |t| format!("{t:.4}"))
    );
    line
}

fn criterion_5(run: &AllRun) -> Line {
    let recs = records(run, "maass-selberg");
    let pairs: BTreeSet<&str> = recs.iter().filter_map(|r| r.id.split("_t_").next()).collect();
    let ts: BTreeSet<&str> = recs.iter().filter_map(|r| r.id.split("_t_").nth(1)).collect();
    let both = ts.contains("1") && ts.contains("2");
    let per_pair = wall_clock(run, "maass-selberg").as_secs_f64() / pairs.len().max(1) as f64;
    join(vec![
        bound(&recs, 1e-4, 8, "lhs vs rhs"),
        Line { pass: pairs.len() >= 4 && both, detail: format!("{} pairs, T in {ts:?}", pairs.len()) },
        Line { pass: per_pair < 60.0, detail: format!("{per_pair:.2} s per pair (limit 60 s)") },
    ])
}

fn criterion_6(run: &AllRun) -> Line {
    bound(&records(run, "constant-term-symmetry"), 1e-4, 3, "symmetry defects on t in [0, 10]")
}

fn criterion_7(run: &AllRun) -> Line {
    let recs = records(run, "rank-one-plancherel");
    join(vec![
        bound(&select(&recs, |id| id.ends_with(".total") || id == "cusp_exponent_pair"), 1e-4, 3, "direct vs spectral"),
        bound(&select(&recs, |id| id.starts_with("residual")), 1e-4, 2, "residual constant term"),
    ])
}

fn criterion_8(run: &AllRun) -> Line {
    bound(&records(run, "kernel-relations"), 1e-8, 3, "kernel relations on Re s = 0")
}

fn criterion_9(run: &AllRun) -> Line {
    let recs = records(run, "tf-minus1");
    join(vec![
        bound(&select(&recs, |id| id.starts_with("triangle_")), 1e-3, 3, "pairwise triangle"),
        bound(&select(&recs, |id| id == "gaussian_value"), 1e-6, 1, "Gaussian value -0.3989423"),
        all_pass(&records(run, "geometric-terms"), 1, "geometric terms"),
    ])
}

fn criterion_10(run: &AllRun) -> Line {
    let recs = records(run, "tate-zeta");
    join(vec![
        bound(&select(&recs, |id| id.starts_with("gaussian_w=")), 1e-8, 3, "Z = xi at w = 1.5, 2, 3"),
        bound(&select(&recs, |id| id.starts_with("unipotent_profile")), 1e-6, 1, "a_-1 = -2 F^(0) Vol"),
    ])
}

fn criterion_11(run: &AllRun) -> Line {
    let mellin = records(run, "mellin-roundtrip");
    let torus = records(run, "torus-plancherel");
    join(vec![
        all_pass(&records(run, "charged-core"), 4, "polar consistency"),
        all_pass(&select(&mellin, |id| id.starts_with("derivative_identity")), 1, "Mellin derivative identity"),
        all_pass(&select(&torus, |id| id.starts_with("residue_rule")), 5, "superunitary residue rule"),
        all_pass(&records(run, "determinism"), 3, "determinism"),
    ])
}

fn main() -> ExitCode {
    let run = run_all(&RunConfig::default()).expect("default configuration runs");
    eprint!("{}", run.summary_table());
    let criteria: [fn(&AllRun) -> Line; 11] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
        criterion_11,
    ];
    let mut failed = 0;
    for (k, f) in criteria.iter().enumerate() {
        let line = f(&run);
        println!("criterion {}: {} {}", k + 1, if line.pass { "PASS" } else { "FAIL" }, line.detail);
        failed += usize::from(!line.pass);
    }
    println!("verify all exit code: {}", run.exit_code());
    if failed == 0 && run.exit_code() == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
