//! The verification suites. Each suite is a list of cases; a case computes
//! one or more outcomes that become check records.

mod automorphic;
mod core;
mod torus;
mod trace;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::config::{RunConfig, STRUCTURAL};
use crate::report::CheckRecord;

pub const SUITES: [&str; 12] = [
    "torus-plancherel",
    "mellin-roundtrip",
    "charged-core",
    "functional-equations",
    "hc-bound",
    "maass-selberg",
    "constant-term-symmetry",
    "rank-one-plancherel",
    "kernel-relations",
    "tf-minus1",
    "geometric-terms",
    "tate-zeta",
];

pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub(crate) fn fmt_c(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

pub(crate) struct Outcome {
    pub id: String,
    pub expected: Complex64,
    pub got: Complex64,
    pub deviation: f64,
    /// Overrides the case tolerance.
    pub tolerance: Option<f64>,
    /// Appended to the case inputs.
    pub note: Option<String>,
}

impl Outcome {
    pub fn compare(id: impl Into<String>, expected: Complex64, got: Complex64) -> Self {
        Self { id: id.into(), expected, got, deviation: (got - expected).norm(), tolerance: None, note: None }
    }

    /// A quantity that should vanish.
    pub fn defect(id: impl Into<String>, defect: f64) -> Self {
        Self { id: id.into(), expected: c(0.0, 0.0), got: c(defect, 0.0), deviation: defect, tolerance: None, note: None }
    }

    /// Amount by which `got` exceeds `bound`.
    pub fn at_most(id: impl Into<String>, bound: f64, got: f64) -> Self {
        Self { id: id.into(), expected: c(bound, 0.0), got: c(got, 0.0), deviation: (got - bound).max(0.0), tolerance: None, note: None }
    }

    /// Counts mismatches between structural expectations.
    pub fn structural(id: impl Into<String>, expected: f64, got: f64, mismatches: usize) -> Self {
        Self {
            id: id.into(),
            expected: c(expected, 0.0),
            got: c(got, 0.0),
            deviation: mismatches as f64,
            tolerance: Some(STRUCTURAL),
            note: None,
        }
    }

    pub fn with_note(mut self, note: String) -> Self {
        self.note = Some(note);
        self
    }
}

type CaseFn = Box<dyn Fn(&RunConfig) -> Result<Vec<Outcome>, String> + Send + Sync>;

pub(crate) struct Case {
    pub id: String,
    pub inputs: String,
    pub tolerance: f64,
    pub run: CaseFn,
}

impl Case {
    pub fn new(
        id: impl Into<String>,
        inputs: impl Into<String>,
        tolerance: f64,
        run: impl Fn(&RunConfig) -> Result<Vec<Outcome>, String> + Send + Sync + 'static,
    ) -> Self {
        Self { id: id.into(), inputs: inputs.into(), tolerance, run: Box::new(run) }
    }

    /// A case producing a single outcome with the case's own id.
    pub fn single(
        id: impl Into<String>,
        inputs: impl Into<String>,
        tolerance: f64,
        run: impl Fn(&RunConfig) -> Result<(Complex64, Complex64, f64), String> + Send + Sync + 'static,
    ) -> Self {
        let id = id.into();
        let own = id.clone();
        Self::new(id, inputs, tolerance, move |cfg| {
            let (expected, got, deviation) = run(cfg)?;
            Ok(vec![Outcome { id: own.clone(), expected, got, deviation, tolerance: None, note: None }])
        })
    }
}

pub(crate) fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

pub(crate) fn cases(name: &str, cfg: &RunConfig) -> Option<Vec<Case>> {
    Some(match name {
        "torus-plancherel" => torus::plancherel(cfg),
        "mellin-roundtrip" => torus::mellin_roundtrip(cfg),
        "charged-core" => core::charged_core(cfg),
        "functional-equations" => core::functional_equations(),
        "hc-bound" => core::hc_bound(),
        "maass-selberg" => automorphic::maass_selberg(cfg),
        "constant-term-symmetry" => automorphic::constant_term_symmetry(),
        "rank-one-plancherel" => automorphic::rank_one_plancherel(),
        "kernel-relations" => trace::kernel_relations(),
        "tf-minus1" => trace::tf_minus1(),
        "geometric-terms" => trace::geometric_terms(),
        "tate-zeta" => trace::tate_zeta(),
        _ => return None,
    })
}

/// Runs the selected cases concurrently; records come back in case order.
pub(crate) fn run_cases(suite: &str, cases: Vec<Case>, cfg: &RunConfig) -> Vec<CheckRecord> {
    let selected: Vec<Case> = cases.into_iter().filter(|k| cfg.corpus.selects(suite, &k.id)).collect();
    selected
        .par_iter()
        .map(|case| match (case.run)(cfg) {
            Ok(outcomes) => outcomes
                .into_iter()
                .map(|o| {
                    let tol = cfg.tolerance(suite, &o.id, o.tolerance.unwrap_or(case.tolerance));
                    let inputs = match o.note {
                        Some(n) => format!("{}; {n}", case.inputs),
                        None => case.inputs.clone(),
                    };
                    CheckRecord::new(o.id, inputs, o.expected, o.got, o.deviation, tol)
                })
                .collect::<Vec<_>>(),
            Err(e) => {
                let tol = cfg.tolerance(suite, &case.id, case.tolerance);
                vec![CheckRecord::failed(case.id.clone(), format!("{}; error: {e}", case.inputs), tol)]
            }
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect()
}
