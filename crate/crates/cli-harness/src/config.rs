//! Run configuration: a flat `key = value` file with dotted keys.
//!
//! ```text
//! # comments start with '#'
//! seed = 7
//! corpus = all                     # or none, or a comma list of suites / check ids
//! corpus.random_pairs = 3
//! contour.t_max = 40
//! contour.step = 0.01
//! fd.x_nodes = 200                 # also fd.y_nodes, fd.arc_rows, fd.arc_x_nodes, fd.order
//! fd.y_max = 40
//! pseudo.coset_bound = 5000
//! maass_selberg.t = 1, 2
//! tol.maass-selberg = 1e-4         # whole suite
//! tol.tf-minus1.triangle_0.fit_vs_spectral = 1e-3
//! output.path = report.json
//! output.format = json
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use automorphic_halfplane::FdConfig;
use torus_calculus::ContourConfig;

use crate::error::HarnessError;
use crate::report::Format;

pub const CONFIG_ENV: &str = "REGSPEC_CONFIG";

pub const ANALYTIC: f64 = 1e-8;
pub const QUADRATURE: f64 = 1e-6;
pub const DOMAIN: f64 = 1e-4;
pub const CROSS_SIDE: f64 = 1e-3;
/// Structural checks count mismatches, so any mismatch fails.
pub const STRUCTURAL: f64 = 0.5;

#[derive(Debug, Clone, PartialEq)]
pub enum CorpusSelection {
    All,
    Only(Vec<String>),
}

impl CorpusSelection {
    pub fn is_empty(&self) -> bool {
        matches!(self, CorpusSelection::Only(v) if v.is_empty())
    }

    /// An entry selects a whole suite, a check id, or `suite.id`.
    pub fn selects(&self, suite: &str, id: &str) -> bool {
        match self {
            CorpusSelection::All => true,
            CorpusSelection::Only(entries) => entries.iter().any(|e| {
                e == suite || e == id || e.strip_prefix(suite).and_then(|r| r.strip_prefix('.')) == Some(id)
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    /// Keys are `suite` or `suite.check`.
    pub tolerances: BTreeMap<String, f64>,
    pub contour_t_max: f64,
    pub contour_step: f64,
    pub fd_x_nodes: usize,
    pub fd_y_nodes: usize,
    pub fd_arc_rows: usize,
    pub fd_arc_x_nodes: usize,
    pub fd_order: usize,
    pub fd_y_max: f64,
    pub coset_bound: Option<u64>,
    pub corpus: CorpusSelection,
    pub random_pairs: usize,
    pub maass_selberg_t: Vec<f64>,
    pub output_path: Option<PathBuf>,
    pub format: Format,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let contour = ContourConfig::default();
        let fd = FdConfig::default();
        Self {
            tolerances: BTreeMap::new(),
            contour_t_max: contour.t_max,
            contour_step: contour.step,
            fd_x_nodes: fd.x_nodes,
            fd_y_nodes: fd.y_nodes,
            fd_arc_rows: fd.arc_rows,
            fd_arc_x_nodes: fd.arc_x_nodes,
            fd_order: fd.order,
            fd_y_max: fd.y_max,
            coset_bound: None,
            corpus: CorpusSelection::All,
            random_pairs: 3,
            maass_selberg_t: vec![1.0, 2.0],
            output_path: None,
            format: Format::Json,
            seed: 20240601,
        }
    }
}

fn bad(key: &str, value: &str, why: &str) -> HarnessError {
    HarnessError::Config(format!("{key} = {value}: {why}"))
}

fn parse_f64(key: &str, value: &str) -> Result<f64, HarnessError> {
    value.parse::<f64>().map_err(|_| bad(key, value, "expected a number"))
}

fn parse_usize(key: &str, value: &str) -> Result<usize, HarnessError> {
    value.parse::<usize>().map_err(|_| bad(key, value, "expected a non-negative integer"))
}

fn positive(key: &str, value: &str) -> Result<f64, HarnessError> {
    let v = parse_f64(key, value)?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(bad(key, value, "must be positive"))
    }
}

fn nodes(key: &str, value: &str) -> Result<usize, HarnessError> {
    let n = parse_usize(key, value)?;
    if n == 0 {
        return Err(bad(key, value, "must be at least 1"));
    }
    Ok(n)
}

impl RunConfig {
    pub fn from_text(text: &str) -> Result<Self, HarnessError> {
        let mut cfg = Self::default();
        cfg.apply_text(text)?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| HarnessError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_text(&text)
    }

    /// `--config` if given, else the file named by `REGSPEC_CONFIG`, else defaults.
    pub fn resolve(explicit: Option<&Path>) -> Result<Self, HarnessError> {
        match explicit {
            Some(p) => Self::load(p),
            None => match std::env::var_os(CONFIG_ENV) {
                Some(p) if !p.is_empty() => Self::load(Path::new(&p)),
                _ => Ok(Self::default()),
            },
        }
    }

    pub fn apply_text(&mut self, text: &str) -> Result<(), HarnessError> {
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| HarnessError::Config(format!("line {}: expected key = value", n + 1)))?;
            self.set(key.trim(), value.trim())?;
        }
        Ok(())
    }

    pub fn set(&mut self, key: &str, value: &str) -> Result<(), HarnessError> {
        if let Some(target) = key.strip_prefix("tol.") {
            if target.is_empty() {
                return Err(bad(key, value, "missing suite name"));
            }
            self.tolerances.insert(target.to_string(), positive(key, value)?);
            return Ok(());
        }
        match key {
            "seed" => self.seed = value.parse().map_err(|_| bad(key, value, "expected an unsigned integer"))?,
            "corpus" => {
                self.corpus = match value {
                    "all" => CorpusSelection::All,
                    "none" | "" => CorpusSelection::Only(Vec::new()),
                    list => CorpusSelection::Only(
                        list.split(',').map(str::trim).filter(|s| !s.is_empty()).map(String::from).collect(),
                    ),
                }
            }
            "corpus.random_pairs" => self.random_pairs = parse_usize(key, value)?,
            "contour.t_max" => self.contour_t_max = positive(key, value)?,
            "contour.step" => self.contour_step = positive(key, value)?,
            "fd.x_nodes" => self.fd_x_nodes = nodes(key, value)?,
            "fd.y_nodes" => self.fd_y_nodes = nodes(key, value)?,
            "fd.arc_rows" => self.fd_arc_rows = nodes(key, value)?,
            "fd.arc_x_nodes" => self.fd_arc_x_nodes = nodes(key, value)?,
            "fd.order" => self.fd_order = nodes(key, value)?,
            "fd.y_max" => {
                let y = positive(key, value)?;
                if y <= 1.0 {
                    return Err(bad(key, value, "must exceed 1"));
                }
                self.fd_y_max = y;
            }
            "pseudo.coset_bound" => {
                let b = value.parse::<u64>().map_err(|_| bad(key, value, "expected a positive integer"))?;
                if b == 0 {
                    return Err(bad(key, value, "must be at least 1"));
                }
                self.coset_bound = Some(b);
            }
            "maass_selberg.t" => {
                let ts = value
                    .split(',')
                    .map(|v| {
                        let t = parse_f64(key, v.trim())?;
                        if t >= 0.0 && t.is_finite() {
                            Ok(t)
                        } else {
                            Err(bad(key, value, "truncation parameters must be non-negative"))
                        }
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                if ts.is_empty() {
                    return Err(bad(key, value, "empty list"));
                }
                self.maass_selberg_t = ts;
            }
            "output.path" => self.output_path = if value.is_empty() { None } else { Some(PathBuf::from(value)) },
            "output.format" => self.format = value.parse()?,
            _ => return Err(HarnessError::Config(format!("unknown key {key}"))),
        }
        Ok(())
    }

    /// Applies a `--tol K=V` flag.
    pub fn set_tolerance_flag(&mut self, flag: &str) -> Result<(), HarnessError> {
        let (k, v) = flag
            .split_once('=')
            .ok_or_else(|| HarnessError::Config(format!("--tol {flag}: expected K=V")))?;
        self.set(&format!("tol.{}", k.trim()), v.trim())
    }

    /// Override for `suite.id`, then for `suite`, then the check's default.
    pub fn tolerance(&self, suite: &str, id: &str, default: f64) -> f64 {
        self.tolerances
            .get(&format!("{suite}.{id}"))
            .or_else(|| self.tolerances.get(suite))
            .copied()
            .unwrap_or(default)
    }

    pub fn contour(&self) -> ContourConfig {
        ContourConfig { t_max: self.contour_t_max, step: self.contour_step, ..ContourConfig::default() }
    }

    pub fn fd(&self) -> FdConfig {
        FdConfig {
            x_nodes: self.fd_x_nodes,
            y_nodes: self.fd_y_nodes,
            arc_rows: self.fd_arc_rows,
            arc_x_nodes: self.fd_arc_x_nodes,
            order: self.fd_order,
            y_max: self.fd_y_max,
            y_breaks: Vec::new(),
        }
    }

    /// Effective settings as key/value pairs in key order; parsing the
    /// result with [`RunConfig::from_text`] reproduces the configuration.
    pub fn echo(&self) -> BTreeMap<String, String> {
        let mut m = BTreeMap::new();
        let mut put = |k: &str, v: String| {
            m.insert(k.to_string(), v);
        };
        put("seed", self.seed.to_string());
        put(
            "corpus",
            match &self.corpus {
                CorpusSelection::All => "all".into(),
                CorpusSelection::Only(v) if v.is_empty() => "none".into(),
                CorpusSelection::Only(v) => v.join(","),
            },
        );
        put("corpus.random_pairs", self.random_pairs.to_string());
        put("contour.t_max", self.contour_t_max.to_string());
        put("contour.step", self.contour_step.to_string());
        put("fd.x_nodes", self.fd_x_nodes.to_string());
        put("fd.y_nodes", self.fd_y_nodes.to_string());
        put("fd.arc_rows", self.fd_arc_rows.to_string());
        put("fd.arc_x_nodes", self.fd_arc_x_nodes.to_string());
        put("fd.order", self.fd_order.to_string());
        put("fd.y_max", self.fd_y_max.to_string());
        if let Some(b) = self.coset_bound {
            put("pseudo.coset_bound", b.to_string());
        }
        put(
            "maass_selberg.t",
            self.maass_selberg_t.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(","),
        );
        for (k, v) in &self.tolerances {
            put(&format!("tol.{k}"), v.to_string());
        }
        m
    }
}
