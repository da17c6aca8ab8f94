//! Identity checks.
//!
//! Every check evaluates the two sides of an identity through different
//! constructions and reports a [`Verdict`]. Exact checks compare rationals or
//! polynomials with no tolerance; numeric checks compare a floating-point
//! evaluation of a series, integral or sample mean against an exact target.

mod exact;
mod numeric;
mod suite;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::Lambda;

pub use exact::{
    check_p3, check_p5a, check_p5b, check_s3_exact, check_t1, check_t12, check_t13, check_t14,
    check_t14_convolution, check_t16, check_t2, check_t6, check_t7, check_t8, p3_comparison,
    p5a_comparison, p5b_comparison, s3_comparison, t12_comparison, t13_comparison,
    t14_comparison, t14_convolution_comparison, t16_comparison, t1_comparison, t2_comparison,
    t6_comparison, t7_comparison, t8_comparison, ConvolutionIndex, ExactComparison, T12Variant,
    T6Variant,
};
pub use numeric::{
    check_s3_monte_carlo, check_t15, check_t4, check_trig, dobinski, incomplete_gamma_closed,
    incomplete_gamma_quadrature, Trig,
};
pub use suite::{
    check_c_six, min_order, run_check, run_suite, Adjudication, CheckArgs, Counts, Grid, SuiteReport,
    Summary, IDS,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exact,
    Numeric,
    MonteCarlo,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    fn of(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

/// One discrepancy between the two sides at index `(n, k)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Detail {
    pub n: usize,
    pub k: usize,
    pub lhs: String,
    pub rhs: String,
}

pub type Params = BTreeMap<String, serde_json::Value>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub id: String,
    pub mode: Mode,
    pub params: Params,
    pub status: Status,
    pub max_residual: f64,
    pub details: Vec<Detail>,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Probes outside an identity's stated range and typo variants. They are
    /// reported but never decide the exit code.
    pub fn is_informational(&self) -> bool {
        self.params.get("informational") == Some(&serde_json::Value::Bool(true))
    }

    pub fn counts_as_failure(&self) -> bool {
        !self.passed() && !self.is_informational()
    }

    /// JSON with object keys in sorted order.
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("verdicts are serializable")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("verdicts are serializable")
    }

    fn sort_key(&self) -> (String, String, Mode) {
        let params = serde_json::to_string(&self.params).expect("params are serializable");
        (self.id.clone(), params, self.mode)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NumericConfig {
    pub tol_rel: f64,
    pub tol_abs: f64,
    /// Simpson panels on `[0, 2π]`; must be even.
    pub quad_nodes: usize,
    pub series_cutoff_k: usize,
    pub series_cutoff_l: usize,
    pub mc_samples: usize,
    pub seed: u64,
}

impl Default for NumericConfig {
    fn default() -> Self {
        NumericConfig {
            tol_rel: 1e-7,
            tol_abs: 1e-9,
            quad_nodes: 512,
            series_cutoff_k: 80,
            series_cutoff_l: 80,
            mc_samples: 200_000,
            seed: 42,
        }
    }
}

impl NumericConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol_rel > 0.0 && self.tol_abs > 0.0) {
            return Err(Error::param("tolerances must be positive"));
        }
        if self.series_cutoff_k == 0 || self.series_cutoff_l == 0 {
            return Err(Error::param("series cutoffs must be at least 1"));
        }
        if self.quad_nodes < 2 || self.quad_nodes % 2 == 1 {
            return Err(Error::param("quad_nodes must be even and at least 2"));
        }
        if self.mc_samples < 2 {
            return Err(Error::param("mc_samples must be at least 2"));
        }
        Ok(())
    }

    /// `|approx - exact| / max(1, |exact|)`.
    pub fn residual(approx: f64, exact: f64) -> f64 {
        (approx - exact).abs() / exact.abs().max(1.0)
    }

    /// Accepts when the scaled residual is within `tol_rel` or the raw
    /// difference is within `tol_abs`.
    pub fn accepts(&self, approx: f64, exact: f64) -> bool {
        let diff = (approx - exact).abs();
        diff.is_finite() && (Self::residual(approx, exact) <= self.tol_rel || diff <= self.tol_abs)
    }
}

/// Sorted parameter map under construction.
#[derive(Clone, Debug, Default)]
pub(crate) struct ParamsBuilder(Params);

impl ParamsBuilder {
    pub(crate) fn new(lambda: &Lambda) -> Self {
        ParamsBuilder::default().set("lambda", lambda.to_string())
    }

    pub(crate) fn set(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.0.insert(key.to_string(), value.into());
        self
    }

    pub(crate) fn numeric(self, cfg: &NumericConfig) -> Self {
        self.set("tol_rel", cfg.tol_rel).set("tol_abs", cfg.tol_abs)
    }

    pub(crate) fn build(self) -> Params {
        self.0
    }
}
