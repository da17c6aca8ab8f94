//! Check registry, the six-way composite and the suite runner.

use std::collections::BTreeMap;

use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::exact::{
    self, beta_integral_values, bell_convolution_values, binomial_expansion_values, moment_values,
    trunc_bell_numbers, ConvolutionIndex, T12Variant, T6Variant,
};
use super::numeric::{self, contour_value, dobinski, Trig};
use super::{Detail, Mode, NumericConfig, ParamsBuilder, Status, Verdict};
use crate::error::{Error, Result};
use crate::exactnum::{int, ratio, rational_to_f64, Lambda};
use crate::Rational;

/// Every identity the engine knows, in report order.
pub const IDS: &[&str] = &[
    "C-SIX", "C10", "L9", "P3", "P5a", "P5b", "S3", "T1", "T11", "T12", "T13", "T14", "T15", "T16",
    "T2", "T4", "T6", "T6k", "T7", "T8",
];

/// Evaluation points of the modified double series when none is given.
fn t15_points() -> Vec<Rational> {
    vec![int(0), int(1), ratio(1, 2)]
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Scope {
    /// Independent of `p`; run once per λ.
    Lambda,
    /// Run for every `p` in the grid.
    AnyP,
    /// Run for `p >= 1` only.
    PositiveP,
}

fn scope(id: &str) -> Scope {
    match id {
        "T2" | "T13" | "C10" | "L9" => Scope::Lambda,
        "P3" | "P5a" | "P5b" | "T7" | "T8" | "S3" | "T11" | "C-SIX" => Scope::PositiveP,
        _ => Scope::AnyP,
    }
}

fn is_contour(id: &str) -> bool {
    matches!(id, "L9" | "C10" | "T11")
}

/// Smallest truncation order at which a check covers `n <= n_max`.
pub fn min_order(id: &str, n_max: usize, p: usize) -> usize {
    match id {
        "T2" | "T12" => n_max + 1,
        "T6" | "T6k" | "P5b" | "T7" => n_max + p,
        _ => n_max,
    }
}

/// Arguments of a single check invocation.
#[derive(Clone, Debug)]
pub struct CheckArgs {
    pub lambda: Lambda,
    pub p: usize,
    pub n_max: usize,
    /// Defaults to [`min_order`].
    pub order: Option<usize>,
    /// Block count for `L9`; all `k <= n_max` when absent.
    pub k: Option<usize>,
    /// Evaluation point for `T15`; `0, 1, 1/2` when absent.
    pub x: Option<Rational>,
}

impl CheckArgs {
    pub fn new(lambda: &Lambda, p: usize, n_max: usize) -> Self {
        CheckArgs {
            lambda: lambda.clone(),
            p,
            n_max,
            order: None,
            k: None,
            x: None,
        }
    }
}

/// Runs one identity. Some identities come with companion probes (the
/// second variant of a recurrence, the literal index of a convolution, the
/// Monte Carlo half of the moment identity), so a list is returned.
pub fn run_check(id: &str, args: &CheckArgs, cfg: &NumericConfig) -> Result<Vec<Verdict>> {
    let l = &args.lambda;
    let (p, n_max) = (args.p, args.n_max);
    let order = args.order.unwrap_or_else(|| min_order(id, n_max, p));
    let one = |v: Result<Verdict>| v.map(|v| vec![v]);
    match id {
        "T1" => one(exact::check_t1(l, p, n_max, order)),
        "T2" => one(exact::check_t2(l, n_max, order)),
        "P3" => one(exact::check_p3(l, p, n_max)),
        "P5a" => one(exact::check_p5a(l, p, n_max)),
        "P5b" => one(exact::check_p5b(l, p, order)),
        "T4" => one(numeric::check_t4(l, p, n_max, cfg)),
        "T6" => one(exact::check_t6(l, p, n_max, order, T6Variant::Stated)),
        "T6k" => one(exact::check_t6(l, p, n_max, order, T6Variant::Derivation)),
        "T7" => one(exact::check_t7(l, p, order)),
        "T8" => one(exact::check_t8(l, p, n_max)),
        "L9" => match args.k {
            Some(k) => one(numeric::check_trig(l, n_max, k, Trig::L9, cfg)),
            None => (0..=n_max)
                .map(|k| numeric::check_trig(l, n_max, k, Trig::L9, cfg))
                .collect(),
        },
        "C10" => one(numeric::check_trig(l, n_max, 0, Trig::C10, cfg)),
        "T11" => one(numeric::check_trig(l, n_max, p, Trig::T11, cfg)),
        "T12" => Ok(vec![
            exact::check_t12(l, p, n_max, order, T12Variant::Stated)?,
            exact::check_t12(l, p, n_max, order, T12Variant::Derivation)?,
        ]),
        "T13" => one(exact::check_t13(l, n_max)),
        "T14" => Ok(vec![
            exact::check_t14(l, p, n_max)?,
            exact::check_t14_convolution(l, p, n_max, ConvolutionIndex::Corrected)?,
            exact::check_t14_convolution(l, p, n_max, ConvolutionIndex::Literal)?,
        ]),
        "T15" => {
            let points = args.x.clone().map_or_else(t15_points, |x| vec![x]);
            points
                .iter()
                .map(|x| numeric::check_t15(l, p, n_max, x, cfg))
                .collect()
        }
        "T16" => one(exact::check_t16(l, p, n_max)),
        "S3" => Ok(vec![
            exact::check_s3_exact(l, p, n_max)?,
            numeric::check_s3_monte_carlo(l, p, n_max, cfg)?,
        ]),
        "C-SIX" => one(check_c_six(l, p, n_max, cfg)),
        other => Err(Error::param(format!("unknown identity {other:?}"))),
    }
}

/// The six expressions for `Bel^{(p)}_{n,λ}` side by side against the
/// weighted Stirling sum. Detail `k` numbers the expression:
/// 1 beta integral, 2 Dobinski series, 3 binomial expansion,
/// 4 Bell convolution, 5 contour integral, 6 beta moments.
/// The contour route is skipped when `|λ| >= 1`.
pub fn check_c_six(lambda: &Lambda, p: usize, n_max: usize, cfg: &NumericConfig) -> Result<Verdict> {
    cfg.validate()?;
    let reference = trunc_bell_numbers(lambda, p, n_max)?;
    let exact_routes = [
        (1, beta_integral_values(lambda, p, n_max)?),
        (3, binomial_expansion_values(lambda, p, n_max)?),
        (4, bell_convolution_values(lambda, p, n_max)?),
        (6, moment_values(lambda, p, n_max)?),
    ];
    let lam = lambda.to_f64();
    let contour = lambda.value().abs() < int(1);
    let mut details = Vec::new();
    let mut exact_mismatches = 0usize;
    let mut numeric_residual = 0.0f64;
    for (n, target) in reference.iter().enumerate() {
        for (route, values) in &exact_routes {
            if &values[n] != target {
                exact_mismatches += 1;
                details.push(Detail {
                    n,
                    k: *route,
                    lhs: values[n].to_string(),
                    rhs: target.to_string(),
                });
            }
        }
        let t = rational_to_f64(target);
        let mut numeric_routes = vec![(2, dobinski(lam, p, n, cfg.series_cutoff_k, cfg.series_cutoff_l).0)];
        if contour && n >= 1 {
            numeric_routes.push((5, contour_value(lam, n, Trig::T11, p, cfg.quad_nodes).0));
        }
        for (route, approx) in numeric_routes {
            numeric_residual = numeric_residual.max(NumericConfig::residual(approx, t));
            if !cfg.accepts(approx, t) {
                details.push(Detail {
                    n,
                    k: route,
                    lhs: format!("{approx:?}"),
                    rhs: target.to_string(),
                });
            }
        }
    }
    details.sort_by_key(|d| (d.n, d.k));
    let mut params = ParamsBuilder::new(lambda)
        .set("p", p)
        .set("n_max", n_max)
        .set("cutoff_k", cfg.series_cutoff_k)
        .set("cutoff_l", cfg.series_cutoff_l)
        .set("quad_nodes", cfg.quad_nodes)
        .set("exact_mismatches", exact_mismatches)
        .numeric(cfg);
    if !contour {
        params = params.set("contour", "skipped: |λ| >= 1");
    }
    Ok(Verdict {
        id: "C-SIX".into(),
        mode: Mode::Numeric,
        params: params.build(),
        status: Status::of(details.is_empty()),
        max_residual: numeric_residual + exact_mismatches as f64,
        details,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct Grid {
    pub lambdas: Vec<Lambda>,
    pub ps: Vec<usize>,
    pub n_max: usize,
    pub order: usize,
}

impl Grid {
    /// λ ∈ {0, 1, 1/2, -1/3}, p ∈ 0..=4, n ≤ 10, series order 24.
    pub fn default_grid() -> Self {
        Grid {
            lambdas: [(0, 1), (1, 1), (1, 2), (-1, 3)]
                .iter()
                .map(|&(n, d)| Lambda::new(ratio(n, d)))
                .collect(),
            ps: (0..=4).collect(),
            n_max: 10,
            order: 24,
        }
    }

    pub fn empty() -> Self {
        Grid {
            lambdas: Vec::new(),
            ps: Vec::new(),
            n_max: 0,
            order: 0,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub informational: usize,
}

impl Counts {
    fn add(&mut self, v: &Verdict) {
        match v.status {
            Status::Pass => self.pass += 1,
            Status::Fail => self.fail += 1,
        }
        if v.is_informational() {
            self.informational += 1;
        }
    }
}

/// Outcome of running both readings of an ambiguous statement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Adjudication {
    pub id: String,
    pub question: String,
    pub variants: BTreeMap<String, Counts>,
    /// `stated`, `derivation`, `both` or `neither`.
    pub resolution: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub counts: Counts,
    /// Failed verdicts that are not informational; nonzero means exit 1.
    pub counted_failures: usize,
    pub per_id: BTreeMap<String, Counts>,
    pub adjudications: Vec<Adjudication>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub verdicts: Vec<Verdict>,
    pub summary: Summary,
}

impl SuiteReport {
    pub fn from_verdicts(mut verdicts: Vec<Verdict>) -> Self {
        verdicts.sort_by_cached_key(Verdict::sort_key);
        let mut counts = Counts::default();
        let mut per_id: BTreeMap<String, Counts> = BTreeMap::new();
        for v in &verdicts {
            counts.add(v);
            per_id.entry(v.id.clone()).or_default().add(v);
        }
        let counted_failures = verdicts.iter().filter(|v| v.counts_as_failure()).count();
        let adjudications = t6_adjudication(&per_id).into_iter().collect();
        SuiteReport {
            summary: Summary {
                total: verdicts.len(),
                counts,
                counted_failures,
                per_id,
                adjudications,
            },
            verdicts,
        }
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.summary.counted_failures > 0)
    }

    /// Pretty JSON with object keys in sorted order.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("reports are serializable");
        let mut text = serde_json::to_string_pretty(&value).expect("reports are serializable");
        text.push('\n');
        text
    }
}

fn t6_adjudication(per_id: &BTreeMap<String, Counts>) -> Option<Adjudication> {
    let stated = per_id.get("T6");
    let derivation = per_id.get("T6k");
    if stated.is_none() && derivation.is_none() {
        return None;
    }
    let stated = stated.cloned().unwrap_or_default();
    let derivation = derivation.cloned().unwrap_or_default();
    let clean = |c: &Counts| c.fail == 0 && c.pass > 0;
    let resolution = match (clean(&stated), clean(&derivation)) {
        (true, true) => "both",
        (true, false) => "stated",
        (false, true) => "derivation",
        (false, false) => "neither",
    };
    Some(Adjudication {
        id: "T6".into(),
        question: "Bernoulli order in the correction sum: beta^(p)_{n+k} (stated) or beta^(k)_{n+k} (derivation)"
            .into(),
        variants: BTreeMap::from([("stated".to_string(), stated), ("derivation".to_string(), derivation)]),
        resolution: resolution.into(),
    })
}

/// Runs every registered check, or the one named by `filter`, over the
/// grid. Checks run in parallel and the verdicts are sorted afterwards, so
/// the report does not depend on scheduling.
pub fn run_suite(grid: &Grid, cfg: &NumericConfig, filter: Option<&str>) -> Result<SuiteReport> {
    cfg.validate()?;
    if let Some(id) = filter {
        if !IDS.contains(&id) {
            return Err(Error::param(format!("unknown identity {id:?}")));
        }
    }
    let mut jobs: Vec<(&str, CheckArgs)> = Vec::new();
    for &id in IDS.iter().filter(|id| filter.is_none() || filter == Some(**id)) {
        for lambda in &grid.lambdas {
            if is_contour(id) && lambda.value().abs() >= int(1) {
                continue;
            }
            let ps: Vec<usize> = match scope(id) {
                Scope::Lambda => vec![0],
                Scope::AnyP => grid.ps.clone(),
                Scope::PositiveP => grid.ps.iter().copied().filter(|&p| p >= 1).collect(),
            };
            for p in ps {
                let mut args = CheckArgs::new(lambda, p, grid.n_max);
                args.order = Some(grid.order.max(min_order(id, grid.n_max, p)));
                jobs.push((id, args));
            }
        }
    }
    let batches = jobs
        .par_iter()
        .map(|(id, args)| run_check(id, args, cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport::from_verdicts(batches.into_iter().flatten().collect()))
}
