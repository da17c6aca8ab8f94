//! Floating-point checks: truncated double series, contour quadrature and
//! Monte Carlo. Exact targets are rounded to `f64` only at comparison time.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::exact::{table, trunc_bell_numbers};
use super::{Detail, Mode, NumericConfig, Params, ParamsBuilder, Status, Verdict};
use crate::error::{Error, Result};
use crate::exactnum::{binomial, deg_falling_factorial, factorial, rational_to_f64, Lambda};
use crate::sequences::{Construction, Family};
use crate::Rational;

/// Distance from the branch point below which a contour evaluation is not
/// trusted.
const BRANCH_FLOOR: f64 = 1e-6;

/// Monte Carlo acceptance bound in standard errors.
const MC_BOUND: f64 = 4.0;

struct NumericComparison {
    id: &'static str,
    mode: Mode,
    params: Params,
    entries: Vec<(usize, usize, f64, Rational)>,
}

impl NumericComparison {
    fn new(id: &'static str, mode: Mode, params: Params) -> Self {
        NumericComparison {
            id,
            mode,
            params,
            entries: Vec::new(),
        }
    }

    fn push(&mut self, n: usize, k: usize, approx: f64, exact: Rational) {
        self.entries.push((n, k, approx, exact));
    }

    fn verdict(self, cfg: &NumericConfig) -> Verdict {
        let mut max_residual = 0.0f64;
        let mut details = Vec::new();
        for (n, k, approx, exact) in &self.entries {
            let target = rational_to_f64(exact);
            let r = NumericConfig::residual(*approx, target);
            max_residual = max_residual.max(if r.is_finite() { r } else { f64::MAX });
            if !cfg.accepts(*approx, target) {
                details.push(Detail {
                    n: *n,
                    k: *k,
                    lhs: format!("{approx:?}"),
                    rhs: exact.to_string(),
                });
            }
        }
        Verdict {
            id: self.id.to_string(),
            mode: self.mode,
            params: self.params,
            status: Status::of(details.is_empty()),
            max_residual,
            details,
        }
    }
}

fn factorials(up_to: usize) -> Vec<f64> {
    let mut out = vec![1.0; up_to + 1];
    for j in 1..=up_to {
        out[j] = out[j - 1] * j as f64;
    }
    out
}

/// `Σ_{k<=K} Σ_{l<=L} (-1)^l C(k+l,l) / C(k+l+p,p) · (k)_{n,λ} / (k+l)!`
/// and a tail heuristic: the magnitude of the last included term of every
/// row plus the whole last row.
pub fn dobinski(lambda: f64, p: usize, n: usize, cutoff_k: usize, cutoff_l: usize) -> (f64, f64) {
    let fact = factorials(cutoff_k + cutoff_l);
    let mut sum = 0.0;
    let mut tail = 0.0;
    for k in 0..=cutoff_k {
        let head = deg_falling_factorial(&(k as f64), n, &lambda);
        let mut row = 0.0;
        let mut last = 0.0;
        for l in 0..=cutoff_l {
            let weight = binomial::<f64>(k + l, l) / binomial::<f64>(k + l + p, p);
            let term = weight * head / fact[k + l];
            last = if l % 2 == 0 { term } else { -term };
            row += last;
        }
        sum += row;
        tail += last.abs();
        if k == cutoff_k {
            tail += row.abs();
        }
    }
    (sum, tail)
}

fn tail_params(mut params: ParamsBuilder, worst_tail: f64, inconclusive: bool) -> ParamsBuilder {
    params = params.set("tail_estimate", worst_tail);
    if inconclusive {
        params = params.set("diagnostic", "inconclusive-fail: tail estimate exceeds tolerance");
    }
    params
}

/// Dobinski-type double series against the exact truncated Bell numbers.
pub fn check_t4(lambda: &Lambda, p: usize, n_max: usize, cfg: &NumericConfig) -> Result<Verdict> {
    cfg.validate()?;
    let exact = trunc_bell_numbers(lambda, p, n_max)?;
    let lam = lambda.to_f64();
    let mut entries = Vec::new();
    let mut worst_tail = 0.0f64;
    let mut inconclusive = false;
    for (n, target) in exact.into_iter().enumerate() {
        let (approx, tail) = dobinski(lam, p, n, cfg.series_cutoff_k, cfg.series_cutoff_l);
        let t = rational_to_f64(&target);
        let scaled_tail = tail / t.abs().max(1.0);
        worst_tail = worst_tail.max(scaled_tail);
        if !cfg.accepts(approx, t) && scaled_tail > cfg.tol_rel {
            inconclusive = true;
        }
        entries.push((n, approx, target));
    }
    let params = ParamsBuilder::new(lambda)
        .set("p", p)
        .set("n_max", n_max)
        .set("cutoff_k", cfg.series_cutoff_k)
        .set("cutoff_l", cfg.series_cutoff_l)
        .numeric(cfg);
    let mut cmp = NumericComparison::new("T4", Mode::Numeric, tail_params(params, worst_tail, inconclusive).build());
    for (n, approx, target) in entries {
        cmp.push(n, 0, approx, target);
    }
    Ok(cmp.verdict(cfg))
}

/// `∫_0^z e^{-t} t^{p-1} dt = (p-1)! (1 - e^{-z} Σ_{j<p} z^j / j!)`.
pub fn incomplete_gamma_closed(p: usize, z: f64) -> f64 {
    assert!(p >= 1, "d(p, z) needs p >= 1");
    let mut partial = 0.0;
    let mut term = 1.0;
    for j in 0..p {
        if j > 0 {
            term *= z / j as f64;
        }
        partial += term;
    }
    factorial::<f64>(p - 1) * (1.0 - (-z).exp() * partial)
}

/// Composite Simpson with `panels` (even) subintervals on `[a, b]`.
fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let h = (b - a) / panels as f64;
    let inner: f64 = (1..panels)
        .map(|j| {
            let w = if j % 2 == 1 { 4.0 } else { 2.0 };
            w * f(a + j as f64 * h)
        })
        .sum();
    (f(a) + f(b) + inner) * h / 3.0
}

pub fn incomplete_gamma_quadrature(p: usize, z: f64, panels: usize) -> f64 {
    let power = (p - 1) as i32;
    simpson(|t| (-t).exp() * t.powi(power), 0.0, z, panels)
}

/// Largest relative gap between the closed form and quadrature at a few
/// sample points.
pub(crate) fn incomplete_gamma_validation(p: usize) -> f64 {
    [0.25, 0.5, 1.0, 2.0, 3.5]
        .iter()
        .map(|&z| {
            let closed = incomplete_gamma_closed(p, z);
            let quad = incomplete_gamma_quadrature(p, z, 4096);
            (closed - quad).abs() / quad.abs()
        })
        .fold(0.0, f64::max)
}

/// Which contour-integral representation to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Trig {
    /// `S_{2,λ}(n, k)` from `(e_λ(z) - 1)^k / k!`.
    L9,
    /// `Bel_{n,λ}` from `exp(e_λ(z) - 1)`.
    C10,
    /// `Bel^{(p)}_{n,λ}` from the truncated exponential divided by `u^p`.
    T11,
}

impl Trig {
    pub fn id(self) -> &'static str {
        match self {
            Trig::L9 => "L9",
            Trig::C10 => "C10",
            Trig::T11 => "T11",
        }
    }
}

/// `e_λ(z) = (1 + λ z)^{1/λ}` on the principal branch, `e^z` at λ = 0.
fn deg_exp_complex(z: Complex64, lambda: f64) -> Complex64 {
    if lambda == 0.0 {
        z.exp()
    } else {
        ((Complex64::new(1.0, 0.0) + z * lambda).ln() / lambda).exp()
    }
}

fn contour_integrand(which: Trig, k_or_p: usize, u: Complex64) -> Complex64 {
    match which {
        Trig::L9 => u.powi(k_or_p as i32) / factorial::<f64>(k_or_p),
        Trig::C10 => u.exp(),
        Trig::T11 => {
            let p = k_or_p as i32;
            let head: Complex64 = (0..k_or_p)
                .map(|l| u.powi(l as i32 - p) / factorial::<f64>(l))
                .sum();
            (u.exp() * u.powi(-p) - head) * factorial::<f64>(k_or_p)
        }
    }
}

/// `n!/π · Im ∫_0^{2π} g(e^{iθ}) sin nθ dθ`, and the smallest `|1 + λ e^{iθ}|`
/// seen on the grid.
pub(crate) fn contour_value(lambda: f64, n: usize, which: Trig, k_or_p: usize, panels: usize) -> (f64, f64) {
    let min_branch = (0..=panels)
        .map(|j| {
            let theta = 2.0 * PI * j as f64 / panels as f64;
            (Complex64::new(1.0, 0.0) + Complex64::from_polar(lambda, theta)).norm()
        })
        .fold(f64::INFINITY, f64::min);
    let integral = simpson(
        |theta| {
            let u = deg_exp_complex(Complex64::from_polar(1.0, theta), lambda) - 1.0;
            contour_integrand(which, k_or_p, u).im * (n as f64 * theta).sin()
        },
        0.0,
        2.0 * PI,
        panels,
    );
    (factorial::<f64>(n) / PI * integral, min_branch)
}

/// Contour-integral representations on the unit circle. `k_or_p` is the
/// block count for `L9`, ignored for `C10` and the truncation `p` for `T11`.
pub fn check_trig(
    lambda: &Lambda,
    n_max: usize,
    k_or_p: usize,
    which: Trig,
    cfg: &NumericConfig,
) -> Result<Verdict> {
    cfg.validate()?;
    let lam = lambda.to_f64();
    if lam.abs() >= 1.0 {
        return Err(Error::param(format!(
            "contour checks need |λ| < 1, got λ = {lambda}"
        )));
    }
    let (exact, first_n): (Vec<Rational>, usize) = match which {
        Trig::L9 => {
            if k_or_p > n_max {
                return Err(Error::param(format!("k = {k_or_p} exceeds n_max = {n_max}")));
            }
            let s2 = table(Family::S2Deg, lambda, 0, 0, n_max, Construction::TriangularSolve)?;
            ((0..=n_max).map(|n| s2.rational(n, k_or_p)).collect(), k_or_p.max(1))
        }
        Trig::C10 => {
            let bell = table(Family::BellDeg, lambda, 0, 0, n_max, Construction::RowSum)?;
            ((0..=n_max).map(|n| bell.poly(n, 0).eval(&Rational::one())).collect(), 1)
        }
        Trig::T11 => {
            if k_or_p == 0 {
                return Err(Error::param("the truncated contour form needs p >= 1"));
            }
            (trunc_bell_numbers(lambda, k_or_p, n_max)?, 1)
        }
    };
    let mut entries = Vec::new();
    let mut min_branch = f64::INFINITY;
    for (n, target) in exact.into_iter().enumerate().skip(first_n) {
        let (approx, branch) = contour_value(lam, n, which, k_or_p, cfg.quad_nodes);
        min_branch = min_branch.min(branch);
        entries.push((n, approx, target));
    }
    let mut params = ParamsBuilder::new(lambda)
        .set("n_max", n_max)
        .set("quad_nodes", cfg.quad_nodes)
        .numeric(cfg);
    params = match which {
        Trig::L9 => params.set("k", k_or_p),
        Trig::C10 => params,
        Trig::T11 => params.set("p", k_or_p),
    };
    if min_branch.is_finite() {
        params = params.set("min_branch_distance", min_branch);
    }
    let near_branch = min_branch < BRANCH_FLOOR;
    if near_branch {
        params = params.set("diagnostic", "inconclusive-fail: contour too close to the branch point");
    }
    let mut cmp = NumericComparison::new(which.id(), Mode::Numeric, params.build());
    for (n, approx, target) in entries {
        cmp.push(n, 0, approx, target);
    }
    let mut verdict = cmp.verdict(cfg);
    if near_branch {
        verdict.status = Status::Fail;
    }
    Ok(verdict)
}

/// `Σ_{k<=K} Σ_{m<=M} (x+k)_{n,λ} / k! · (-1)^m / (m! C(m+k+p, p))`.
fn modified_double_series(lambda: f64, p: usize, n: usize, x: f64, cutoff_k: usize, cutoff_m: usize) -> (f64, f64) {
    let fact = factorials(cutoff_k.max(cutoff_m));
    let mut sum = 0.0;
    let mut tail = 0.0;
    for k in 0..=cutoff_k {
        let head = deg_falling_factorial(&(x + k as f64), n, &lambda) / fact[k];
        let mut row = 0.0;
        let mut last = 0.0;
        for m in 0..=cutoff_m {
            let term = head / (fact[m] * binomial::<f64>(m + k + p, p));
            last = if m % 2 == 0 { term } else { -term };
            row += last;
        }
        sum += row;
        tail += last.abs();
        if k == cutoff_k {
            tail += row.abs();
        }
    }
    (sum, tail)
}

/// Double series for the modified polynomials at a rational point `x`
/// against `Σ_m Σ_k C(n,m) S_{2,λ}(m,k) (x)_{n-m,λ} / C(p+k,k)`.
pub fn check_t15(lambda: &Lambda, p: usize, n_max: usize, x: &Rational, cfg: &NumericConfig) -> Result<Verdict> {
    cfg.validate()?;
    let lam = lambda.value();
    let s2 = table(Family::S2Deg, lambda, 0, 0, n_max, Construction::TriangularSolve)?;
    let inner: Vec<Rational> = (0..=n_max)
        .map(|m| {
            (0..=m).fold(Rational::zero(), |acc, k| {
                acc + s2.rational(m, k) / binomial::<Rational>(p + k, k)
            })
        })
        .collect();
    let xf = rational_to_f64(x);
    let lf = lambda.to_f64();
    let mut entries = Vec::new();
    let mut worst_tail = 0.0f64;
    let mut inconclusive = false;
    for n in 0..=n_max {
        let target = (0..=n).fold(Rational::zero(), |acc, m| {
            acc + binomial::<Rational>(n, m) * &inner[m] * deg_falling_factorial(x, n - m, lam)
        });
        let (approx, tail) = modified_double_series(lf, p, n, xf, cfg.series_cutoff_k, cfg.series_cutoff_l);
        let t = rational_to_f64(&target);
        let scaled_tail = tail / t.abs().max(1.0);
        worst_tail = worst_tail.max(scaled_tail);
        if !cfg.accepts(approx, t) && scaled_tail > cfg.tol_rel {
            inconclusive = true;
        }
        entries.push((n, approx, target));
    }
    let params = ParamsBuilder::new(lambda)
        .set("p", p)
        .set("n_max", n_max)
        .set("x", x.to_string())
        .set("cutoff_k", cfg.series_cutoff_k)
        .set("cutoff_l", cfg.series_cutoff_l)
        .numeric(cfg);
    let mut cmp = NumericComparison::new("T15", Mode::Numeric, tail_params(params, worst_tail, inconclusive).build());
    for (n, approx, target) in entries {
        cmp.push(n, 0, approx, target);
    }
    Ok(cmp.verdict(cfg))
}

/// The stream of a check's generator is derived from its identifier, so
/// the draws do not depend on scheduling.
fn check_rng(seed: u64, id: &str) -> ChaCha8Rng {
    let mut stream = [0u8; 8];
    for (slot, b) in stream.iter_mut().zip(id.bytes()) {
        *slot = b;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::from_le_bytes(stream));
    rng
}

/// Sample mean of `Σ_k S_{2,λ}(n,k) X^k` with `X = 1 - U^{1/p}` distributed
/// as `Beta(1, p)`, accepted within four standard errors of the exact
/// truncated Bell number.
pub fn check_s3_monte_carlo(lambda: &Lambda, p: usize, n_max: usize, cfg: &NumericConfig) -> Result<Verdict> {
    cfg.validate()?;
    if p == 0 {
        return Err(Error::param("Beta(1, p) needs p >= 1"));
    }
    let s2 = table(Family::S2Deg, lambda, 0, 0, n_max, Construction::TriangularSolve)?;
    let weights: Vec<Vec<f64>> = (0..=n_max)
        .map(|n| (0..=n).map(|k| rational_to_f64(&s2.rational(n, k))).collect())
        .collect();
    let exact = trunc_bell_numbers(lambda, p, n_max)?;
    let mut rng = check_rng(cfg.seed, "S3");
    let inv_p = 1.0 / p as f64;
    let samples: Vec<f64> = (0..cfg.mc_samples)
        .map(|_| 1.0 - rng.gen::<f64>().powf(inv_p))
        .collect();
    let count = cfg.mc_samples as f64;
    let mut worst = 0.0f64;
    let mut details = Vec::new();
    for (n, target) in exact.iter().enumerate() {
        let values: Vec<f64> = samples
            .iter()
            .map(|&x| {
                let mut power = 1.0;
                let mut acc = 0.0;
                for w in &weights[n] {
                    acc += w * power;
                    power *= x;
                }
                acc
            })
            .collect();
        let mean = values.iter().sum::<f64>() / count;
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (count - 1.0);
        let se = (var / count).sqrt();
        let diff = (mean - rational_to_f64(target)).abs();
        let ok = if se > 0.0 { diff <= MC_BOUND * se } else { diff <= cfg.tol_abs };
        let z = if se > 0.0 { diff / se } else { 0.0 };
        worst = worst.max(z);
        if !ok {
            details.push(Detail {
                n,
                k: 0,
                lhs: format!("{mean:?}"),
                rhs: target.to_string(),
            });
        }
    }
    let params = ParamsBuilder::new(lambda)
        .set("p", p)
        .set("n_max", n_max)
        .set("mc_samples", cfg.mc_samples)
        .set("seed", cfg.seed)
        .set("se_bound", MC_BOUND)
        .set("prng", "ChaCha8")
        .set("sampler", "inverse_cdf")
        .build();
    Ok(Verdict {
        id: "S3".into(),
        mode: Mode::MonteCarlo,
        params,
        status: Status::of(details.is_empty()),
        max_residual: worst,
        details,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio;

    fn lam(n: i64, d: i64) -> Lambda {
        Lambda::new(ratio(n, d))
    }

    #[test]
    fn dobinski_classical_limit() {
        let (bell3, _) = dobinski(0.0, 0, 3, 80, 80);
        assert!((bell3 - 5.0).abs() < 1e-9);
        for p in 0..3 {
            let (one, _) = dobinski(0.5, p, 0, 80, 80);
            assert!((one - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn dobinski_example() {
        let cfg = NumericConfig {
            tol_rel: 1e-9,
            series_cutoff_k: 60,
            series_cutoff_l: 60,
            ..NumericConfig::default()
        };
        let v = check_t4(&lam(1, 3), 2, 6, &cfg).unwrap();
        assert!(v.passed(), "{:?}", v.details);
        assert_eq!(v.mode, Mode::Numeric);
    }

    #[test]
    fn short_cutoffs_are_flagged() {
        let cfg = NumericConfig {
            series_cutoff_k: 3,
            series_cutoff_l: 3,
            ..NumericConfig::default()
        };
        let v = check_t4(&lam(1, 3), 1, 6, &cfg).unwrap();
        assert!(!v.passed());
        assert!(v.params["diagnostic"].as_str().unwrap().starts_with("inconclusive-fail"));
    }

    #[test]
    fn incomplete_gamma_matches_quadrature() {
        for z in [0.3, 1.0, 2.5] {
            assert!((incomplete_gamma_closed(1, z) - (1.0 - (-z).exp())).abs() < 1e-15);
        }
        for p in 1..=5 {
            assert!(incomplete_gamma_validation(p) < 1e-10, "p={p}");
        }
    }

    #[test]
    fn contour_examples() {
        let cfg = NumericConfig {
            tol_rel: 1e-8,
            ..NumericConfig::default()
        };
        let l9 = check_trig(&lam(1, 3), 1, 1, Trig::L9, &cfg).unwrap();
        assert!(l9.passed(), "{:?}", l9.details);
        let c10 = check_trig(&Lambda::classical(), 4, 0, Trig::C10, &cfg).unwrap();
        assert!(c10.passed());
        let (bell4, _) = contour_value(0.0, 4, Trig::C10, 0, 512);
        assert!((bell4 - 15.0).abs() < 1e-8);
        let t11 = check_trig(&lam(1, 3), 3, 2, Trig::T11, &NumericConfig::default()).unwrap();
        assert!(t11.passed(), "{:?}", t11.details);
    }

    #[test]
    fn contour_rejects_large_lambda() {
        let cfg = NumericConfig::default();
        assert!(check_trig(&lam(1, 1), 4, 0, Trig::C10, &cfg).is_err());
        assert!(check_trig(&lam(-3, 2), 4, 0, Trig::C10, &cfg).is_err());
        assert!(check_trig(&lam(1, 3), 4, 0, Trig::T11, &cfg).is_err());
    }

    #[test]
    fn refinement_does_not_blow_up_residuals() {
        let coarse = NumericConfig::default();
        let fine = NumericConfig {
            quad_nodes: 2 * coarse.quad_nodes,
            series_cutoff_k: 2 * coarse.series_cutoff_k,
            series_cutoff_l: 2 * coarse.series_cutoff_l,
            ..coarse.clone()
        };
        // Residuals at this level are rounding noise; compare against a
        // floor of a few ulps so that an exact zero does not make any
        // rounding look like a blow-up.
        let floor = 1e-15;
        for l in [Lambda::classical(), lam(1, 3)] {
            let pairs = [
                (check_trig(&l, 8, 0, Trig::C10, &coarse), check_trig(&l, 8, 0, Trig::C10, &fine)),
                (check_trig(&l, 8, 2, Trig::T11, &coarse), check_trig(&l, 8, 2, Trig::T11, &fine)),
                (check_t4(&l, 2, 8, &coarse), check_t4(&l, 2, 8, &fine)),
                (
                    check_t15(&l, 2, 8, &ratio(1, 2), &coarse),
                    check_t15(&l, 2, 8, &ratio(1, 2), &fine),
                ),
            ];
            for (a, b) in pairs {
                let (a, b) = (a.unwrap(), b.unwrap());
                assert!(a.passed() && b.passed(), "{}", a.id);
                assert!(
                    b.max_residual <= 10.0 * a.max_residual.max(floor),
                    "{}: {} -> {}",
                    a.id,
                    a.max_residual,
                    b.max_residual
                );
            }
        }
    }

    #[test]
    fn t15_trivial_point() {
        let cfg = NumericConfig::default();
        let v = check_t15(&lam(1, 2), 2, 0, &Rational::zero(), &cfg).unwrap();
        assert!(v.passed());
    }

    #[test]
    fn monte_carlo_example_and_determinism() {
        let cfg = NumericConfig::default();
        let a = check_s3_monte_carlo(&lam(1, 2), 2, 4, &cfg).unwrap();
        assert!(a.passed(), "{:?}", a.details);
        let b = check_s3_monte_carlo(&lam(1, 2), 2, 4, &cfg).unwrap();
        assert_eq!(a, b);
        let other = NumericConfig { seed: 7, ..cfg };
        let c = check_s3_monte_carlo(&lam(1, 2), 2, 4, &other).unwrap();
        assert_ne!(a.max_residual, c.max_residual);
    }
}
