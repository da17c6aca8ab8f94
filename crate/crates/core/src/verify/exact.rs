//! Exact checks. Both sides are rationals or polynomials and must agree
//! coefficient for coefficient.

use std::sync::Arc;

use num_traits::{One, Zero};

use super::{Detail, Mode, Params, ParamsBuilder, Status, Verdict};
use crate::error::{Error, Result};
use crate::exactnum::{beta_exact, binomial, deg_falling_factorial, factorial, Lambda};
use crate::fps::{apply_dlambda, deg_exp_minus_one};
use crate::sequences::{self, bell, Construction, Family, SequenceTable, TableParams, Value};
use crate::{Poly, Rational, Series};

pub(crate) fn table(
    family: Family,
    lambda: &Lambda,
    p: usize,
    r: usize,
    n_max: usize,
    construction: Construction,
) -> Result<Arc<SequenceTable>> {
    let params = TableParams {
        lambda: lambda.clone(),
        p,
        r,
    };
    sequences::table_with(family, &params, n_max, construction)
}

pub(crate) fn count(n: usize) -> Rational {
    Rational::from_integer(n.into())
}

fn require_p(p: usize, what: &str) -> Result<()> {
    if p == 0 {
        return Err(Error::param(format!("{what} needs p >= 1")));
    }
    Ok(())
}

/// Truncated Bell numbers `Bel^{(p)}_{n,λ}` for `n <= n_max` from the closed
/// form, the reference every scalar route is compared against.
pub(crate) fn trunc_bell_numbers(lambda: &Lambda, p: usize, n_max: usize) -> Result<Vec<Rational>> {
    let closed = table(Family::TruncBellDeg, lambda, p, 0, n_max, Construction::ClosedForm)?;
    Ok((0..=n_max)
        .map(|n| closed.poly(n, 0).eval(&Rational::one()))
        .collect())
}

fn bernoulli_numbers(lambda: &Lambda, r: usize, n_max: usize) -> Result<Vec<Rational>> {
    let t = table(Family::BernoulliDeg, lambda, 0, r, n_max, Construction::EgfExtraction)?;
    Ok((0..=n_max)
        .map(|n| t.poly(n, 0).eval(&Rational::zero()))
        .collect())
}

#[derive(Clone, Debug)]
struct Entry {
    n: usize,
    k: usize,
    lhs: Value,
    rhs: Value,
}

/// The two sides of an exact identity, collected entry by entry before a
/// verdict is drawn. Kept public so a single entry can be perturbed.
#[derive(Clone, Debug)]
pub struct ExactComparison {
    id: String,
    params: Params,
    entries: Vec<Entry>,
}

impl ExactComparison {
    pub fn new(id: &str, params: Params, lhs_route: &str, rhs_route: &str) -> Self {
        let mut params = params;
        params.insert("lhs_route".into(), lhs_route.into());
        params.insert("rhs_route".into(), rhs_route.into());
        ExactComparison {
            id: id.to_string(),
            params,
            entries: Vec::new(),
        }
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn set_param(&mut self, key: &str, value: impl Into<serde_json::Value>) {
        self.params.insert(key.to_string(), value.into());
    }

    pub fn rational(&mut self, n: usize, k: usize, lhs: Rational, rhs: Rational) {
        self.entries.push(Entry {
            n,
            k,
            lhs: Value::Rational(lhs),
            rhs: Value::Rational(rhs),
        });
    }

    pub fn poly(&mut self, n: usize, k: usize, lhs: Poly, rhs: Poly) {
        self.entries.push(Entry {
            n,
            k,
            lhs: Value::Poly(lhs),
            rhs: Value::Poly(rhs),
        });
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Adds one to the constant term of the right side of entry `index`.
    pub fn perturb(&mut self, index: usize) {
        let rhs = &mut self.entries[index].rhs;
        *rhs = match &*rhs {
            Value::Rational(r) => Value::Rational(r + Rational::one()),
            Value::Poly(p) => Value::Poly(p + &Poly::one()),
        };
    }

    /// Unequal coefficients, and one detail per unequal entry.
    fn mismatches(&self) -> (usize, Vec<Detail>) {
        let mut count = 0;
        let mut details = Vec::new();
        for e in &self.entries {
            let unequal = match (&e.lhs, &e.rhs) {
                (Value::Rational(a), Value::Rational(b)) => usize::from(a != b),
                (Value::Poly(a), Value::Poly(b)) => {
                    let len = a.coeffs().len().max(b.coeffs().len());
                    (0..len).filter(|&i| a.coeff(i) != b.coeff(i)).count()
                }
                _ => panic!("{}: entry ({}, {}) mixes rationals and polynomials", self.id, e.n, e.k),
            };
            if unequal > 0 {
                count += unequal;
                details.push(Detail {
                    n: e.n,
                    k: e.k,
                    lhs: e.lhs.to_string(),
                    rhs: e.rhs.to_string(),
                });
            }
        }
        (count, details)
    }

    pub fn passes(&self) -> bool {
        self.mismatches().0 == 0
    }

    pub fn verdict(self) -> Verdict {
        let (count, details) = self.mismatches();
        Verdict {
            id: self.id,
            mode: Mode::Exact,
            params: self.params,
            status: Status::of(count == 0),
            max_residual: count as f64,
            details,
        }
    }
}

/// Generating function `p! Σ_k x^k (e_λ(t) - 1)^k / (k+p)!` against the
/// weighted Stirling sum.
pub fn t1_comparison(lambda: &Lambda, p: usize, n_max: usize, order: usize) -> Result<ExactComparison> {
    if order < n_max {
        return Err(Error::param(format!("order {order} is below n_max {n_max}")));
    }
    let series = bell::trunc_bell_series(lambda, p, order).egf_coeffs();
    let closed = table(Family::TruncBellDeg, lambda, p, 0, n_max, Construction::ClosedForm)?;
    let params = ParamsBuilder::new(lambda)
        .set("p", p)
        .set("n_max", n_max)
        .set("order", order)
        .build();
    let mut cmp = ExactComparison::new("T1", params, "EgfExtraction", "ClosedForm");
    for (n, lhs) in series.into_iter().take(n_max + 1).enumerate() {
        cmp.poly(n, 0, lhs, closed.poly(n, 0));
    }
    Ok(cmp)
}

pub fn check_t1(lambda: &Lambda, p: usize, n_max: usize, order: usize) -> Result<Verdict> {
    Ok(t1_comparison(lambda, p, n_max, order)?.verdict())
}

/// `x Bel^{(1)}_n(x) = Σ_m C(n,m) β_{n-m,λ} Bel_{m+1,λ}(x) / (m+1)`, then the
/// same at `x = 1` (entries with `k = 1`).
pub fn t2_comparison(lambda: &Lambda, n_max: usize, order: usize) -> Result<ExactComparison> {
    if order < n_max + 1 {
        return Err(Error::param(format!("order {order} is below n_max + 1")));
    }
    let tb1 = table(Family::TruncBellDeg, lambda, 1, 0, n_max, Construction::ClosedForm)?;
    let bell = table(Family::BellDeg, lambda, 0, 0, n_max + 1, Construction::RowSum)?;
    let beta = bernoulli_numbers(lambda, 1, n_max)?;
    let params = ParamsBuilder::new(lambda)
        .set("n_max", n_max)
        .set("order", order)
        .set("detail_k", "0: identity in x, 1: at x = 1")
        .build();
    let mut cmp = ExactComparison::new("T2", params, "ClosedForm", "BernoulliBellConvolution");
    let one = Rational::one();
    let mut scalar = Vec::new();
    for n in 0..=n_max {
        let lhs = tb1.poly(n, 0).shift(1);
        let rhs = (0..=n).fold(Poly::zero(), |acc, m| {
            let w = binomial::<Rational>(n, m) * &beta[n - m] / count(m + 1);
            &acc + &bell.poly(m + 1, 0).scale(&w)
        });
        scalar.push((tb1.poly(n, 0).eval(&one), rhs.eval(&one)));
        cmp.poly(n, 0, lhs, rhs);
    }
    for (n, (lhs, rhs)) in scalar.into_iter().enumerate() {
        cmp.rational(n, 1, lhs, rhs);
    }
    Ok(cmp)
}

pub fn check_t2(lambda: &Lambda, n_max: usize, order: usize) -> Result<Verdict> {
    Ok(t2_comparison(lambda, n_max, order)?.verdict())
}

/// `p ∫_0^1 Bel_{n,λ}(x) (1-x)^{p-1} dx` integrated monomial by monomial
/// with the exact beta function.
pub(crate) fn beta_integral_values(lambda: &Lambda, p: usize, n_max: usize) -> Result<Vec<Rational>> {
    require_p(p, "the integral form")?;
    let bell = table(Family::BellDeg, lambda, 0, 0, n_max, Construction::EgfExtraction)?;
    (0..=n_max)
        .map(|n| {
            let poly = bell.poly(n, 0);
            let mut acc = Rational::zero();
            for (k, c) in poly.coeffs().iter().enumerate() {
                acc += c * beta_exact(k + 1, p)?;
            }
            Ok(acc * count(p))
        })
        .collect()
}

pub fn p3_comparison(lambda: &Lambda, p: usize, n_max: usize) -> Result<ExactComparison> {
    let lhs = beta_integral_values(lambda, p, n_max)?;
    let rhs = trunc_bell_numbers(lambda, p, n_max)?;
    let params = ParamsBuilder::new(lambda).set("p", p).set("n_max", n_max).build();
    let mut cmp = ExactComparison::new("P3", params, "BetaIntegration", "ClosedForm");
    for (n, (l, r)) in lhs.into_iter().zip(rhs).enumerate() {
        cmp.rational(n, 0, l, r);
    }
    Ok(cmp)
}

pub fn check_p3(lambda: &Lambda, p: usize, n_max: usize) -> Result<Verdict> {
    Ok(p3_comparison(lambda, p, n_max)?.verdict())
}

/// `Σ_k Σ_{m<p} (m+1) C(p, m+1) (-1)^m S_{2,λ}(n,k) / (k+m+1)`.
pub(crate) fn binomial_expansion_values(lambda: &Lambda, p: usize, n_max: usize) -> Result<Vec<Rational>> {
    require_p(p, "the binomial expansion")?;
    let s2 = table(Family::S2Deg, lambda, 0, 0, n_max, Construction::EgfExtraction)?;
    Ok((0..=n_max)
        .map(|n| {
            let mut acc = Rational::zero();
            for k in 0..=n {
                let s = s2.rational(n, k);
                if s.is_zero() {
                    continue;
                }
                for m in 0..p {
                    let term = count(m + 1) * binomial::<Rational>(p, m + 1) * &s / count(k + m + 1);
                    if m % 2 == 0 {
                        acc += term;
                    } else {
                        acc -= term;
                    }
                }
            }
            acc
        })
        .collect())
}

pub fn p5a_comparison(lambda: &Lambda, p: usize, n_max: usize) -> Result<ExactComparison> {
    let lhs = binomial_expansion_values(lambda, p, n_max)?;
    let rhs = trunc_bell_numbers(lambda, p, n_max)?;
    let params = ParamsBuilder::new(lambda).set("p", p).set("n_max", n_max).build();
    let mut cmp = ExactComparison::new("P5a", params, "BinomialExpansion", "ClosedForm");
    for (n, (l, r)) in lhs.into_iter().zip(rhs).enumerate() {
        cmp.rational(n, 0, l, r);
    }
    Ok(cmp)
}

pub fn check_p5a(lambda: &Lambda, p: usize, n_max: usize) -> Result<Verdict> {
    Ok(p5a_comparison(lambda, p, n_max)?.verdict())
}

/// `d(p, z) = (p-1)! (1 - e^{-z} Σ_{j<p} z^j / j!)` with `z` a series
/// without constant term.
fn incomplete_gamma_series(p: usize, z: &Series) -> Result<Series> {
    let order = z.order();
    let mut partial = Series::zero(order);
    let mut power = Series::one(order);
    for j in 0..p {
        if j > 0 {
            power = power.mul(z);
        }
        partial = partial.add(&power.scale_rational(&factorial::<Rational>(j).recip()));
    }
    let decay = z.neg().exp()?;
    Ok(Series::one(order)
        .sub(&decay.mul(&partial))
        .scale_rational(&factorial::<Rational>(p - 1)))
}

/// `p e^{u} d(p, u) / u^p` with `u = e_λ(t) - 1`. The division by `u^p`
/// costs `p` orders, so entries run through `n = order - p`.
pub fn p5b_comparison(lambda: &Lambda, p: usize, order: usize) -> Result<ExactComparison> {
    require_p(p, "the incomplete gamma form")?;
    if order < p {
        return Err(Error::param(format!("order {order} is below p = {p}")));
    }
    let u = deg_exp_minus_one(lambda, order);
    let numerator = u
        .exp()?
        .mul(&incomplete_gamma_series(p, &u)?)
        .scale_rational(&count(p));
    let found = numerator.valuation().unwrap_or(order + 1);
    if found < p {
        return Err(Error::Valuation { needed: p, found });
    }
    let series = numerator.div(&u.pow(p))?;
    let through = series.order();
    let rhs = trunc_bell_numbers(lambda, p, through)?;
    let params = ParamsBuilder::new(lambda)
        .set("p", p)
        .set("order", order)
        .set("n_max", through)
        .build();
    let mut cmp = ExactComparison::new("P5b", params, "IncompleteGamma", "ClosedForm");
    for (n, r) in rhs.into_iter().enumerate() {
        cmp.rational(n, 0, series.egf_coeff(n)?, r);
    }
    Ok(cmp)
}

pub fn check_p5b(lambda: &Lambda, p: usize, order: usize) -> Result<Verdict> {
    let mut verdict = p5b_comparison(lambda, p, order)?.verdict();
    // The closed form of d(p, z) is checked against quadrature before its
    // series result is trusted.
    let err = super::numeric::incomplete_gamma_validation(p);
    verdict
        .params
        .insert("d_validation_max_rel_err".into(), err.into());
    if err.is_nan() || err > 1e-10 {
        verdict.status = Status::Fail;
    }
    Ok(verdict)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum T6Variant {
    /// Correction sum carries `β^{(p)}_{n+k,λ}`.
    Stated,
    /// Correction sum carries `β^{(k)}_{n+k,λ}`.
    Derivation,
}

impl T6Variant {
    pub fn id(self) -> &'static str {
        match self {
            T6Variant::Stated => "T6",
            T6Variant::Derivation => "T6k",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            T6Variant::Stated => "stated",
            T6Variant::Derivation => "derivation",
        }
    }
}

/// `x^p Bel^{(p)}_n(x)` against the Bernoulli–Bell convolution minus the
/// correction sum, with the Bernoulli order in the correction chosen by
/// `variant`.
pub fn t6_comparison(
    lambda: &Lambda,
    p: usize,
    n_max: usize,
    order: usize,
    variant: T6Variant,
) -> Result<ExactComparison> {
    let top = n_max + p;
    if order < top {
        return Err(Error::param(format!("order {order} is below n_max + p = {top}")));
    }
    let closed = table(Family::TruncBellDeg, lambda, p, 0, n_max, Construction::ClosedForm)?;
    let bell = table(Family::BellDeg, lambda, 0, 0, top, Construction::RowSum)?;
    let beta_p = bernoulli_numbers(lambda, p, top)?;
    let correction: Vec<Vec<Rational>> = (0..=p)
        .map(|k| match variant {
            T6Variant::Stated => Ok(beta_p.clone()),
            T6Variant::Derivation => bernoulli_numbers(lambda, k, top),
        })
        .collect::<Result<_>>()?;
    let params = ParamsBuilder::new(lambda)
        .set("p", p)
        .set("n_max", n_max)
        .set("order", order)
        .set("variant", variant.name())
        .set("adjudication", true)
        .set("informational", true)
        .build();
    let mut cmp = ExactComparison::new(variant.id(), params, "ClosedForm", "BernoulliBellConvolution");
    for n in 0..=n_max {
        let lhs = closed.poly(n, 0).shift(p);
        let norm = binomial::<Rational>(n + p, n);
        let mut rhs = (0..=n + p).fold(Poly::zero(), |acc, m| {
            let w = binomial::<Rational>(n + p, m) / &norm * &beta_p[n + p - m];
            &acc + &bell.poly(m, 0).scale(&w)
        });
        for k in 1..=p {
            let w = binomial::<Rational>(p, k) / binomial::<Rational>(n + k, n) * &correction[k][n + k];
            rhs = &rhs - &Poly::monomial(w, p - k);
        }
        cmp.poly(n, 0, lhs, rhs);
    }
    Ok(cmp)
}

pub fn check_t6(lambda: &Lambda, p: usize, n_max: usize, order: usize, variant: T6Variant) -> Result<Verdict> {
    Ok(t6_comparison(lambda, p, n_max, order, variant)?.verdict())
}

/// `(-1)^{p-1} p e^{u} D^{p-1}((1 - e^{-u}) / u)` with `D = e_λ^{λ-1}(t) d/dt`
/// and `u = e_λ(t) - 1`. `sign = -1` flips the prefactor for negative
/// controls. One order is lost to the division and one per application of
/// `D`, so entries run through `n = order - p`.
pub fn t7_comparison(lambda: &Lambda, p: usize, order: usize, sign: i64) -> Result<ExactComparison> {
    require_p(p, "the operator form")?;
    if order < p {
        return Err(Error::param(format!("order {order} is too small for p = {p}")));
    }
    let u = deg_exp_minus_one(lambda, order);
    let mut inner = Series::one(order).sub(&u.neg().exp()?).div(&u)?;
    for _ in 1..p {
        inner = apply_dlambda(&inner, lambda)?;
    }
    let through = inner.order();
    let mut prefactor = count(p) * Rational::from_integer(sign.into());
    if (p - 1) % 2 == 1 {
        prefactor = -prefactor;
    }
    let series = u
        .exp()?
        .truncate(through)
        .mul(&inner)
        .scale_rational(&prefactor);
    let rhs = trunc_bell_numbers(lambda, p, through)?;
    let mut params = ParamsBuilder::new(lambda)
        .set("p", p)
        .set("order", order)
        .set("n_max", through);
    if sign != 1 {
        params = params.set("sign", sign);
    }
    let mut cmp = ExactComparison::new("T7", params.build(), "DifferentialOperator", "ClosedForm");
    for (n, r) in rhs.into_iter().enumerate() {
        cmp.rational(n, 0, series.egf_coeff(n)?, r);
    }
    Ok(cmp)
}

pub fn check_t7(lambda: &Lambda, p: usize, order: usize) -> Result<Verdict> {
    Ok(t7_comparison(lambda, p, order, 1)?.verdict())
}

/// `p Σ_m Σ_l C(n,m) (-1)^l S_{2,λ}(m,l) Bel_{n-m,λ} / (p+l)`.
pub(crate) fn bell_convolution_values(lambda: &Lambda, p: usize, n_max: usize) -> Result<Vec<Rational>> {
    require_p(p, "the Bell convolution")?;
    let s2 = table(Family::S2Deg, lambda, 0, 0, n_max, Construction::EgfExtraction)?;
    let bell = table(Family::BellDeg, lambda, 0, 0, n_max, Construction::RowSum)?;
    let inner: Vec<Rational> = (0..=n_max)
        .map(|m| {
            (0..=m).fold(Rational::zero(), |acc, l| {
                let term = s2.rational(m, l) / count(p + l);
                if l % 2 == 0 {
                    acc + term
                } else {
                    acc - term
                }
            })
        })
        .collect();
    Ok((0..=n_max)
        .map(|n| {
            let sum = (0..=n).fold(Rational::zero(), |acc, m| {
                acc + binomial::<Rational>(n, m) * &inner[m] * bell.poly(n - m, 0).eval(&Rational::one())
            });
            sum * count(p)
        })
        .collect())
}

pub fn t8_comparison(lambda: &Lambda, p: usize, n_max: usize) -> Result<ExactComparison> {
    let lhs = bell_convolution_values(lambda, p, n_max)?;
    let rhs = trunc_bell_numbers(lambda, p, n_max)?;
    let params = ParamsBuilder::new(lambda).set("p", p).set("n_max", n_max).build();
    let mut cmp = ExactComparison::new("T8", params, "BellConvolution", "ClosedForm");
    for (n, (l, r)) in lhs.into_iter().zip(rhs).enumerate() {
        cmp.rational(n, 0, l, r);
    }
    Ok(cmp)
}

pub fn check_t8(lambda: &Lambda, p: usize, n_max: usize) -> Result<Verdict> {
    Ok(t8_comparison(lambda, p, n_max)?.verdict())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum T12Variant {
    /// Middle term `p/(p+1) Bel^{(p)}_{n,λ}`.
    Stated,
    /// Middle term `p/(p+1) Bel^{(p+1)}_{n,λ}`.
    Derivation,
}

impl T12Variant {
    pub fn name(self) -> &'static str {
        match self {
            T12Variant::Stated => "stated",
            T12Variant::Derivation => "derivation",
        }
    }
}

/// The recurrence for `Bel^{(p)}_{n+1,λ}`. Only `n >= 2` enters the
/// comparison; `n = 0, 1` are probed separately and their status stored in
/// the `n_below_2` parameter. At `p = 0` the rewritten second line of the
/// corollary is also probed, taking `C(n, -1) = 0`.
pub fn t12_comparison(
    lambda: &Lambda,
    p: usize,
    n_max: usize,
    order: usize,
    variant: T12Variant,
) -> Result<ExactComparison> {
    if order < n_max + 1 {
        return Err(Error::param(format!("order {order} is below n_max + 1")));
    }
    let one = Rational::one();
    let lam = lambda.value();
    let next = table(Family::TruncBellDeg, lambda, p, 0, n_max + 1, Construction::EgfExtraction)?;
    let lhs: Vec<Rational> = (0..=n_max + 1).map(|n| next.poly(n, 0).eval(&one)).collect();
    let b = trunc_bell_numbers(lambda, p, n_max)?;
    let middle = match variant {
        T12Variant::Stated => b.clone(),
        T12Variant::Derivation => trunc_bell_numbers(lambda, p + 1, n_max)?,
    };
    let ratio = count(p) / count(p + 1);
    let shifted = lam - &one;
    let falling = |j: usize| deg_falling_factorial(&shifted, j, lam);

    let mut params = ParamsBuilder::new(lambda)
        .set("p", p)
        .set("n_max", n_max)
        .set("order", order)
        .set("variant", variant.name());
    if variant == T12Variant::Derivation {
        params = params.set("informational", true);
    }
    let mut cmp = ExactComparison::new("T12", params.build(), "EgfExtraction", "Recurrence");
    let mut low = ExactComparison::new("T12", Params::new(), "EgfExtraction", "Recurrence");
    let mut second = ExactComparison::new("T12", Params::new(), "EgfExtraction", "Recurrence");
    for n in 0..=n_max {
        let lead = (count(n + 1) - count(n) * lam) * &b[n];
        let tail = (0..n.saturating_sub(1)).fold(Rational::zero(), |acc, m| {
            acc + binomial::<Rational>(n, m) * &b[m + 1] * falling(n - m)
        });
        let rhs = lead.clone() - &ratio * &middle[n] - tail;
        if n >= 2 {
            cmp.rational(n, 0, lhs[n + 1].clone(), rhs);
            if p == 0 {
                let rewritten = (1..n).fold(Rational::zero(), |acc, m| {
                    acc + binomial::<Rational>(n, m - 1) * &b[m] * falling(n - m + 1)
                });
                second.rational(n, 0, lhs[n + 1].clone(), lead - rewritten);
            }
        } else {
            low.rational(n, 0, lhs[n + 1].clone(), rhs);
        }
    }
    let low_status = Status::of(low.passes()).as_str();
    cmp.set_param("n_below_2", low_status);
    if p == 0 {
        cmp.set_param("corollary_second_line", Status::of(second.passes()).as_str());
    }
    Ok(cmp)
}

pub fn check_t12(lambda: &Lambda, p: usize, n_max: usize, order: usize, variant: T12Variant) -> Result<Verdict> {
    Ok(t12_comparison(lambda, p, n_max, order, variant)?.verdict())
}

/// Degenerate Stirling polynomials: finite sum against EGF extraction.
pub fn t13_comparison(lambda: &Lambda, n_max: usize) -> Result<ExactComparison> {
    let sum = table(Family::S2DegPoly, lambda, 0, 0, n_max, Construction::FiniteSum)?;
    let egf = table(Family::S2DegPoly, lambda, 0, 0, n_max, Construction::EgfExtraction)?;
    let params = ParamsBuilder::new(lambda).set("n_max", n_max).build();
    let mut cmp = ExactComparison::new("T13", params, "FiniteSum", "EgfExtraction");
    for n in 0..=n_max {
        for l in 0..=n {
            cmp.poly(n, l, sum.poly(n, l), egf.poly(n, l));
        }
    }
    Ok(cmp)
}

pub fn check_t13(lambda: &Lambda, n_max: usize) -> Result<Verdict> {
    Ok(t13_comparison(lambda, n_max)?.verdict())
}

/// Modified truncated Bell polynomials: weighted Stirling-polynomial sum
/// against the generating function.
pub fn t14_comparison(lambda: &Lambda, p: usize, n_max: usize) -> Result<ExactComparison> {
    let closed = table(Family::TruncModBellDeg, lambda, p, 0, n_max, Construction::ClosedForm)?;
    let egf = table(Family::TruncModBellDeg, lambda, p, 0, n_max, Construction::EgfExtraction)?;
    let params = ParamsBuilder::new(lambda).set("p", p).set("n_max", n_max).build();
    let mut cmp = ExactComparison::new("T14", params, "ClosedForm", "EgfExtraction");
    for n in 0..=n_max {
        cmp.poly(n, 0, closed.poly(n, 0), egf.poly(n, 0));
    }
    Ok(cmp)
}

pub fn check_t14(lambda: &Lambda, p: usize, n_max: usize) -> Result<Verdict> {
    Ok(t14_comparison(lambda, p, n_max)?.verdict())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConvolutionIndex {
    /// `Σ_m C(n,m) Bel^{(p)}_{m,λ} (x)_{n-m,λ}`.
    Corrected,
    /// `Σ_m C(n,m) Bel^{(p)}_{n,λ} (x)_{n-m,λ}`, as printed.
    Literal,
}

impl ConvolutionIndex {
    pub fn name(self) -> &'static str {
        match self {
            ConvolutionIndex::Corrected => "corrected",
            ConvolutionIndex::Literal => "literal",
        }
    }
}

/// Modified polynomials as a binomial convolution of truncated Bell numbers
/// with `(x)_{j,λ}`. The literal index is a probe and never counted.
pub fn t14_convolution_comparison(
    lambda: &Lambda,
    p: usize,
    n_max: usize,
    index: ConvolutionIndex,
) -> Result<ExactComparison> {
    let closed = table(Family::TruncModBellDeg, lambda, p, 0, n_max, Construction::ClosedForm)?;
    let bell = table(Family::TruncBellDeg, lambda, p, 0, n_max, Construction::EgfExtraction)?;
    let numbers: Vec<Rational> = (0..=n_max).map(|m| bell.poly(m, 0).eval(&Rational::one())).collect();
    let falling: Vec<Poly> = (0..=n_max)
        .map(|j| crate::fps::deg_falling_factorial_poly(j, lambda))
        .collect();
    let mut params = ParamsBuilder::new(lambda)
        .set("p", p)
        .set("n_max", n_max)
        .set("sub", "convolution")
        .set("variant", index.name());
    if index == ConvolutionIndex::Literal {
        params = params.set("informational", true);
    }
    let mut cmp = ExactComparison::new("T14", params.build(), "ClosedForm", "BellConvolution");
    for n in 0..=n_max {
        let rhs = (0..=n).fold(Poly::zero(), |acc, m| {
            let b = match index {
                ConvolutionIndex::Corrected => &numbers[m],
                ConvolutionIndex::Literal => &numbers[n],
            };
            &acc + &falling[n - m].scale(&(binomial::<Rational>(n, m) * b))
        });
        cmp.poly(n, 0, closed.poly(n, 0), rhs);
    }
    Ok(cmp)
}

pub fn check_t14_convolution(lambda: &Lambda, p: usize, n_max: usize, index: ConvolutionIndex) -> Result<Verdict> {
    Ok(t14_convolution_comparison(lambda, p, n_max, index)?.verdict())
}

/// `B^{(p)}_{n+1,λ}(x) = (x - nλ) B^{(p)}_n(x)
///   - Σ_j C(n,j) (1)_{n-j,λ} (p/(p+1) B^{(p+1)}_j(x) - B^{(p)}_j(x))`.
pub fn t16_comparison(lambda: &Lambda, p: usize, n_max: usize) -> Result<ExactComparison> {
    let lam = lambda.value();
    let next = table(Family::TruncModBellDeg, lambda, p, 0, n_max + 1, Construction::EgfExtraction)?;
    let b = table(Family::TruncModBellDeg, lambda, p, 0, n_max, Construction::ClosedForm)?;
    let b_up = table(Family::TruncModBellDeg, lambda, p + 1, 0, n_max, Construction::ClosedForm)?;
    let ratio = count(p) / count(p + 1);
    let params = ParamsBuilder::new(lambda).set("p", p).set("n_max", n_max).build();
    let mut cmp = ExactComparison::new("T16", params, "EgfExtraction", "Recurrence");
    for n in 0..=n_max {
        let factor = Poly::from_coeffs(vec![-(count(n) * lam), Rational::one()]);
        let mut rhs = &factor * &b.poly(n, 0);
        for j in 0..=n {
            let w = binomial::<Rational>(n, j) * deg_falling_factorial(&Rational::one(), n - j, lam);
            let bracket = &b_up.poly(j, 0).scale(&ratio) - &b.poly(j, 0);
            rhs = &rhs - &bracket.scale(&w);
        }
        cmp.poly(n, 0, next.poly(n + 1, 0), rhs);
    }
    Ok(cmp)
}

pub fn check_t16(lambda: &Lambda, p: usize, n_max: usize) -> Result<Verdict> {
    Ok(t16_comparison(lambda, p, n_max)?.verdict())
}

/// `E[X^k]` for `X ~ Beta(1, p)` as the beta-function ratio `B(k+1, p) / B(1, p)`.
pub(crate) fn beta_moments(p: usize, k_max: usize) -> Result<Vec<Rational>> {
    require_p(p, "Beta(1, p)")?;
    let norm = beta_exact(1, p)?;
    (0..=k_max).map(|k| Ok(beta_exact(k + 1, p)? / &norm)).collect()
}

/// `Σ_k E[X^k] S_{2,λ}(n,k)` with `X ~ Beta(1, p)`.
pub(crate) fn moment_values(lambda: &Lambda, p: usize, n_max: usize) -> Result<Vec<Rational>> {
    let moments = beta_moments(p, n_max)?;
    let s2 = table(Family::S2Deg, lambda, 0, 0, n_max, Construction::EgfExtraction)?;
    Ok((0..=n_max)
        .map(|n| (0..=n).fold(Rational::zero(), |acc, k| acc + &moments[k] * s2.rational(n, k)))
        .collect())
}

pub fn s3_comparison(lambda: &Lambda, p: usize, n_max: usize) -> Result<ExactComparison> {
    let lhs = moment_values(lambda, p, n_max)?;
    let rhs = trunc_bell_numbers(lambda, p, n_max)?;
    let params = ParamsBuilder::new(lambda).set("p", p).set("n_max", n_max).build();
    let mut cmp = ExactComparison::new("S3", params, "BetaMoments", "ClosedForm");
    for (n, (l, r)) in lhs.into_iter().zip(rhs).enumerate() {
        cmp.rational(n, 0, l, r);
    }
    Ok(cmp)
}

pub fn check_s3_exact(lambda: &Lambda, p: usize, n_max: usize) -> Result<Verdict> {
    Ok(s3_comparison(lambda, p, n_max)?.verdict())
}
