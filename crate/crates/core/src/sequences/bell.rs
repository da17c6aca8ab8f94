//! Bell-type polynomial families and the degenerate Bernoulli polynomials.
//!
//! Each family has a closed form over the Stirling tables and an independent
//! generating-function construction.

use num_traits::{One, Zero};

use super::stirling::{powers_over_factorial, stirling2_deg_by_solve, stirling2_deg_poly_by_sum, Triangle};
use crate::error::Result;
use crate::exactnum::{binomial, factorial, Lambda};
use crate::fps::{deg_exp, deg_exp_minus_one, Fps};
use crate::{Poly, PolySeries, Rational, Series};

/// `Σ_k T(n, k) w_k x^k` for every row.
fn weighted_row_polys(rows: &Triangle<Rational>, weight: impl Fn(usize) -> Rational) -> Vec<Poly> {
    rows.iter()
        .map(|row| {
            Poly::from_coeffs(
                row.iter()
                    .enumerate()
                    .map(|(k, s)| s * weight(k))
                    .collect(),
            )
        })
        .collect()
}

/// `Bel_{n,λ}(x) = Σ_k S_{2,λ}(n, k) x^k`. At λ = 0 these are the classical
/// Bell polynomials.
pub fn bell_deg_by_row_sum(lambda: &Lambda, n_max: usize) -> Vec<Poly> {
    weighted_row_polys(&stirling2_deg_by_solve(lambda, n_max), |_| Rational::one())
}

/// `Bel_{n,λ}(x)` as EGF coefficients of `exp(x (e_λ(t) - 1))`.
pub fn bell_deg_by_egf(lambda: &Lambda, n_max: usize) -> Vec<Poly> {
    let xu = PolySeries::lift(&deg_exp_minus_one(lambda, n_max)).scale(&Poly::x());
    xu.exp()
        .expect("x (e_λ(t) - 1) has no constant term")
        .egf_coeffs()
}

/// Truncated degenerate Bell polynomials,
/// `Bel^{(p)}_{n,λ}(x) = Σ_k S_{2,λ}(n, k) x^k / C(k+p, k)`.
pub fn trunc_bell_deg_closed(lambda: &Lambda, p: usize, n_max: usize) -> Vec<Poly> {
    weighted_row_polys(&stirling2_deg_by_solve(lambda, n_max), |k| {
        binomial::<Rational>(k + p, k).recip()
    })
}

/// `Bel^{(p)}_{n,λ}(x)` from the generating function
/// `p! Σ_k x^k (e_λ(t) - 1)^k / (k + p)!`. Only `k <= n_max` contributes
/// because `(e_λ(t) - 1)^k` has valuation `k`.
pub fn trunc_bell_deg_by_egf(lambda: &Lambda, p: usize, n_max: usize) -> Vec<Poly> {
    trunc_bell_series(lambda, p, n_max).egf_coeffs()
}

pub(crate) fn trunc_bell_series(lambda: &Lambda, p: usize, order: usize) -> PolySeries {
    let u = deg_exp_minus_one(lambda, order);
    let p_fact = factorial::<Rational>(p);
    let mut acc = vec![Poly::zero(); order + 1];
    let mut power = Series::one(order);
    for k in 0..=order {
        if k > 0 {
            power = power.mul(&u);
        }
        let weight = &p_fact / factorial::<Rational>(k + p);
        for (n, c) in power.coeffs().iter().enumerate().skip(k) {
            if !c.is_zero() {
                acc[n] = &acc[n] + &Poly::monomial(c * &weight, k);
            }
        }
    }
    Fps::new(acc)
}

/// Truncated degenerate modified Bell polynomials,
/// `B^{(p)}_{n,λ}(x) = Σ_k S_{2,λ}(n, k | x) / C(k+p, p)`.
pub fn trunc_mod_bell_deg_closed(lambda: &Lambda, p: usize, n_max: usize) -> Vec<Poly> {
    stirling2_deg_poly_by_sum(lambda, n_max)
        .iter()
        .map(|row| {
            row.iter().enumerate().fold(Poly::zero(), |acc, (k, s)| {
                &acc + &s.scale(&binomial::<Rational>(k + p, p).recip())
            })
        })
        .collect()
}

/// `B^{(p)}_{n,λ}(x)` from
/// `p! / u^p · (e^u - Σ_{l<p} u^l / l!) · e_λ^x(t)` with `u = e_λ(t) - 1`.
/// The bracket has valuation `p`, so it is built `p` orders deeper and the
/// division lands back on order `n_max`.
pub fn trunc_mod_bell_deg_by_egf(lambda: &Lambda, p: usize, n_max: usize) -> Result<Vec<Poly>> {
    let deep = n_max + p;
    let u = deg_exp_minus_one(lambda, deep);
    let head: Series = powers_over_factorial(&u, p.saturating_sub(1))
        .take(p)
        .fold(Series::zero(deep), |acc, term| acc.add(&term));
    let bracket = u.exp()?.sub(&head);
    let normalized = bracket
        .div(&u.pow(p))?
        .scale_rational(&factorial::<Rational>(p));
    let twisted = PolySeries::lift(&normalized).mul(&deg_exp(&Poly::x(), lambda, n_max));
    Ok(twisted.egf_coeffs())
}

/// Degenerate Bernoulli polynomials of order `r`,
/// `(t / (e_λ(t) - 1))^r e_λ^x(t) = Σ β^{(r)}_{n,λ}(x) t^n / n!`.
pub fn deg_bernoulli_by_egf(lambda: &Lambda, r: usize, n_max: usize) -> Vec<Poly> {
    let kernel = Series::t(n_max + 1)
        .div(&deg_exp_minus_one(lambda, n_max + 1))
        .expect("e_λ(t) - 1 has valuation exactly one")
        .pow(r);
    PolySeries::lift(&kernel)
        .mul(&deg_exp(&Poly::x(), lambda, n_max))
        .egf_coeffs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, ratio};

    fn lam(n: i64, d: i64) -> Lambda {
        Lambda::new(ratio(n, d))
    }

    #[test]
    fn bell_examples() {
        let l = lam(1, 2);
        let bell = bell_deg_by_row_sum(&l, 4);
        assert_eq!(bell[0], Poly::one());
        assert_eq!(bell[2], Poly::from_coeffs(vec![int(0), ratio(1, 2), int(1)]));
        let classical = bell_deg_by_row_sum(&Lambda::classical(), 6);
        let values: Vec<Rational> = classical.iter().map(|b| b.eval(&int(1))).collect();
        let expect: Vec<Rational> = [1, 1, 2, 5, 15, 52, 203].iter().map(|&v| int(v)).collect();
        assert_eq!(values, expect);
    }

    #[test]
    fn truncated_examples() {
        let l = lam(1, 3);
        assert_eq!(trunc_bell_deg_closed(&l, 0, 8), bell_deg_by_row_sum(&l, 8));
        let tb = trunc_bell_deg_closed(&l, 1, 3);
        // x^2/3 + (1 - λ) x / 2
        assert_eq!(tb[2], Poly::from_coeffs(vec![int(0), ratio(1, 3), ratio(1, 3)]));
        for p in 0..4 {
            assert_eq!(trunc_bell_deg_closed(&l, p, 0)[0], Poly::one());
        }
    }

    #[test]
    fn modified_examples() {
        let l = lam(1, 2);
        for p in 0..4usize {
            let b = trunc_mod_bell_deg_closed(&l, p, 3);
            assert_eq!(
                b[1],
                Poly::from_coeffs(vec![Rational::new(1.into(), ((p + 1) as i64).into()), int(1)])
            );
            assert_eq!(b[0], Poly::one());
        }
        let plain = trunc_mod_bell_deg_closed(&l, 0, 5);
        let s2p = stirling2_deg_poly_by_sum(&l, 5);
        for n in 0..=5 {
            let sum = s2p[n].iter().fold(Poly::zero(), |acc, s| &acc + s);
            assert_eq!(plain[n], sum);
        }
    }

    #[test]
    fn bernoulli_examples() {
        for l in [lam(0, 1), lam(1, 2), lam(1, 3), lam(-1, 3), lam(2, 1)] {
            let b = deg_bernoulli_by_egf(&l, 1, 4);
            assert_eq!(b[0].eval(&int(0)), int(1));
            assert_eq!(b[1].eval(&int(0)), (l.value() - int(1)) / int(2));
            let r0 = deg_bernoulli_by_egf(&l, 0, 4);
            assert_eq!(r0[2], crate::fps::deg_falling_factorial_poly(2, &l));
        }
        let classical = deg_bernoulli_by_egf(&Lambda::classical(), 1, 4);
        assert_eq!(classical[2].eval(&int(0)), ratio(1, 6));
        assert_eq!(classical[4].eval(&int(0)), ratio(-1, 30));
    }

    #[test]
    fn generating_function_routes_agree() {
        for l in [lam(0, 1), lam(1, 1), lam(1, 2), lam(-1, 3), lam(2, 1)] {
            assert_eq!(bell_deg_by_row_sum(&l, 10), bell_deg_by_egf(&l, 10));
            for p in 0..=4 {
                assert_eq!(trunc_bell_deg_closed(&l, p, 10), trunc_bell_deg_by_egf(&l, p, 10));
                assert_eq!(
                    trunc_mod_bell_deg_closed(&l, p, 6),
                    trunc_mod_bell_deg_by_egf(&l, p, 6).unwrap()
                );
            }
        }
    }
}
