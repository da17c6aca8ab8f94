//! Stirling-type connection coefficients.
//!
//! The primary constructions are exact changes of basis: the source
//! polynomial is expanded in monomials and then peeled top-down against a
//! monic target basis. The generating-function constructions are kept
//! separate so the two can be compared.

use num_traits::{One, Zero};

use crate::exactnum::{binomial, factorial, Lambda};
use crate::fps::{deg_exp, deg_exp_minus_one, deg_falling_factorial_poly, deg_log, Fps};
use crate::{Poly, PolySeries, Rational, Series};

pub type Triangle<T> = Vec<Vec<T>>;

/// Coordinates of `target` in a basis whose `k`-th element is monic of
/// degree `k`. Solves the triangular system by repeatedly removing the
/// leading term.
pub fn coordinates_in_monic_basis(target: &Poly, basis: &[Poly]) -> Vec<Rational> {
    let mut rest = target.clone();
    let mut coords = vec![Rational::zero(); target.degree().map_or(0, |d| d + 1)];
    while let Some(d) = rest.degree() {
        let lead = rest.coeff(d);
        debug_assert!(basis[d].leading().is_some_and(|c| c.is_one()));
        rest = &rest - &basis[d].scale(&lead);
        coords[d] = lead;
    }
    coords
}

fn pad_row(mut row: Vec<Rational>, len: usize) -> Vec<Rational> {
    row.resize(len, Rational::zero());
    row
}

/// Classical `S_2(n, k)` from `S_2(n+1, k) = k S_2(n, k) + S_2(n, k-1)`.
pub fn stirling2_by_recurrence(n_max: usize) -> Triangle<Rational> {
    let mut rows: Triangle<Rational> = vec![vec![Rational::one()]];
    for n in 0..n_max {
        let prev = &rows[n];
        let row = (0..=n + 1)
            .map(|k| {
                let stay = prev
                    .get(k)
                    .map_or_else(Rational::zero, |v| v * Rational::from_integer((k as i64).into()));
                let join = if k > 0 {
                    prev.get(k - 1).cloned().unwrap_or_else(Rational::zero)
                } else {
                    Rational::zero()
                };
                stay + join
            })
            .collect();
        rows.push(row);
    }
    rows
}

/// Classical signed `S_1(n, k)` as the monomial coefficients of `(x)_n`.
pub fn stirling1_by_expansion(n_max: usize) -> Triangle<Rational> {
    let one = Lambda::new(Rational::one());
    (0..=n_max)
        .map(|n| pad_row(deg_falling_factorial_poly(n, &one).into_coeffs(), n + 1))
        .collect()
}

/// `S_{2,λ}(n, k)`: coordinates of `(x)_{n,λ}` in the falling-factorial
/// basis `(x)_k`.
pub fn stirling2_deg_by_solve(lambda: &Lambda, n_max: usize) -> Triangle<Rational> {
    let one = Lambda::new(Rational::one());
    let basis: Vec<Poly> = (0..=n_max).map(|k| deg_falling_factorial_poly(k, &one)).collect();
    (0..=n_max)
        .map(|n| {
            let target = deg_falling_factorial_poly(n, lambda);
            pad_row(coordinates_in_monic_basis(&target, &basis), n + 1)
        })
        .collect()
}

/// `S_{1,λ}(n, k)`: coordinates of `(x)_n` in the basis `(x)_{k,λ}`.
pub fn stirling1_deg_by_solve(lambda: &Lambda, n_max: usize) -> Triangle<Rational> {
    let one = Lambda::new(Rational::one());
    let basis: Vec<Poly> = (0..=n_max).map(|k| deg_falling_factorial_poly(k, lambda)).collect();
    (0..=n_max)
        .map(|n| {
            let target = deg_falling_factorial_poly(n, &one);
            pad_row(coordinates_in_monic_basis(&target, &basis), n + 1)
        })
        .collect()
}

/// Reads column `k` of a triangle off the series `g_k(t)`, where
/// `g_k = Σ_n T(n, k) t^n / n!`.
fn triangle_from_columns<T: Clone + Zero>(
    n_max: usize,
    columns: impl Iterator<Item = Vec<T>>,
) -> Triangle<T> {
    let mut rows: Triangle<T> = (0..=n_max).map(|n| vec![T::zero(); n + 1]).collect();
    for (k, column) in columns.enumerate() {
        for (n, value) in column.into_iter().enumerate().skip(k) {
            rows[n][k] = value;
        }
    }
    rows
}

/// `S_{2,λ}(n, k)` as EGF coefficients of `(e_λ(t) - 1)^k / k!`.
pub fn stirling2_deg_by_egf(lambda: &Lambda, n_max: usize) -> Triangle<Rational> {
    let u = deg_exp_minus_one(lambda, n_max);
    triangle_from_columns(n_max, powers_over_factorial(&u, n_max).map(|s| s.egf_coeffs()))
}

/// `S_{1,λ}(n, k)` as EGF coefficients of `(log_λ(1 + t))^k / k!`.
pub fn stirling1_deg_by_egf(lambda: &Lambda, n_max: usize) -> Triangle<Rational> {
    let log = deg_log(lambda, n_max);
    triangle_from_columns(n_max, powers_over_factorial(&log, n_max).map(|s| s.egf_coeffs()))
}

/// `f^k / k!` for `k = 0..=k_max`.
pub fn powers_over_factorial(f: &Series, k_max: usize) -> impl Iterator<Item = Series> + '_ {
    let mut power = Fps::one(f.order());
    (0..=k_max).map(move |k| {
        if k > 0 {
            power = power.mul(f);
        }
        power.scale_rational(&factorial::<Rational>(k).recip())
    })
}

/// `S_{2,λ}(n, l | x) = Σ_{i=l}^{n} C(n, i) (x)_{n-i,λ} S_{2,λ}(i, l)`.
pub fn stirling2_deg_poly_by_sum(lambda: &Lambda, n_max: usize) -> Triangle<Poly> {
    let s2 = stirling2_deg_by_solve(lambda, n_max);
    let shifts: Vec<Poly> = (0..=n_max).map(|j| deg_falling_factorial_poly(j, lambda)).collect();
    (0..=n_max)
        .map(|n| {
            (0..=n)
                .map(|l| {
                    (l..=n).fold(Poly::zero(), |acc, i| {
                        let weight = binomial::<Rational>(n, i) * &s2[i][l];
                        &acc + &shifts[n - i].scale(&weight)
                    })
                })
                .collect()
        })
        .collect()
}

/// `S_{2,λ}(n, k | x)` as EGF coefficients of
/// `(e_λ(t) - 1)^k / k! · e_λ^x(t)` over the polynomial ring.
pub fn stirling2_deg_poly_by_egf(lambda: &Lambda, n_max: usize) -> Triangle<Poly> {
    let u = deg_exp_minus_one(lambda, n_max);
    let ex: PolySeries = deg_exp(&Poly::x(), lambda, n_max);
    triangle_from_columns(
        n_max,
        powers_over_factorial(&u, n_max).map(|s| PolySeries::lift(&s).mul(&ex).egf_coeffs()),
    )
}
