//! Exact sequence families and their tables.
//!
//! Every family is defined by a basis expansion or a generating function.
//! The primary constructions never go through an unverified recurrence; the
//! one recurrence used (classical `S_2`) is cross-checked against the
//! triangular solve at λ = 0 in the test suite. Tables are memoized per
//! `(family, λ, p, r, n_max, construction)`.

pub mod bell;
pub mod stirling;
mod table;

pub use table::{Family, Construction, SequenceTable, TableParams, Value};

use std::sync::Arc;

use num_traits::Zero;

use crate::error::Result;
use crate::exactnum::Lambda;
use crate::{Poly, Rational};

/// Memoized table in the family's primary construction.
pub fn table(family: Family, params: &TableParams, n_max: usize) -> Result<Arc<SequenceTable>> {
    table::cached(family, params, n_max, family.primary_construction())
}

/// Memoized table in an explicitly chosen construction.
pub fn table_with(
    family: Family,
    params: &TableParams,
    n_max: usize,
    construction: Construction,
) -> Result<Arc<SequenceTable>> {
    table::cached(family, params, n_max, construction)
}

fn triangular_entry(family: Family, params: TableParams, n: usize, k: usize) -> Value {
    if k > n {
        return family.zero_value();
    }
    table(family, &params, n)
        .expect("primary triangular constructions are infallible")
        .get(n, k)
}

fn rational(v: Value) -> Rational {
    match v {
        Value::Rational(r) => r,
        Value::Poly(_) => unreachable!("family stores rationals"),
    }
}

fn poly(v: Value) -> Poly {
    match v {
        Value::Poly(p) => p,
        Value::Rational(_) => unreachable!("family stores polynomials"),
    }
}

/// Classical Stirling number of the second kind; 0 for `k > n`.
pub fn stirling2(n: usize, k: usize) -> Rational {
    rational(triangular_entry(Family::S2, TableParams::default(), n, k))
}

/// Signed Stirling number of the first kind; 0 for `k > n`.
pub fn stirling1(n: usize, k: usize) -> Rational {
    rational(triangular_entry(Family::S1, TableParams::default(), n, k))
}

/// Degenerate Stirling number of the second kind `S_{2,λ}(n, k)`.
pub fn stirling2_deg(n: usize, k: usize, lambda: &Lambda) -> Rational {
    rational(triangular_entry(Family::S2Deg, TableParams::with_lambda(lambda), n, k))
}

/// Degenerate Stirling number of the first kind `S_{1,λ}(n, k)`.
pub fn stirling1_deg(n: usize, k: usize, lambda: &Lambda) -> Rational {
    rational(triangular_entry(Family::S1Deg, TableParams::with_lambda(lambda), n, k))
}

/// Degenerate Stirling polynomial of the second kind `S_{2,λ}(n, k | x)`.
pub fn stirling2_deg_poly(n: usize, k: usize, lambda: &Lambda) -> Poly {
    poly(triangular_entry(Family::S2DegPoly, TableParams::with_lambda(lambda), n, k))
}

fn linear_entry(family: Family, params: TableParams, n: usize) -> Value {
    table(family, &params, n)
        .expect("primary linear constructions are infallible")
        .get(n, 0)
}

/// Degenerate Bernoulli polynomial `β^{(r)}_{n,λ}(x)`.
pub fn deg_bernoulli(n: usize, r: usize, lambda: &Lambda) -> Poly {
    let params = TableParams {
        r,
        ..TableParams::with_lambda(lambda)
    };
    poly(linear_entry(Family::BernoulliDeg, params, n))
}

/// Carlitz's degenerate Bernoulli number `β_{n,λ} = β^{(1)}_{n,λ}(0)`.
pub fn deg_bernoulli_num(n: usize, lambda: &Lambda) -> Rational {
    deg_bernoulli(n, 1, lambda).eval(&Rational::zero())
}

pub fn bell_classical(n: usize) -> Rational {
    rational(linear_entry(Family::BellClassical, TableParams::default(), n))
}

/// Classical Bell polynomial `Σ_k S_2(n, k) x^k`.
pub fn bell_poly_classical(n: usize) -> Poly {
    Poly::from_coeffs((0..=n).map(|k| stirling2(n, k)).collect())
}

/// Degenerate Bell polynomial `Bel_{n,λ}(x)`.
pub fn bell_deg(n: usize, lambda: &Lambda) -> Poly {
    poly(linear_entry(Family::BellDeg, TableParams::with_lambda(lambda), n))
}

/// Truncated degenerate Bell polynomial `Bel^{(p)}_{n,λ}(x)`.
pub fn trunc_bell_deg(n: usize, p: usize, lambda: &Lambda) -> Poly {
    poly(linear_entry(Family::TruncBellDeg, TableParams::with_lambda_p(lambda, p), n))
}

/// Truncated degenerate modified Bell polynomial `B^{(p)}_{n,λ}(x)`.
pub fn trunc_mod_bell_deg(n: usize, p: usize, lambda: &Lambda) -> Poly {
    poly(linear_entry(Family::TruncModBellDeg, TableParams::with_lambda_p(lambda, p), n))
}
