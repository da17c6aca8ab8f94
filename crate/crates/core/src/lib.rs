//! Exact computation of degenerate and truncated Bell-type sequences, and an
//! engine that checks the identities relating them by independent routes.
//!
//! The math kernels are generic over [`scalar::Scalar`]; the exact routes run
//! at [`Rational`] and the numeric ones at `f64`. The aliases below fix the
//! concrete types most callers want.

pub mod error;
pub mod exactnum;
pub mod fps;
pub mod poly;
pub mod scalar;
pub mod sequences;
pub mod verify;

pub use error::{Error, Result};
pub use exactnum::{format_rational, parse_rational, Lambda};

/// Arbitrary-precision rational in canonical form.
pub type Rational = num_rational::BigRational;

/// Polynomial in `x` with exact rational coefficients.
pub type Poly = poly::Poly<Rational>;

/// Truncated power series in `t` with rational coefficients.
pub type Series = fps::Fps<Rational>;

/// Truncated power series in `t` whose coefficients are polynomials in `x`.
pub type PolySeries = fps::Fps<Poly>;
