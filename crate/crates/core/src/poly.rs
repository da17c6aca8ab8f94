//! Dense univariate polynomials in `x`.
//!
//! The zero polynomial is the empty coefficient list; every other value has a
//! nonzero leading coefficient.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Poly<T> {
    /// Builds a polynomial from ascending coefficients, trimming trailing
    /// zeros.
    pub fn from_coeffs(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: T) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The indeterminate `x`.
    pub fn x() -> Self {
        Self::monomial(T::one(), 1)
    }

    pub fn monomial(c: T, power: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); power + 1];
        coeffs[power] = c;
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    /// Coefficient of `x^k`; zero past the degree.
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn eval(&self, at: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * at.clone() + c.clone())
    }

    pub fn scale(&self, by: &T) -> Self {
        if by.is_zero() {
            return Self::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|c| c.clone() * by.clone()).collect(),
        }
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Applies `f` to every coefficient, e.g. to move between scalar types.
    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Poly<U> {
        Poly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    fn add_ref(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..len).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    fn sub_ref(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..len).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    fn mul_ref(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::from_coeffs(out)
    }
}

impl<T: Scalar> Zero for Poly<T> {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Scalar> One for Poly<T> {
    fn one() -> Self {
        Poly {
            coeffs: vec![T::one()],
        }
    }
}

macro_rules! poly_binop {
    ($trait:ident, $method:ident, $kernel:ident) => {
        impl<T: Scalar> $trait<&Poly<T>> for &Poly<T> {
            type Output = Poly<T>;
            fn $method(self, rhs: &Poly<T>) -> Poly<T> {
                self.$kernel(rhs)
            }
        }

        impl<T: Scalar> $trait for Poly<T> {
            type Output = Poly<T>;
            fn $method(self, rhs: Poly<T>) -> Poly<T> {
                self.$kernel(&rhs)
            }
        }
    };
}

poly_binop!(Add, add, add_ref);
poly_binop!(Sub, sub, sub_ref);
poly_binop!(Mul, mul, mul_ref);

impl<T: Scalar> Neg for Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<T: Scalar> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        -self.clone()
    }
}

/// Ascending powers, zero terms skipped, unit coefficients elided:
/// `1/4*x + 1/3*x^2`, `x - 2*x^3`, `0` for the zero polynomial.
impl<T: Scalar + fmt::Display + PartialOrd> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (power, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = *c < T::zero();
            let magnitude = if negative { -c.clone() } else { c.clone() };
            match (first, negative) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let unit = magnitude.is_one();
            match power {
                0 => write!(f, "{magnitude}")?,
                _ => {
                    if !unit {
                        write!(f, "{magnitude}*")?;
                    }
                    if power == 1 {
                        f.write_str("x")?;
                    } else {
                        write!(f, "x^{power}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, ratio};
    use crate::Rational;
    use proptest::prelude::*;

    type P = Poly<Rational>;

    fn p(cs: &[i64]) -> P {
        P::from_coeffs(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn zero_is_the_empty_list() {
        assert!(p(&[]).is_zero());
        assert!(p(&[0, 0]).is_zero());
        assert_eq!(p(&[0, 0]).coeffs().len(), 0);
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(P::zero().degree(), None);
    }

    #[test]
    fn ring_arithmetic() {
        let a = p(&[1, 1]);
        let b = p(&[-1, 1]);
        assert_eq!(&a * &b, p(&[-1, 0, 1]));
        assert_eq!(&a + &b, p(&[0, 2]));
        assert_eq!(&a - &a, P::zero());
        assert_eq!(a.scale(&int(3)), p(&[3, 3]));
        assert_eq!(P::x().shift(2), P::monomial(int(1), 3));
    }

    #[test]
    fn evaluation() {
        let q = p(&[1, -3, 2]);
        assert_eq!(q.eval(&int(2)), int(3));
        assert_eq!(q.eval(&ratio(1, 2)), int(0));
        let fq: Poly<f64> = q.map(crate::exactnum::rational_to_f64);
        assert_eq!(fq.eval(&2.0), 3.0);
    }

    #[test]
    fn rendering() {
        let q = P::from_coeffs(vec![int(0), ratio(1, 4), ratio(1, 3)]);
        assert_eq!(q.to_string(), "1/4*x + 1/3*x^2");
        assert_eq!(p(&[0, 1, 0, -2]).to_string(), "x - 2*x^3");
        assert_eq!(p(&[-1, -1]).to_string(), "-1 - x");
        assert_eq!(P::zero().to_string(), "0");
        assert_eq!(p(&[15]).to_string(), "15");
    }

    fn small_poly() -> impl Strategy<Value = P> {
        prop::collection::vec((-6i64..6, 1i64..4), 0..5)
            .prop_map(|cs| P::from_coeffs(cs.into_iter().map(|(n, d)| ratio(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn ring_laws(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn evaluation_is_a_homomorphism(a in small_poly(), b in small_poly(), xn in -5i64..5, xd in 1i64..4) {
            let x0 = ratio(xn, xd);
            prop_assert_eq!((&a * &b).eval(&x0), a.eval(&x0) * b.eval(&x0));
            prop_assert_eq!((&a + &b).eval(&x0), a.eval(&x0) + b.eval(&x0));
        }
    }
}
