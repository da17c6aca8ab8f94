//! Truncated formal power series in `t`.
//!
//! A series of order `N` is known modulo `t^(N+1)` and stores exactly `N + 1`
//! coefficients. Binary operations return the smaller operand order. The
//! coefficient ring is either [`Rational`] or [`Poly`] (polynomials in `x`
//! over the rationals), selected through the sealed [`Coeff`] trait.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{factorial, format_rational, Lambda};
use crate::{Poly, Rational};

mod sealed {
    pub trait Sealed {}
    impl Sealed for crate::Rational {}
    impl Sealed for crate::Poly {}
}

/// A commutative ring that is also a `Rational`-algebra.
pub trait Coeff: sealed::Sealed + Clone + PartialEq + fmt::Debug + Zero + One + Send + Sync {
    fn from_rational(r: &Rational) -> Self;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn scale(&self, by: &Rational) -> Self;
    /// Multiplicative inverse when the element is a unit.
    fn unit_inverse(&self) -> Option<Self>;
}

impl Coeff for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, by: &Rational) -> Self {
        self * by
    }
    fn unit_inverse(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
}

impl Coeff for Poly {
    fn from_rational(r: &Rational) -> Self {
        Poly::constant(r.clone())
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn scale(&self, by: &Rational) -> Self {
        Poly::scale(self, by)
    }
    fn unit_inverse(&self) -> Option<Self> {
        match self.degree() {
            Some(0) => Some(Poly::constant(self.coeff(0).recip())),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Fps<R> {
    coeffs: Vec<R>,
}

impl<R: Coeff> Fps<R> {
    /// Series whose order is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<R>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least its constant term");
        Fps { coeffs }
    }

    pub fn from_fn(order: usize, f: impl FnMut(usize) -> R) -> Self {
        Fps {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    /// `Σ a_n t^n / n!` from the exponential-normalized coefficients `a_n`.
    pub fn from_egf(order: usize, mut f: impl FnMut(usize) -> R) -> Self {
        Self::from_fn(order, |n| f(n).scale(&factorial::<Rational>(n).recip()))
    }

    pub fn zero(order: usize) -> Self {
        Self::from_fn(order, |_| R::zero())
    }

    pub fn one(order: usize) -> Self {
        Self::constant(R::one(), order)
    }

    pub fn constant(c: R, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// The series variable `t` (requires `order >= 1` to be visible).
    pub fn t(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = R::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Result<&R> {
        self.coeffs.get(n).ok_or(Error::OutOfRange {
            index: n,
            order: self.order(),
        })
    }

    /// `n! [t^n] f`, the coefficient in exponential normalization.
    pub fn egf_coeff(&self, n: usize) -> Result<R> {
        Ok(self.coeff(n)?.scale(&factorial(n)))
    }

    /// All exponential-normalized coefficients `a_0..=a_N`.
    pub fn egf_coeffs(&self) -> Vec<R> {
        (0..=self.order())
            .map(|n| self.coeffs[n].scale(&factorial(n)))
            .collect()
    }

    /// Index of the first nonzero coefficient; `None` if the series vanishes
    /// through its order.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, order: usize) -> Self {
        assert!(order <= self.order(), "cannot raise the truncation order");
        Fps {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self::from_fn(order, |n| self.coeffs[n].add_ref(&other.coeffs[n]))
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self::from_fn(order, |n| self.coeffs[n].sub_ref(&other.coeffs[n]))
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.order(), |n| self.coeffs[n].neg_ref())
    }

    pub fn scale(&self, by: &R) -> Self {
        Self::from_fn(self.order(), |n| self.coeffs[n].mul_ref(by))
    }

    pub fn scale_rational(&self, by: &Rational) -> Self {
        Self::from_fn(self.order(), |n| self.coeffs[n].scale(by))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![R::zero(); order + 1];
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
                }
            }
        }
        Fps { coeffs: out }
    }

    pub fn pow(&self, mut exponent: usize) -> Self {
        let mut result = Self::one(self.order());
        let mut base = self.clone();
        while exponent > 0 {
            if exponent & 1 == 1 {
                result = result.mul(&base);
            }
            exponent >>= 1;
            if exponent > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Formal derivative; the order drops by one.
    pub fn derivative(&self) -> Result<Self> {
        if self.order() == 0 {
            return Err(Error::param("derivative of an order-0 series is unknown"));
        }
        Ok(Self::from_fn(self.order() - 1, |n| {
            self.coeffs[n + 1].scale(&Rational::from_integer((n as i64 + 1).into()))
        }))
    }

    /// Divides by `t^k`, which must divide the series; the order drops by `k`.
    pub fn shift_down(&self, k: usize) -> Result<Self> {
        let found = self.valuation().unwrap_or(self.order() + 1);
        if found < k {
            return Err(Error::Valuation { needed: k, found });
        }
        if k > self.order() {
            return Err(Error::Valuation {
                needed: k,
                found: self.order(),
            });
        }
        Ok(Fps {
            coeffs: self.coeffs[k..].to_vec(),
        })
    }

    /// Inverse of a series with unit constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coeffs[0].unit_inverse().ok_or(Error::NotInvertible)?;
        let mut out: Vec<R> = Vec::with_capacity(self.coeffs.len());
        out.push(c0.clone());
        for n in 1..=self.order() {
            let mut acc = R::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    acc = acc.add_ref(&self.coeffs[k].mul_ref(&out[n - k]));
                }
            }
            out.push(acc.mul_ref(&c0).neg_ref());
        }
        Ok(Fps { coeffs: out })
    }

    /// Exact quotient with valuation handling: both operands are divided by
    /// `t^v` with `v = valuation(divisor)` before inverting, so the result has
    /// order `min(orders) - v`. Fails rather than producing a Laurent series.
    pub fn div(&self, divisor: &Self) -> Result<Self> {
        let order = self.order().min(divisor.order());
        let v = divisor.truncate(order).valuation().ok_or(Error::ZeroDivisor)?;
        let num = self.truncate(order).shift_down(v)?;
        let den = divisor.truncate(order).shift_down(v)?;
        Ok(num.mul(&den.inverse()?))
    }

    /// `exp(f)` for `f(0) = 0`, via `n a_n = Σ_{k=1}^{n} k f_k a_{n-k}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let mut out: Vec<R> = Vec::with_capacity(self.coeffs.len());
        out.push(R::one());
        for n in 1..=self.order() {
            let mut acc = R::zero();
            for k in 1..=n {
                if !self.coeffs[k].is_zero() {
                    let weighted = self.coeffs[k].scale(&Rational::from_integer((k as i64).into()));
                    acc = acc.add_ref(&weighted.mul_ref(&out[n - k]));
                }
            }
            out.push(acc.scale(&Rational::new(1.into(), (n as i64).into())));
        }
        Ok(Fps { coeffs: out })
    }

    /// `self ∘ inner` by Horner's rule; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        let mut acc = Self::constant(self.coeffs[order].clone(), order);
        for n in (0..order).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] = acc.coeffs[0].add_ref(&self.coeffs[n]);
        }
        Ok(acc)
    }
}

impl Fps<Poly> {
    /// Embeds a rational series into the polynomial coefficient ring.
    pub fn lift(series: &Fps<Rational>) -> Self {
        Self::from_fn(series.order(), |n| Poly::constant(series.coeffs[n].clone()))
    }

    /// Evaluates every coefficient at `x = at`.
    pub fn eval_x(&self, at: &Rational) -> Fps<Rational> {
        Fps::from_fn(self.order(), |n| self.coeffs[n].eval(at))
    }
}

/// `e_λ^x(t) = Σ (x)_{n,λ} t^n / n!` with `x` a rational or the polynomial
/// indeterminate. At λ = 0 this is `exp(x t)`.
pub fn deg_exp<R: Coeff>(x: &R, lambda: &Lambda, order: usize) -> Fps<R> {
    let mut term = R::one();
    let mut shift = Rational::zero();
    Fps::from_fn(order, |n| {
        if n > 0 {
            let factor = x.sub_ref(&R::from_rational(&shift));
            term = term
                .mul_ref(&factor)
                .scale(&Rational::new(1.into(), (n as i64).into()));
            shift += lambda.value();
        }
        term.clone()
    })
}

/// `e_λ(t) - 1`, the argument of every Bell-type generating function.
pub fn deg_exp_minus_one(lambda: &Lambda, order: usize) -> Fps<Rational> {
    let mut s = deg_exp(&Rational::one(), lambda, order);
    s.coeffs[0] = Rational::zero();
    s
}

/// `log_λ(1 + t)`, the compositional inverse of `e_λ(t) - 1`, from the
/// closed form `((1 + t)^λ - 1) / λ` (the ordinary logarithm at λ = 0).
pub fn deg_log(lambda: &Lambda, order: usize) -> Fps<Rational> {
    if lambda.is_classical() {
        return Fps::from_fn(order, |n| match n {
            0 => Rational::zero(),
            _ => {
                let sign = if n % 2 == 1 { 1 } else { -1 };
                Rational::new(sign.into(), (n as i64).into())
            }
        });
    }
    // [t^n] (1+t)^λ = (λ)_n / n!, so after subtracting 1 and dividing by λ
    // the n-th coefficient is (λ - 1)_{n-1} / n!.
    let shifted = lambda.value() - Rational::one();
    Fps::from_egf(order, |n| match n {
        0 => Rational::zero(),
        _ => crate::exactnum::falling_factorial(&shifted, n - 1),
    })
}

/// `log_λ(1 + t)` by Lagrange inversion of `g(t) = e_λ(t) - 1`:
/// `[t^n] g^{<-1>} = (1/n) [w^{n-1}] (w / g(w))^n`.
pub fn deg_log_by_inversion(lambda: &Lambda, order: usize) -> Fps<Rational> {
    let g = deg_exp_minus_one(lambda, order + 1);
    let w_over_g = Fps::t(order + 1)
        .div(&g)
        .expect("e_λ(t) - 1 has valuation exactly one");
    let mut out = vec![Rational::zero(); order + 1];
    let mut power = Fps::one(order);
    for (n, slot) in out.iter_mut().enumerate().skip(1) {
        power = power.mul(&w_over_g);
        *slot = power.coeffs[n - 1].clone() / Rational::from_integer((n as i64).into());
    }
    Fps::new(out)
}

/// `e_λ^{λ-1}(t) · f'(t)`, the operator of the differential form of the
/// truncated Bell generating function. The order drops by one.
pub fn apply_dlambda(f: &Fps<Rational>, lambda: &Lambda) -> Result<Fps<Rational>> {
    let derivative = f.derivative()?;
    let prefactor = deg_exp(
        &(lambda.value() - Rational::one()),
        lambda,
        derivative.order(),
    );
    Ok(prefactor.mul(&derivative))
}

impl fmt::Display for Fps<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "{}", format_rational(c))?,
                1 => write!(f, "{} t", format_rational(c))?,
                _ => write!(f, "{} t^{n}", format_rational(c))?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}

/// `(x)_{n,λ}` for the polynomial indeterminate.
pub fn deg_falling_factorial_poly(n: usize, lambda: &Lambda) -> Poly {
    let x = Poly::x();
    let mut acc = Poly::one();
    for j in 0..n {
        let shift = lambda.value() * Rational::from_integer((j as i64).into());
        acc = &acc * &(&x - &Poly::constant(shift));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{deg_falling_factorial, int, ratio};
    use proptest::prelude::*;

    type S = Fps<Rational>;

    fn s(cs: &[Rational]) -> S {
        Fps::new(cs.to_vec())
    }

    fn lam(n: i64, d: i64) -> Lambda {
        Lambda::new(ratio(n, d))
    }

    fn lambda_grid() -> Vec<Lambda> {
        vec![lam(0, 1), lam(1, 1), lam(1, 2), lam(-1, 3), lam(2, 1)]
    }

    #[test]
    fn basic_arithmetic() {
        let a = s(&[int(1), int(1), int(0)]);
        let b = s(&[int(1), int(-1), int(0)]);
        assert_eq!(a.mul(&b), s(&[int(1), int(0), int(-1)]));
        assert_eq!(a.add(&S::zero(2)), a);
        assert_eq!(s(&[int(1), int(1)]).scale(&int(3)), s(&[int(3), int(3)]));
        assert_eq!(s(&[int(1), int(1), int(0)]).pow(2), s(&[int(1), int(2), int(1)]));
        assert_eq!(a.pow(0), S::one(2));
    }

    #[test]
    fn egf_coefficients() {
        let e = S::t(6).exp().unwrap();
        for n in 0..=6 {
            assert_eq!(e.egf_coeff(n).unwrap(), int(1));
        }
        assert!(e.egf_coeff(7).is_err());
        assert_eq!(S::zero(5).egf_coeff(3).unwrap(), int(0));
        let l = lam(1, 3);
        let de = deg_exp(&int(1), &l, 8);
        for n in 0..=8 {
            assert_eq!(
                de.egf_coeff(n).unwrap(),
                deg_falling_factorial(&int(1), n, l.value())
            );
        }
    }

    #[test]
    fn exp_examples() {
        assert_eq!(
            S::t(3).exp().unwrap(),
            s(&[int(1), int(1), ratio(1, 2), ratio(1, 6)])
        );
        assert_eq!(S::zero(4).exp().unwrap(), S::one(4));
        assert!(S::one(3).exp().is_err());
        let xt = Fps::<Poly>::from_fn(2, |n| if n == 1 { Poly::x() } else { Poly::zero() });
        let e = xt.exp().unwrap();
        assert_eq!(e.coeffs()[0], Poly::one());
        assert_eq!(e.coeffs()[1], Poly::x());
        assert_eq!(e.coeffs()[2], Poly::monomial(ratio(1, 2), 2));
    }

    #[test]
    fn division_examples() {
        // t / (e^t - 1) = 1 - t/2 + t^2/12 + ...
        let b = S::t(3).div(&deg_exp_minus_one(&Lambda::classical(), 3)).unwrap();
        assert_eq!(b.order(), 2);
        assert_eq!(b, s(&[int(1), ratio(-1, 2), ratio(1, 12)]));
        let a = s(&[int(2), int(3), int(5)]);
        assert_eq!(a.div(&S::one(2)).unwrap(), a);
        let t2 = S::t(4).mul(&S::t(4));
        assert_eq!(t2.div(&S::t(4)).unwrap(), S::t(3));
    }

    #[test]
    fn division_rejects_bad_valuation() {
        let u = deg_exp_minus_one(&lam(1, 2), 6);
        let u2 = u.pow(2);
        assert!(matches!(
            S::t(6).div(&u2),
            Err(Error::Valuation { needed: 2, found: 1 })
        ));
        assert!(matches!(S::t(3).div(&S::zero(3)), Err(Error::ZeroDivisor)));
        let px = Fps::<Poly>::from_fn(2, |n| if n == 0 { Poly::x() } else { Poly::zero() });
        assert!(matches!(
            Fps::<Poly>::one(2).div(&px),
            Err(Error::NotInvertible)
        ));
    }

    #[test]
    fn powers_of_deg_exp_minus_one_have_additive_valuation() {
        for l in lambda_grid() {
            let u = deg_exp_minus_one(&l, 10);
            for p in 0..6 {
                assert_eq!(u.pow(p).valuation(), Some(p));
            }
        }
    }

    #[test]
    fn deg_exp_examples() {
        let one_plus_t = deg_exp(&int(1), &lam(1, 1), 4);
        assert_eq!(one_plus_t, s(&[int(1), int(1), int(0), int(0), int(0)]));
        assert_eq!(deg_exp(&int(1), &Lambda::classical(), 6), S::t(6).exp().unwrap());
        let l = lam(1, 2);
        let px = deg_exp(&Poly::x(), &l, 3);
        let expect = &Poly::x() * &(&Poly::x() - &Poly::constant(ratio(1, 2)));
        assert_eq!(px.egf_coeff(2).unwrap(), expect);
    }

    #[test]
    fn deg_log_examples() {
        assert_eq!(
            deg_log(&Lambda::classical(), 4),
            s(&[int(0), int(1), ratio(-1, 2), ratio(1, 3), ratio(-1, 4)])
        );
        for l in lambda_grid() {
            let log = deg_log(&l, 8);
            assert_eq!(log.egf_coeff(2).unwrap(), l.value() - int(1));
        }
    }

    #[test]
    fn deg_log_routes_agree_and_invert() {
        for l in [lam(0, 1), lam(1, 1), lam(1, 2), lam(-1, 3)] {
            for order in [1, 5, 16] {
                let closed = deg_log(&l, order);
                let lagrange = deg_log_by_inversion(&l, order);
                assert_eq!(closed, lagrange, "λ = {l}, N = {order}");
                let g = deg_exp_minus_one(&l, order);
                assert_eq!(g.compose(&closed).unwrap(), S::t(order), "λ = {l}");
                assert_eq!(closed.compose(&g).unwrap(), S::t(order), "λ = {l}");
            }
        }
    }

    #[test]
    fn exp_inverts_classical_log() {
        let one_plus_t = {
            let mut c = S::t(12);
            c = c.add(&S::one(12));
            c
        };
        assert_eq!(deg_log(&Lambda::classical(), 12).exp().unwrap(), one_plus_t);
    }

    #[test]
    fn composition_examples() {
        let a = s(&[int(2), int(-1), ratio(1, 3), int(4)]);
        assert_eq!(a.compose(&S::t(3)).unwrap(), a);
        let b = s(&[int(0), int(5), ratio(1, 7), int(-2)]);
        assert_eq!(S::t(3).compose(&b).unwrap(), b);
        let bell = S::t(6)
            .exp()
            .unwrap()
            .compose(&deg_exp_minus_one(&Lambda::classical(), 6))
            .unwrap();
        assert_eq!(bell.egf_coeff(4).unwrap(), int(15));
        assert!(a.compose(&S::one(3)).is_err());
    }

    #[test]
    fn dlambda_examples() {
        let l = lam(1, 3);
        assert_eq!(apply_dlambda(&S::one(5), &l).unwrap(), S::zero(4));
        let minus_t = S::t(6).neg();
        assert_eq!(
            apply_dlambda(&S::t(6), &Lambda::classical()).unwrap(),
            minus_t.truncate(5).exp().unwrap()
        );
    }

    #[test]
    fn dlambda_iterates_to_the_closed_sum() {
        // (D_λ)^p Σ (1 - e_λ)^n/(n+1)! = (-1)^p Σ (1 - e_λ)^n / ((n+p+1) n!)
        for l in [lam(1, 2), lam(-1, 3), lam(0, 1)] {
            let order = 12;
            let v = deg_exp_minus_one(&l, order).neg();
            for p in 0..4usize {
                let start = Fps::from_fn(order, |n| factorial::<Rational>(n + 1).recip())
                    .compose(&v)
                    .unwrap();
                let mut lhs = start;
                for _ in 0..p {
                    lhs = apply_dlambda(&lhs, &l).unwrap();
                }
                let sign = if p % 2 == 0 { int(1) } else { int(-1) };
                let closed = Fps::from_fn(order - p, |n| {
                    sign.clone()
                        / (Rational::from_integer(((n + p + 1) as i64).into()) * factorial::<Rational>(n))
                })
                .compose(&v.truncate(order - p))
                .unwrap();
                assert_eq!(lhs, closed, "λ = {l}, p = {p}");
            }
        }
    }

    #[test]
    fn poly_deg_exp_specializes() {
        let l = lam(-1, 3);
        let px = deg_exp(&Poly::x(), &l, 9);
        for at in [ratio(2, 5), int(-3), ratio(7, 2)] {
            assert_eq!(px.eval_x(&at), deg_exp(&at, &l, 9));
            for n in 0..8 {
                assert_eq!(
                    deg_falling_factorial_poly(n, &l).eval(&at),
                    deg_falling_factorial(&at, n, l.value())
                );
            }
        }
    }

    #[test]
    fn display() {
        assert_eq!(
            s(&[int(1), int(0), ratio(-1, 2)]).to_string(),
            "1 + -1/2 t^2 + O(t^3)"
        );
    }

    fn series(order: usize) -> impl Strategy<Value = S> {
        prop::collection::vec((-5i64..5, 1i64..4), order + 1)
            .prop_map(|cs| Fps::new(cs.into_iter().map(|(n, d)| ratio(n, d)).collect()))
    }

    proptest! {
        #[test]
        fn truncated_ring_laws(a in series(5), b in series(5), c in series(5)) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        }

        #[test]
        fn valuation_adds_and_division_round_trips(a in series(7), b in series(7), va in 0usize..3, vb in 0usize..3) {
            let ta = S::t(7).pow(va).mul(&a);
            let tb = S::t(7).pow(vb).mul(&b);
            if let (Some(x), Some(y)) = (ta.valuation(), tb.valuation()) {
                let prod = ta.mul(&tb);
                if x + y <= 7 {
                    prop_assert_eq!(prod.valuation(), Some(x + y));
                }
                let q = prod.div(&tb).unwrap();
                prop_assert_eq!(q.mul(&tb.truncate(q.order())), prod.truncate(q.order()));
            }
        }

        #[test]
        fn poly_series_specializes(xn in -6i64..6, xd in 1i64..5, ln in -3i64..4, ld in 1i64..4) {
            let x0 = ratio(xn, xd);
            let l = lam(ln, ld);
            prop_assert_eq!(deg_exp(&Poly::x(), &l, 7).eval_x(&x0), deg_exp(&x0, &l, 7));
        }
    }
}
