//! Exact rational primitives: the degeneracy parameter, the `num/den` text
//! format, and the factorial-type kernels every other module builds on.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::Rational;

/// Parses `"num/den"` or `"num"` with an optional leading sign on the
/// numerator. The denominator must be a positive integer.
pub fn parse_rational(input: &str) -> Result<Rational> {
    let fail = |position: usize, reason: &'static str| Error::ParseRational {
        input: input.to_string(),
        position,
        reason,
    };
    if input.is_empty() {
        return Err(fail(0, "empty input"));
    }
    let (num_part, den_part, den_offset) = match input.find('/') {
        Some(slash) => (&input[..slash], Some(&input[slash + 1..]), slash + 1),
        None => (input, None, input.len()),
    };
    let numer = parse_integer(num_part, true).map_err(|(pos, why)| fail(pos, why))?;
    let denom = match den_part {
        None => BigInt::one(),
        Some(d) => {
            let d = parse_integer(d, false).map_err(|(pos, why)| fail(den_offset + pos, why))?;
            if d.is_zero() {
                return Err(fail(den_offset, "zero denominator"));
            }
            d
        }
    };
    Ok(Rational::new(numer, denom))
}

fn parse_integer(s: &str, signed: bool) -> std::result::Result<BigInt, (usize, &'static str)> {
    let bytes = s.as_bytes();
    let mut start = 0;
    if signed && matches!(bytes.first(), Some(b'-') | Some(b'+')) {
        start = 1;
    }
    if start == bytes.len() {
        return Err((start, "expected a digit"));
    }
    if let Some(bad) = bytes[start..].iter().position(|b| !b.is_ascii_digit()) {
        return Err((start + bad, "unexpected character"));
    }
    Ok(s.parse::<BigInt>().expect("validated digit string"))
}

/// Canonical text form: `"num/den"`, or `"num"` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Nearest double to an exact rational.
pub fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// The degeneracy parameter. Any rational is admitted; zero selects the
/// classical (undeformed) families.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lambda(Rational);

impl Lambda {
    pub fn new(value: Rational) -> Self {
        Lambda(value)
    }

    pub fn classical() -> Self {
        Lambda(Rational::zero())
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn is_classical(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.0)
    }
}

impl From<Rational> for Lambda {
    fn from(value: Rational) -> Self {
        Lambda(value)
    }
}

impl FromStr for Lambda {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_rational(s).map(Lambda)
    }
}

impl fmt::Display for Lambda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rational(&self.0))
    }
}

impl Serialize for Lambda {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Lambda {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn factorial<T: Scalar>(n: usize) -> T {
    (1..=n).fold(T::one(), |acc, j| acc * T::from_count(j))
}

/// `x (x - 1) ... (x - n + 1)`, empty product 1.
pub fn falling_factorial<T: Scalar>(x: &T, n: usize) -> T {
    (0..n).fold(T::one(), |acc, j| acc * (x.clone() - T::from_count(j)))
}

/// `x (x - λ) ... (x - (n - 1) λ)`. At λ = 0 this is `x^n`, at λ = 1 the
/// ordinary falling factorial.
pub fn deg_falling_factorial<T: Scalar>(x: &T, n: usize, lambda: &T) -> T {
    let mut acc = T::one();
    let mut shift = T::zero();
    for _ in 0..n {
        acc = acc * (x.clone() - shift.clone());
        shift = shift + lambda.clone();
    }
    acc
}

/// `n choose k`, zero for `k > n`.
pub fn binomial<T: Scalar>(n: usize, k: usize) -> T {
    if k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(T::one(), |acc, i| {
        acc * T::from_count(n - i) / T::from_count(i + 1)
    })
}

/// Beta function at positive integer arguments,
/// `(α-1)! (β-1)! / (α+β-1)!`.
pub fn beta_exact(alpha: usize, beta: usize) -> Result<Rational> {
    if alpha == 0 || beta == 0 {
        return Err(Error::param(format!(
            "beta needs positive integer arguments, got ({alpha}, {beta})"
        )));
    }
    Ok(factorial::<Rational>(alpha - 1) * factorial::<Rational>(beta - 1)
        / factorial::<Rational>(alpha + beta - 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    fn r(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn falling_factorial_examples() {
        assert_eq!(falling_factorial(&int(5), 0), int(1));
        assert_eq!(falling_factorial(&int(3), 3), int(6));
        assert_eq!(falling_factorial(&ratio(1, 2), 2), ratio(-1, 4));
    }

    #[test]
    fn degenerate_falling_factorial_examples() {
        assert_eq!(deg_falling_factorial(&int(1), 2, &ratio(1, 2)), ratio(1, 2));
        assert_eq!(deg_falling_factorial(&int(2), 3, &int(0)), int(8));
        assert_eq!(deg_falling_factorial(&int(3), 3, &int(1)), int(6));
    }

    #[test]
    fn degenerate_falling_factorial_limits_on_grid() {
        for xn in -4i64..=6 {
            for xd in 1i64..=3 {
                let x = ratio(xn, xd);
                for n in 0..7 {
                    let power = (0..n).fold(int(1), |acc, _| acc * x.clone());
                    assert_eq!(deg_falling_factorial(&x, n, &int(0)), power);
                    assert_eq!(deg_falling_factorial(&x, n, &int(1)), falling_factorial(&x, n));
                }
            }
        }
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial::<Rational>(4, 2), int(6));
        assert_eq!(binomial::<Rational>(3, 5), int(0));
        assert_eq!(binomial::<Rational>(0, 0), int(1));
        assert_eq!(binomial::<f64>(10, 3), 120.0);
    }

    #[test]
    fn beta_examples() {
        assert_eq!(beta_exact(1, 4).unwrap(), ratio(1, 4));
        assert_eq!(beta_exact(2, 3).unwrap(), ratio(1, 12));
        assert_eq!(beta_exact(3, 2).unwrap(), ratio(1, 12));
        assert!(beta_exact(0, 2).is_err());
        assert!(beta_exact(2, 0).is_err());
    }

    #[test]
    fn beta_symmetry_and_recursion() {
        for a in 1..8 {
            for b in 1..8 {
                let ab = beta_exact(a, b).unwrap();
                assert_eq!(ab, beta_exact(b, a).unwrap());
                let ratio_next = beta_exact(a + 1, b).unwrap() / ab;
                assert_eq!(ratio_next, int(a as i64) / int((a + b) as i64));
            }
        }
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(r("3/4"), ratio(3, 4));
        assert_eq!(r("-1/3"), ratio(-1, 3));
        assert_eq!(r("6/4"), ratio(3, 2));
        assert_eq!(r("0"), int(0));
        assert_eq!(r("+7"), int(7));
        assert_eq!(format_rational(&ratio(2, 4)), "1/2");
        assert_eq!(format_rational(&int(-5)), "-5");
        assert_eq!(format_rational(&ratio(4, -6)), "-2/3");
    }

    #[test]
    fn parse_errors_carry_position() {
        let pos = |s: &str| match parse_rational(s) {
            Err(Error::ParseRational { position, .. }) => position,
            other => panic!("expected parse error, got {other:?}"),
        };
        assert_eq!(pos(""), 0);
        assert_eq!(pos("1/0"), 2);
        assert_eq!(pos("12x/3"), 2);
        assert_eq!(pos("1/-3"), 2);
        assert_eq!(pos("1/3.5"), 3);
        assert_eq!(pos("-"), 1);
        assert_eq!(pos("0.5"), 1);
    }

    #[test]
    fn outputs_are_canonical() {
        let values = [
            falling_factorial(&ratio(7, 3), 5),
            deg_falling_factorial(&ratio(-5, 6), 6, &ratio(2, 9)),
            beta_exact(5, 7).unwrap(),
            binomial(12, 5),
        ];
        for v in values {
            assert!(v.denom().is_positive());
            assert!(v.numer().gcd(v.denom()).is_one());
        }
    }

    #[test]
    fn lambda_text_round_trip() {
        let l: Lambda = "-2/6".parse().unwrap();
        assert_eq!(l.to_string(), "-1/3");
        assert!("0".parse::<Lambda>().unwrap().is_classical());
        let json = serde_json::to_string(&l).unwrap();
        assert_eq!(json, "\"-1/3\"");
        let back: Lambda = serde_json::from_str(&json).unwrap();
        assert_eq!(back, l);
    }
}
