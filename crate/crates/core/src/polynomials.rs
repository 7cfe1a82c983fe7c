//! Dense univariate polynomials in `x` with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Ascending coefficients with no trailing zeros; the zero polynomial is empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn from_bigints(coeffs: Vec<BigInt>) -> Self {
        Self::new(coeffs.into_iter().map(BigRational::from_integer).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::monomial(1)
    }

    pub fn monomial(deg: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); deg + 1];
        coeffs[deg] = BigRational::one();
        Poly { coeffs }
    }

    /// `x - c`
    pub fn linear(c: i64) -> Self {
        Self::from_ints(&[-c, 1])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_one()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn scalar_mul(&self, c: &BigRational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, q: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * q + c)
    }

    pub fn pow(&self, e: usize) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| &acc * self)
    }

    /// Coefficients from lowest degree, as decimal strings.
    pub fn to_json_coeffs(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }
}

/// Serialized as the ascending coefficient strings.
impl serde::Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json_coeffs().serialize(s)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigRational::zero();
        Poly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = BigRational::zero();
        Poly::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) - rhs.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::zero(), |a, b| &a + &b)
    }
}

impl std::iter::Product for Poly {
    fn product<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::one(), |a, b| &a * &b)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if c.is_negative() {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            let var = match e {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{e}"),
            };
            if e == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&var)?;
            } else {
                write!(f, "{mag}*{var}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Poly {
    type Err = Error;

    /// Parses sums of terms such as `-3/2*x^2`, `x`, `7`.
    fn from_str(s: &str) -> Result<Poly, Error> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in s.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 {
                terms.push(&s[start..i]);
                start = i;
            }
        }
        terms.push(&s[start..]);
        let mut acc = Poly::zero();
        for t in terms {
            acc = &acc + &parse_term(t)?;
        }
        Ok(acc)
    }
}

fn parse_term(t: &str) -> Result<Poly, Error> {
    let bad = || Error::Parse(format!("bad term {t:?}"));
    let (neg, body) = match t.as_bytes().first() {
        Some(b'-') => (true, &t[1..]),
        Some(b'+') => (false, &t[1..]),
        _ => (false, t),
    };
    let (coef_str, var) = match body.find('x') {
        Some(pos) => {
            let c = body[..pos].trim_end_matches('*');
            (c, Some(&body[pos + 1..]))
        }
        None => (body, None),
    };
    let coef = if coef_str.is_empty() {
        if var.is_none() {
            return Err(bad());
        }
        BigRational::one()
    } else {
        parse_rational(coef_str)?
    };
    let deg = match var {
        None => 0,
        Some("") => 1,
        Some(rest) => rest
            .strip_prefix('^')
            .and_then(|d| d.parse::<usize>().ok())
            .ok_or_else(bad)?,
    };
    let coef = if neg { -coef } else { coef };
    Ok(Poly::monomial(deg).scalar_mul(&coef))
}

/// Parses `p` or `p/q` with integer `p`, `q`; decimal points are rejected.
pub fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let bad = || Error::Parse(format!("not an exact rational: {s:?}"));
    let s = s.trim();
    if s.contains(['.', 'e', 'E']) {
        return Err(bad());
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// `∏_{j<r1} (x² - x - 2(s1+j)) · ∏_{l<r2} (x - (s2+l))`; zero if `r1` or `r2` is negative.
pub fn phi_z2(s1: i64, s2: i64, r1: i64, r2: i64) -> Poly {
    if r1 < 0 || r2 < 0 {
        return Poly::zero();
    }
    let quad = (0..r1).map(|j| Poly::from_ints(&[-2 * (s1 + j), -1, 1]));
    let lin = (0..r2).map(|l| Poly::linear(s2 + l));
    quad.chain(lin).product()
}

/// `∏_{l<r} (x - (s+l))`; zero if `r` is negative.
pub fn phi_partition(s: i64, r: i64) -> Poly {
    if r < 0 {
        return Poly::zero();
    }
    (0..r).map(|l| Poly::linear(s + l)).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Poly {
        s.parse().unwrap()
    }

    #[test]
    fn arithmetic() {
        let a = Poly::from_ints(&[-1, 1]);
        let b = Poly::from_ints(&[1, 1]);
        assert_eq!(&a * &b, Poly::from_ints(&[-1, 0, 1]));
        assert_eq!(&a + &b, Poly::from_ints(&[0, 2]));
        assert!((&a - &a).is_zero());
        assert_eq!(Poly::monomial(5).degree(), Some(5));
        assert!(Poly::monomial(5).is_monic());
        assert_eq!(Poly::zero().degree(), None);
    }

    #[test]
    fn eval_root() {
        assert_eq!(p("x^2-x-2").eval(&rat(2)), rat(0));
        assert_eq!(p("x^2-x-2").eval(&rat(3)), rat(4));
    }

    #[test]
    fn display_and_parse_roundtrip() {
        for s in ["x^4-2*x^3-4*x^2+5*x+8", "-x^2+x", "0", "1", "-2*x", "3/2*x^2-1/3", "x"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert_eq!(p("x^4-2*x^3-4*x^2+5*x+8").to_json_coeffs(), ["8", "5", "-4", "-2", "1"]);
        assert!("x^".parse::<Poly>().is_err());
        assert!("".parse::<Poly>().is_err());
    }

    #[test]
    fn rationals_reject_floats() {
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("1e3").is_err());
        assert!(parse_rational("1/0").is_err());
        assert_eq!(parse_rational("-6/4").unwrap(), BigRational::new((-3).into(), 2.into()));
    }

    #[test]
    fn phi_values() {
        assert_eq!(phi_z2(3, 2, 0, 0), Poly::one());
        assert_eq!(phi_z2(1, 0, 1, 0), p("x^2-x-2"));
        assert_eq!(phi_z2(1, 0, 1, 1), p("x^3-x^2-2*x"));
        assert!(phi_z2(1, 0, -1, 2).is_zero());
        assert_eq!(phi_partition(4, 0), Poly::one());
        assert_eq!(phi_partition(0, 2), p("x^2-x"));
        assert_eq!(phi_partition(2, 2), p("x^2-5*x+6"));
    }
}
