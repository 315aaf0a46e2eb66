//! Quotients of polynomials over ℚ in canonical form.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use super::polynomial::{poly_gcd, Polynomial};
use super::rational::{ArithOp, Rational};
use crate::error::{Error, Result};

/// `num / den` with `gcd(num, den) = 1` and `den` monic.
///
/// Zero is `0 / 1`. Because the form is canonical, `==` is equality of
/// functions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Polynomial,
}

impl RationalFunction {
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RationalFunction::zero());
        }
        let g = poly_gcd(&num, &den)?;
        let num = num.exact_div(&g)?.expect("gcd divides numerator");
        let den = den.exact_div(&g)?.expect("gcd divides denominator");
        let lc_inv = den.leading_coeff().expect("nonzero").recip()?;
        Ok(RationalFunction {
            num: num.scale(&lc_inv),
            den: den.scale(&lc_inv),
        })
    }

    pub fn zero() -> Self {
        RationalFunction {
            num: Polynomial::zero(),
            den: Polynomial::one(),
        }
    }

    pub fn one() -> Self {
        RationalFunction::from_poly(Polynomial::one())
    }

    pub fn var() -> Self {
        RationalFunction::from_poly(Polynomial::var())
    }

    pub fn constant(c: Rational) -> Self {
        RationalFunction::from_poly(Polynomial::constant(c))
    }

    pub fn from_int(n: i64) -> Self {
        RationalFunction::constant(Rational::from(n))
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `max(deg num, deg den)`; zero has degree 0 by convention.
    pub fn degree_star(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }

    pub fn checked_div(&self, other: &RationalFunction) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RationalFunction::new(&self.num * &other.den, &self.den * &other.num)
    }

    pub fn recip(&self) -> Result<Self> {
        RationalFunction::one().checked_div(self)
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::PoleError(x.to_string()));
        }
        self.num.eval(x).checked_div(&d)
    }

    /// Substitutes `x ↦ x^k` in numerator and denominator.
    pub fn compose_power(&self, k: usize) -> Result<Self> {
        RationalFunction::new(self.num.compose_power(k), self.den.compose_power(k))
    }

    pub fn pow(&self, exp: u32) -> Self {
        RationalFunction {
            num: self.num.pow(exp),
            den: self.den.pow(exp),
        }
    }

    pub fn display_with(&self, var: &str) -> String {
        if self.den.is_one() {
            self.num.display_with(var)
        } else {
            format!("({})/({})", self.num.display_with(var), self.den.display_with(var))
        }
    }

    /// Parses `P`, `(P)` or `(P)/(Q)` where `P`, `Q` are polynomial literals.
    pub fn parse_with_var(s: &str) -> Result<(Self, Option<String>)> {
        let s = s.trim();
        let mut depth = 0i32;
        let mut split = None;
        for (i, ch) in s.char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                '/' if depth == 0 && s[i + 1..].trim_start().starts_with('(') => split = Some(i),
                _ => {}
            }
            if depth < 0 {
                return Err(Error::Parse(format!("unbalanced parentheses in {s:?}")));
            }
        }
        if depth != 0 {
            return Err(Error::Parse(format!("unbalanced parentheses in {s:?}")));
        }
        let strip = |t: &str| -> String {
            let t = t.trim();
            t.strip_prefix('(')
                .and_then(|t| t.strip_suffix(')'))
                .unwrap_or(t)
                .to_string()
        };
        let (num_s, den_s) = match split {
            Some(i) => (strip(&s[..i]), strip(&s[i + 1..])),
            None => (strip(s), "1".to_string()),
        };
        let (num, v1) = Polynomial::parse_with_var(&num_s)?;
        let (den, v2) = Polynomial::parse_with_var(&den_s)?;
        let var = match (v1, v2) {
            (Some(a), Some(b)) if a != b => {
                return Err(Error::Parse(format!("mixed variables {a:?} and {b:?} in {s:?}")))
            }
            (a, b) => a.or(b),
        };
        Ok((RationalFunction::new(num, den)?, var))
    }
}

/// Exact field operation on rational functions; the result is canonical.
pub fn rf_arith(f: &RationalFunction, g: &RationalFunction, op: ArithOp) -> Result<RationalFunction> {
    match op {
        ArithOp::Add => Ok(f + g),
        ArithOp::Sub => Ok(f - g),
        ArithOp::Mul => Ok(f * g),
        ArithOp::Div => f.checked_div(g),
    }
}

pub fn rf_eval(f: &RationalFunction, x: &Rational) -> Result<Rational> {
    f.eval(x)
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero den");
        }
        RationalFunction::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("product of nonzero denominators")
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("product of nonzero denominators")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x"))
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for RationalFunction {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        RationalFunction::parse_with_var(s).map(|(f, _)| f)
    }
}
