//! Dense univariate polynomials over ℚ.
//!
//! Coefficients are stored in ascending degree order with no trailing zeros,
//! so the zero polynomial is the empty vector and equality is structural.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::from_coeffs(vec![c])
    }

    /// The formal variable.
    pub fn var() -> Self {
        Polynomial::monomial(Rational::one(), 1)
    }

    pub fn monomial(c: Rational, exp: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); exp + 1];
        coeffs[exp] = c;
        Polynomial::from_coeffs(coeffs)
    }

    /// Builds from ascending-degree coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Polynomial::from_coeffs(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` stands for the degree of the zero polynomial (minus infinity).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Exponents carrying a nonzero coefficient, ascending.
    pub fn exponents(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Divides by the leading coefficient. The zero polynomial is returned unchanged.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(lc) if !lc.is_one() => self.scale(&lc.recip().expect("leading coefficient is nonzero")),
            _ => self.clone(),
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lc_inv = divisor.coeffs[dd].recip()?;
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Ok((Polynomial::zero(), Polynomial::zero()));
        };
        if nd < dd {
            return Ok((Polynomial::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = &rem[i + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = &rem[i + j] - &(&c * dc);
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((Polynomial::from_coeffs(quot), Polynomial::from_coeffs(rem)))
    }

    /// Quotient when `divisor` divides `self` exactly, `None` otherwise.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Option<Polynomial>> {
        let (q, r) = self.div_rem(divisor)?;
        Ok(r.is_zero().then_some(q))
    }

    /// Substitutes `x ↦ x^k`.
    pub fn compose_power(&self, k: usize) -> Self {
        assert!(k >= 1, "exponent must be positive");
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Polynomial::from_coeffs(coeffs)
    }

    pub fn pow(&self, exp: u32) -> Self {
        (0..exp).fold(Polynomial::one(), |acc, _| &acc * self)
    }

    /// Integer coefficients with unit content and positive leading term,
    /// spanning the same line over ℚ as `self`.
    pub fn primitive_integer_form(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().is_some_and(|c| c.is_negative()) {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        ints.into_iter().map(|c| c / &content * &sign).collect()
    }

    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if mono.is_empty() {
                out.push_str(&mag.to_string());
            } else if mag.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{mag}*{mono}"));
            }
        }
        out
    }

    /// Parses the descending-degree text form. Returns the polynomial and the
    /// variable name it used, if any term mentioned one.
    pub fn parse_with_var(s: &str) -> Result<(Polynomial, Option<String>)> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut var: Option<String> = None;
        let mut terms: Vec<(usize, Rational)> = Vec::new();
        for term in split_signed_terms(&compact) {
            let (sign, body) = match term.as_bytes()[0] {
                b'-' => (-1, &term[1..]),
                b'+' => (1, &term[1..]),
                _ => (1, term),
            };
            let (coeff, exp, name) = parse_term(body)?;
            if let Some(name) = name {
                match &var {
                    Some(v) if *v != name => {
                        return Err(Error::Parse(format!(
                            "mixed variables {v:?} and {name:?} in {s:?}"
                        )))
                    }
                    _ => var = Some(name),
                }
            }
            let coeff = if sign < 0 { -coeff } else { coeff };
            terms.push((exp, coeff));
        }
        let max = terms.iter().map(|(e, _)| *e).max().unwrap_or(0);
        let mut coeffs = vec![Rational::zero(); max + 1];
        for (e, c) in terms {
            coeffs[e] = &coeffs[e] + &c;
        }
        Ok((Polynomial::from_coeffs(coeffs), var))
    }
}

fn split_signed_terms(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut start = 0;
    let bytes = s.as_bytes();
    for i in 1..bytes.len() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' && bytes[i - 1] != b'*' {
            out.push(&s[start..i]);
            start = i;
        }
    }
    out.push(&s[start..]);
    out
}

fn parse_term(body: &str) -> Result<(Rational, usize, Option<String>)> {
    let bad = || Error::Parse(format!("invalid polynomial term {body:?}"));
    if body.is_empty() {
        return Err(bad());
    }
    let (coeff_part, mono_part) = match body.find(|c: char| c.is_ascii_alphabetic()) {
        None => return Ok((body.parse()?, 0, None)),
        Some(0) => ("", body),
        Some(pos) => {
            let coeff = body[..pos].strip_suffix('*').ok_or_else(bad)?;
            (coeff, &body[pos..])
        }
    };
    let coeff = if coeff_part.is_empty() {
        Rational::one()
    } else {
        coeff_part.parse()?
    };
    let (name, exp) = match mono_part.split_once('^') {
        None => (mono_part, 1),
        Some((n, e)) => (n, e.parse::<usize>().map_err(|_| bad())?),
    };
    if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphabetic()) {
        return Err(bad());
    }
    Ok((coeff, exp, Some(name.to_string())))
}

/// Monic greatest common divisor by the Euclidean algorithm over ℚ.
pub fn poly_gcd(p: &Polynomial, q: &Polynomial) -> Result<Polynomial> {
    if p.is_zero() && q.is_zero() {
        return Err(Error::UndefinedGcd);
    }
    let mut a = p.monic();
    let mut b = q.monic();
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b)?;
        a = b;
        b = r.monic();
    }
    Ok(a.monic())
}

/// All rational roots with multiplicities, ascending by value.
///
/// Candidates come from the rational-root theorem applied to the primitive
/// integer form; multiplicities are found by repeated exact division.
pub fn rational_roots(p: &Polynomial) -> Result<Vec<(Rational, usize)>> {
    if p.is_zero() {
        return Err(Error::UndefinedRoots);
    }
    let mut roots = Vec::new();
    let ints = p.primitive_integer_form();
    let zero_mult = ints.iter().take_while(|c| c.is_zero()).count();
    if zero_mult > 0 {
        roots.push((Rational::zero(), zero_mult));
    }
    let ints = &ints[zero_mult..];
    if ints.len() <= 1 {
        return Ok(roots);
    }
    let constant = ints[0].abs();
    let leading = ints[ints.len() - 1].abs();
    let num_divs = divisors(&constant);
    let den_divs = divisors(&leading);
    let mut candidates: Vec<Rational> = Vec::new();
    for n in &num_divs {
        for d in &den_divs {
            for sign in [1, -1] {
                let c = Rational::new(n * sign, d.clone()).expect("divisor is positive");
                candidates.push(c);
            }
        }
    }
    candidates.sort();
    candidates.dedup();
    let mut rest = Polynomial::from_coeffs(ints.iter().cloned().map(Rational::from).collect());
    for r in candidates {
        let factor = Polynomial::from_coeffs(vec![-&r, Rational::one()]);
        let mut mult = 0;
        while let Some(q) = rest.exact_div(&factor)? {
            rest = q;
            mult += 1;
        }
        if mult > 0 {
            roots.push((r, mult));
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(roots)
}

/// Positive divisors by trial division; intended for the small integers
/// that appear as extreme coefficients here.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = BigInt::one();
    while &i * &i <= n {
        if (&n % &i).is_zero() {
            let other = &n / &i;
            if other != i {
                large.push(other);
            }
            small.push(i.clone());
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Polynomial::from_coeffs(coeffs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x"))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Polynomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Polynomial::parse_with_var(s).map(|(p, _)| p)
    }
}
