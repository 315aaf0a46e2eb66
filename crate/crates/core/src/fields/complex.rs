//! Double-precision complex numbers compared up to a mixed tolerance.
//!
//! This carrier only smoke-tests conclusions numerically; it is not a model
//! of ℂ in any exact sense.

use std::fmt;

use num_complex::Complex64;
use rand::Rng;

use super::{Field, SampleField};
use crate::error::{Error, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, PartialEq)]
pub struct ApproxComplex {
    pub re: f64,
    pub im: f64,
}

impl ApproxComplex {
    /// Rejects infinities and NaN.
    pub fn new(re: f64, im: f64) -> Result<Self> {
        if !re.is_finite() || !im.is_finite() {
            return Err(Error::Precondition(format!("non-finite complex value {re}+{im}*i")));
        }
        Ok(ApproxComplex { re, im })
    }

    pub fn from_polar(r: f64, theta: f64) -> Self {
        let c = Complex64::from_polar(r, theta);
        ApproxComplex { re: c.re, im: c.im }
    }

    pub fn conj(self) -> Self {
        ApproxComplex { re: self.re, im: -self.im }
    }

    pub fn abs(self) -> f64 {
        self.c().norm()
    }

    fn c(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    fn from_c(c: Complex64) -> Self {
        ApproxComplex { re: c.re, im: c.im }
    }

    /// Parses `re+im*i`, `re-im*i`, `im*i` or `re`.
    pub fn parse(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("invalid complex literal {s:?}"));
        let float = |t: &str| t.parse::<f64>().map_err(|_| bad());
        let Some(body) = s.strip_suffix('i') else {
            return ApproxComplex::new(float(&s)?, 0.0);
        };
        let body = body.strip_suffix('*').unwrap_or(body);
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
        let (re, im) = match split {
            Some(i) => (float(&body[..i])?, &body[i..]),
            None => (0.0, body),
        };
        let im = match im {
            "" | "+" => 1.0,
            "-" => -1.0,
            t => float(t)?,
        };
        ApproxComplex::new(re, im)
    }
}

impl fmt::Display for ApproxComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_sign_negative() {
            write!(f, "{}-{}*i", self.re, -self.im)
        } else {
            write!(f, "{}+{}*i", self.re, self.im)
        }
    }
}

impl fmt::Debug for ApproxComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Approximate ℂ. `eq(x, y)` iff `|x − y| ≤ tol · max(1, |x|, |y|)`.
///
/// Samples have modulus log-uniform in `[0.1, 10]` and uniform argument.
#[derive(Debug, Clone, Copy)]
pub struct ComplexField {
    tol: f64,
}

impl Default for ComplexField {
    fn default() -> Self {
        ComplexField { tol: DEFAULT_TOLERANCE }
    }
}

impl ComplexField {
    pub fn new(tol: f64) -> Result<Self> {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::Precondition(format!("tolerance must be positive, got {tol}")));
        }
        Ok(ComplexField { tol })
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Arithmetic results that overflow are a bug in the calling check.
    fn checked(c: Complex64) -> ApproxComplex {
        ApproxComplex::new(c.re, c.im).unwrap_or_else(|e| panic!("{e}"))
    }

    pub fn i(&self) -> ApproxComplex {
        ApproxComplex { re: 0.0, im: 1.0 }
    }
}

impl Field for ComplexField {
    type Elem = ApproxComplex;

    fn name(&self) -> String {
        format!("C(tol={})", self.tol)
    }
    fn zero(&self) -> ApproxComplex {
        ApproxComplex { re: 0.0, im: 0.0 }
    }
    fn one(&self) -> ApproxComplex {
        ApproxComplex { re: 1.0, im: 0.0 }
    }
    fn from_i64(&self, n: i64) -> ApproxComplex {
        ApproxComplex { re: n as f64, im: 0.0 }
    }
    fn add(&self, a: &ApproxComplex, b: &ApproxComplex) -> ApproxComplex {
        Self::checked(a.c() + b.c())
    }
    fn sub(&self, a: &ApproxComplex, b: &ApproxComplex) -> ApproxComplex {
        Self::checked(a.c() - b.c())
    }
    fn mul(&self, a: &ApproxComplex, b: &ApproxComplex) -> ApproxComplex {
        Self::checked(a.c() * b.c())
    }
    fn neg(&self, a: &ApproxComplex) -> ApproxComplex {
        ApproxComplex::from_c(-a.c())
    }
    fn div(&self, a: &ApproxComplex, b: &ApproxComplex) -> Result<ApproxComplex> {
        if self.is_zero(b) {
            return Err(Error::DivisionByZero);
        }
        ApproxComplex::new((a.c() / b.c()).re, (a.c() / b.c()).im)
    }
    fn eq(&self, a: &ApproxComplex, b: &ApproxComplex) -> bool {
        let scale = 1f64.max(a.abs()).max(b.abs());
        (a.c() - b.c()).norm() <= self.tol * scale
    }
    fn is_exact(&self) -> bool {
        false
    }
}

impl SampleField for ComplexField {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> ApproxComplex {
        let r = 10f64.powf(rng.gen_range(-1.0..=1.0));
        let theta = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
        ApproxComplex::from_polar(r, theta)
    }
}
