//! The quadratic field ℚ(√d) for a non-square rational `d`.

use std::fmt;

use rand::Rng;
use serde::Serialize;

use super::rationals::sample_rational;
use super::{Field, SampleField};
use crate::error::{Error, Result};
use crate::exact::Rational;

/// `a + b√d`. Every element carries its field parameter `d`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadraticElement {
    pub a: Rational,
    pub b: Rational,
    pub d: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "reason", rename_all = "snake_case")]
pub enum DValidation {
    Accepted,
    Rejected(String),
}

/// Accepts `d` iff `d != 0` and `d` is not the square of a rational.
///
/// For reduced `d = p/q`, `d` is a rational square iff `p·q` is a perfect
/// square, since `p/q = p·q / q²`.
pub fn validate_d(d: &Rational) -> DValidation {
    if d.is_zero() {
        return DValidation::Rejected("d is zero".into());
    }
    let pq = d.numer() * d.denom();
    if crate::exact::rational::is_perfect_square(&pq) {
        return DValidation::Rejected("perfect square".into());
    }
    DValidation::Accepted
}

impl QuadraticElement {
    pub fn new(a: Rational, b: Rational, d: Rational) -> Self {
        QuadraticElement { a, b, d }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// `a² − d·b²`, which equals `z · conj(z)`.
    pub fn norm(&self) -> Rational {
        &(&self.a * &self.a) - &(&(&self.d * &self.b) * &self.b)
    }

    /// Parses `a+b*sqrt(d)`, `b*sqrt(d)`, `sqrt(d)` or `a`. A literal without a
    /// `sqrt` term takes `d` from `default_d`.
    pub fn parse(s: &str, default_d: Option<&Rational>) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || Error::Parse(format!("invalid quadratic literal {s:?}"));
        let Some(pos) = s.find("sqrt(") else {
            let d = default_d.ok_or_else(bad)?.clone();
            return Ok(QuadraticElement::new(s.parse()?, Rational::zero(), d));
        };
        let inner = s[pos + 5..].strip_suffix(')').ok_or_else(bad)?;
        let d: Rational = inner.parse()?;
        if let Some(def) = default_d {
            if *def != d {
                return Err(Error::FieldMismatch(format!("literal has d = {d}, field has d = {def}")));
            }
        }
        let head = &s[..pos];
        let head = head.strip_suffix('*').unwrap_or(head);
        // `head` is either `[a]±[b]` or `[±][b]`; the split sign is the last
        // `+`/`-` past index 0.
        let split = head
            .char_indices()
            .rev()
            .find(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i);
        let (a_str, b_str) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("", head),
        };
        let a = if a_str.is_empty() { Rational::zero() } else { a_str.parse()? };
        let b = match b_str {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            t => t.strip_prefix('+').unwrap_or(t).parse()?,
        };
        Ok(QuadraticElement::new(a, b, d))
    }
}

fn check_same(z: &QuadraticElement, w: &QuadraticElement) -> Result<()> {
    if z.d != w.d {
        return Err(Error::FieldMismatch(format!("d = {} vs d = {}", z.d, w.d)));
    }
    Ok(())
}

pub fn quad_add(z: &QuadraticElement, w: &QuadraticElement) -> Result<QuadraticElement> {
    check_same(z, w)?;
    Ok(QuadraticElement::new(&z.a + &w.a, &z.b + &w.b, z.d.clone()))
}

pub fn quad_sub(z: &QuadraticElement, w: &QuadraticElement) -> Result<QuadraticElement> {
    check_same(z, w)?;
    Ok(QuadraticElement::new(&z.a - &w.a, &z.b - &w.b, z.d.clone()))
}

/// `(a₁a₂ + d·b₁b₂) + (a₁b₂ + a₂b₁)√d`.
pub fn quad_mul(z: &QuadraticElement, w: &QuadraticElement) -> Result<QuadraticElement> {
    check_same(z, w)?;
    let a = &(&z.a * &w.a) + &(&(&z.d * &z.b) * &w.b);
    let b = &(&z.a * &w.b) + &(&w.a * &z.b);
    Ok(QuadraticElement::new(a, b, z.d.clone()))
}

pub fn quad_conj(z: &QuadraticElement) -> QuadraticElement {
    QuadraticElement::new(z.a.clone(), -&z.b, z.d.clone())
}

/// `conj(z) / norm(z)`.
pub fn quad_inverse(z: &QuadraticElement) -> Result<QuadraticElement> {
    if z.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let n = z.norm().recip()?;
    let c = quad_conj(z);
    Ok(QuadraticElement::new(&c.a * &n, &c.b * &n, z.d.clone()))
}

impl fmt::Display for QuadraticElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let root = format!("sqrt({})", self.d);
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let b_abs = self.b.abs();
        let b_term = if b_abs.is_one() { root } else { format!("{b_abs}*{root}") };
        let sign = if self.b.is_negative() { "-" } else { "+" };
        if self.a.is_zero() {
            let sign = if self.b.is_negative() { "-" } else { "" };
            write!(f, "{sign}{b_term}")
        } else {
            write!(f, "{}{sign}{b_term}", self.a)
        }
    }
}

impl fmt::Debug for QuadraticElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// ℚ(√d). Sample components follow the same law as [`super::RationalField`].
#[derive(Debug, Clone)]
pub struct QuadraticField {
    d: Rational,
    pub bound: i64,
}

impl QuadraticField {
    pub fn new(d: Rational) -> Result<Self> {
        match validate_d(&d) {
            DValidation::Accepted => Ok(QuadraticField { d, bound: 1_000_000 }),
            DValidation::Rejected(reason) => Err(Error::InvalidD(d.to_string(), reason)),
        }
    }

    pub fn d(&self) -> &Rational {
        &self.d
    }

    pub fn elem(&self, a: Rational, b: Rational) -> QuadraticElement {
        QuadraticElement::new(a, b, self.d.clone())
    }

    /// `m + n√d`.
    pub fn int_elem(&self, m: i64, n: i64) -> QuadraticElement {
        self.elem(Rational::from(m), Rational::from(n))
    }

    pub fn sqrt_d(&self) -> QuadraticElement {
        self.int_elem(0, 1)
    }

    pub fn parse(&self, s: &str) -> Result<QuadraticElement> {
        QuadraticElement::parse(s, Some(&self.d))
    }

    fn expect<T>(r: Result<T>) -> T {
        r.unwrap_or_else(|e| panic!("element not from this field: {e}"))
    }
}

impl Field for QuadraticField {
    type Elem = QuadraticElement;

    fn name(&self) -> String {
        format!("Q(sqrt({}))", self.d)
    }
    fn zero(&self) -> QuadraticElement {
        self.int_elem(0, 0)
    }
    fn one(&self) -> QuadraticElement {
        self.int_elem(1, 0)
    }
    fn from_i64(&self, n: i64) -> QuadraticElement {
        self.int_elem(n, 0)
    }
    fn add(&self, a: &QuadraticElement, b: &QuadraticElement) -> QuadraticElement {
        Self::expect(quad_add(a, b))
    }
    fn sub(&self, a: &QuadraticElement, b: &QuadraticElement) -> QuadraticElement {
        Self::expect(quad_sub(a, b))
    }
    fn mul(&self, a: &QuadraticElement, b: &QuadraticElement) -> QuadraticElement {
        Self::expect(quad_mul(a, b))
    }
    fn neg(&self, a: &QuadraticElement) -> QuadraticElement {
        QuadraticElement::new(-&a.a, -&a.b, a.d.clone())
    }
    fn div(&self, a: &QuadraticElement, b: &QuadraticElement) -> Result<QuadraticElement> {
        quad_mul(a, &quad_inverse(b)?)
    }
    fn eq(&self, a: &QuadraticElement, b: &QuadraticElement) -> bool {
        a == b
    }
}

impl SampleField for QuadraticField {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> QuadraticElement {
        let a = sample_rational(rng, self.bound);
        let b = sample_rational(rng, self.bound);
        self.elem(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    fn field(d: i64) -> QuadraticField {
        QuadraticField::new(Rational::from(d)).unwrap()
    }

    #[test]
    fn multiplication_examples() {
        let f = field(2);
        let z = f.int_elem(1, 1);
        let w = f.int_elem(3, -1);
        assert_eq!(quad_mul(&z, &w).unwrap(), f.int_elem(1, 2));
        assert_eq!(quad_mul(&z, &f.one()).unwrap(), z);
        let g = field(-1);
        assert_eq!(quad_mul(&g.int_elem(1, 1), &g.int_elem(1, -1)).unwrap(), g.int_elem(2, 0));
    }

    #[test]
    fn mismatched_fields() {
        let z = field(2).int_elem(1, 1);
        let w = field(3).int_elem(1, 1);
        assert!(matches!(quad_mul(&z, &w), Err(Error::FieldMismatch(_))));
        assert!(matches!(quad_add(&z, &w), Err(Error::FieldMismatch(_))));
    }

    #[test]
    fn inverse_examples() {
        let f = field(2);
        assert_eq!(quad_inverse(&f.int_elem(1, 1)).unwrap(), f.int_elem(-1, 1));
        assert_eq!(quad_inverse(&f.one()).unwrap(), f.one());
        assert_eq!(quad_inverse(&f.zero()), Err(Error::DivisionByZero));
        assert_eq!(f.div(&f.one(), &f.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn conjugation_examples() {
        let f = field(5);
        let z = f.int_elem(3, 2);
        assert_eq!(quad_conj(&z), f.int_elem(3, -2));
        assert_eq!(quad_conj(&quad_conj(&z)), z);
        assert_eq!(quad_conj(&f.from_i64(7)), f.from_i64(7));
    }

    #[test]
    fn validate_examples() {
        assert_eq!(validate_d(&q(2, 1)), DValidation::Accepted);
        assert_eq!(validate_d(&q(9, 4)), DValidation::Rejected("perfect square".into()));
        assert_eq!(validate_d(&q(-3, 1)), DValidation::Accepted);
        assert!(matches!(validate_d(&q(0, 1)), DValidation::Rejected(_)));
        assert!(matches!(validate_d(&q(1, 1)), DValidation::Rejected(_)));
        // 8/2 reduces to 4
        assert!(matches!(validate_d(&q(8, 2)), DValidation::Rejected(_)));
        assert_eq!(validate_d(&q(1, 2)), DValidation::Accepted);
        assert_eq!(validate_d(&q(-1, 1)), DValidation::Accepted);
        assert!(QuadraticField::new(q(9, 4)).is_err());
    }

    #[test]
    fn literals() {
        let f = field(2);
        for (s, a, b) in [
            ("1+2*sqrt(2)", q(1, 1), q(2, 1)),
            ("-1/2-sqrt(2)", q(-1, 2), q(-1, 1)),
            ("sqrt(2)", q(0, 1), q(1, 1)),
            ("-3/4*sqrt(2)", q(0, 1), q(-3, 4)),
            ("5", q(5, 1), q(0, 1)),
        ] {
            let z = f.parse(s).unwrap();
            assert_eq!((z.a.clone(), z.b.clone()), (a, b), "{s}");
            assert_eq!(f.parse(&z.to_string()).unwrap(), z);
        }
        let g = field(-3);
        let z = QuadraticElement::parse("1-sqrt(-3)", None).unwrap();
        assert_eq!(z, g.int_elem(1, -1));
        assert_eq!(z.to_string(), "1-sqrt(-3)");
        assert!(f.parse("1+sqrt(3)").is_err());
        assert!(QuadraticElement::parse("4", None).is_err());
    }
}
