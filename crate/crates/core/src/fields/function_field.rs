//! The rational function field ℚ(x), standing in for ℚ(π).
//!
//! π is transcendental over ℚ, so ℚ(π) ≅ ℚ(x) and exact symbolic arithmetic
//! is a faithful model. The maps `f_k : g(x) ↦ g(x^k)` are field
//! endomorphisms that are not surjective for `k ≥ 2`.

use rand::Rng;
use serde::Serialize;

use super::{Field, SampleField};
use crate::error::{Error, Result};
use crate::exact::{Polynomial, Rational, RationalFunction};

/// ℚ(x). Samples are quotients of random polynomials with small integer
/// coefficients.
#[derive(Debug, Clone)]
pub struct FunctionField {
    pub coeff_bound: i64,
    pub max_degree: usize,
}

impl Default for FunctionField {
    fn default() -> Self {
        FunctionField {
            coeff_bound: 5,
            max_degree: 2,
        }
    }
}

impl FunctionField {
    fn sample_poly<R: Rng + ?Sized>(&self, rng: &mut R) -> Polynomial {
        let deg = rng.gen_range(0..=self.max_degree);
        let coeffs = (0..=deg)
            .map(|_| Rational::from(rng.gen_range(-self.coeff_bound..=self.coeff_bound)))
            .collect();
        Polynomial::from_coeffs(coeffs)
    }
}

impl Field for FunctionField {
    type Elem = RationalFunction;

    fn name(&self) -> String {
        "Q(x)".into()
    }
    fn zero(&self) -> RationalFunction {
        RationalFunction::zero()
    }
    fn one(&self) -> RationalFunction {
        RationalFunction::one()
    }
    fn from_i64(&self, n: i64) -> RationalFunction {
        RationalFunction::from_int(n)
    }
    fn add(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        a + b
    }
    fn sub(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        a - b
    }
    fn mul(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        a * b
    }
    fn neg(&self, a: &RationalFunction) -> RationalFunction {
        -a
    }
    fn div(&self, a: &RationalFunction, b: &RationalFunction) -> Result<RationalFunction> {
        a.checked_div(b)
    }
    fn eq(&self, a: &RationalFunction, b: &RationalFunction) -> bool {
        a == b
    }
}

impl SampleField for FunctionField {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> RationalFunction {
        let num = self.sample_poly(rng);
        let den = loop {
            let d = self.sample_poly(rng);
            if !d.is_zero() {
                break d;
            }
        };
        RationalFunction::new(num, den).expect("nonzero denominator")
    }
}

/// `p(x)/q(x) ↦ p(x^k)/q(x^k)`, re-canonicalized.
pub fn qpi_endomorphism(k: usize, g: &RationalFunction) -> Result<RationalFunction> {
    if k == 0 {
        return Err(Error::Precondition("endomorphism exponent must be at least 1".into()));
    }
    g.compose_power(k)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ImageMembership {
    Yes,
    /// `exponent` is the smallest exponent not divisible by `k`.
    No { exponent: usize },
}

/// Decides whether `g` lies in the image of `f_k`, i.e. in ℚ(x^k).
///
/// The canonical form is unique and substitution `x ↦ x^k` preserves
/// coprimality, so `g ∈ ℚ(x^k)` iff every exponent in its canonical numerator
/// and denominator is a multiple of `k`.
pub fn qpi_in_image(k: usize, g: &RationalFunction) -> Result<ImageMembership> {
    if k < 2 {
        return Err(Error::Precondition("image test needs k >= 2".into()));
    }
    if g.is_zero() {
        return Err(Error::Precondition("image test needs a nonzero function".into()));
    }
    let offending = g
        .num()
        .exponents()
        .chain(g.den().exponents())
        .filter(|e| e % k != 0)
        .min();
    Ok(match offending {
        Some(exponent) => ImageMembership::No { exponent },
        None => {
            debug_assert_eq!(g.degree_star() % k, 0);
            ImageMembership::Yes
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> RationalFunction {
        s.parse().unwrap()
    }

    #[test]
    fn endomorphism_examples() {
        assert_eq!(qpi_endomorphism(2, &rf("x")).unwrap(), rf("x^2"));
        assert_eq!(qpi_endomorphism(3, &rf("(x + 1)/(x)")).unwrap(), rf("(x^3 + 1)/(x^3)"));
        let g = rf("(x^2 - 1/2)/(x + 3)");
        assert_eq!(qpi_endomorphism(1, &g).unwrap(), g);
        assert!(qpi_endomorphism(0, &g).is_err());
    }

    #[test]
    fn image_examples() {
        assert_eq!(qpi_in_image(2, &rf("x")).unwrap(), ImageMembership::No { exponent: 1 });
        assert_eq!(qpi_in_image(2, &rf("x^2")).unwrap(), ImageMembership::Yes);
        assert_eq!(qpi_in_image(3, &rf("(x^3 + 1)/(x^3)")).unwrap(), ImageMembership::Yes);
        assert_eq!(
            qpi_in_image(2, &rf("(x^4 + x^3)/(x^2 + 1)")).unwrap(),
            ImageMembership::No { exponent: 3 }
        );
        assert!(qpi_in_image(2, &rf("0")).is_err());
        assert!(qpi_in_image(1, &rf("x")).is_err());
        // constants are in every image
        assert_eq!(qpi_in_image(5, &rf("7/3")).unwrap(), ImageMembership::Yes);
    }
}
