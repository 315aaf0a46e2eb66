use rand::Rng;

use super::{Field, SampleField};
use crate::error::Result;
use crate::exact::Rational;

/// ℚ. Samples have numerator and denominator uniform in `[-bound, bound]`.
#[derive(Debug, Clone)]
pub struct RationalField {
    pub bound: i64,
}

impl Default for RationalField {
    fn default() -> Self {
        RationalField { bound: 1_000_000 }
    }
}

/// Uniform numerator and nonzero denominator in `[-bound, bound]`.
pub(crate) fn sample_rational<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> Rational {
    let n = rng.gen_range(-bound..=bound);
    let d = loop {
        let d = rng.gen_range(-bound..=bound);
        if d != 0 {
            break d;
        }
    };
    Rational::new(n, d).expect("nonzero denominator")
}

impl Field for RationalField {
    type Elem = Rational;

    fn name(&self) -> String {
        "Q".into()
    }
    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn from_i64(&self, n: i64) -> Rational {
        Rational::from(n)
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn sub(&self, a: &Rational, b: &Rational) -> Rational {
        a - b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
    fn div(&self, a: &Rational, b: &Rational) -> Result<Rational> {
        a.checked_div(b)
    }
    fn eq(&self, a: &Rational, b: &Rational) -> bool {
        a == b
    }
}

impl SampleField for RationalField {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Rational {
        sample_rational(rng, self.bound)
    }
}
