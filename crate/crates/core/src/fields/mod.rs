//! A uniform field interface and its concrete carriers.
//!
//! A carrier is a parameter object (`d`, `p`, `tol`, ...) that owns the
//! arithmetic; elements are plain values. Every check in [`crate::sd`] is
//! written once against [`Field`].

use std::fmt::{Debug, Display};

use rand::Rng;

use crate::error::Result;

pub mod complex;
pub mod function_field;
pub mod prime;
pub mod quadratic;
pub mod rationals;

pub use complex::{ApproxComplex, ComplexField, DEFAULT_TOLERANCE};
pub use function_field::{qpi_endomorphism, qpi_in_image, FunctionField, ImageMembership};
pub use prime::{fp_arith, is_prime, PrimeField, PrimeFieldElement};
pub use quadratic::{quad_add, quad_conj, quad_inverse, quad_mul, quad_sub, validate_d, DValidation, QuadraticElement, QuadraticField};
pub use rationals::RationalField;

pub trait Field: Sync {
    type Elem: Clone + Debug + Display + Send + Sync;

    /// Short human-readable name, e.g. `Q(sqrt(2))`.
    fn name(&self) -> String;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, n: i64) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Fails with `DivisionByZero` iff `is_zero(b)`.
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;

    /// Exact equality on exact carriers; tolerance-based on approximate ones.
    fn eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.eq(a, &self.zero())
    }

    /// Whether `eq` is exact. Reports say "exact" or "within tolerance" accordingly.
    fn is_exact(&self) -> bool {
        true
    }

    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem> {
        self.div(&self.one(), a)
    }
}

/// Carriers that can draw reproducible random elements.
pub trait SampleField: Field {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
}

/// Carriers with finitely many elements, enumerable in a fixed order.
pub trait FiniteField: Field {
    fn elements(&self) -> Vec<Self::Elem>;
}

/// Ordered pairs `(x, y)` with `x != y`, drawn from the carrier's sampler.
pub fn sample_pairs<F: SampleField, R: Rng + ?Sized>(
    field: &F,
    rng: &mut R,
    count: usize,
) -> Vec<(F::Elem, F::Elem)> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let x = field.sample(rng);
        let y = field.sample(rng);
        if !field.eq(&x, &y) {
            out.push((x, y));
        }
    }
    out
}

/// Every ordered pair of distinct elements. For a field of size `p`
/// that is `p(p-1)` pairs.
pub fn all_pairs<F: FiniteField>(field: &F) -> Vec<(F::Elem, F::Elem)> {
    let elems = field.elements();
    let mut out = Vec::with_capacity(elems.len() * elems.len().saturating_sub(1));
    for x in &elems {
        for y in &elems {
            if !field.eq(x, y) {
                out.push((x.clone(), y.clone()));
            }
        }
    }
    out
}
