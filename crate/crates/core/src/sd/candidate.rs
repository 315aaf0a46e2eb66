//! Candidate self-maps handed to the checkers.

use crate::fields::{
    qpi_endomorphism, quad_conj, ApproxComplex, ComplexField, Field, FunctionField, QuadraticElement,
    QuadraticField,
};
use crate::exact::RationalFunction;

/// A total self-map of a field's elements.
pub trait SdCandidate<F: Field>: Sync {
    fn apply(&self, field: &F, x: &F::Elem) -> F::Elem;
    fn name(&self) -> String;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Identity;

impl<F: Field> SdCandidate<F> for Identity {
    fn apply(&self, _: &F, x: &F::Elem) -> F::Elem {
        x.clone()
    }
    fn name(&self) -> String {
        "identity".into()
    }
}

/// `a + b√d ↦ a − b√d`, or complex conjugation on the approximate carrier.
#[derive(Debug, Clone, Copy, Default)]
pub struct Conjugation;

impl SdCandidate<QuadraticField> for Conjugation {
    fn apply(&self, _: &QuadraticField, x: &QuadraticElement) -> QuadraticElement {
        quad_conj(x)
    }
    fn name(&self) -> String {
        "conjugation".into()
    }
}

impl SdCandidate<ComplexField> for Conjugation {
    fn apply(&self, _: &ComplexField, x: &ApproxComplex) -> ApproxComplex {
        x.conj()
    }
    fn name(&self) -> String {
        "conjugation".into()
    }
}

/// `x ↦ x^k` by square-and-multiply in the carrier, `k ≥ 1`.
#[derive(Debug, Clone, Copy)]
pub struct PowerMap {
    pub k: u64,
}

impl<F: Field> SdCandidate<F> for PowerMap {
    fn apply(&self, field: &F, x: &F::Elem) -> F::Elem {
        let mut acc = field.one();
        let mut base = x.clone();
        let mut e = self.k;
        while e > 0 {
            if e & 1 == 1 {
                acc = field.mul(&acc, &base);
            }
            base = field.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
    fn name(&self) -> String {
        format!("x^{}", self.k)
    }
}

/// The endomorphism `g(x) ↦ g(x^k)` of ℚ(x).
#[derive(Debug, Clone, Copy)]
pub struct QpiMap {
    pub k: usize,
}

impl SdCandidate<FunctionField> for QpiMap {
    fn apply(&self, _: &FunctionField, g: &RationalFunction) -> RationalFunction {
        qpi_endomorphism(self.k, g).expect("k >= 1")
    }
    fn name(&self) -> String {
        format!("f_{}", self.k)
    }
}

type RuleFn<F> = Box<dyn Fn(&F, &<F as Field>::Elem) -> <F as Field>::Elem + Send + Sync>;

/// An arbitrary rule given as a closure.
pub struct Rule<F: Field> {
    name: String,
    rule: RuleFn<F>,
}

impl<F: Field> Rule<F> {
    pub fn new(name: impl Into<String>, rule: impl Fn(&F, &F::Elem) -> F::Elem + Send + Sync + 'static) -> Self {
        Rule {
            name: name.into(),
            rule: Box::new(rule),
        }
    }
}

impl<F: Field> SdCandidate<F> for Rule<F> {
    fn apply(&self, field: &F, x: &F::Elem) -> F::Elem {
        (self.rule)(field, x)
    }
    fn name(&self) -> String {
        self.name.clone()
    }
}

/// `conj ∘ f`: composes a candidate with conjugation on ℚ(√d).
pub struct Conjugated<'a, C>(pub &'a C);

impl<C: SdCandidate<QuadraticField>> SdCandidate<QuadraticField> for Conjugated<'_, C> {
    fn apply(&self, field: &QuadraticField, x: &QuadraticElement) -> QuadraticElement {
        quad_conj(&self.0.apply(field, x))
    }
    fn name(&self) -> String {
        format!("conj . {}", self.0.name())
    }
}
