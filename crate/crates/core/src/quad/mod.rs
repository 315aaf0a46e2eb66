//! Exact replays of the quadratic-field argument: the two automorphisms are
//! SD maps, the `z/z̄` case formulas, the sign-resolution contradiction and
//! lattice propagation.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::fields::{quad_conj, sample_pairs, Field, QuadraticElement, QuadraticField};
use crate::sd::{check_sd, sd_sides, Conjugation, Identity, SdCandidate, SdReport, Violation};

pub mod complex;
pub mod lattice;

pub use complex::{half_angle_report, verify_complex, ComplexSuite};
pub use lattice::{lattice_fix, lattice_fix_ordered, LatticeFixation, LatticeOrder, LatticePoint, PointSource};

/// The two field automorphisms of ℚ(√d).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Automorphism {
    Identity,
    Conjugation,
}

impl Automorphism {
    pub fn apply(self, z: &QuadraticElement) -> QuadraticElement {
        match self {
            Automorphism::Identity => z.clone(),
            Automorphism::Conjugation => quad_conj(z),
        }
    }

    fn candidate(self) -> &'static dyn SdCandidate<QuadraticField> {
        match self {
            Automorphism::Identity => &Identity,
            Automorphism::Conjugation => &Conjugation,
        }
    }
}

impl std::str::FromStr for Automorphism {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identity" | "id" => Ok(Automorphism::Identity),
            "conjugation" | "conj" => Ok(Automorphism::Conjugation),
            _ => Err(Error::Parse(format!("unknown map {s:?}, expected identity or conj"))),
        }
    }
}

/// Exact `check_sd` of an automorphism on seeded pairs of ℚ(√d).
pub fn verify_automorphism_sd(d: &Rational, which: Automorphism, samples: usize, seed: u64) -> Result<SdReport> {
    let field = QuadraticField::new(d.clone())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs = sample_pairs(&field, &mut rng, samples);
    check_sd(&field, which.candidate(), &pairs)
}

/// `f(√d) = √d` (plus) or `f(√d) = −√d` (minus).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Case {
    Plus,
    Minus,
}

impl Case {
    pub fn map(self) -> Automorphism {
        match self {
            Case::Plus => Automorphism::Identity,
            Case::Minus => Automorphism::Conjugation,
        }
    }
}

/// Replays the case computation on each `z ≠ 0`, with `f` the identity
/// (plus) or conjugation (minus) and `N(z) = z·z̄ ∈ ℚ^×`:
///
/// - `f((x+y)/(x−y))` for `x = Re z`, `y = Im z·√d` is `z/z̄` (plus) or `z̄/z` (minus),
/// - `f(z/z̄) · N(z) = f(z²)`,
/// - `f(z²) = f(z)²`,
/// - `f(z)² = z²` (plus) or `z̄²` (minus).
pub fn ratio_case_formulas(d: &Rational, case: Case, sample: &[QuadraticElement]) -> Result<SdReport> {
    let field = QuadraticField::new(d.clone())?;
    let map = case.map();
    let f = map.candidate();
    let mut report = SdReport::new();
    for z in sample {
        if z.d != *d {
            return Err(Error::FieldMismatch(format!("{z} is not in Q(sqrt({d}))")));
        }
        if z.is_zero() {
            return Err(Error::Precondition("case formulas need z != 0".into()));
        }
        let zbar = quad_conj(z);
        let norm = field.mul(z, &zbar);
        debug_assert_eq!(norm, field.elem(z.norm(), Rational::zero()));
        let ratio = field.div(z, &zbar)?;
        let expected_ratio = match case {
            Case::Plus => ratio.clone(),
            Case::Minus => field.div(&zbar, z)?,
        };
        let z_sq = field.mul(z, z);
        let f_z = f.apply(&field, z);
        let f_z_sq = f.apply(&field, &z_sq);
        let target_sq = match case {
            Case::Plus => z_sq.clone(),
            Case::Minus => field.mul(&zbar, &zbar),
        };

        let x = field.elem(z.a.clone(), Rational::zero());
        let y = field.elem(Rational::zero(), z.b.clone());
        let mut checks: Vec<(&str, QuadraticElement, QuadraticElement)> = Vec::new();
        match sd_sides(&field, f, &x, &y) {
            Ok((lhs, rhs)) => {
                checks.push(("equation_at_real_and_surd_parts", lhs.clone(), rhs));
                checks.push(("ratio_image", lhs, expected_ratio.clone()));
            }
            Err(Error::InjectivityViolation { .. }) => {
                checks.push(("injectivity", f.apply(&field, &x), f.apply(&field, &y)));
            }
            Err(e) => return Err(e),
        }
        let f_ratio = f.apply(&field, &ratio);
        checks.push(("f_of_ratio", f_ratio.clone(), expected_ratio));
        checks.push(("ratio_times_norm", field.mul(&f_ratio, &norm), f_z_sq.clone()));
        checks.push(("square_multiplicative", f_z_sq, field.mul(&f_z, &f_z)));
        checks.push(("square_of_image", field.mul(&f_z, &f_z), target_sq));

        for (name, lhs, rhs) in checks {
            report.checked_pairs += 1;
            if lhs != rhs {
                report.violate(Violation {
                    check: name.into(),
                    x: z.to_string(),
                    y: None,
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                });
            }
        }
    }
    report.note(format!(
        "case {} with f = {}: z/conj(z) chain on {} elements, exact",
        match case {
            Case::Plus => "f(sqrt(d)) = sqrt(d)",
            Case::Minus => "f(sqrt(d)) = -sqrt(d)",
        },
        f.name(),
        sample.len()
    ));
    Ok(report)
}

/// One of the two sign alternatives `s·(2 ± √d)` for `f(2+√d)`.
#[derive(Debug, Clone, Serialize)]
pub struct ContradictionComponent {
    pub sign: i8,
    pub target: String,
    /// `hypothetical − target`; may have zero √d-coefficient.
    pub raw_discrepancy: String,
    /// Denominator-free form of the same equation: `s(2+√d)² − d` (plus)
    /// or `d − s(2−√d)²` (minus). Its √d-coefficient is the `4√d` term.
    pub cleared_discrepancy: String,
    pub b_component: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum ContradictionVerdict {
    ContradictionConfirmed,
    Refuted { witness: String },
}

#[derive(Debug, Clone, Serialize)]
pub struct ContradictionReport {
    pub d: Rational,
    pub branch: Case,
    /// `f(2+√d)` computed through the equation at `x = 1+√d`, `y = 1`.
    pub hypothetical: String,
    pub verdict: ContradictionVerdict,
    pub components: Vec<ContradictionComponent>,
}

impl ContradictionReport {
    pub fn confirmed(&self) -> bool {
        self.verdict == ContradictionVerdict::ContradictionConfirmed
    }
}

/// Assumes the wrong sign for `f(1+√d)` and shows the resulting `f(2+√d)`
/// cannot take either allowed value.
///
/// Plus branch: `f(√d) = √d`, `f(1+√d) = −(1+√d)`, giving `d/(2+√d)`.
/// Minus branch: `f(√d) = −√d`, `f(1+√d) = √d − 1`, giving `−d/(√d−2)`.
pub fn wrong_sign_contradiction(d: &Rational, branch: Case) -> Result<ContradictionReport> {
    let field = QuadraticField::new(d.clone())?;
    let one = field.one();
    let two = field.from_i64(2);
    let sqrt_d = field.sqrt_d();
    let d_elem = field.elem(d.clone(), Rational::zero());
    let (f_sqrt_d, f_one_plus) = match branch {
        Case::Plus => (sqrt_d.clone(), field.neg(&field.add(&one, &sqrt_d))),
        Case::Minus => (field.neg(&sqrt_d), field.sub(&sqrt_d, &one)),
    };
    // (x+y)/(x−y) = (2+√d)/√d at x = 1+√d, y = 1, so
    // f(2+√d) = f(√d)·(f(1+√d)+1)/(f(1+√d)−1) by multiplicativity.
    let via_equation = field.mul(
        &f_sqrt_d,
        &field.div(&field.add(&f_one_plus, &one), &field.sub(&f_one_plus, &one))?,
    );
    let closed_form = match branch {
        Case::Plus => field.div(&d_elem, &field.add(&two, &sqrt_d))?,
        Case::Minus => field.div(&field.neg(&d_elem), &field.sub(&sqrt_d, &two))?,
    };
    if via_equation != closed_form {
        return Err(Error::InternalInconsistency(format!(
            "hypothetical value {via_equation} differs from closed form {closed_form}"
        )));
    }
    let base = match branch {
        Case::Plus => field.add(&two, &sqrt_d),
        Case::Minus => field.sub(&two, &sqrt_d),
    };
    let base_sq = field.mul(&base, &base);
    let mut components = Vec::new();
    let mut witness = None;
    for sign in [1i8, -1] {
        let s = field.from_i64(sign as i64);
        let target = field.mul(&s, &base);
        let raw = field.sub(&via_equation, &target);
        let cleared = match branch {
            Case::Plus => field.sub(&field.mul(&s, &base_sq), &d_elem),
            Case::Minus => field.sub(&d_elem, &field.mul(&s, &base_sq)),
        };
        if raw.is_zero() || cleared.b.is_zero() {
            witness.get_or_insert_with(|| target.to_string());
        }
        components.push(ContradictionComponent {
            sign,
            target: target.to_string(),
            raw_discrepancy: raw.to_string(),
            cleared_discrepancy: cleared.to_string(),
            b_component: cleared.b.clone(),
        });
    }
    Ok(ContradictionReport {
        d: d.clone(),
        branch,
        hypothetical: via_equation.to_string(),
        verdict: match witness {
            None => ContradictionVerdict::ContradictionConfirmed,
            Some(witness) => ContradictionVerdict::Refuted { witness },
        },
        components,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;
    use crate::fields::SampleField;

    #[test]
    fn automorphisms_pass() {
        for d in [2, 3, 5, -1, -2, -3] {
            for which in [Automorphism::Identity, Automorphism::Conjugation] {
                let r = verify_automorphism_sd(&q(d, 1), which, 100, 1).unwrap();
                assert!(r.passed(), "d = {d}, {which:?}");
                assert_eq!(r.checked_pairs, 100);
            }
        }
        assert!(verify_automorphism_sd(&q(4, 1), Automorphism::Identity, 10, 1).is_err());
    }

    #[test]
    fn case_plus_at_one_plus_sqrt_two() {
        let f = QuadraticField::new(q(2, 1)).unwrap();
        let z = f.int_elem(1, 1);
        // (1+√2)/(1−√2) = (1+√2)²/(1 − 2) = −(3 + 2√2)
        assert_eq!(f.div(&z, &quad_conj(&z)).unwrap(), f.int_elem(-3, -2));
        assert_eq!(z.norm(), q(-1, 1));
        assert_eq!(f.mul(&z, &z), f.int_elem(3, 2));
        assert!(ratio_case_formulas(&q(2, 1), Case::Plus, &[z]).unwrap().passed());
    }

    #[test]
    fn case_minus_in_gaussian_rationals() {
        let f = QuadraticField::new(q(-1, 1)).unwrap();
        let z = f.int_elem(1, 1);
        let zbar = quad_conj(&z);
        assert_eq!(f.div(&zbar, &z).unwrap(), f.int_elem(0, -1));
        assert_eq!(f.mul(&zbar, &zbar), f.int_elem(0, -2));
        assert!(ratio_case_formulas(&q(-1, 1), Case::Minus, &[z]).unwrap().passed());
    }

    #[test]
    fn case_formulas_on_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for d in [2, 3, 5, -1, -2, -3] {
            let f = QuadraticField::new(q(d, 1)).unwrap();
            let mut sample: Vec<_> = (0..50).map(|_| f.sample(&mut rng)).collect();
            sample.push(f.one());
            sample.push(f.sqrt_d());
            for case in [Case::Plus, Case::Minus] {
                assert!(ratio_case_formulas(&q(d, 1), case, &sample).unwrap().passed());
            }
        }
    }

    #[test]
    fn case_formulas_reject_zero_and_wrong_field() {
        let f = QuadraticField::new(q(2, 1)).unwrap();
        assert!(ratio_case_formulas(&q(2, 1), Case::Plus, &[f.zero()]).is_err());
        let g = QuadraticField::new(q(3, 1)).unwrap();
        assert!(ratio_case_formulas(&q(2, 1), Case::Plus, &[g.one()]).is_err());
    }

    #[test]
    fn contradiction_at_two() {
        let r = wrong_sign_contradiction(&q(2, 1), Case::Plus).unwrap();
        // 2/(2+√2) = 2(2−√2)/(4−2) = 2 − √2
        assert_eq!(r.hypothetical, "2-sqrt(2)");
        assert!(r.confirmed());
        // against −(2+√2) the raw difference is the rational 4
        assert_eq!(r.components[1].raw_discrepancy, "4");
        for c in &r.components {
            assert_eq!(c.b_component.abs(), q(4, 1));
        }
    }

    #[test]
    fn contradiction_confirms_for_nonsquares() {
        for d in [q(2, 1), q(3, 1), q(5, 1), q(-1, 1), q(-2, 1), q(-3, 1), q(7, 3), q(-5, 4)] {
            for branch in [Case::Plus, Case::Minus] {
                let r = wrong_sign_contradiction(&d, branch).unwrap();
                assert!(r.confirmed(), "d = {d}, {branch:?}");
                assert!(r.components.iter().all(|c| !c.b_component.is_zero()));
                assert!(r.components.iter().all(|c| c.raw_discrepancy != "0"));
            }
        }
        assert!(wrong_sign_contradiction(&q(9, 4), Case::Plus).is_err());
    }

    #[test]
    fn contradiction_minus_values() {
        // d = 5: −5/(√5 − 2) = −5(√5 + 2)/(5 − 4) = −10 − 5√5
        let r = wrong_sign_contradiction(&q(5, 1), Case::Minus).unwrap();
        assert_eq!(r.hypothetical, "-10-5*sqrt(5)");
        let r = wrong_sign_contradiction(&q(-1, 1), Case::Minus).unwrap();
        assert!(r.confirmed());
    }
}
