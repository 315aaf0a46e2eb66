//! The integer recurrence `f(n+1) = f(n−1)·(f(n)+1)/(f(n)−1)` carried out
//! symbolically in `u = f(2)`.

use serde::Serialize;

use super::report::{SdReport, Violation};
use crate::error::{Error, Result};
use crate::exact::{rational_roots, Polynomial, Rational, RationalFunction};

pub const DEFAULT_SEQUENCE_CAP: usize = 50;

/// `entries[n] = f(n)` as a rational function of `u`, for `0 ≤ n ≤ N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicSequence {
    pub entries: Vec<RationalFunction>,
}

impl SymbolicSequence {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entry(&self, n: usize) -> Option<&RationalFunction> {
        self.entries.get(n)
    }

    pub fn render(&self, n: usize) -> Option<String> {
        self.entries.get(n).map(|e| e.display_with("u"))
    }
}

pub fn symbolic_sequence(n: usize) -> Result<SymbolicSequence> {
    symbolic_sequence_with_cap(n, DEFAULT_SEQUENCE_CAP)
}

pub fn symbolic_sequence_with_cap(n: usize, cap: usize) -> Result<SymbolicSequence> {
    if n < 2 {
        return Err(Error::Precondition(format!("sequence length must be at least 2, got {n}")));
    }
    if n > cap {
        return Err(Error::BudgetExceeded(format!("sequence length {n} exceeds cap {cap}")));
    }
    let one = RationalFunction::one();
    let mut entries = vec![RationalFunction::zero(), one.clone(), RationalFunction::var()];
    for k in 2..n {
        let fk = &entries[k];
        let den = fk - &one;
        if den.is_zero() {
            return Err(Error::RecurrenceDegenerate(k));
        }
        let next = &entries[k - 1] * &(fk + &one).checked_div(&den)?;
        entries.push(next);
    }
    Ok(SymbolicSequence { entries })
}

/// The closed forms of `f(0), …, f(8)` written out by hand, as a table
/// independent of the recurrence.
pub fn reference_values() -> Vec<RationalFunction> {
    let p = Polynomial::from_ints;
    let rf = |n: &[i64], d: &[i64]| RationalFunction::new(p(n), p(d)).expect("nonzero denominator");
    vec![
        rf(&[0], &[1]),
        rf(&[1], &[1]),
        rf(&[0, 1], &[1]),
        rf(&[1, 1], &[-1, 1]),
        rf(&[0, 0, 1], &[1]),
        // (u² + 1)/(u − 1)²
        rf(&[1, 0, 1], &[1, -2, 1]),
        // u(u² − u + 1)
        rf(&[0, 1, -1, 1], &[1]),
        rf(&[1, 1, -1, 1], &[-1, 3, -3, 1]),
        // u²(u² − 2u + 2)
        rf(&[0, 0, 2, -2, 1], &[1]),
    ]
}

/// Outcome of imposing `f(8) = f(2)·f(4)` on the symbolic sequence.
#[derive(Debug, Clone, Serialize)]
pub struct UConstraint {
    /// Numerator of `f(8) − u·f(4)`, monic.
    #[serde(serialize_with = "ser_poly_u")]
    pub numerator: Polynomial,
    /// Rational roots with multiplicity, ascending.
    pub roots: Vec<(Rational, usize)>,
    /// Roots that would make `f` non-injective: `f(2) = f(0)` or `f(2) = f(1)`.
    pub excluded: Vec<Rational>,
    pub surviving: Vec<Rational>,
    /// `f(8)` evaluated at the surviving root.
    pub entry8_at_survivor: Rational,
}

fn ser_poly_u<S: serde::Serializer>(p: &Polynomial, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.display_with("u"))
}

pub fn u_constraint() -> Result<UConstraint> {
    let seq = symbolic_sequence(8)?;
    let u = RationalFunction::var();
    let diff = &seq.entries[8] - &(&u * &seq.entries[4]);
    let numerator = diff.num().monic();
    let roots = rational_roots(&numerator)?;

    let expected = vec![(Rational::zero(), 2), (Rational::one(), 1), (Rational::from(2), 1)];
    if roots != expected {
        return Err(Error::InternalInconsistency(format!(
            "constraint roots {roots:?} differ from {{0 (x2), 1, 2}}"
        )));
    }
    let excluded = vec![Rational::zero(), Rational::one()];
    let surviving: Vec<Rational> = roots
        .iter()
        .map(|(r, _)| r.clone())
        .filter(|r| !excluded.contains(r))
        .collect();
    if surviving != [Rational::from(2)] {
        return Err(Error::InternalInconsistency(format!("surviving roots {surviving:?}")));
    }
    let entry8_at_survivor = seq.entries[8].eval(&surviving[0])?;
    Ok(UConstraint {
        numerator,
        roots,
        excluded,
        surviving,
        entry8_at_survivor,
    })
}

/// Runs the recurrence numerically from `f(1) = 1`, `f(2) = 2` and checks
/// `f(n) = n` for every `n ≤ N`.
pub fn integer_induction_check(n: usize) -> Result<SdReport> {
    if n < 3 {
        return Err(Error::Precondition(format!("induction bound must be at least 3, got {n}")));
    }
    let mut report = SdReport::new();
    let one = Rational::one();
    let (mut prev, mut cur) = (Rational::one(), Rational::from(2));
    for k in 2..n {
        let next = &prev * &(&cur + &one).checked_div(&(&cur - &one))?;
        let expected = Rational::from(k as i64 + 1);
        report.checked_pairs += 1;
        if next != expected {
            report.violate(Violation {
                check: "integer_induction".into(),
                x: (k + 1).to_string(),
                y: None,
                lhs: next.to_string(),
                rhs: expected.to_string(),
            });
            report.note(format!("first offending n = {}", k + 1));
            return Ok(report);
        }
        prev = cur;
        cur = next;
    }
    report.note(format!("f(n) = n for 0 <= n <= {n}"));
    Ok(report)
}
