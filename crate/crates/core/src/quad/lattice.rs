//! Propagating `f(m + n√d)` over an integer grid with the progression
//! argument.
//!
//! For the identity branch the axes are base cases, `1+√d` comes from sign
//! resolution, and progressions fill the rest. For conjugation the same
//! replay runs on `conj ∘ f`, which fixes the grid when `f` is conjugation.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::{wrong_sign_contradiction, Automorphism, Case};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::fields::{quad_conj, Field, QuadraticElement, QuadraticField};
use crate::sd::{ap_propagate, Conjugated, Conjugation, Identity, SdCandidate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeOrder {
    /// Vertical line `m = 1`, then each row `n` from `a = n√d`, step `1`.
    #[default]
    RowMajor,
    /// Row `n = 1`, then each column `m` from `a = m`, step `√d`.
    ColumnMajor,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "source", rename_all = "snake_case")]
pub enum PointSource {
    /// `f` fixes ℚ.
    RationalAxis,
    /// `f(n√d) = n·f(√d)`.
    SurdAxis,
    /// `f(1+√d)` settled by the sign contradiction.
    SignResolution,
    /// Derived by a progression move from `a` with step `step`.
    Progression { a: String, step: String, k: i64 },
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticePoint {
    pub m: i64,
    pub n: i64,
    #[serde(serialize_with = "ser_display")]
    pub value: QuadraticElement,
    #[serde(serialize_with = "ser_display")]
    pub image: QuadraticElement,
    #[serde(flatten)]
    pub source: PointSource,
}

fn ser_display<S: Serializer>(v: &QuadraticElement, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeFixation {
    pub d: Rational,
    pub map: Automorphism,
    pub m_bound: i64,
    pub n_bound: i64,
    pub order: LatticeOrder,
    /// Certified points keyed by `(m, n)`; the origin is excluded.
    #[serde(serialize_with = "ser_points")]
    pub points: BTreeMap<(i64, i64), LatticePoint>,
    pub notes: Vec<String>,
}

fn ser_points<S: Serializer>(p: &BTreeMap<(i64, i64), LatticePoint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(p.values())
}

impl LatticeFixation {
    pub fn expected_points(&self) -> usize {
        ((2 * self.m_bound + 1) * (2 * self.n_bound + 1) - 1) as usize
    }

    pub fn all_certified(&self) -> bool {
        self.points.len() == self.expected_points()
    }

    /// `(m, n) ↦ f(m + n√d)`, for comparing two runs.
    pub fn images(&self) -> BTreeMap<(i64, i64), QuadraticElement> {
        self.points.iter().map(|(k, p)| (*k, p.image.clone())).collect()
    }
}

pub fn lattice_fix(d: &Rational, map: Automorphism, m_bound: i64, n_bound: i64) -> Result<LatticeFixation> {
    lattice_fix_ordered(d, map, m_bound, n_bound, LatticeOrder::RowMajor)
}

struct Replay<'a> {
    field: &'a QuadraticField,
    map: Automorphism,
    /// The map whose fixed points are propagated: `f` or `conj ∘ f`.
    fixer: &'a (dyn SdCandidate<QuadraticField> + 'a),
}

impl Replay<'_> {
    fn point(&self, m: i64, n: i64, source: PointSource) -> Result<LatticePoint> {
        let value = self.field.int_elem(m, n);
        let image = self.map.apply(&value);
        let expected = match self.map {
            Automorphism::Identity => value.clone(),
            Automorphism::Conjugation => quad_conj(&value),
        };
        if image != expected || self.fixer.apply(self.field, &value) != value {
            return Err(Error::InternalInconsistency(format!(
                "f({value}) = {image}, expected {expected}"
            )));
        }
        Ok(LatticePoint { m, n, value, image, source })
    }

    /// Runs the progression `a + k·step` and maps each derived term back to
    /// grid coordinates with `coords(k)`.
    fn line(
        &self,
        a: &QuadraticElement,
        step: &QuadraticElement,
        steps: i64,
        coords: impl Fn(i64) -> (i64, i64),
    ) -> Result<Vec<LatticePoint>> {
        let run = ap_propagate(self.field, self.fixer, a, step, steps as usize)?;
        if let Some(fail) = run.failures.first() {
            return Err(Error::InternalInconsistency(format!(
                "progression from {a} by {step} failed at k = {}: {}",
                fail.k, fail.reason
            )));
        }
        run.terms()
            .into_iter()
            .map(|(k, term)| {
                let (m, n) = coords(k);
                debug_assert_eq!(term, self.field.int_elem(m, n));
                self.point(
                    m,
                    n,
                    PointSource::Progression {
                        a: a.to_string(),
                        step: step.to_string(),
                        k,
                    },
                )
            })
            .collect()
    }
}

/// Certifies `f(m + n√d)` for `|m| ≤ M`, `|n| ≤ N`, excluding the origin.
pub fn lattice_fix_ordered(
    d: &Rational,
    map: Automorphism,
    m_bound: i64,
    n_bound: i64,
    order: LatticeOrder,
) -> Result<LatticeFixation> {
    let field = QuadraticField::new(d.clone())?;
    if m_bound < 1 || n_bound < 1 {
        return Err(Error::Precondition(format!("grid bounds must be >= 1, got {m_bound}x{n_bound}")));
    }
    let conj_of_conj = Conjugated(&Conjugation);
    let fixer: &dyn SdCandidate<QuadraticField> = match map {
        Automorphism::Identity => &Identity,
        Automorphism::Conjugation => &conj_of_conj,
    };
    let replay = Replay { field: &field, map, fixer };
    let mut notes = Vec::new();
    let mut points = BTreeMap::new();
    let insert = |points: &mut BTreeMap<(i64, i64), LatticePoint>, p: LatticePoint| {
        points.entry((p.m, p.n)).or_insert(p);
    };

    for m in (-m_bound..=m_bound).filter(|&m| m != 0) {
        insert(&mut points, replay.point(m, 0, PointSource::RationalAxis)?);
    }
    for n in (-n_bound..=n_bound).filter(|&n| n != 0) {
        insert(&mut points, replay.point(0, n, PointSource::SurdAxis)?);
    }

    let branch = match map {
        Automorphism::Identity => Case::Plus,
        Automorphism::Conjugation => Case::Minus,
    };
    let contradiction = wrong_sign_contradiction(d, branch)?;
    if !contradiction.confirmed() {
        return Err(Error::InternalInconsistency(format!(
            "sign resolution not confirmed for d = {d}"
        )));
    }
    insert(&mut points, replay.point(1, 1, PointSource::SignResolution)?);
    if map == Automorphism::Conjugation {
        notes.push(
            "conjugation branch propagated through conj . f, which must fix the grid; this step is reconstructed from the identity branch"
                .into(),
        );
    }

    let one = field.one();
    let sqrt_d = field.sqrt_d();
    let lines: Vec<Vec<LatticePoint>> = match order {
        LatticeOrder::RowMajor => {
            let column = replay.line(&one, &sqrt_d, n_bound, |k| (1, k))?;
            for p in column {
                insert(&mut points, p);
            }
            let rows: Vec<i64> = (-n_bound..=n_bound).filter(|&n| n != 0).collect();
            rows.par_iter()
                .map(|&n| replay.line(&field.int_elem(0, n), &one, m_bound, move |k| (k, n)))
                .collect::<Result<_>>()?
        }
        LatticeOrder::ColumnMajor => {
            let row = replay.line(&sqrt_d, &one, m_bound, |k| (k, 1))?;
            for p in row {
                insert(&mut points, p);
            }
            let cols: Vec<i64> = (-m_bound..=m_bound).filter(|&m| m != 0).collect();
            cols.par_iter()
                .map(|&m| replay.line(&field.int_elem(m, 0), &sqrt_d, n_bound, move |k| (m, k)))
                .collect::<Result<_>>()?
        }
    };
    for p in lines.into_iter().flatten() {
        insert(&mut points, p);
    }
    debug_assert!(!points.contains_key(&(0, 0)));

    let out = LatticeFixation {
        d: d.clone(),
        map,
        m_bound,
        n_bound,
        order,
        points,
        notes,
    };
    if !out.all_certified() {
        return Err(Error::InternalInconsistency(format!(
            "certified {} of {} grid points",
            out.points.len(),
            out.expected_points()
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn identity_five_by_five() {
        let r = lattice_fix(&q(2, 1), Automorphism::Identity, 5, 5).unwrap();
        assert_eq!(r.points.len(), 120);
        let f = QuadraticField::new(q(2, 1)).unwrap();
        for ((m, n), p) in &r.points {
            assert_eq!(p.image, f.int_elem(*m, *n));
        }
    }

    #[test]
    fn conjugation_gaussian() {
        let r = lattice_fix(&q(-1, 1), Automorphism::Conjugation, 3, 3).unwrap();
        assert_eq!(r.points.len(), 48);
        let f = QuadraticField::new(q(-1, 1)).unwrap();
        for ((m, n), p) in &r.points {
            assert_eq!(p.image, f.int_elem(*m, -*n));
        }
        assert!(!r.notes.is_empty());
    }

    #[test]
    fn smallest_grid() {
        let r = lattice_fix(&q(2, 1), Automorphism::Identity, 1, 1).unwrap();
        assert_eq!(r.points.len(), 8);
        let off_axis: Vec<_> = r.points.keys().filter(|(m, n)| *m != 0 && *n != 0).collect();
        assert_eq!(off_axis, vec![&(-1, -1), &(-1, 1), &(1, -1), &(1, 1)]);
        assert_eq!(r.points[&(1, 1)].source, PointSource::SignResolution);
    }

    #[test]
    fn orders_agree() {
        for (d, map) in [(2, Automorphism::Identity), (-3, Automorphism::Conjugation), (5, Automorphism::Conjugation)] {
            let a = lattice_fix_ordered(&q(d, 1), map, 4, 3, LatticeOrder::RowMajor).unwrap();
            let b = lattice_fix_ordered(&q(d, 1), map, 4, 3, LatticeOrder::ColumnMajor).unwrap();
            assert_eq!(a.images(), b.images());
        }
    }

    #[test]
    fn bounds_checked() {
        assert!(lattice_fix(&q(2, 1), Automorphism::Identity, 0, 3).is_err());
        assert!(lattice_fix(&q(4, 1), Automorphism::Identity, 2, 2).is_err());
    }

    #[test]
    fn serializes_sparse() {
        let r = lattice_fix(&q(2, 1), Automorphism::Identity, 1, 1).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["points"].as_array().unwrap().len(), 8);
        let p = v["points"].as_array().unwrap().iter().find(|p| p["m"] == 1 && p["n"] == 1).unwrap();
        assert_eq!(p["source"], "sign_resolution");
        assert_eq!(p["image"], "1+sqrt(2)");
    }
}
