//! Floating-point smoke test of the conclusion over ℂ: identity and
//! conjugation are SD maps, `f(z/z̄)` behaves as in the two cases, and the
//! half-angle identities behind `e^{iθ/2}` hold.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::fields::{sample_pairs, ApproxComplex, ComplexField, Field, SampleField};
use crate::sd::{check_sd, Conjugation, Identity, SdCandidate, SdReport, Violation};

#[derive(Debug, Clone, Serialize)]
pub struct ComplexSuite {
    pub tolerance: f64,
    pub identity_sd: SdReport,
    pub conjugation_sd: SdReport,
    pub ratio_identities: SdReport,
    pub half_angle: SdReport,
}

impl ComplexSuite {
    pub fn passed(&self) -> bool {
        [&self.identity_sd, &self.conjugation_sd, &self.ratio_identities, &self.half_angle]
            .iter()
            .all(|r| r.passed())
    }
}

fn compare(report: &mut SdReport, field: &ComplexField, check: &str, x: String, lhs: ApproxComplex, rhs: ApproxComplex) {
    report.checked_pairs += 1;
    if !field.eq(&lhs, &rhs) {
        report.violate(Violation {
            check: check.into(),
            x,
            y: None,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        });
    }
}

fn real(x: f64) -> ApproxComplex {
    ApproxComplex { re: x, im: 0.0 }
}

/// For each sampled `z`, and `f` the identity or conjugation:
/// `f(z/z̄)` is `z/z̄` or `z̄/z`, `f(e^{iθ}) = f(w/w̄)` with `w = e^{iθ/2}`,
/// and `f(z) = |z|·f(e^{iθ})`.
fn ratio_report(field: &ComplexField, zs: &[ApproxComplex]) -> Result<SdReport> {
    let mut report = SdReport::new();
    let maps: [(&dyn SdCandidate<ComplexField>, bool); 2] = [(&Identity, false), (&Conjugation, true)];
    for z in zs {
        let zbar = z.conj();
        let theta = z.im.atan2(z.re);
        let unit = ApproxComplex::from_polar(1.0, theta);
        let w = ApproxComplex::from_polar(1.0, theta / 2.0);
        for (f, conjugates) in maps {
            let ratio = field.div(z, &zbar)?;
            let expected = if conjugates { field.div(&zbar, z)? } else { ratio };
            compare(&mut report, field, "f_of_z_over_conj", z.to_string(), f.apply(field, &ratio), expected);

            let w_ratio = field.div(&w, &w.conj())?;
            compare(&mut report, field, "unit_as_half_angle_ratio", z.to_string(), w_ratio, unit);
            let f_unit = f.apply(field, &w_ratio);
            let expected_unit = if conjugates { unit.conj() } else { unit };
            compare(&mut report, field, "f_of_unit", z.to_string(), f_unit, expected_unit);

            let polar = field.mul(&real(z.abs()), &f_unit);
            compare(&mut report, field, "polar_decomposition", z.to_string(), polar, f.apply(field, z));
        }
    }
    report.note(format!("z/conj(z) and polar identities on {} samples, within tolerance {}", zs.len(), field.tol()));
    Ok(report)
}

/// `cos(θ/2) = √((1+cos θ)/2)`, `|sin(θ/2)| = √((1−cos θ)/2)` and
/// `(e^{iθ/2})² = e^{iθ}` for `θ ∈ (−π, π)`.
pub fn half_angle_report(field: &ComplexField, thetas: &[f64]) -> SdReport {
    let mut report = SdReport::new();
    for &theta in thetas {
        let label = format!("theta={theta}");
        let c = theta.cos();
        let half = theta / 2.0;
        compare(&mut report, field, "cos_half_angle", label.clone(), real(half.cos()), real(((1.0 + c) / 2.0).sqrt()));
        compare(&mut report, field, "sin_half_angle", label.clone(), real(half.sin().abs()), real(((1.0 - c) / 2.0).max(0.0).sqrt()));
        let w = ApproxComplex::from_polar(1.0, half);
        compare(&mut report, field, "half_angle_square", label, field.mul(&w, &w), ApproxComplex::from_polar(1.0, theta));
    }
    report.note(format!("half-angle identities on {} angles", thetas.len()));
    report
}

/// The full suite on `samples` seeded pairs, elements and angles. The angle
/// list always includes `π/3`.
pub fn verify_complex(tol: f64, samples: usize, seed: u64) -> Result<ComplexSuite> {
    let field = ComplexField::new(tol)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs = sample_pairs(&field, &mut rng, samples);
    let identity_sd = check_sd(&field, &Identity, &pairs)?;
    let conjugation_sd = check_sd(&field, &Conjugation, &pairs)?;
    let zs: Vec<ApproxComplex> = (0..samples).map(|_| field.sample(&mut rng)).collect();
    let ratio_identities = ratio_report(&field, &zs)?;
    let mut thetas = vec![PI / 3.0];
    while thetas.len() < samples.max(1) {
        let t: f64 = rng.gen_range(-PI..PI);
        if t > -PI {
            thetas.push(t);
        }
    }
    let half_angle = half_angle_report(&field, &thetas);
    Ok(ComplexSuite {
        tolerance: tol,
        identity_sd,
        conjugation_sd,
        ratio_identities,
        half_angle,
    })
}
