//! The functional equation `f((x+y)/(x−y)) = (f(x)+f(y))/(f(x)−f(y))` as
//! executable checks.

use super::candidate::SdCandidate;
use super::report::{SdReport, Violation};
use crate::error::{Error, Result};
use crate::fields::Field;

/// Both sides of the equation at `(x, y)`.
///
/// `x = y` is `InvalidPair`. `f(x) = f(y)` makes the right-hand side
/// undefined and is reported as `InjectivityViolation`.
pub fn sd_sides<F: Field, C: SdCandidate<F> + ?Sized>(
    field: &F,
    f: &C,
    x: &F::Elem,
    y: &F::Elem,
) -> Result<(F::Elem, F::Elem)> {
    if field.eq(x, y) {
        return Err(Error::InvalidPair(x.to_string()));
    }
    let fx = f.apply(field, x);
    let fy = f.apply(field, y);
    if field.eq(&fx, &fy) {
        return Err(Error::InjectivityViolation {
            x: x.to_string(),
            y: y.to_string(),
            value: fx.to_string(),
        });
    }
    let arg = field.div(&field.add(x, y), &field.sub(x, y))?;
    let lhs = f.apply(field, &arg);
    let rhs = field.div(&field.add(&fx, &fy), &field.sub(&fx, &fy))?;
    Ok((lhs, rhs))
}

/// `f((x+y)/(x−y)) − (f(x)+f(y))/(f(x)−f(y))`.
pub fn sd_residual<F: Field, C: SdCandidate<F> + ?Sized>(
    field: &F,
    f: &C,
    x: &F::Elem,
    y: &F::Elem,
) -> Result<F::Elem> {
    let (lhs, rhs) = sd_sides(field, f, x, y)?;
    Ok(field.sub(&lhs, &rhs))
}

/// Evaluates the equation on every pair. Injectivity failures are recorded
/// as violations with `rhs = "undefined"`.
pub fn check_sd<F: Field, C: SdCandidate<F> + ?Sized>(
    field: &F,
    f: &C,
    pairs: &[(F::Elem, F::Elem)],
) -> Result<SdReport> {
    if pairs.is_empty() {
        return Err(Error::Precondition("pair sample is empty".into()));
    }
    let mut report = SdReport::new();
    for (x, y) in pairs {
        report.checked_pairs += 1;
        match sd_sides(field, f, x, y) {
            Ok((lhs, rhs)) => {
                if !field.eq(&lhs, &rhs) {
                    report.violate(Violation {
                        check: "sd_equation".into(),
                        x: x.to_string(),
                        y: Some(y.to_string()),
                        lhs: lhs.to_string(),
                        rhs: rhs.to_string(),
                    });
                }
            }
            Err(Error::InjectivityViolation { value, .. }) => {
                report.violate(Violation {
                    check: "injectivity".into(),
                    x: x.to_string(),
                    y: Some(y.to_string()),
                    lhs: value,
                    rhs: "undefined".into(),
                });
            }
            Err(e) => return Err(e),
        }
    }
    report.note(format!(
        "{} on {} pairs in {}, {}",
        f.name(),
        pairs.len(),
        field.name(),
        if field.is_exact() { "exact".to_string() } else { "within tolerance".to_string() }
    ));
    Ok(report)
}

/// Checks the consequences every SD map must satisfy: `f(0) = 0`,
/// `f(1) = 1`, oddness, multiplicativity and injectivity on the sample.
///
/// Multiplicativity is checked on `(s[i], s[i+1])` cyclically and on each
/// square `(s[i], s[i])`.
pub fn check_properties<F: Field, C: SdCandidate<F> + ?Sized>(
    field: &F,
    f: &C,
    sample: &[F::Elem],
) -> Result<SdReport> {
    if sample.is_empty() {
        return Err(Error::Precondition("element sample is empty".into()));
    }
    let mut report = SdReport::new();
    let check = |report: &mut SdReport, name: &str, x: &F::Elem, y: Option<&F::Elem>, lhs: F::Elem, rhs: F::Elem| {
        report.checked_pairs += 1;
        if !field.eq(&lhs, &rhs) {
            report.violate(Violation {
                check: name.into(),
                x: x.to_string(),
                y: y.map(ToString::to_string),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
    };

    let zero = field.zero();
    let one = field.one();
    check(&mut report, "fixes_zero", &zero, None, f.apply(field, &zero), zero.clone());
    check(&mut report, "fixes_one", &one, None, f.apply(field, &one), one.clone());

    let images: Vec<F::Elem> = sample.iter().map(|x| f.apply(field, x)).collect();
    for (x, fx) in sample.iter().zip(&images) {
        let lhs = f.apply(field, &field.neg(x));
        check(&mut report, "oddness", x, None, lhs, field.neg(fx));
    }

    let n = sample.len();
    for i in 0..n {
        for j in [i, (i + 1) % n] {
            let (x, y) = (&sample[i], &sample[j]);
            let lhs = f.apply(field, &field.mul(x, y));
            let rhs = field.mul(&images[i], &images[j]);
            check(&mut report, "multiplicativity", x, Some(y), lhs, rhs);
            if n == 1 {
                break;
            }
        }
    }

    for i in 0..n {
        for j in i + 1..n {
            if field.eq(&sample[i], &sample[j]) {
                continue;
            }
            report.checked_pairs += 1;
            if field.eq(&images[i], &images[j]) {
                report.violate(Violation {
                    check: "injectivity".into(),
                    x: sample[i].to_string(),
                    y: Some(sample[j].to_string()),
                    lhs: images[i].to_string(),
                    rhs: images[j].to_string(),
                });
            }
        }
    }
    report.note(format!("properties of {} on {} sample elements of {}", f.name(), n, field.name()));
    Ok(report)
}
