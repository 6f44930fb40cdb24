//! Poles added at points that are not zeros of order `n >= 3`.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::verify::circle_winding;
use super::{detect_order, CensusDiff, ZERO_TOLERANCE};
use crate::error::{Error, Result};
use crate::harmonic::{CensusOptions, HarmonicLens, Sense, SenseClass, ZeroCensus};
use crate::par;
use crate::perturb::local_model_linear;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnywhereCase {
    Pole,
    NonZero,
    PreservingZero,
    ReversingZero,
}

impl AnywhereCase {
    /// Poincare index of `f` at the point.
    pub fn index(self) -> i64 {
        match self {
            AnywhereCase::Pole | AnywhereCase::NonZero => 0,
            AnywhereCase::PreservingZero => 1,
            AnywhereCase::ReversingZero => -1,
        }
    }

    fn is_zero(self) -> bool {
        matches!(self, AnywhereCase::PreservingZero | AnywhereCase::ReversingZero)
    }
}

/// Lower bound `k + ind(z0; f)` on the zeros created near `z0` by a pole of
/// order `k`, from the argument principle on a small circle.
pub fn higher_order_floor(k: usize, index: i64) -> i64 {
    k as i64 + index
}

/// Sorts `z0` into one of the four cases. Singular points, and zeros where
/// `R'` vanishes, are refused.
pub fn classify_point(f: &HarmonicLens, z0: Complex64) -> Result<AnywhereCase> {
    if f.rational().pole_near(z0).is_some() {
        return Ok(AnywhereCase::Pole);
    }
    let value = f.eval(z0).ok_or(Error::AtPole(z0))?;
    if value.norm() > ZERO_TOLERANCE * (1.0 + z0.norm()) {
        return Ok(AnywhereCase::NonZero);
    }
    let class = f.classify(z0)?;
    match class.sense {
        Sense::Preserving => Ok(AnywhereCase::PreservingZero),
        Sense::Singular => Err(Error::UnsupportedCase(format!(
            "{z0} is a singular zero (|R'| = {})",
            class.witness
        ))),
        Sense::Reversing => {
            if detect_order(f.rational(), z0)?.0 >= 3 {
                return Err(Error::UnsupportedCase(format!(
                    "R'({z0}) = 0; the local theorem of order n >= 3 applies"
                )));
            }
            Ok(AnywhereCase::ReversingZero)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Prediction {
    pub total: i64,
    pub preserving: i64,
    pub reversing: i64,
}

/// Minimum numbers of zeros created in `D(z0, r)`.
pub fn predicted_minimum(case: AnywhereCase, order: usize) -> Prediction {
    let (p, r) = match (case, order) {
        (AnywhereCase::Pole, _) => (0, 0),
        (AnywhereCase::NonZero, 1) => (1, 0),
        (AnywhereCase::PreservingZero, 1) => (2, 0),
        (AnywhereCase::ReversingZero, 1) => (2, 2),
        (c, k) => (higher_order_floor(k, c.index()).max(0), 0),
    };
    Prediction {
        total: p + r,
        preserving: p,
        reversing: r,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AnywhereReport {
    #[serde(with = "crate::serde_complex")]
    pub z0: Complex64,
    pub case: AnywhereCase,
    #[serde(with = "crate::serde_complex")]
    pub residue: Complex64,
    pub order: usize,
    /// `|R'(z0)|`, absent at a pole.
    pub derivative_modulus: Option<f64>,
    pub near_radius: f64,
    pub predicted: Prediction,
    pub created_near: i64,
    pub created_near_preserving: i64,
    pub created_near_reversing: i64,
    /// Winding of `F` on the circle `|z - z0| = near_radius`.
    pub near_winding: Option<i64>,
    /// `f` and `F` have equally many zeros outside `D(z0, near_radius)`.
    pub outside_equal: bool,
    pub regular_before: bool,
    pub regular_after: bool,
    pub audits_ok: bool,
    pub minimum_met: bool,
    pub before: ZeroCensus,
    pub after: ZeroCensus,
    pub diff: CensusDiff,
}

/// Distance from `z0` to the nearest zero or pole of `f` other than `z0`.
fn isolation(f: &HarmonicLens, census: &ZeroCensus, z0: Complex64) -> f64 {
    let tol = 1e-6 * (1.0 + z0.norm());
    census
        .zeros
        .iter()
        .map(|z| z.location)
        .chain(f.rational().poles().iter().map(|p| p.location))
        .map(|w| (w - z0).norm())
        .filter(|d| *d > tol)
        .fold(f64::INFINITY, f64::min)
}

/// Radius of the disk in which new zeros are expected for a pole of order
/// `k` with residue modulus `eps`, capped at half the distance to the next
/// exceptional point.
fn near_radius(case: AnywhereCase, eps: f64, order: usize, f: &HarmonicLens, z0: Complex64, isolation: f64) -> f64 {
    let k = order as f64;
    let r = match case {
        AnywhereCase::Pole => 0.25 * isolation,
        AnywhereCase::NonZero => {
            let fz = f.eval(z0).map(|v| v.norm()).unwrap_or(1.0);
            2.0 * (eps / fz).powf(1.0 / k)
        }
        _ => {
            let c = f.rational().eval_derivative(z0).map(|d| d.norm()).unwrap_or(0.0);
            2.0 * (eps / (c - 1.0).abs().min(1.0)).powf(1.0 / (k + 1.0))
        }
    };
    r.min(0.5 * isolation)
}

/// A residue small enough for the arbitrary-point theorem to be observable:
/// the predicted near disk stays well inside the isolation radius of `z0`.
/// At a non-zero the pole term is also kept below `|f(z0)| / 400` at that
/// radius, so that it cannot push a nearby fold of `f` through zero.
pub fn suggest_eps(f: &HarmonicLens, census: &ZeroCensus, z0: Complex64) -> Result<f64> {
    let case = classify_point(f, z0)?;
    let iso = isolation(f, census, z0);
    let target = 0.05 * iso.min(1.0);
    Ok(match case {
        AnywhereCase::Pole => 1e-3 * target,
        AnywhereCase::NonZero => 0.05 * target * f.eval(z0).map(|v| v.norm()).unwrap_or(1.0),
        _ => {
            let c = f.rational().eval_derivative(z0).map(|d| d.norm()).unwrap_or(0.0);
            0.25 * target * target * (c - 1.0).abs().min(1.0)
        }
    })
}

fn seeds(case: AnywhereCase, residue: Complex64, order: usize, f: &HarmonicLens, z0: Complex64, radius: f64) -> Vec<Complex64> {
    let mut out = Vec::new();
    if case.is_zero() && order == 1 && residue.im == 0.0 && residue.re > 0.0 {
        if let Some(d) = f.rational().eval_derivative(z0) {
            if let Ok(points) = local_model_linear(d, residue.re) {
                out.extend(points.into_iter().map(|(w, _)| z0 + w));
            }
        }
    }
    if case == AnywhereCase::NonZero {
        if let Some(v) = f.eval(z0) {
            let w = -residue / v;
            for j in 0..order {
                out.push(z0 + w.powf(1.0 / order as f64) * Complex64::from_polar(1.0, TAU * j as f64 / order as f64));
            }
        }
    }
    let count = 12 * (order + 1);
    for factor in [0.1, 0.25, 0.5, 0.75] {
        for j in 0..count {
            out.push(z0 + Complex64::from_polar(radius * factor, TAU * (j as f64 + 0.5) / count as f64));
        }
    }
    out
}

/// Adds `eps / (z - z0)` at an arbitrary point and compares the observed new
/// zeros with the case prediction.
pub fn perturb_anywhere(f: &HarmonicLens, z0: Complex64, eps: f64, opts: &CensusOptions) -> Result<AnywhereReport> {
    perturb_anywhere_with(f, z0, Complex64::new(eps, 0.0), 1, None, opts)
}

/// General form: complex residue, pole order `k`, optional near radius.
pub fn perturb_anywhere_with(
    f: &HarmonicLens,
    z0: Complex64,
    residue: Complex64,
    order: usize,
    near: Option<f64>,
    opts: &CensusOptions,
) -> Result<AnywhereReport> {
    let case = classify_point(f, z0)?;
    if residue.norm() == 0.0 {
        return Err(Error::InvalidArgument("residue must be nonzero".into()));
    }
    let big_f = HarmonicLens::new(f.rational().add_pole(z0, residue, order)?)?;
    let common = super::shared_options(f, &big_f, opts);
    let before = f.find_zeros(&common)?;
    let iso = isolation(f, &before, z0);
    let radius = near.unwrap_or_else(|| near_radius(case, residue.norm(), order, f, z0, iso));
    let mut after_opts = common.clone();
    after_opts.extra_seeds.extend(seeds(case, residue, order, f, z0, radius));
    let (after, near_winding) = par::join(
        opts.parallel,
        || big_f.find_zeros(&after_opts),
        || circle_winding(&big_f, z0, radius),
    );
    let after = after?;
    let diff = CensusDiff::new(&before, &after, z0);
    let consumed = diff.consumed.is_some() as i64;
    let count = |c: &ZeroCensus, s: Option<Sense>| {
        c.in_disk(z0, radius)
            .filter(|z| s.is_none_or(|s| z.sense == s))
            .count() as i64
    };
    let consumed_sense = diff.consumed.map(|z| z.sense);
    let by_sense = |s: Sense| count(&after, Some(s)) - (count(&before, Some(s)) - (consumed_sense == Some(s)) as i64);
    let created_near = count(&after, None) - (count(&before, None) - consumed);
    let created_near_preserving = by_sense(Sense::Preserving);
    let created_near_reversing = by_sense(Sense::Reversing);
    let outside = |c: &ZeroCensus| c.count() as i64 - count(c, None);
    let outside_equal = outside(&before) == outside(&after);
    let predicted = predicted_minimum(case, order);
    let regular_before = before.zeros.iter().all(|z| z.sense != Sense::Singular);
    let regular_after = after.zeros.iter().all(|z| z.sense != Sense::Singular);
    let audits_ok = before.trusted() && after.trusted();
    let minimum_met = audits_ok
        && if case == AnywhereCase::Pole {
            before.count() == after.count()
        } else {
            created_near >= predicted.total
                && created_near_preserving >= predicted.preserving
                && created_near_reversing >= predicted.reversing
                && outside_equal
        };
    let derivative_modulus = f
        .rational()
        .eval_derivative(z0)
        .map(|d| SenseClass::from_witness(d.norm()).witness);
    Ok(AnywhereReport {
        z0,
        case,
        residue,
        order,
        derivative_modulus,
        near_radius: radius,
        predicted,
        created_near,
        created_near_preserving,
        created_near_reversing,
        near_winding,
        outside_equal,
        regular_before,
        regular_after,
        audits_ok,
        minimum_met,
        before,
        after,
        diff,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::ComplexPolynomial;
    use crate::rational::RationalFunction;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn floor_examples() {
        assert_eq!(higher_order_floor(4, 1), 5);
        assert_eq!(higher_order_floor(4, -1), 3);
        assert_eq!(higher_order_floor(4, 0), 4);
        assert_eq!(higher_order_floor(1, -1), 0);
        assert_eq!(predicted_minimum(AnywhereCase::ReversingZero, 1).total, 4);
        assert_eq!(predicted_minimum(AnywhereCase::NonZero, 1).total, 1);
        assert_eq!(predicted_minimum(AnywhereCase::PreservingZero, 4).total, 5);
    }

    #[test]
    fn z_squared_cases() {
        let f = HarmonicLens::new(RationalFunction::polynomial(ComplexPolynomial::from_real(&[0.0, 0.0, 1.0]))).unwrap();
        assert_eq!(classify_point(&f, c(1.0, 0.0)).unwrap(), AnywhereCase::PreservingZero);
        assert_eq!(classify_point(&f, c(0.3, 0.2)).unwrap(), AnywhereCase::NonZero);
        assert!(matches!(classify_point(&f, c(0.0, 0.0)), Err(Error::UnsupportedCase(_))));
        let opts = CensusOptions::default();
        let report = perturb_anywhere(&f, c(1.0, 0.0), 1e-3, &opts).unwrap();
        assert!(report.minimum_met, "{:?}", report.created_near);
        assert!(report.created_near_preserving >= 2);
        let report = perturb_anywhere(&f, c(0.3, 0.2), 1e-3, &opts).unwrap();
        assert!(report.minimum_met);
        assert!(report.created_near_preserving >= 1);
    }

    #[test]
    fn singular_point_is_refused() {
        // R = (z^2 + 1) / 2 has R(1) = 1 and |R'(1)| = 1
        let f = HarmonicLens::new(RationalFunction::polynomial(ComplexPolynomial::from_real(&[0.5, 0.0, 0.5]))).unwrap();
        assert!(matches!(classify_point(&f, c(1.0, 0.0)), Err(Error::UnsupportedCase(_))));
    }
}
