//! Winding numbers along circles and annular-sector boundaries.
//!
//! The phase of `f` is continued along the curve by adaptive bisection of the
//! parameter interval: an interval is split until `|f(b) - f(a)|` is at most
//! `min(|f(a)|, |f(b)|)`, which forces the wrapped phase step below `pi/3`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::harmonic::{HarmonicLens, ZeroRecord};
use crate::polynomial::ComplexPolynomial;
use crate::rational::RationalFunction;

/// Below this modulus on the curve the phase is considered unreliable.
pub const ZERO_ON_CONTOUR: f64 = 1e-9;
pub const MAX_SAMPLES: usize = 1 << 22;
const INITIAL_SAMPLES: usize = 64;
const ROUCHE_MARGIN: f64 = 1e-12;
const ROUCHE_UNIFORM: usize = 4096;

/// Anything that can be evaluated on a contour; `None` marks a pole.
pub trait Evaluatable {
    fn value(&self, z: Complex64) -> Option<Complex64>;
}

impl<F> Evaluatable for F
where
    F: Fn(Complex64) -> Complex64,
{
    fn value(&self, z: Complex64) -> Option<Complex64> {
        Some(self(z))
    }
}

impl Evaluatable for RationalFunction {
    fn value(&self, z: Complex64) -> Option<Complex64> {
        self.eval(z)
    }
}

impl Evaluatable for ComplexPolynomial {
    fn value(&self, z: Complex64) -> Option<Complex64> {
        Some(self.eval(z))
    }
}

/// Wraps a partial function (poles reported as `None`).
pub struct Partial<F>(pub F);

impl<F> Evaluatable for Partial<F>
where
    F: Fn(Complex64) -> Option<Complex64>,
{
    fn value(&self, z: Complex64) -> Option<Complex64> {
        (self.0)(z)
    }
}

/// A positively oriented closed curve.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Contour {
    Circle {
        #[serde(with = "crate::serde_complex")]
        center: Complex64,
        radius: f64,
    },
    /// Boundary of `{center + r e^{it} : inner <= r <= outer, start <= t <= end}`:
    /// outer arc, radial segment inward, inner arc backwards, radial segment
    /// outward.
    AnnularSector {
        #[serde(with = "crate::serde_complex")]
        center: Complex64,
        inner: f64,
        outer: f64,
        start: f64,
        end: f64,
    },
}

impl Contour {
    pub fn circle(center: Complex64, radius: f64) -> Self {
        Contour::Circle { center, radius }
    }

    pub fn annular_sector(center: Complex64, inner: f64, outer: f64, start: f64, end: f64) -> Result<Self> {
        if !(inner > 0.0 && outer > inner && end > start && end - start < TAU) {
            return Err(Error::InvalidArgument(format!(
                "degenerate annular sector r in [{inner}, {outer}], t in [{start}, {end}]"
            )));
        }
        Ok(Contour::AnnularSector {
            center,
            inner,
            outer,
            start,
            end,
        })
    }

    /// Point at parameter `t` in `[0, 1]`; `t = 0` and `t = 1` coincide.
    pub fn point(&self, t: f64) -> Complex64 {
        match *self {
            Contour::Circle { center, radius } => center + Complex64::from_polar(radius, TAU * t),
            Contour::AnnularSector {
                center,
                inner,
                outer,
                start,
                end,
            } => {
                let s = (4.0 * t).clamp(0.0, 4.0);
                let piece = (s.floor() as usize).min(3);
                let u = s - piece as f64;
                let (r, a) = match piece {
                    0 => (outer, start + (end - start) * u),
                    1 => (outer + (inner - outer) * u, end),
                    2 => (inner, end + (start - end) * u),
                    _ => (inner + (outer - inner) * u, start),
                };
                center + Complex64::from_polar(r, a)
            }
        }
    }

    /// Whether `z` lies strictly inside the curve.
    pub fn contains(&self, z: Complex64) -> bool {
        match *self {
            Contour::Circle { center, radius } => (z - center).norm() < radius,
            Contour::AnnularSector {
                center,
                inner,
                outer,
                start,
                end,
            } => {
                let w = z - center;
                let r = w.norm();
                if !(r > inner && r < outer) {
                    return false;
                }
                let a = (w.arg() - start).rem_euclid(TAU);
                a > 0.0 && a < end - start
            }
        }
    }

    /// Distance from `z` to the curve.
    pub fn distance(&self, z: Complex64) -> f64 {
        match *self {
            Contour::Circle { center, radius } => ((z - center).norm() - radius).abs(),
            Contour::AnnularSector {
                center,
                inner,
                outer,
                start,
                end,
            } => {
                let w = z - center;
                let r = w.norm();
                let a = (w.arg() - start).rem_euclid(TAU);
                let mut best = f64::INFINITY;
                if a <= end - start {
                    best = best.min((r - inner).abs()).min((r - outer).abs());
                }
                for edge in [start, end] {
                    let dir = Complex64::from_polar(1.0, edge);
                    let along = (w * dir.conj()).re.clamp(inner, outer);
                    best = best.min((w - dir * along).norm());
                }
                for corner in [
                    Complex64::from_polar(inner, start),
                    Complex64::from_polar(outer, start),
                    Complex64::from_polar(inner, end),
                    Complex64::from_polar(outer, end),
                ] {
                    best = best.min((w - corner).norm());
                }
                best
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WindingResult {
    pub value: i64,
    pub samples_used: usize,
    /// Largest wrapped phase difference between consecutive samples.
    pub max_phase_step: f64,
    pub min_modulus: f64,
}

/// Adaptive samples `(t, z, f(z))` along a contour, in parameter order, with
/// the closing sample at `t = 1` omitted.
pub(crate) struct Trace {
    pub samples: Vec<(f64, Complex64, Complex64)>,
    pub result: WindingResult,
}

fn sample<F: Evaluatable + ?Sized>(f: &F, contour: &Contour, t: f64) -> Result<(f64, Complex64, Complex64)> {
    let z = contour.point(t);
    let v = f.value(z).ok_or(Error::PoleOnContour)?;
    if !v.is_finite() {
        return Err(Error::PoleOnContour);
    }
    if v.norm() < ZERO_ON_CONTOUR {
        return Err(Error::ZeroOnContour { min_modulus: v.norm() });
    }
    Ok((t, z, v))
}

fn resolved(a: Complex64, b: Complex64) -> bool {
    (b - a).norm() <= a.norm().min(b.norm())
}

pub(crate) fn trace<F: Evaluatable + ?Sized>(f: &F, contour: &Contour) -> Result<Trace> {
    let mut samples = Vec::with_capacity(4 * INITIAL_SAMPLES);
    let first = sample(f, contour, 0.0)?;
    let mut prev = first;
    let mut total = 0.0;
    let mut max_step: f64 = 0.0;
    let mut min_modulus = first.2.norm();
    let mut used = 1usize;
    samples.push(first);
    for i in 1..=INITIAL_SAMPLES {
        let target = if i == INITIAL_SAMPLES {
            (1.0, first.1, first.2)
        } else {
            let s = sample(f, contour, i as f64 / INITIAL_SAMPLES as f64)?;
            used += 1;
            s
        };
        // depth-first refinement of [prev, target]
        let mut stack = vec![target];
        while let Some(&right) = stack.last() {
            if resolved(prev.2, right.2) {
                let step = (right.2 / prev.2).arg();
                total += step;
                max_step = max_step.max(step.abs());
                min_modulus = min_modulus.min(right.2.norm());
                stack.pop();
                if right.0 < 1.0 {
                    samples.push(right);
                }
                prev = right;
                continue;
            }
            let mid_t = 0.5 * (prev.0 + right.0);
            if used >= MAX_SAMPLES || mid_t <= prev.0 || mid_t >= right.0 {
                return Err(Error::NonConvergent { samples: used });
            }
            stack.push(sample(f, contour, mid_t)?);
            used += 1;
        }
    }
    let turns = total / TAU;
    let value = turns.round();
    if (turns - value).abs() > 0.05 || max_step >= PI / 2.0 {
        return Err(Error::NonConvergent { samples: used });
    }
    Ok(Trace {
        samples,
        result: WindingResult {
            value: value as i64,
            samples_used: used,
            max_phase_step: max_step,
            min_modulus,
        },
    })
}

/// Winding number of `f` along the contour.
pub fn winding<F: Evaluatable + ?Sized>(f: &F, contour: &Contour) -> Result<WindingResult> {
    trace(f, contour).map(|t| t.result)
}

/// Winding of `f` on the circle `|z - z0| = radius`.
pub fn poincare_index<F: Evaluatable + ?Sized>(f: &F, z0: Complex64, radius: f64) -> Result<i64> {
    winding(f, &Contour::circle(z0, radius)).map(|w| w.value)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RoucheReport {
    pub holds: bool,
    pub winding_f: Option<i64>,
    pub winding_g: Option<i64>,
    /// `holds` implies equal windings; false here would indicate a sampling failure.
    pub consistent: bool,
    /// Smallest `1 - |f+g| / (|f|+|g|)` over the samples.
    pub worst_margin: f64,
    pub samples: usize,
}

/// Checks `|f + g| < |f| + |g|` along the contour.
pub fn rouche_check<F, G>(f: &F, g: &G, contour: &Contour) -> RoucheReport
where
    F: Evaluatable + ?Sized,
    G: Evaluatable + ?Sized,
{
    let tf = trace(f, contour).ok();
    let tg = trace(g, contour).ok();
    let mut ts: Vec<f64> = (0..ROUCHE_UNIFORM).map(|i| i as f64 / ROUCHE_UNIFORM as f64).collect();
    for t in [&tf, &tg].into_iter().flatten() {
        ts.extend(t.samples.iter().map(|s| s.0));
    }
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    let mut worst = f64::INFINITY;
    for &t in &ts {
        let z = contour.point(t);
        let (Some(a), Some(b)) = (f.value(z), g.value(z)) else {
            worst = f64::NEG_INFINITY;
            break;
        };
        let denom = a.norm() + b.norm();
        let margin = if denom > 0.0 { 1.0 - (a + b).norm() / denom } else { 0.0 };
        worst = worst.min(margin);
    }
    let holds = worst > ROUCHE_MARGIN;
    let winding_f = tf.as_ref().map(|t| t.result.value);
    let winding_g = tg.as_ref().map(|t| t.result.value);
    let consistent = !holds || (winding_f.is_some() && winding_f == winding_g);
    RoucheReport {
        holds,
        winding_f,
        winding_g,
        consistent,
        worst_margin: worst,
        samples: ts.len(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditReport {
    pub contour: Contour,
    /// Winding of `f` along the contour.
    pub winding: i64,
    pub sum_indices: i64,
    pub enclosed_zeros: usize,
    pub enclosed_pole_order: i64,
    /// `sum_indices - enclosed_pole_order`.
    pub rhs: i64,
    pub matched: bool,
    pub samples_used: usize,
}

/// Compares the winding of `f` with the indices of the listed zeros and the
/// poles of `R` inside the contour. Singular zeros carry no index and make
/// the audit fail.
pub fn argument_principle_audit(
    f: &HarmonicLens,
    zeros: &[ZeroRecord],
    contour: &Contour,
) -> Result<AuditReport> {
    let w = winding(f, contour)?;
    let inside: Vec<&ZeroRecord> = zeros.iter().filter(|z| contour.contains(z.location)).collect();
    let singular = inside.iter().any(|z| z.index.is_none());
    let sum_indices: i64 = inside.iter().filter_map(|z| z.index).map(i64::from).sum();
    let enclosed_pole_order: i64 = f
        .rational()
        .poles()
        .iter()
        .filter(|p| contour.contains(p.location))
        .map(|p| p.order as i64)
        .sum();
    let rhs = sum_indices - enclosed_pole_order;
    Ok(AuditReport {
        contour: *contour,
        winding: w.value,
        sum_indices,
        enclosed_zeros: inside.len(),
        enclosed_pole_order,
        rhs,
        matched: !singular && rhs == w.value,
        samples_used: w.samples_used,
    })
}
