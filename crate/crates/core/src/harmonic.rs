//! The harmonic function `f(z) = R(z) - conj(z)` and its zero census.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::contour::{self, Contour, Evaluatable};
use crate::error::{Error, Result};
use crate::par;
use crate::polynomial::ComplexPolynomial;
use crate::rational::{Pole, RationalFunction};

/// Half-width of the band around `|R'| = 1` classified as singular.
pub const SENSE_BAND: f64 = 1e-6;
pub const DEFAULT_DENSITY: f64 = 40.0;
/// Two zeros closer than `DEDUP_RELATIVE * (1 + |z|)` are one zero.
pub const DEDUP_RELATIVE: f64 = 1e-6;
/// A zero is accepted when `|f(z)| <= RESIDUAL_RELATIVE * (1 + |z|)`.
pub const RESIDUAL_RELATIVE: f64 = 1e-10;
const NEWTON_ITERATIONS: usize = 80;
const NEWTON_HALVINGS: usize = 30;
const GRID_SIDE_CAP: usize = 160;
const FIXED_POINT_MAX_DEGREE: usize = 10;
const RING_FACTORS: [f64; 8] = [0.5, 0.7, 0.85, 1.0, 1.15, 1.5, 2.0, 3.0];
const RING_LADDER: usize = 36;
const RING_ANGLES: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Preserving,
    Reversing,
    Singular,
}

impl Sense {
    /// Poincare index of a zero with this sense.
    pub fn index(self) -> Option<i8> {
        match self {
            Sense::Preserving => Some(1),
            Sense::Reversing => Some(-1),
            Sense::Singular => None,
        }
    }
}

/// Sense of `f` at a point with the witness `|R'(z)|`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SenseClass {
    pub sense: Sense,
    pub witness: f64,
}

impl SenseClass {
    pub fn from_witness(witness: f64) -> Self {
        let sense = if witness > 1.0 + SENSE_BAND {
            Sense::Preserving
        } else if witness < 1.0 - SENSE_BAND {
            Sense::Reversing
        } else {
            Sense::Singular
        };
        SenseClass { sense, witness }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroRecord {
    #[serde(rename = "z", with = "crate::serde_complex")]
    pub location: Complex64,
    pub sense: Sense,
    pub index: Option<i8>,
    pub residual: f64,
    /// `|R'(z)|` at the zero.
    pub derivative_modulus: f64,
}

#[derive(Clone, Debug)]
pub struct CensusOptions {
    /// Search disk; `None` uses [`HarmonicLens::default_domain`].
    pub center: Option<Complex64>,
    pub radius: Option<f64>,
    /// Grid seeds per unit length.
    pub density: f64,
    pub dedup_relative: f64,
    /// Density doublings after a failed audit.
    pub max_retries: usize,
    pub parallel: bool,
    /// Additional Newton seeds, e.g. predicted locations of new zeros.
    pub extra_seeds: Vec<Complex64>,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            center: None,
            radius: None,
            density: DEFAULT_DENSITY,
            dedup_relative: DEDUP_RELATIVE,
            max_retries: 3,
            parallel: true,
            extra_seeds: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusAudit {
    /// Winding of `f` on the domain boundary.
    pub winding: i64,
    pub sum_indices: i64,
    pub poles: Vec<Pole>,
    pub enclosed_pole_order: i64,
    /// Winding on very large circles, when determined by the degrees.
    pub asymptotic_winding: Option<i64>,
    pub matched: bool,
    pub samples_used: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeroCensus {
    pub zeros: Vec<ZeroRecord>,
    pub audit: CensusAudit,
    #[serde(with = "crate::serde_complex")]
    pub center: Complex64,
    pub radius: f64,
    pub density: f64,
    pub degree: usize,
    pub count: usize,
    /// `5 (deg R - 1)` when the bound applies.
    pub bound: Option<usize>,
    pub bound_applicable: bool,
    pub bound_ok: bool,
    pub attempts: usize,
}

impl ZeroCensus {
    pub fn count(&self) -> usize {
        self.zeros.len()
    }

    pub fn trusted(&self) -> bool {
        self.audit.matched
    }

    pub fn count_sense(&self, sense: Sense) -> usize {
        self.zeros.iter().filter(|z| z.sense == sense).count()
    }

    pub fn extremal(&self) -> bool {
        self.bound_applicable && self.bound == Some(self.count())
    }

    /// No zero is singular. Requires `deg R >= 2`.
    pub fn is_regular(&self) -> Result<bool> {
        if self.degree < 2 {
            return Err(Error::InvalidArgument(format!(
                "regularity needs deg R >= 2, got {}",
                self.degree
            )));
        }
        Ok(self.zeros.iter().all(|z| z.sense != Sense::Singular))
    }

    /// Zeros with `|z - center| < radius`.
    pub fn in_disk(&self, center: Complex64, radius: f64) -> impl Iterator<Item = &ZeroRecord> {
        self.zeros
            .iter()
            .filter(move |z| (z.location - center).norm() < radius)
    }
}

#[derive(Clone, Debug)]
pub struct HarmonicLens {
    r: RationalFunction,
}

impl Evaluatable for HarmonicLens {
    fn value(&self, z: Complex64) -> Option<Complex64> {
        self.eval(z)
    }
}

impl HarmonicLens {
    pub fn new(r: RationalFunction) -> Result<Self> {
        if r.degree() < 1 {
            return Err(Error::InvalidArgument("R must have degree at least 1".into()));
        }
        Ok(HarmonicLens { r })
    }

    pub fn rational(&self) -> &RationalFunction {
        &self.r
    }

    pub fn into_rational(self) -> RationalFunction {
        self.r
    }

    pub fn degree(&self) -> usize {
        self.r.degree()
    }

    /// `R(z) - conj(z)`, `None` at a pole.
    pub fn eval(&self, z: Complex64) -> Option<Complex64> {
        self.r.eval(z).map(|v| v - z.conj())
    }

    /// `f(z)` together with `R'(z)`.
    pub fn eval_with_derivative(&self, z: Complex64) -> Option<(Complex64, Complex64)> {
        self.r
            .eval_with_derivative(z)
            .map(|(v, d)| (v - z.conj(), d))
    }

    pub fn classify(&self, z: Complex64) -> Result<SenseClass> {
        let d = self.r.eval_derivative(z).ok_or(Error::AtPole(z))?;
        Ok(SenseClass::from_witness(d.norm()))
    }

    /// Real Jacobian `d(Re f, Im f) / d(x, y)`; its determinant is `|R'|^2 - 1`.
    pub fn jacobian(&self, z: Complex64) -> Option<[[f64; 2]; 2]> {
        let a = self.r.eval_derivative(z)?;
        let fx = a - 1.0;
        let fy = Complex64::i() * (a + 1.0);
        Some([[fx.re, fy.re], [fx.im, fy.im]])
    }

    /// Whether `f` has a limit at infinity. It fails to exist exactly when
    /// `R(z) = a z + O(1)` with `|a| = 1`.
    pub fn has_limit_at_infinity(&self) -> bool {
        self.leading_linear()
            .is_none_or(|a| (a.norm() - 1.0).abs() > SENSE_BAND)
    }

    fn leading_linear(&self) -> Option<Complex64> {
        let dp = self.r.num().degree()?;
        let dq = self.r.den().degree()?;
        if dp == dq + 1 {
            Some(self.r.num().leading()? / self.r.den().leading()?)
        } else {
            None
        }
    }

    /// Winding of `f` along circles of sufficiently large radius.
    pub fn asymptotic_winding(&self) -> Option<i64> {
        let Some(dp) = self.r.num().degree() else {
            return Some(-1);
        };
        let dq = self.r.den().degree().unwrap_or(0);
        if dp >= dq + 2 {
            return Some(dp as i64 - dq as i64);
        }
        if let Some(a) = self.leading_linear() {
            let m = a.norm();
            if (m - 1.0).abs() <= SENSE_BAND {
                return None;
            }
            return Some(if m > 1.0 { 1 } else { -1 });
        }
        Some(-1)
    }

    /// The `5 (deg R - 1)` bound is audited for `deg R >= 2` when `f` has a
    /// limit at infinity.
    pub fn bound_applicable(&self) -> bool {
        self.degree() >= 2 && self.has_limit_at_infinity()
    }

    pub fn zero_bound(&self) -> Option<usize> {
        (self.degree() >= 2).then(|| 5 * (self.degree() - 1))
    }

    /// Disk centred at the centroid of the poles with radius
    /// `2 (1 + max pole distance + coefficient ratio)`.
    pub fn default_domain(&self) -> (Complex64, f64) {
        let poles = self.r.poles();
        let center = if poles.is_empty() {
            Complex64::new(0.0, 0.0)
        } else {
            poles.iter().map(|p| p.location).sum::<Complex64>() / poles.len() as f64
        };
        let spread = poles
            .iter()
            .map(|p| (p.location - center).norm())
            .fold(0.0, f64::max);
        let num = self.r.num();
        let den = self.r.den();
        let ratio = match (num.degree(), den.degree()) {
            (None, _) => 0.0,
            (Some(dp), Some(dq)) if dp > dq => den.max_modulus() / num.leading().unwrap().norm(),
            _ => num.max_modulus() / den.leading().unwrap().norm(),
        };
        (center, 2.0 * (1.0 + spread + center.norm() + ratio))
    }

    /// Damped Newton iteration on the real 2x2 system from `seed`.
    ///
    /// With `a = R'(z)` the step solving `a d - conj(d) = -f` is
    /// `d = -(conj(a) f + conj(f)) / (|a|^2 - 1)`.
    pub fn newton(&self, seed: Complex64) -> Option<(Complex64, f64)> {
        let mut z = seed;
        let (mut f, mut a) = self.eval_with_derivative(z)?;
        let tol = |z: Complex64| RESIDUAL_RELATIVE * (1.0 + z.norm());
        let escape = 1e3 * (1.0 + seed.norm());
        let mut converged_steps = 0;
        for _ in 0..NEWTON_ITERATIONS {
            if f.norm() <= tol(z) {
                converged_steps += 1;
                if converged_steps > 3 || f.norm() == 0.0 {
                    break;
                }
            }
            let det = a.norm_sqr() - 1.0;
            if det == 0.0 || !det.is_finite() {
                break;
            }
            let step = -(a.conj() * f + f.conj()) / det;
            if !step.is_finite() {
                break;
            }
            let mut lambda = 1.0;
            let mut accepted = None;
            for _ in 0..=NEWTON_HALVINGS {
                let trial = z + step * lambda;
                if let Some((tf, ta)) = self.eval_with_derivative(trial) {
                    if tf.norm() < f.norm() {
                        accepted = Some((trial, tf, ta));
                        break;
                    }
                }
                lambda *= 0.5;
            }
            match accepted {
                Some((nz, nf, na)) => {
                    z = nz;
                    f = nf;
                    a = na;
                }
                None => break,
            }
            if z.norm() > escape {
                return None;
            }
        }
        (f.norm() <= tol(z)).then_some((z, f.norm()))
    }

    fn record(&self, z: Complex64, residual: f64) -> Option<ZeroRecord> {
        let class = self.classify(z).ok()?;
        Some(ZeroRecord {
            location: z,
            sense: class.sense,
            index: class.sense.index(),
            residual,
            derivative_modulus: class.witness,
        })
    }

    /// Newton seeds for a search disk at the given grid density.
    fn seeds(&self, center: Complex64, radius: f64, density: f64, side_cap: usize) -> Vec<Complex64> {
        let mut seeds = Vec::new();
        let side = ((2.0 * radius * density).ceil() as usize).clamp(2, side_cap);
        let h = 2.0 * radius / side as f64;
        for i in 0..=side {
            for j in 0..=side {
                let z = center + Complex64::new(-radius + h * i as f64, -radius + h * j as f64);
                if (z - center).norm() < radius {
                    seeds.push(z);
                }
            }
        }
        let ring = |seeds: &mut Vec<Complex64>, at: Complex64, rho: f64, phase: f64, count: usize| {
            for k in 0..count {
                seeds.push(at + Complex64::from_polar(rho, phase + TAU * k as f64 / count as f64));
            }
        };
        let poles = self.r.poles();
        for (pi, pole) in poles.iter().enumerate() {
            let lead = self.r.laurent_leading(pole).norm();
            let scale = if lead.is_finite() && lead > 0.0 {
                lead.powf(1.0 / (pole.order as f64 + 1.0))
            } else {
                h
            };
            let phase = 0.37 * pi as f64;
            for (k, factor) in RING_FACTORS.iter().enumerate() {
                ring(&mut seeds, pole.location, scale * factor, phase + 0.1 * k as f64, RING_ANGLES);
            }
            let gap = poles
                .iter()
                .filter(|q| q.location != pole.location)
                .map(|q| (q.location - pole.location).norm())
                .fold(radius, f64::min);
            for j in 1..=RING_LADDER {
                let rho = gap * 2f64.powf(-(j as f64) / 2.0);
                ring(&mut seeds, pole.location, rho, phase + 0.61 * j as f64, RING_ANGLES);
            }
        }
        if let Ok(critical) = self.r.critical_points() {
            for w in critical {
                for (k, rho) in [1e-3, 1e-2, 5e-2].into_iter().enumerate() {
                    ring(&mut seeds, w, rho * (1.0 + w.norm()), 0.3 * k as f64, 8);
                }
                seeds.push(w);
            }
        }
        ring(&mut seeds, center, 0.97 * radius, 0.0, 256);
        seeds.extend(self.fixed_point_seeds());
        seeds
    }

    /// Roots of `P(z) - z Q(z)` where `P / Q = S(R(z))` and `S` is `R` with
    /// conjugated coefficients. A zero satisfies `conj(z) = R(z)`, hence
    /// `z = S(R(z))`, so every zero of `f` is among these roots.
    fn fixed_point_seeds(&self) -> Vec<Complex64> {
        let d = self.degree();
        if d > FIXED_POINT_MAX_DEGREE {
            return Vec::new();
        }
        let p = self.r.num();
        let q = self.r.den();
        let p_pow: Vec<ComplexPolynomial> = (0..=d).map(|k| p.pow(k)).collect();
        let q_pow: Vec<ComplexPolynomial> = (0..=d).map(|k| q.pow(k)).collect();
        let compose = |coeffs: &[Complex64]| {
            let mut acc = ComplexPolynomial::zero();
            for (k, ck) in coeffs.iter().enumerate() {
                let term = (&p_pow[k] * &q_pow[d - k]).scale(ck.conj());
                acc = &acc + &term;
            }
            acc
        };
        let big_p = compose(p.coeffs());
        let big_q = compose(q.coeffs());
        let h = &big_p - &big_q.mul_linear(Complex64::new(0.0, 0.0)); // P - z Q
        if h.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        h.roots().unwrap_or_default()
    }

    /// Locates all zeros in a disk and audits the result by the argument
    /// principle. A failed audit doubles the seed density, up to
    /// `max_retries` times; the last census is returned with `matched` false.
    pub fn find_zeros(&self, opts: &CensusOptions) -> Result<ZeroCensus> {
        if !(opts.density > 0.0 && opts.dedup_relative > 0.0) {
            return Err(Error::InvalidArgument("density and dedup tolerance must be positive".into()));
        }
        let (c0, r0) = self.default_domain();
        let center = opts.center.unwrap_or(c0);
        let mut radius = opts.radius.unwrap_or(r0);
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidArgument(format!("search radius {radius} must be positive")));
        }
        let asymptotic = self.asymptotic_winding();
        // grow an automatic domain until it carries the asymptotic winding
        if opts.radius.is_none() {
            if let Some(expected) = asymptotic {
                for _ in 0..6 {
                    match self.boundary_winding(center, radius) {
                        Ok((w, r)) if w == expected => {
                            radius = r;
                            break;
                        }
                        _ => radius *= 2.0,
                    }
                }
            }
        }
        let mut found: Vec<ZeroRecord> = Vec::new();
        let mut density = opts.density;
        let mut attempts = 0;
        loop {
            attempts += 1;
            let mut seeds = self.seeds(center, radius, density, GRID_SIDE_CAP << (attempts - 1));
            seeds.extend(opts.extra_seeds.iter().copied());
            seeds.extend(found.iter().map(|z| z.location));
            let results = par::map(&seeds, opts.parallel, |s| self.newton(*s));
            let candidates = results
                .into_iter()
                .flatten()
                .filter(|(z, _)| (z - center).norm() < radius);
            found = self.dedup(candidates, opts.dedup_relative);
            let (audit, audit_radius) = self.audit(&found, center, radius, asymptotic)?;
            radius = audit_radius;
            found.retain(|z| (z.location - center).norm() < radius);
            if audit.matched || attempts > opts.max_retries {
                return Ok(self.assemble(found, audit, center, radius, density, attempts));
            }
            density *= 2.0;
        }
    }

    fn dedup(&self, candidates: impl Iterator<Item = (Complex64, f64)>, rel: f64) -> Vec<ZeroRecord> {
        let mut kept: Vec<(Complex64, f64)> = Vec::new();
        for (z, res) in candidates {
            let tol = rel * (1.0 + z.norm());
            match kept.iter_mut().find(|(w, _)| (w - z).norm() < tol) {
                Some(slot) => {
                    if res < slot.1 {
                        *slot = (z, res);
                    }
                }
                None => kept.push((z, res)),
            }
        }
        let mut zeros: Vec<ZeroRecord> = kept
            .into_iter()
            .filter_map(|(z, res)| self.record(z, res))
            .collect();
        zeros.sort_by(|a, b| {
            a.location
                .re
                .total_cmp(&b.location.re)
                .then(a.location.im.total_cmp(&b.location.im))
        });
        zeros
    }

    /// Winding on `|z - center| = radius`, nudging the radius outward when a
    /// zero or pole sits on the circle.
    fn boundary_winding(&self, center: Complex64, mut radius: f64) -> Result<(i64, f64)> {
        let mut last = Error::PoleOnContour;
        for _ in 0..8 {
            match contour::winding(self, &Contour::circle(center, radius)) {
                Ok(w) => return Ok((w.value, radius)),
                Err(e @ (Error::ZeroOnContour { .. } | Error::PoleOnContour)) => {
                    last = e;
                    radius *= 1.001;
                }
                Err(e) => return Err(e),
            }
        }
        Err(last)
    }

    fn audit(
        &self,
        zeros: &[ZeroRecord],
        center: Complex64,
        radius: f64,
        asymptotic: Option<i64>,
    ) -> Result<(CensusAudit, f64)> {
        let mut radius = radius;
        let mut report = None;
        for _ in 0..8 {
            let circle = Contour::circle(center, radius);
            match contour::argument_principle_audit(self, zeros, &circle) {
                Ok(r) => {
                    report = Some(r);
                    break;
                }
                Err(Error::ZeroOnContour { .. } | Error::PoleOnContour) => radius *= 1.001,
                Err(e) => return Err(e),
            }
        }
        let report = report.ok_or(Error::ZeroOnContour { min_modulus: 0.0 })?;
        let consistent_at_infinity = match (asymptotic, self.bound_applicable()) {
            (Some(a), true) => a == report.winding,
            _ => true,
        };
        Ok((
            CensusAudit {
                winding: report.winding,
                sum_indices: report.sum_indices,
                poles: self.r.poles().to_vec(),
                enclosed_pole_order: report.enclosed_pole_order,
                asymptotic_winding: asymptotic,
                matched: report.matched && consistent_at_infinity,
                samples_used: report.samples_used,
            },
            radius,
        ))
    }

    fn assemble(
        &self,
        zeros: Vec<ZeroRecord>,
        audit: CensusAudit,
        center: Complex64,
        radius: f64,
        density: f64,
        attempts: usize,
    ) -> ZeroCensus {
        let bound = self.zero_bound();
        let bound_applicable = self.bound_applicable();
        let count = zeros.len();
        let bound_ok = audit.matched && bound_applicable && bound.is_some_and(|b| count <= b);
        ZeroCensus {
            zeros,
            audit,
            center,
            radius,
            density,
            degree: self.degree(),
            count,
            bound,
            bound_applicable,
            bound_ok,
            attempts,
        }
    }

    /// Census with default options.
    pub fn census(&self) -> Result<ZeroCensus> {
        self.find_zeros(&CensusOptions::default())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contour::poincare_index;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn lens(num: &[f64], den: &[f64]) -> HarmonicLens {
        HarmonicLens::new(
            RationalFunction::new(ComplexPolynomial::from_real(num), ComplexPolynomial::from_real(den)).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn eval_examples() {
        let o = c(0.0, 0.0);
        assert_eq!(lens(&[0.0, 2.0], &[1.0]).eval(o), Some(o));
        let rhie = HarmonicLens::new(RationalFunction::rhie_base(4, 0.5).unwrap()).unwrap();
        assert_eq!(rhie.eval(o), Some(o));
        assert_eq!(lens(&[0.0, 0.0, 1.0], &[1.0]).eval(c(1.0, 0.0)), Some(o));
        assert_eq!(rhie.eval(c(0.5, 0.0)), None);
    }

    #[test]
    fn classify_examples() {
        let sq = lens(&[0.0, 0.0, 1.0], &[1.0]);
        let cls = sq.classify(c(0.0, 0.0)).unwrap();
        assert_eq!(cls.sense, Sense::Reversing);
        assert_eq!(cls.witness, 0.0);
        assert_eq!(sq.classify(c(1.0, 0.0)).unwrap().sense, Sense::Preserving);
        assert_eq!(SenseClass::from_witness(1.176).sense, Sense::Preserving);
        assert_eq!(SenseClass::from_witness(0.5572).sense, Sense::Reversing);
        assert_eq!(SenseClass::from_witness(1.0 + 1e-7).sense, Sense::Singular);
        assert!(sq.classify(c(0.0, 0.0)).is_ok());
        let inv = lens(&[1.0], &[0.0, 1.0]);
        assert!(inv.classify(c(0.0, 0.0)).is_err());
    }

    #[test]
    fn census_of_z_squared() {
        let sq = lens(&[0.0, 0.0, 1.0], &[1.0]);
        let opts = CensusOptions {
            center: Some(c(0.0, 0.0)),
            radius: Some(3.0),
            ..Default::default()
        };
        let census = sq.find_zeros(&opts).unwrap();
        assert_eq!(census.count(), 4);
        assert!(census.trusted());
        assert_eq!(census.count_sense(Sense::Reversing), 1);
        assert_eq!(census.count_sense(Sense::Preserving), 3);
        for z in &census.zeros {
            let expected_modulus = if z.sense == Sense::Reversing { 0.0 } else { 1.0 };
            assert!((z.location.norm() - expected_modulus).abs() < 1e-9);
            if z.sense == Sense::Preserving {
                assert!((z.location.powi(3) - 1.0).norm() < 1e-9);
            }
        }
        assert_eq!(census.audit.winding, 2);
        assert!(census.is_regular().unwrap());
        assert!(census.bound_ok);
    }

    #[test]
    fn census_of_rhie_lenses() {
        for (d, expected) in [(2, 5), (7, 22)] {
            let f = HarmonicLens::new(RationalFunction::rhie_base(d, 0.5).unwrap()).unwrap();
            let opts = CensusOptions {
                center: Some(c(0.0, 0.0)),
                radius: Some(3.0),
                ..Default::default()
            };
            let census = f.find_zeros(&opts).unwrap();
            assert_eq!(census.count(), expected, "d = {d}");
            assert!(census.trusted());
            assert!(census.is_regular().unwrap());
            let rhs = census.count_sense(Sense::Preserving) as i64
                - census.count_sense(Sense::Reversing) as i64
                - d as i64;
            assert_eq!(census.audit.winding, rhs);
        }
    }

    #[test]
    fn regularity_needs_degree_two() {
        let double = lens(&[0.0, 2.0], &[1.0]);
        let census = double.census().unwrap();
        assert_eq!(census.count(), 1);
        assert!(census.is_regular().is_err());
        assert!(!double.bound_applicable());
        // R = z vanishes against conj(z) on the whole real axis
        let id = lens(&[0.0, 1.0], &[1.0]);
        assert!(!id.has_limit_at_infinity());
        assert!(id.find_zeros(&CensusOptions::default()).is_err());
    }

    #[test]
    fn indices_match_small_circle_windings() {
        let f = HarmonicLens::new(RationalFunction::rhie_base(3, 0.5).unwrap()).unwrap();
        let census = f.census().unwrap();
        let locs: Vec<Complex64> = census.zeros.iter().map(|z| z.location).collect();
        for z in &census.zeros {
            let sep = locs
                .iter()
                .filter(|w| **w != z.location)
                .map(|w| (w - z.location).norm())
                .fold(f64::INFINITY, f64::min);
            let idx = poincare_index(&f, z.location, 0.25 * sep).unwrap();
            assert_eq!(Some(idx as i8), z.index);
        }
    }

    #[test]
    fn jacobian_determinant_sign() {
        let f = lens(&[0.1, 0.0, 1.0], &[-0.2, 1.0]);
        for z in [c(0.3, 0.7), c(-1.1, 0.2), c(0.0, -0.4)] {
            let j = f.jacobian(z).unwrap();
            let det = j[0][0] * j[1][1] - j[0][1] * j[1][0];
            let a = f.rational().eval_derivative(z).unwrap();
            assert!((det - (a.norm_sqr() - 1.0)).abs() < 1e-12 * (1.0 + a.norm_sqr()));
            // finite-difference Jacobian
            let h = 1e-6;
            let fx = (f.eval(z + h).unwrap() - f.eval(z - h).unwrap()) / (2.0 * h);
            let fy = (f.eval(z + c(0.0, h)).unwrap() - f.eval(z - c(0.0, h)).unwrap()) / (2.0 * h);
            let fd = fx.re * fy.im - fy.re * fx.im;
            assert_eq!(fd.signum(), det.signum());
        }
    }

    #[test]
    fn asymptotic_windings() {
        assert_eq!(lens(&[0.0, 0.0, 1.0], &[1.0]).asymptotic_winding(), Some(2));
        assert_eq!(lens(&[0.0, 1.0], &[-0.25, 0.0, 1.0]).asymptotic_winding(), Some(-1));
        assert_eq!(lens(&[0.0, 0.0, 3.0], &[1.0, 1.0]).asymptotic_winding(), Some(1));
        assert_eq!(lens(&[1.0, 0.0, 1.0], &[0.0, 1.0]).asymptotic_winding(), None);
    }
}
