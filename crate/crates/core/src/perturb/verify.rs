use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use super::{perturbed, shared_options, CensusDiff, LocalModel, Mode, PerturbationPlan};
use crate::contour::{self, Contour};
use crate::error::{Error, Result};
use crate::harmonic::{CensusOptions, HarmonicLens, Sense, ZeroCensus, ZeroRecord};
use crate::par;
use crate::rational::RationalFunction;

/// Distance to an annulus radius below which a zero is reported as a
/// boundary hit instead of being binned.
pub const BOUNDARY_TOLERANCE: f64 = 1e-9;

/// Zeros of `F` around `z0`, with open annuli and the closed inner disk.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnnulusCounts {
    /// `A(z0, eta^-1 sqrt(eps), sqrt(eps))`
    pub inner: usize,
    pub inner_preserving: usize,
    /// `A(z0, sqrt(eps), eta sqrt(eps))`
    pub outer: usize,
    pub outer_reversing: usize,
    /// Closed disk of radius `eta^-1 sqrt(eps)`.
    pub inner_disk: usize,
    pub boundary_hits: Vec<ZeroRecord>,
}

impl AnnulusCounts {
    pub fn new(census: &ZeroCensus, plan: &PerturbationPlan) -> Self {
        let r = plan.radii;
        let mut counts = AnnulusCounts {
            inner: 0,
            inner_preserving: 0,
            outer: 0,
            outer_reversing: 0,
            inner_disk: 0,
            boundary_hits: Vec::new(),
        };
        for z in &census.zeros {
            let d = (z.location - plan.z0).norm();
            if [r.inner, r.mid, r.outer]
                .iter()
                .any(|b| (d - b).abs() <= BOUNDARY_TOLERANCE)
            {
                counts.boundary_hits.push(*z);
            }
            if d <= r.inner {
                counts.inner_disk += 1;
            } else if d < r.mid {
                counts.inner += 1;
                counts.inner_preserving += (z.sense == Sense::Preserving) as usize;
            } else if d > r.mid && d < r.outer {
                counts.outer += 1;
                counts.outer_reversing += (z.sense == Sense::Reversing) as usize;
            }
        }
        counts
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub plan: PerturbationPlan,
    pub mode: Mode,
    pub perturbed: RationalFunction,
    pub before: ZeroCensus,
    pub after: ZeroCensus,
    pub diff: CensusDiff,
    pub annuli: AnnulusCounts,
    /// Winding of `F` on `|z - z0| = eta sqrt(eps)`; expected `-1`.
    pub outer_winding: Option<i64>,
    pub created: usize,
    pub regular_after: bool,
    pub extremal: bool,
    pub survivors_ok: bool,
    pub audits_ok: bool,
    /// Every lower bound of the local theorem is met.
    pub minima_met: bool,
}

/// Circle winding, nudging the radius outward off zeros of `f`.
pub(crate) fn circle_winding(f: &HarmonicLens, center: Complex64, radius: f64) -> Option<i64> {
    let mut radius = radius;
    for _ in 0..8 {
        match contour::winding(f, &Contour::circle(center, radius)) {
            Ok(w) => return Some(w.value),
            Err(Error::ZeroOnContour { .. } | Error::PoleOnContour) => radius *= 1.001,
            Err(_) => return None,
        }
    }
    None
}

/// Seeds near the radii where the local model puts new zeros.
pub(crate) fn local_seeds(plan: &PerturbationPlan) -> Vec<Complex64> {
    let mut seeds = Vec::new();
    if let Ok(model) = LocalModel::new(plan.n, plan.c, plan.eps) {
        seeds.extend(model.zeros().into_iter().map(|w| plan.z0 + w));
    }
    let count = 8 * plan.n;
    for rho in [plan.radii.inner, plan.radii.mid, plan.radii.outer] {
        for factor in [1.02, 0.98] {
            for k in 0..count {
                let a = TAU * (k as f64 + 0.5) / count as f64;
                seeds.push(plan.z0 + Complex64::from_polar(rho * factor, a));
            }
        }
    }
    seeds
}

/// Builds `F` from the plan, takes censuses of `f` and `F` over a common
/// disk, and checks the local theorem's claims.
pub fn apply_and_verify(
    f: &HarmonicLens,
    plan: &PerturbationPlan,
    mode: Mode,
    opts: &CensusOptions,
) -> Result<VerifyReport> {
    let residue = Complex64::new(plan.eps, 0.0);
    let big_f = HarmonicLens::new(perturbed(f.rational(), plan.z0, residue, 1, mode)?)?;
    let common = shared_options(f, &big_f, opts);
    let mut after_opts = common.clone();
    after_opts.extra_seeds.extend(local_seeds(plan));
    let (before, after) = par::join(
        opts.parallel,
        || f.find_zeros(&common),
        || big_f.find_zeros(&after_opts),
    );
    let (before, after) = (before?, after?);
    let diff = CensusDiff::new(&before, &after, plan.z0);
    let annuli = AnnulusCounts::new(&after, plan);
    let outer_winding = circle_winding(&big_f, plan.z0, plan.radii.outer);
    let regular_after = after.zeros.iter().all(|z| z.sense != Sense::Singular);
    let n = plan.n;
    let survivors_ok = diff.survivors_ok()
        && diff.consumed.is_some()
        && diff.matched.len() + 1 == before.count();
    let audits_ok = before.trusted() && after.trusted();
    let local_ok = annuli.inner >= n
        && annuli.outer >= n
        && annuli.inner_disk == 0
        && (!regular_after || (annuli.inner_preserving >= n && annuli.outer_reversing >= n))
        && outer_winding == Some(-1);
    let created = diff.created.len();
    Ok(VerifyReport {
        plan: *plan,
        mode,
        perturbed: big_f.rational().clone(),
        extremal: after.extremal(),
        minima_met: local_ok && survivors_ok && audits_ok && created >= 2 * n,
        before,
        after,
        diff,
        annuli,
        outer_winding,
        created,
        regular_after,
        survivors_ok,
        audits_ok,
    })
}
