use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use super::verify::{circle_winding, local_seeds};
use super::{perturbed, plan, shared_options, Mode};
use crate::error::Result;
use crate::harmonic::{CensusOptions, HarmonicLens, Sense};
use crate::par;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub theta: f64,
    #[serde(with = "crate::serde_complex")]
    pub residue: Complex64,
    /// Radius `2 eta sqrt(eps)` of the disk around `z0`.
    pub near_radius: f64,
    pub near_count: usize,
    pub near_preserving: usize,
    pub near_reversing: usize,
    pub near_winding: Option<i64>,
    pub total: usize,
    pub extremal: bool,
    pub audit_ok: bool,
}

/// Replaces the residue `eps` by `eps e^{i theta}` at a zero `z0` of order
/// `n >= 3` and counts the zeros of `F` near `z0` for each angle.
pub fn residue_sweep(
    f: &HarmonicLens,
    z0: Complex64,
    eps: f64,
    thetas: &[f64],
    opts: &CensusOptions,
) -> Result<Vec<SweepRow>> {
    let p = plan(f, z0, Some(eps))?;
    let near_radius = 2.0 * p.radii.outer;
    let mut seeds = local_seeds(&p);
    let count = 16 * p.n;
    for factor in [0.25, 0.5, 0.75, 1.25, 1.5, 1.75] {
        for k in 0..count {
            seeds.push(z0 + Complex64::from_polar(p.radii.mid * factor, TAU * (k as f64 + 0.5) / count as f64));
        }
    }
    let mut inner = opts.clone();
    inner.parallel = false;
    let rows = par::map(thetas, opts.parallel, |&theta| -> Result<SweepRow> {
        let residue = Complex64::from_polar(eps, theta);
        let big_f = HarmonicLens::new(perturbed(f.rational(), z0, residue, 1, Mode::Additive)?)?;
        let mut o = shared_options(f, &big_f, &inner);
        o.extra_seeds.extend_from_slice(&seeds);
        let census = big_f.find_zeros(&o)?;
        let near: Vec<_> = census.in_disk(z0, near_radius).collect();
        Ok(SweepRow {
            theta,
            residue,
            near_radius,
            near_count: near.len(),
            near_preserving: near.iter().filter(|z| z.sense == Sense::Preserving).count(),
            near_reversing: near.iter().filter(|z| z.sense == Sense::Reversing).count(),
            near_winding: circle_winding(&big_f, z0, near_radius),
            total: census.count(),
            extremal: census.extremal(),
            audit_ok: census.trusted(),
        })
    });
    rows.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perturb::eps_sharp;
    use crate::rational::RationalFunction;
    use std::f64::consts::PI;

    #[test]
    fn rhie_three_endpoints() {
        let f = HarmonicLens::new(RationalFunction::rhie_base(3, 0.5).unwrap()).unwrap();
        let eps = 0.5 * eps_sharp(3, 8.0).unwrap();
        let rows = residue_sweep(&f, Complex64::new(0.0, 0.0), eps, &[0.0, PI], &CensusOptions::default()).unwrap();
        assert_eq!(rows[0].near_count, 6);
        assert_eq!(rows[1].near_count, 0);
        assert!(rows.iter().all(|r| r.audit_ok));
    }
}
