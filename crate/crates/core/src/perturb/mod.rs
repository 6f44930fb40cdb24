//! Adding poles to `R` to create zeros of `R(z) - conj(z)`.
//!
//! At a zero `z0` of `f` where `R'` and the next `n - 3` derivatives vanish,
//! `F(z) = f(z) + eps / (z - z0)` gains at least `2n` zeros on two thin annuli
//! around `z0`, while every other zero survives. [`plan`] fixes `n`, the local
//! coefficient `c` and the annulus radii; [`apply_and_verify`] builds `F` and
//! checks those claims against censuses of `f` and `F`.

mod anywhere;
mod diff;
mod local;
mod pipeline;
mod sweep;
mod verify;

pub use anywhere::{
    classify_point, higher_order_floor, perturb_anywhere, perturb_anywhere_with, predicted_minimum, suggest_eps,
    AnywhereCase, AnywhereReport, Prediction,
};
pub use diff::{CensusDiff, MatchedPair};
pub use local::{eps_sharp, eps_star, eta, local_model_linear, local_model_zeros, LocalModel};
pub use pipeline::{iterate_pipeline, Guarantee, PipelineStage, Selector, Side, Step};
pub use sweep::{residue_sweep, SweepRow};
pub use verify::{apply_and_verify, AnnulusCounts, VerifyReport};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::harmonic::{CensusOptions, HarmonicLens};
use crate::rational::RationalFunction;

/// Highest Taylor order inspected by [`detect_order`].
pub const ORDER_CAP: usize = 20;
/// Coefficients below `TAYLOR_VANISH * (1 + |R(z0)|)` count as zero.
pub const TAYLOR_VANISH: f64 = 1e-10;
/// `f(z0)` is treated as a zero below `ZERO_TOLERANCE * (1 + |z0|)`.
pub const ZERO_TOLERANCE: f64 = 1e-8;
/// Default residue as a fraction of `eps_sharp`.
pub const DEFAULT_EPS_FRACTION: f64 = 0.5;

/// How the pole enters `R`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `R + eps / (z - z0)^k`
    #[default]
    Additive,
    /// `(1 - eps) R + eps / (z - z0)`
    Convex,
}

/// Builds the perturbed function.
pub fn perturbed(r: &RationalFunction, z0: Complex64, residue: Complex64, order: usize, mode: Mode) -> Result<RationalFunction> {
    match mode {
        Mode::Additive => r.add_pole(z0, residue, order),
        Mode::Convex => {
            if order != 1 || residue.im != 0.0 {
                return Err(Error::InvalidArgument(
                    "convex combination takes a simple pole with real weight".into(),
                ));
            }
            r.convex_with_pole(z0, residue.re)
        }
    }
}

/// Smallest `n >= 2` whose Taylor coefficient `R^(n-1)(z0) / (n-1)!` is
/// nonzero, together with that coefficient.
pub fn detect_order(r: &RationalFunction, z0: Complex64) -> Result<(usize, Complex64)> {
    let coeffs = r.taylor(z0, ORDER_CAP + 1)?;
    let scale = 1.0 + coeffs[0].norm();
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .find(|(_, c)| c.norm() > TAYLOR_VANISH * scale)
        .map(|(k, c)| (k + 1, *c))
        .ok_or(Error::VanishingTaylor(ORDER_CAP))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Radii {
    /// `eta^-1 sqrt(eps)`
    pub inner: f64,
    /// `sqrt(eps)`
    pub mid: f64,
    /// `eta sqrt(eps)`
    pub outer: f64,
}

impl Radii {
    pub fn new(n: usize, eps: f64) -> Self {
        let e = eta(n);
        let s = eps.sqrt();
        Radii {
            inner: s / e,
            mid: s,
            outer: s * e,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PerturbationPlan {
    #[serde(with = "crate::serde_complex")]
    pub z0: Complex64,
    pub n: usize,
    #[serde(with = "crate::serde_complex")]
    pub c: Complex64,
    pub eta: f64,
    pub eps: f64,
    pub radii: Radii,
    pub eps_star: f64,
    pub eps_sharp: f64,
    /// `eps < eps_sharp`, so the annulus claims are backed by the local model.
    pub within_guarantee: bool,
}

impl PerturbationPlan {
    pub fn local_model(&self) -> Result<LocalModel> {
        LocalModel::new(self.n, self.c, self.eps)
    }
}

/// Plans a perturbation at a zero `z0` of order `n >= 3`. Without `eps` the
/// residue defaults to half of `eps_sharp`.
pub fn plan(f: &HarmonicLens, z0: Complex64, eps: Option<f64>) -> Result<PerturbationPlan> {
    let r = f.rational();
    let value = f.eval(z0).ok_or(Error::AtPole(z0))?;
    if value.norm() > ZERO_TOLERANCE * (1.0 + z0.norm()) {
        return Err(Error::UnsupportedCase(format!(
            "{z0} is not a zero of f (|f| = {:e}); use the arbitrary-point perturbation",
            value.norm()
        )));
    }
    let (n, c) = detect_order(r, z0)?;
    if n < 3 {
        return Err(Error::UnsupportedCase(format!(
            "R'({z0}) != 0 (n = 2); use the arbitrary-point perturbation"
        )));
    }
    let star = eps_star(n, c.norm())?;
    let sharp = eps_sharp(n, c.norm())?;
    let eps = eps.unwrap_or(DEFAULT_EPS_FRACTION * sharp);
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")));
    }
    Ok(PerturbationPlan {
        z0,
        n,
        c,
        eta: eta(n),
        eps,
        radii: Radii::new(n, eps),
        eps_star: star,
        eps_sharp: sharp,
        within_guarantee: eps < sharp,
    })
}

/// Census options covering both `f` and a perturbation of it, so that the
/// two censuses search the same disk.
pub(crate) fn shared_options(f: &HarmonicLens, g: &HarmonicLens, base: &CensusOptions) -> CensusOptions {
    let mut opts = base.clone();
    if opts.center.is_none() || opts.radius.is_none() {
        let (cf, rf) = f.default_domain();
        let (cg, rg) = g.default_domain();
        let center = opts.center.unwrap_or(cf);
        let radius = rf.max(rg + (cg - center).norm());
        opts.center = Some(center);
        opts.radius = Some(opts.radius.unwrap_or(radius));
    }
    opts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::ComplexPolynomial;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn detect_order_examples() {
        let r = RationalFunction::rhie_base(7, 0.5).unwrap();
        let (n, coef) = detect_order(&r, c(0.0, 0.0)).unwrap();
        assert_eq!(n, 7);
        assert_relative_eq!(coef.re, -128.0, epsilon = 1e-9);
        let small = RationalFunction::new(
            ComplexPolynomial::from_real(&[0.0, 0.0, 1.0 / 20.0, 1.0 / 6.0]),
            ComplexPolynomial::from_real(&[-0.1, 0.0, 0.0, 0.0, 1.0]),
        )
        .unwrap();
        let (n, coef) = detect_order(&small, c(0.0, 0.0)).unwrap();
        assert_eq!(n, 3);
        assert_relative_eq!(coef.norm(), 0.5, epsilon = 1e-12);
        let sq = RationalFunction::polynomial(ComplexPolynomial::from_real(&[0.0, 0.0, 1.0]));
        assert_eq!(detect_order(&sq, c(0.0, 0.0)).unwrap(), (3, c(1.0, 0.0)));
        let constant = RationalFunction::polynomial(ComplexPolynomial::from_real(&[2.0]));
        assert!(matches!(detect_order(&constant, c(0.0, 0.0)), Err(Error::VanishingTaylor(_))));
    }

    #[test]
    fn plan_examples() {
        let f = HarmonicLens::new(RationalFunction::rhie_base(7, 0.5).unwrap()).unwrap();
        let p = plan(&f, c(0.0, 0.0), None).unwrap();
        assert_eq!(p.n, 7);
        assert_relative_eq!(p.c.norm(), 128.0, epsilon = 1e-9);
        assert_relative_eq!(p.eta, (7.0f64 / 6.0).sqrt(), epsilon = 1e-15);
        assert_relative_eq!(p.eps, 0.5 * eps_sharp(7, 128.0).unwrap(), max_relative = 1e-9);
        assert!(p.within_guarantee);

        let sq = HarmonicLens::new(RationalFunction::polynomial(ComplexPolynomial::from_real(&[0.0, 0.0, 1.0]))).unwrap();
        let p = plan(&sq, c(0.0, 0.0), None).unwrap();
        assert_eq!((p.n, p.c), (3, c(1.0, 0.0)));
        assert_relative_eq!(p.eps, 1.0 / 27.0, epsilon = 1e-15);
        assert!(matches!(plan(&sq, c(1.0, 0.0), None), Err(Error::UnsupportedCase(_))));
        assert!(matches!(plan(&sq, c(0.5, 0.0), None), Err(Error::UnsupportedCase(_))));
    }
}
