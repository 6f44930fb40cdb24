//! The truncated local models near a perturbation point.
//!
//! With `w = z - z0`, the perturbed function is approximated by
//! `G(w) = c w^(n-1) + eps / w - conj(w)`. Its zeros solve
//! `c w^n + eps - |w|^2 = 0`; after rotating `c` onto the positive axis they
//! lie on three circles `rho_1 < rho_2 < rho_3`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::harmonic::{Sense, SenseClass};
use crate::polynomial::RealPolynomial;

/// `sqrt(n / (n - 1))`.
pub fn eta(n: usize) -> f64 {
    (n as f64 / (n as f64 - 1.0)).sqrt()
}

fn check(n: usize, c_abs: f64) -> Result<()> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!("threshold needs n >= 3, got {n}")));
    }
    if !(c_abs > 0.0 && c_abs.is_finite()) {
        return Err(Error::InvalidArgument(format!("|c| must be positive, got {c_abs}")));
    }
    Ok(())
}

/// `eps_* = (n-2)/n * (2 / (n |c|))^(2/(n-2))`: below it `G` has exactly `3n` zeros.
pub fn eps_star(n: usize, c_abs: f64) -> Result<f64> {
    check(n, c_abs)?;
    let nf = n as f64;
    Ok((nf - 2.0) / nf * (2.0 / (nf * c_abs)).powf(2.0 / (nf - 2.0)))
}

/// Threshold below which the zeros on `rho_1` and `rho_2` lie in the annuli
/// `A(eta^-1 sqrt(eps), sqrt(eps))` and `A(sqrt(eps), eta sqrt(eps))`.
pub fn eps_sharp(n: usize, c_abs: f64) -> Result<f64> {
    let star = eps_star(n, c_abs)?;
    let nf = n as f64;
    let e = 2.0 / (nf - 2.0);
    let g = nf / (nf - 2.0);
    let second = (1.0 / (nf * c_abs)).powf(e) * (nf / (nf - 1.0)).powf(g);
    let third = (1.0 / (c_abs * (nf - 1.0))).powf(e) * ((nf - 1.0) / nf).powf(g);
    Ok(star.min(second).min(third))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LocalModel {
    pub n: usize,
    #[serde(with = "crate::serde_complex")]
    pub c: Complex64,
    pub eps: f64,
    pub rho1: f64,
    pub rho2: f64,
    pub rho3: f64,
}

impl LocalModel {
    /// Solves for the three radii. Requires `0 < eps < eps_star(n, |c|)`.
    pub fn new(n: usize, c: Complex64, eps: f64) -> Result<Self> {
        let c_abs = c.norm();
        let star = eps_star(n, c_abs)?;
        if !(eps > 0.0 && eps < star) {
            return Err(Error::NoGuarantee { eps, eps_star: star });
        }
        let mut minus = vec![0.0; n + 1];
        minus[0] = -eps;
        minus[2] += 1.0;
        minus[n] += c_abs;
        let mut plus = vec![0.0; n + 1];
        plus[0] = eps;
        plus[2] -= 1.0;
        plus[n] += c_abs;
        let split = (2.0 / (n as f64 * c_abs)).powf(1.0 / (n as f64 - 2.0));
        // f_minus is increasing on (0, inf) and changes sign on (0, sqrt(eps))
        let r1 = RealPolynomial::new(minus).positive_real_roots(0.0, eps.sqrt())?;
        let fp = RealPolynomial::new(plus);
        // f_plus has its minimum at `split`, roots on either side
        let r2 = fp.positive_real_roots(0.0, split)?;
        // f_plus(rho) = eps > 0 where |c| rho^n = rho^2
        let upper = (1.0 / c_abs).powf(1.0 / (n as f64 - 2.0));
        let r3 = fp.positive_real_roots(split, upper)?;
        let (Some(&rho1), Some(&rho2), Some(&rho3)) = (r1.roots.first(), r2.roots.first(), r3.roots.last()) else {
            return Err(Error::RootIsolation(format!(
                "local model n = {n}, |c| = {c_abs}, eps = {eps}: missing radius"
            )));
        };
        Ok(LocalModel {
            n,
            c,
            eps,
            rho1,
            rho2,
            rho3,
        })
    }

    /// Rotation `e^{-i arg(c) / n}` mapping the real-positive case to `c`.
    pub fn rotation(&self) -> Complex64 {
        Complex64::from_polar(1.0, -self.c.arg() / self.n as f64)
    }

    /// The `3n` zeros of `G`: `n` on each of the circles `rho_1, rho_2, rho_3`.
    pub fn zeros(&self) -> Vec<Complex64> {
        let rot = self.rotation();
        let n = self.n as f64;
        let mut out = Vec::with_capacity(3 * self.n);
        for k in 0..self.n {
            out.push(rot * Complex64::from_polar(self.rho1, (2.0 * k as f64 + 1.0) * PI / n));
        }
        for rho in [self.rho2, self.rho3] {
            for k in 0..self.n {
                out.push(rot * Complex64::from_polar(rho, 2.0 * k as f64 * PI / n));
            }
        }
        out
    }

    /// `c w^n + eps - |w|^2`.
    pub fn defining_residual(&self, w: Complex64) -> f64 {
        (self.c * w.powu(self.n as u32) + self.eps - w.norm_sqr()).norm()
    }

    /// `G(w)`.
    pub fn eval(&self, w: Complex64) -> Complex64 {
        self.c * w.powu(self.n as u32 - 1) + self.eps / w - w.conj()
    }

    /// Sense of `G` at `w`, from `|(n-1) c w^(n-2) - eps / w^2|`.
    pub fn sense(&self, w: Complex64) -> SenseClass {
        let d = (self.n as f64 - 1.0) * self.c * w.powu(self.n as u32 - 2) - self.eps / (w * w);
        SenseClass::from_witness(d.norm())
    }
}

/// All `3n` zeros of `G`; fails when `eps >= eps_star`.
pub fn local_model_zeros(n: usize, c: Complex64, eps: f64) -> Result<Vec<Complex64>> {
    LocalModel::new(n, c, eps).map(|m| m.zeros())
}

/// Zeros of the linear model `G(w) = c w + eps / w - conj(w)`, which solve
/// `c w^2 + eps - |w|^2 = 0`. Two sense-preserving points when `|c| > 1`,
/// plus two sense-reversing ones when `|c| < 1`.
pub fn local_model_linear(c: Complex64, eps: f64) -> Result<Vec<(Complex64, Sense)>> {
    let m = c.norm();
    if (m - 1.0).abs() <= crate::harmonic::SENSE_BAND || m == 0.0 {
        return Err(Error::InvalidArgument(format!("linear model needs 0 < |c| != 1, got {m}")));
    }
    if !(eps > 0.0) {
        return Err(Error::InvalidArgument(format!("eps must be positive, got {eps}")));
    }
    let rot = Complex64::from_polar(1.0, -c.arg() / 2.0);
    let a = (eps / (1.0 + m)).sqrt();
    let i = Complex64::i();
    let mut out = vec![(rot * i * a, Sense::Preserving), (-rot * i * a, Sense::Preserving)];
    if m < 1.0 {
        let b = (eps / (1.0 - m)).sqrt();
        out.push((rot * b, Sense::Reversing));
        out.push((-rot * b, Sense::Reversing));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn real(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn threshold_examples() {
        assert_relative_eq!(eps_star(3, 1.0).unwrap(), 4.0 / 27.0, epsilon = 1e-15);
        assert_relative_eq!(eps_star(4, 1.0).unwrap(), 0.25, epsilon = 1e-15);
        for n in 3..8 {
            let scaled = eps_star(n, 2.0).unwrap();
            let expected = eps_star(n, 1.0).unwrap() * 2f64.powf(-2.0 / (n as f64 - 2.0));
            assert_relative_eq!(scaled, expected, max_relative = 1e-14);
        }
        assert_relative_eq!(eps_sharp(3, 1.0).unwrap(), 2.0 / 27.0, epsilon = 1e-15);
        assert_relative_eq!(eps_sharp(4, 1.0).unwrap(), 0.1875, epsilon = 1e-15);
        assert!(eps_star(2, 1.0).is_err());
        assert!(eps_sharp(3, 0.0).is_err());
    }

    #[test]
    fn local_model_n3_c1() {
        let m = LocalModel::new(3, real(1.0), 0.05).unwrap();
        // bisection oracle values
        assert_relative_eq!(m.rho1, 0.203_801_58, epsilon = 1e-8);
        assert_relative_eq!(m.rho2, 0.259_924_33, epsilon = 1e-8);
        assert_relative_eq!(m.rho3, 0.943_877_2, epsilon = 1e-7);
        let zeros = m.zeros();
        assert_eq!(zeros.len(), 9);
        for w in &zeros {
            assert!(m.defining_residual(*w) <= 1e-10);
            assert!(m.eval(*w).norm() <= 1e-10);
        }
        let e = eta(3);
        let s = 0.05f64.sqrt();
        assert!(s / e < m.rho1 && m.rho1 < s && s < m.rho2 && m.rho2 < s * e);
        for w in &zeros[..3] {
            assert_eq!(m.sense(*w).sense, Sense::Preserving);
        }
        for w in &zeros[3..6] {
            assert_eq!(m.sense(*w).sense, Sense::Reversing);
        }
        assert!(matches!(LocalModel::new(3, real(1.0), 0.2), Err(Error::NoGuarantee { .. })));
    }

    #[test]
    fn local_model_rotation() {
        let c = Complex64::from_polar(2.0, 1.1);
        let m = LocalModel::new(4, c, 0.02).unwrap();
        let base = LocalModel::new(4, real(2.0), 0.02).unwrap();
        let rot = Complex64::from_polar(1.0, -1.1 / 4.0);
        for (w, u) in m.zeros().iter().zip(base.zeros()) {
            assert!((w - rot * u).norm() < 1e-14);
            assert!(m.defining_residual(*w) < 1e-12);
        }
    }

    #[test]
    fn linear_model_examples() {
        let pts = local_model_linear(real(3.0), 0.04).unwrap();
        assert_eq!(pts.len(), 2);
        assert!((pts[0].0 - Complex64::new(0.0, 0.1)).norm() < 1e-15);
        assert!((pts[1].0 - Complex64::new(0.0, -0.1)).norm() < 1e-15);
        let pts = local_model_linear(real(0.5), 0.01).unwrap();
        assert_eq!(pts.len(), 4);
        assert_relative_eq!(pts[0].0.im, (1.0f64 / 150.0).sqrt(), epsilon = 1e-15);
        assert_relative_eq!(pts[2].0.re, 0.02f64.sqrt(), epsilon = 1e-15);
        for c in [real(3.0), real(0.5), Complex64::from_polar(0.5, 2.0)] {
            for (w, sense) in local_model_linear(c, 0.01).unwrap() {
                assert!((c * w * w + 0.01 - w.norm_sqr()).norm() < 1e-12);
                let witness = (c - 0.01 / (w * w)).norm();
                assert_eq!(SenseClass::from_witness(witness).sense, sense);
            }
        }
        assert!(local_model_linear(real(1.0), 0.01).is_err());
    }
}
