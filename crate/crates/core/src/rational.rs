//! Rational functions `R = p / q` with coprime numerator and denominator.

use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polynomial::{self, ComplexPolynomial};

/// `eval` reports a pole when `|q(z)| < POLE_PROXIMITY * (1 + |p(z)|)`.
pub const POLE_PROXIMITY: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Pole {
    #[serde(rename = "z", with = "crate::serde_complex")]
    pub location: Complex64,
    pub order: usize,
}

/// JSON layout: coefficient lists lowest degree first, each `[re, im]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: ComplexPolynomial,
    pub den: ComplexPolynomial,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "RationalJson", into = "RationalJson")]
pub struct RationalFunction {
    num: ComplexPolynomial,
    den: ComplexPolynomial,
    num_d: ComplexPolynomial,
    den_d: ComplexPolynomial,
    poles: OnceLock<Vec<Pole>>,
    derivative: OnceLock<Box<RationalFunction>>,
    split: Option<Box<Split>>,
}

/// `residue / (z - at)^order`
#[derive(Clone, Copy, Debug)]
struct PoleTerm {
    at: Complex64,
    residue: Complex64,
    order: usize,
}

impl PoleTerm {
    fn eval_with_derivative(&self, z: Complex64) -> Option<(Complex64, Complex64)> {
        let w = z - self.at;
        let wm = w.powu(self.order as u32);
        if wm.norm() < POLE_PROXIMITY * (1.0 + self.residue.norm()) {
            return None;
        }
        let v = self.residue / wm;
        Some((v, -(self.order as f64) * v / w))
    }
}

/// `R = base + sum of terms`. Kept next to the expanded quotient because
/// the expanded numerator of `R + eps / (z - z0)^k` is `O(eps)` near `z0`
/// and loses most of its digits there.
#[derive(Clone, Debug)]
struct Split {
    base: RationalFunction,
    terms: Vec<PoleTerm>,
}

impl Split {
    fn eval(&self, z: Complex64) -> Option<Complex64> {
        let mut v = self.base.eval(z)?;
        for t in &self.terms {
            v += t.eval_with_derivative(z)?.0;
        }
        Some(v)
    }

    fn eval_with_derivative(&self, z: Complex64) -> Option<(Complex64, Complex64)> {
        let (mut v, mut d) = self.base.eval_with_derivative(z)?;
        for t in &self.terms {
            let (tv, td) = t.eval_with_derivative(z)?;
            v += tv;
            d += td;
        }
        Some((v, d))
    }
}

impl TryFrom<RationalJson> for RationalFunction {
    type Error = Error;
    fn try_from(j: RationalJson) -> Result<Self> {
        Self::new(j.num, j.den)
    }
}

impl From<RationalFunction> for RationalJson {
    fn from(r: RationalFunction) -> Self {
        RationalJson {
            num: r.num,
            den: r.den,
        }
    }
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

impl RationalFunction {
    /// Builds `num / den`, deflating any common root.
    pub fn new(num: ComplexPolynomial, den: ComplexPolynomial) -> Result<Self> {
        Self::reduce(num, den).map(|(r, _)| r)
    }

    /// Like [`new`](Self::new) but also returns the common roots that were
    /// divided out (each repeated by its removed multiplicity).
    pub fn reduce(
        mut num: ComplexPolynomial,
        mut den: ComplexPolynomial,
    ) -> Result<(Self, Vec<Complex64>)> {
        if den.is_zero() {
            return Err(Error::ZeroPolynomial("denominator"));
        }
        if num.is_zero() {
            return Ok((Self::from_parts(num, ComplexPolynomial::one(), Some(Vec::new())), Vec::new()));
        }
        let mut removed = Vec::new();
        if num.degree() > Some(0) && den.degree() > Some(0) {
            for (root, m) in polynomial::common_roots(&num, &den)? {
                for _ in 0..m {
                    num = num.deflate(root);
                    den = den.deflate(root);
                    removed.push(root);
                }
            }
        }
        Ok((Self::from_parts(num, den, None), removed))
    }

    /// Trusted constructor: the caller guarantees coprimality and, when
    /// `poles` is given, the exact pole structure.
    pub(crate) fn from_parts(
        num: ComplexPolynomial,
        den: ComplexPolynomial,
        poles: Option<Vec<Pole>>,
    ) -> Self {
        let cell = OnceLock::new();
        if let Some(p) = poles {
            let _ = cell.set(p);
        }
        Self {
            num_d: num.derivative(),
            den_d: den.derivative(),
            num,
            den,
            poles: cell,
            derivative: OnceLock::new(),
            split: None,
        }
    }

    fn with_split(mut self, base: RationalFunction, terms: Vec<PoleTerm>) -> Self {
        self.split = Some(Box::new(Split { base, terms }));
        self
    }

    /// The function without added pole terms, and the terms.
    fn parts(&self) -> (RationalFunction, Vec<PoleTerm>) {
        match &self.split {
            Some(s) => (s.base.clone(), s.terms.clone()),
            None => (self.clone(), Vec::new()),
        }
    }

    pub fn zero() -> Self {
        Self::from_parts(ComplexPolynomial::zero(), ComplexPolynomial::one(), Some(Vec::new()))
    }

    pub fn polynomial(p: ComplexPolynomial) -> Self {
        Self::from_parts(p, ComplexPolynomial::one(), Some(Vec::new()))
    }

    pub fn num(&self) -> &ComplexPolynomial {
        &self.num
    }

    pub fn den(&self) -> &ComplexPolynomial {
        &self.den
    }

    /// `max(deg p, deg q)`; the zero numerator contributes nothing.
    pub fn degree(&self) -> usize {
        self.num
            .degree()
            .unwrap_or(0)
            .max(self.den.degree().unwrap_or(0))
    }

    pub fn to_json(&self) -> RationalJson {
        RationalJson {
            num: self.num.clone(),
            den: self.den.clone(),
        }
    }

    /// `None` marks a pole.
    pub fn eval(&self, z: Complex64) -> Option<Complex64> {
        if let Some(s) = &self.split {
            return s.eval(z);
        }
        let p = self.num.eval(z);
        let q = self.den.eval(z);
        if q.norm() < POLE_PROXIMITY * (1.0 + p.norm()) {
            None
        } else {
            Some(p / q)
        }
    }

    /// `R(z)` and `R'(z)` by the quotient rule, without forming `R'`.
    pub fn eval_with_derivative(&self, z: Complex64) -> Option<(Complex64, Complex64)> {
        if let Some(s) = &self.split {
            return s.eval_with_derivative(z);
        }
        let p = self.num.eval(z);
        let q = self.den.eval(z);
        if q.norm() < POLE_PROXIMITY * (1.0 + p.norm()) {
            return None;
        }
        let dp = self.num_d.eval(z);
        let dq = self.den_d.eval(z);
        let inv = q.inv();
        let value = p * inv;
        Some((value, (dp - value * dq) * inv))
    }

    pub fn eval_derivative(&self, z: Complex64) -> Option<Complex64> {
        self.eval_with_derivative(z).map(|(_, d)| d)
    }

    /// Distinct poles with orders, sorted by real then imaginary part.
    pub fn poles(&self) -> &[Pole] {
        self.poles.get_or_init(|| {
            if self.den.degree().unwrap_or(0) == 0 {
                return Vec::new();
            }
            self.den
                .root_clusters()
                .map(|cs| {
                    cs.into_iter()
                        .map(|(location, order)| Pole { location, order })
                        .collect()
                })
                .unwrap_or_default()
        })
    }

    /// Total pole order, equal to `deg q`.
    pub fn pole_order_sum(&self) -> usize {
        self.poles().iter().map(|p| p.order).sum()
    }

    /// The pole within root-coincidence tolerance of `z`, if any.
    pub fn pole_near(&self, z: Complex64) -> Option<Pole> {
        let tol = polynomial::ROOT_DEDUP_TOL * z.norm().max(1.0);
        self.poles()
            .iter()
            .copied()
            .find(|p| (p.location - z).norm() <= tol)
    }

    /// Leading Laurent coefficient `lim (z - z_p)^m R(z)` at a pole of order `m`.
    pub fn laurent_leading(&self, pole: &Pole) -> Complex64 {
        let shifted = self.den.shift(pole.location);
        let b = shifted
            .coeffs()
            .get(pole.order)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0));
        self.num.eval(pole.location) / b
    }

    /// The derivative `R'`, computed once and cached.
    ///
    /// Quotient rule, followed by cancelling the factor
    /// `prod (z - z_j)^(m_j - 1)` shared by numerator and `q^2` at poles of
    /// order `m_j > 1`.
    pub fn derivative(&self) -> &RationalFunction {
        self.derivative.get_or_init(|| {
            let d = self.compute_derivative();
            Box::new(match &self.split {
                Some(s) => {
                    let terms = s
                        .terms
                        .iter()
                        .map(|t| PoleTerm {
                            at: t.at,
                            residue: -(t.order as f64) * t.residue,
                            order: t.order + 1,
                        })
                        .collect();
                    d.with_split(s.base.derivative().clone(), terms)
                }
                None => d,
            })
        })
    }

    fn compute_derivative(&self) -> RationalFunction {
        let p = &self.num;
        let q = &self.den;
        let numer = &(&self.num_d * q) - &(p * &self.den_d);
        if numer.is_zero() {
            return Self::zero();
        }
        let poles = self.poles().to_vec();
        let shared: Vec<Complex64> = poles
            .iter()
            .flat_map(|pl| std::iter::repeat_n(pl.location, pl.order.saturating_sub(1)))
            .collect();
        let new_poles: Vec<Pole> = poles
            .iter()
            .map(|pl| Pole {
                location: pl.location,
                order: pl.order + 1,
            })
            .collect();
        if shared.is_empty() {
            return Self::from_parts(numer, q * q, Some(new_poles));
        }
        let g = ComplexPolynomial::from_roots(&shared);
        let (num_red, _) = numer.div_rem(&g).expect("nonzero divisor");
        let (q_red, _) = q.div_rem(&g).expect("nonzero divisor");
        Self::from_parts(num_red, q * &q_red, Some(new_poles))
    }

    /// Critical points of `R`: zeros of `R'` away from the poles.
    pub fn critical_points(&self) -> Result<Vec<Complex64>> {
        let d = self.derivative();
        if d.num.degree().unwrap_or(0) == 0 {
            return Ok(Vec::new());
        }
        let clusters = d.num.root_clusters()?;
        Ok(clusters
            .into_iter()
            .map(|(z, _)| z)
            .filter(|z| self.pole_near(*z).is_none())
            .collect())
    }

    /// First `count` Taylor coefficients `R^(k)(z0) / k!`.
    ///
    /// Exact recursion: both polynomials are shifted to `z0` and the power
    /// series of the quotient is obtained by division term by term.
    pub fn taylor(&self, z0: Complex64, count: usize) -> Result<Vec<Complex64>> {
        if let Some(s) = &self.split {
            let mut out = s.base.taylor(z0, count)?;
            for t in &s.terms {
                let u = z0 - t.at;
                if u.norm() == 0.0 {
                    return Err(Error::AtPole(z0));
                }
                // r (u + w)^-m = r u^-m sum_j binom(-m, j) (w / u)^j
                let mut c = t.residue / u.powu(t.order as u32);
                for (j, slot) in out.iter_mut().enumerate() {
                    if j > 0 {
                        c *= -((t.order + j - 1) as f64) / j as f64 / u;
                    }
                    *slot += c;
                }
            }
            return Ok(out);
        }
        let a = self.num.shift(z0);
        let b = self.den.shift(z0);
        let zero = Complex64::new(0.0, 0.0);
        let b0 = b.coeffs().first().copied().unwrap_or(zero);
        let a0 = a.coeffs().first().copied().unwrap_or(zero);
        if b0.norm() < POLE_PROXIMITY * (1.0 + a0.norm()) || self.pole_near(z0).is_some() {
            return Err(Error::AtPole(z0));
        }
        let mut out: Vec<Complex64> = Vec::with_capacity(count);
        for k in 0..count {
            let mut s = a.coeffs().get(k).copied().unwrap_or(zero);
            for j in 1..=k.min(b.coeffs().len().saturating_sub(1)) {
                s -= b.coeffs()[j] * out[k - j];
            }
            out.push(s / b0);
        }
        Ok(out)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        if s.norm() == 0.0 {
            return Self::zero();
        }
        let poles = self.poles.get().cloned();
        let out = Self::from_parts(self.num.scale(s), self.den.clone(), poles);
        match &self.split {
            Some(sp) => {
                let terms = sp.terms.iter().map(|t| PoleTerm { residue: s * t.residue, ..*t }).collect();
                out.with_split(sp.base.scale(s), terms)
            }
            None => out,
        }
    }

    /// `R(z) + c`; the poles are unchanged.
    pub fn add_constant(&self, c: Complex64) -> Self {
        let num = &self.num + &self.den.scale(c);
        let poles = self.poles.get().cloned();
        let out = Self::from_parts(num, self.den.clone(), poles);
        match &self.split {
            Some(sp) => out.with_split(sp.base.add_constant(c), sp.terms.clone()),
            None => out,
        }
    }

    /// `R(z) + residue / (z - z0)^order`.
    ///
    /// When `z0` already is a pole of order `m`, the common factor
    /// `(z - z0)^min(m, order)` is cancelled so the result stays coprime.
    pub fn add_pole(&self, z0: Complex64, residue: Complex64, order: usize) -> Result<Self> {
        if order < 1 {
            return Err(Error::InvalidArgument("pole order must be at least 1".into()));
        }
        if residue.norm() == 0.0 {
            return Err(Error::InvalidArgument("zero residue adds nothing".into()));
        }
        let (base, mut terms) = self.parts();
        terms.push(PoleTerm {
            at: z0,
            residue,
            order,
        });
        let p = &self.num;
        let q = &self.den;
        if let Some(existing) = self.pole_near(z0) {
            let loc = existing.location;
            let m = existing.order;
            let (q_rest, _) = q.div_rem(&ComplexPolynomial::from_roots(&vec![loc; m]))?;
            let lin = |k: usize| ComplexPolynomial::from_roots(&vec![loc; k]);
            let (num, den) = if order <= m {
                (p + &(&q_rest * &lin(m - order)).scale(residue), q.clone())
            } else {
                (
                    &(p * &lin(order - m)) + &q_rest.scale(residue),
                    &q_rest * &lin(order),
                )
            };
            if order == m {
                // the leading Laurent term may cancel
                return Self::new(num, den);
            }
            let poles = self
                .poles()
                .iter()
                .map(|pl| {
                    if pl.location == loc {
                        Pole {
                            location: loc,
                            order: m.max(order),
                        }
                    } else {
                        *pl
                    }
                })
                .collect();
            return Ok(Self::from_parts(num, den, Some(poles)).with_split(base, terms));
        }
        let factor = ComplexPolynomial::from_roots(&vec![z0; order]);
        let num = &(p * &factor) + &q.scale(residue);
        let den = q * &factor;
        let mut poles: Vec<Pole> = self.poles().to_vec();
        poles.push(Pole {
            location: z0,
            order,
        });
        poles.sort_by(|a, b| {
            a.location
                .re
                .total_cmp(&b.location.re)
                .then(a.location.im.total_cmp(&b.location.im))
        });
        Ok(Self::from_parts(num, den, Some(poles)).with_split(base, terms))
    }

    /// `(1 - eps) R(z) + eps / (z - z0)` for `0 < eps < 1`.
    pub fn convex_with_pole(&self, z0: Complex64, eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::InvalidArgument(format!(
                "convex weight {eps} outside (0, 1)"
            )));
        }
        self.scale(Complex64::new(1.0 - eps, 0.0))
            .add_pole(z0, Complex64::new(eps, 0.0), 1)
    }

    /// Circular lens `z^(d-1) / (z^d - r^d)`.
    pub fn rhie_base(d: usize, r: f64) -> Result<Self> {
        if d < 2 || !(r > 0.0 && r.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "circular lens needs d >= 2 and r > 0 (got d = {d}, r = {r})"
            )));
        }
        let num = ComplexPolynomial::monomial(one(), d - 1);
        let den = &ComplexPolynomial::monomial(one(), d)
            - &ComplexPolynomial::constant(Complex64::new(r.powi(d as i32), 0.0));
        let poles = (0..d)
            .map(|k| Pole {
                location: Complex64::from_polar(r, std::f64::consts::TAU * k as f64 / d as f64),
                order: 1,
            })
            .collect();
        Ok(Self::from_parts(num, den, Some(poles)))
    }
}

/// Radius below which the circular lens of degree `d >= 3` has `3d + 1` zeros:
/// `((d - 2) / d)^(1/2) * (2 / (d - 2))^(1/d)`.
pub fn mpw_radius(d: usize) -> Result<f64> {
    if d < 3 {
        return Err(Error::InvalidArgument(format!("radius bound needs d >= 3, got {d}")));
    }
    let d = d as f64;
    Ok(((d - 2.0) / d).sqrt() * (2.0 / (d - 2.0)).powf(1.0 / d))
}
