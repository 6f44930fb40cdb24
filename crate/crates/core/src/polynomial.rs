//! Dense polynomials over the complex and real numbers.
//!
//! Coefficients are stored lowest degree first. The zero polynomial is the
//! empty coefficient list and has no degree (`degree() == None`), never `[0]`.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Trailing coefficients below this fraction of the largest modulus are dropped.
pub const NORMALIZE_RELATIVE: f64 = 1e-14;

/// Absolute root-coincidence tolerance at unit scale.
pub const ROOT_DEDUP_TOL: f64 = 1e-8;

/// Relative radius used to group numerically scattered copies of a multiple root.
pub const MULTIPLE_ROOT_CLUSTER: f64 = 1e-3;

const ABERTH_MAX_ITER: usize = 2000;

#[derive(Clone, Debug, PartialEq, Default)]
pub struct ComplexPolynomial {
    coeffs: Vec<Complex64>,
}

impl ComplexPolynomial {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        let max = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        while let Some(last) = coeffs.last() {
            let m = last.norm();
            if m == 0.0 || m < NORMALIZE_RELATIVE * max || m.is_nan() {
                coeffs.pop();
            } else {
                break;
            }
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    /// `c * z^k`.
    pub fn monomial(c: Complex64, k: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `z - a`.
    pub fn linear(a: Complex64) -> Self {
        Self::new(vec![-a, Complex64::new(1.0, 0.0)])
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        roots
            .iter()
            .fold(Self::one(), |acc, &r| acc.mul_linear(r))
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<Complex64> {
        self.coeffs.last().copied()
    }

    pub fn max_modulus(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// Value and first derivative in one Horner pass.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let zero = Complex64::new(0.0, 0.0);
        let mut p = zero;
        let mut dp = zero;
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    /// Running-error bound for Horner evaluation at `z`.
    pub fn eval_error_bound(&self, z: Complex64) -> f64 {
        let r = z.norm();
        let s = self
            .coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * r + c.norm());
        8.0 * f64::EPSILON * s * (self.coeffs.len() as f64).max(1.0)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * s).collect())
    }

    /// Multiplies by `(z - a)`.
    pub fn mul_linear(&self, a: Complex64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + 1];
        for (k, &c) in self.coeffs.iter().enumerate() {
            out[k + 1] += c;
            out[k] -= c * a;
        }
        Self::new(out)
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Polynomial with conjugated coefficients.
    pub fn conj_coeffs(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.conj()).collect())
    }

    /// Synthetic division by `(z - a)`, discarding the remainder.
    pub fn deflate(&self, a: Complex64) -> Self {
        let n = self.coeffs.len();
        if n <= 1 {
            return Self::zero();
        }
        let mut out = vec![Complex64::new(0.0, 0.0); n - 1];
        let mut carry = Complex64::new(0.0, 0.0);
        for k in (1..n).rev() {
            carry = carry * a + self.coeffs[k];
            out[k - 1] = carry;
        }
        Self::new(out)
    }

    /// Long division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor
            .degree()
            .ok_or(Error::ZeroPolynomial("divisor"))?;
        let lead = divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Complex64::new(0.0, 0.0); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let t = rem[k + dd] / lead;
            quot[k] = t;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= t * d;
            }
            rem[k + dd] = Complex64::new(0.0, 0.0);
        }
        rem.truncate(dd);
        Ok((Self::new(quot), Self::new(rem)))
    }

    /// Coefficients of `w -> p(z0 + w)`.
    pub fn shift(&self, z0: Complex64) -> Self {
        let shifted = Self::new(vec![z0, Complex64::new(1.0, 0.0)]);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, &c| &(&acc * &shifted) + &Self::constant(c))
    }

    /// All roots with multiplicity, by Aberth-Ehrlich iteration.
    ///
    /// Exact zero low-order coefficients are split off as exact roots at the
    /// origin; the remaining factor starts from Newton-polygon radii so that
    /// roots of very different magnitudes converge together.
    pub fn roots(&self) -> Result<Vec<Complex64>> {
        let degree = self.degree().ok_or(Error::UndefinedRoots)?;
        if degree == 0 {
            return Ok(Vec::new());
        }
        let zeros_at_origin = self
            .coeffs
            .iter()
            .take_while(|c| c.norm() == 0.0)
            .count();
        let mut roots = vec![Complex64::new(0.0, 0.0); zeros_at_origin];
        let reduced = Self::new(self.coeffs[zeros_at_origin..].to_vec());
        roots.extend(aberth(&reduced));
        Ok(roots)
    }

    /// Distinct roots with multiplicities; see [`cluster_roots`].
    pub fn root_clusters(&self) -> Result<Vec<(Complex64, usize)>> {
        let raw = self.roots()?;
        Ok(self.polish_clusters(cluster_roots(&raw, MULTIPLE_ROOT_CLUSTER)))
    }

    /// Refines the centre of each multiple-root cluster as a simple root of
    /// the `(m-1)`-th derivative.
    fn polish_clusters(&self, clusters: Vec<(Complex64, usize)>) -> Vec<(Complex64, usize)> {
        clusters
            .into_iter()
            .map(|(c, m)| {
                if m < 2 {
                    return (c, m);
                }
                let mut d = self.clone();
                for _ in 0..m - 1 {
                    d = d.derivative();
                }
                let mut z = c;
                for _ in 0..8 {
                    let (v, dv) = d.eval_with_derivative(z);
                    if dv.norm() == 0.0 {
                        break;
                    }
                    let step = v / dv;
                    if step.norm() > MULTIPLE_ROOT_CLUSTER * (1.0 + c.norm()) {
                        break;
                    }
                    z -= step;
                    if step.norm() <= 1e-16 * (1.0 + z.norm()) {
                        break;
                    }
                }
                if (z - c).norm() <= MULTIPLE_ROOT_CLUSTER * (1.0 + c.norm()) {
                    (z, m)
                } else {
                    (c, m)
                }
            })
            .collect()
    }
}

fn aberth(p: &ComplexPolynomial) -> Vec<Complex64> {
    let n = match p.degree() {
        Some(0) | None => return Vec::new(),
        Some(n) => n,
    };
    let lead = p.coeffs[n];
    let monic = p.scale(Complex64::new(1.0, 0.0) / lead);
    if n == 1 {
        return vec![-monic.coeffs[0]];
    }
    let mut z = initial_guesses(&monic);
    let mut done = vec![false; n];
    for _ in 0..ABERTH_MAX_ITER {
        let mut all_done = true;
        for k in 0..n {
            if done[k] {
                continue;
            }
            let (v, dv) = monic.eval_with_derivative(z[k]);
            if v.norm() <= monic.eval_error_bound(z[k]) {
                done[k] = true;
                continue;
            }
            all_done = false;
            let ratio = v / dv;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != k {
                    let diff = z[k] - z[j];
                    if diff.norm() > 0.0 {
                        s += diff.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - ratio * s;
            let w = if denom.norm() > 0.0 && ratio.is_finite() {
                ratio / denom
            } else {
                ratio
            };
            if !w.is_finite() {
                let bump = Complex64::new(1e-8, 1e-8) * (1.0 + z[k].norm());
                z[k] += bump;
                continue;
            }
            z[k] -= w;
            if w.norm() <= 4.0 * f64::EPSILON * z[k].norm() {
                done[k] = true;
            }
        }
        if all_done {
            break;
        }
    }
    z
}

/// Starting points on circles whose radii come from the upper convex hull of
/// `(k, ln|a_k|)`.
fn initial_guesses(p: &ComplexPolynomial) -> Vec<Complex64> {
    let n = p.coeffs.len() - 1;
    let pts: Vec<(usize, f64)> = p
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| c.norm() > 0.0)
        .map(|(k, c)| (k, c.norm().ln()))
        .collect();
    let mut hull: Vec<(usize, f64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let (k1, y1) = hull[hull.len() - 2];
            let (k2, y2) = hull[hull.len() - 1];
            let cross = (k2 as f64 - k1 as f64) * (pt.1 - y1) - (y2 - y1) * (pt.0 as f64 - k1 as f64);
            if cross >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let mut out = Vec::with_capacity(n);
    let sigma = 0.7;
    for w in hull.windows(2) {
        let (k1, y1) = w[0];
        let (k2, y2) = w[1];
        let m = k2 - k1;
        let radius = ((y1 - y2) / m as f64).exp();
        for j in 0..m {
            let angle = std::f64::consts::TAU * (j as f64 / m as f64 + k1 as f64 / n as f64) + sigma;
            out.push(Complex64::from_polar(radius, angle));
        }
    }
    out
}

/// Groups roots closer than `rel * (1 + |z|)` (single linkage) and returns
/// cluster centroids with multiplicities, sorted by real then imaginary part.
pub fn cluster_roots(roots: &[Complex64], rel: f64) -> Vec<(Complex64, usize)> {
    let n = roots.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        let mut j = i;
        while parent[j] != r {
            let next = parent[j];
            parent[j] = r;
            j = next;
        }
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            let tol = rel * (1.0 + roots[i].norm().max(roots[j].norm()));
            if (roots[i] - roots[j]).norm() <= tol {
                let a = find(&mut parent, i);
                let b = find(&mut parent, j);
                if a != b {
                    parent[b] = a;
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<Complex64>> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(roots[i]);
    }
    let mut out: Vec<(Complex64, usize)> = groups
        .into_values()
        .map(|g| {
            let m = g.len();
            let sum: Complex64 = g.iter().sum();
            (sum / m as f64, m)
        })
        .collect();
    out.sort_by(|a, b| {
        a.0.re
            .total_cmp(&b.0.re)
            .then(a.0.im.total_cmp(&b.0.im))
    });
    out
}

/// Root-coincidence tolerance for a set of roots: absolute at unit scale,
/// relative to the largest root modulus otherwise.
pub fn dedup_tolerance(roots: &[Complex64]) -> f64 {
    let max = roots.iter().map(|r| r.norm()).fold(0.0, f64::max);
    ROOT_DEDUP_TOL * max.max(1.0)
}

/// Roots shared by `p` and `q`, each with the smaller of its two multiplicities.
pub fn common_roots(
    p: &ComplexPolynomial,
    q: &ComplexPolynomial,
) -> Result<Vec<(Complex64, usize)>> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial("coprimality operand"));
    }
    let cp = p.root_clusters()?;
    let cq = q.root_clusters()?;
    let all: Vec<Complex64> = cp.iter().chain(cq.iter()).map(|c| c.0).collect();
    let tol = dedup_tolerance(&all);
    let mut shared = Vec::new();
    let mut used = vec![false; cq.len()];
    for &(a, ma) in &cp {
        for (j, &(b, mb)) in cq.iter().enumerate() {
            if !used[j] && (a - b).norm() <= tol {
                used[j] = true;
                shared.push(((a + b) * 0.5, ma.min(mb)));
                break;
            }
        }
    }
    Ok(shared)
}

/// True iff `p` and `q` have no common root (numerically).
pub fn coprime(p: &ComplexPolynomial, q: &ComplexPolynomial) -> Result<bool> {
    Ok(common_roots(p, q)?.is_empty())
}

impl Add for &ComplexPolynomial {
    type Output = ComplexPolynomial;
    fn add(self, rhs: Self) -> ComplexPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Complex64::new(0.0, 0.0);
        ComplexPolynomial::new(
            (0..n)
                .map(|k| {
                    self.coeffs.get(k).copied().unwrap_or(zero)
                        + rhs.coeffs.get(k).copied().unwrap_or(zero)
                })
                .collect(),
        )
    }
}

impl Neg for &ComplexPolynomial {
    type Output = ComplexPolynomial;
    fn neg(self) -> ComplexPolynomial {
        ComplexPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &ComplexPolynomial {
    type Output = ComplexPolynomial;
    fn sub(self, rhs: Self) -> ComplexPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &ComplexPolynomial {
    type Output = ComplexPolynomial;
    fn mul(self, rhs: Self) -> ComplexPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return ComplexPolynomial::zero();
        }
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        ComplexPolynomial::new(out)
    }
}

impl Serialize for ComplexPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::serde_complex::vec::serialize(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for ComplexPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        crate::serde_complex::vec::deserialize(d).map(Self::new)
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct RealPolynomial {
    coeffs: Vec<f64>,
}

/// Outcome of positive root isolation on a bracket.
#[derive(Clone, Debug, PartialEq)]
pub struct PositiveRoots {
    pub roots: Vec<f64>,
    /// Descartes' sign-variation bound on the number of positive roots.
    pub descartes_bound: usize,
    /// False when no sign change was detected anywhere on the bracket.
    pub bracketed: bool,
}

impl RealPolynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Self {
        let max = coeffs.iter().map(|c| c.abs()).fold(0.0, f64::max);
        while let Some(&last) = coeffs.last() {
            if last == 0.0 || last.abs() < NORMALIZE_RELATIVE * max {
                coeffs.pop();
            } else {
                break;
            }
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * k as f64)
                .collect(),
        )
    }

    /// Number of sign changes in the coefficient sequence, zeros skipped.
    pub fn sign_variations(&self) -> usize {
        let signs: Vec<bool> = self
            .coeffs
            .iter()
            .filter(|c| **c != 0.0)
            .map(|c| *c > 0.0)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Roots in `(lo, hi]` with `lo >= 0`, by sign-change scanning and bisection.
    ///
    /// The scan mixes a uniform and a geometric grid so that roots near the
    /// origin are separated as well as roots near `hi`.
    pub fn positive_real_roots(&self, lo: f64, hi: f64) -> Result<PositiveRoots> {
        if self.coeffs.is_empty() {
            return Err(Error::ZeroPolynomial("root isolation input"));
        }
        if !(lo >= 0.0 && hi > lo && hi.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "bracket ({lo}, {hi}] must be a nonempty positive interval"
            )));
        }
        let descartes_bound = self.sign_variations();
        let samples = 2048;
        let mut grid: Vec<f64> = (0..=samples)
            .map(|k| lo + (hi - lo) * k as f64 / samples as f64)
            .collect();
        let g0 = if lo > 0.0 { lo } else { hi * 1e-12 };
        if hi > g0 {
            let ratio = (hi / g0).ln();
            grid.extend((0..=samples).map(|k| g0 * (ratio * k as f64 / samples as f64).exp()));
        }
        grid.retain(|x| *x > lo || (lo > 0.0 && *x == lo));
        grid.push(hi);
        grid.sort_by(f64::total_cmp);
        grid.dedup();

        let mut roots = Vec::new();
        let mut bracketed = false;
        let mut prev_x = grid[0];
        let mut prev_v = self.eval(prev_x);
        if prev_v == 0.0 && prev_x > 0.0 {
            roots.push(prev_x);
        }
        for &x in &grid[1..] {
            let v = self.eval(x);
            if v == 0.0 {
                bracketed = true;
                roots.push(x);
            } else if prev_v != 0.0 && (v > 0.0) != (prev_v > 0.0) {
                bracketed = true;
                roots.push(self.bisect(prev_x, prev_v, x));
            }
            prev_x = x;
            prev_v = v;
        }
        roots.sort_by(f64::total_cmp);
        roots.dedup_by(|a, b| (*a - *b).abs() <= 4.0 * f64::EPSILON * a.abs().max(b.abs()));
        Ok(PositiveRoots {
            roots,
            descartes_bound,
            bracketed,
        })
    }

    fn bisect(&self, mut a: f64, va: f64, mut b: f64) -> f64 {
        let neg_at_a = va < 0.0;
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            let vm = self.eval(m);
            if vm == 0.0 {
                return m;
            }
            if (vm < 0.0) == neg_at_a {
                a = m;
            } else {
                b = m;
            }
        }
        0.5 * (a + b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn eval_examples() {
        let p = ComplexPolynomial::from_real(&[1.0, 0.0, 1.0]);
        assert!(p.eval(c(0.0, 1.0)).norm() < 1e-15);
        assert_eq!(ComplexPolynomial::zero().eval(c(5.0, 0.0)), c(0.0, 0.0));
        let q = ComplexPolynomial::from_real(&[-0.1, 0.0, 0.0, 0.0, 1.0]);
        assert_eq!(q.eval(c(0.0, 0.0)), c(-0.1, 0.0));
    }

    #[test]
    fn zero_polynomial_is_distinct() {
        let p = ComplexPolynomial::new(vec![c(0.0, 0.0)]);
        assert!(p.is_zero());
        assert_eq!(p.degree(), None);
        assert!(p.coeffs().is_empty());
        let q = ComplexPolynomial::new(vec![c(1.0, 0.0), c(1e-20, 0.0)]);
        assert_eq!(q.degree(), Some(0));
    }

    #[test]
    fn derivative_examples() {
        let p = ComplexPolynomial::from_real(&[0.0, 0.0, 1.0]);
        assert_eq!(p.derivative(), ComplexPolynomial::from_real(&[0.0, 2.0]));
        assert!(ComplexPolynomial::zero().derivative().is_zero());
        assert!(ComplexPolynomial::from_real(&[5.0]).derivative().is_zero());
    }

    #[test]
    fn roots_of_z2_plus_1() {
        let p = ComplexPolynomial::from_real(&[1.0, 0.0, 1.0]);
        let mut r = p.roots().unwrap();
        r.sort_by(|a, b| a.im.total_cmp(&b.im));
        assert!((r[0] - c(0.0, -1.0)).norm() < 1e-12);
        assert!((r[1] - c(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn roots_of_z4_minus_tenth() {
        let p = ComplexPolynomial::from_real(&[-0.1, 0.0, 0.0, 0.0, 1.0]);
        let r = p.roots().unwrap();
        assert_eq!(r.len(), 4);
        let modulus = 0.1f64.powf(0.25);
        for z in &r {
            assert_relative_eq!(z.norm(), modulus, epsilon = 1e-12);
            assert!(p.eval(*z).norm() <= 1e-10 * p.max_modulus());
            // arguments are multiples of pi/2
            let k = z.arg() / std::f64::consts::FRAC_PI_2;
            assert!((k - k.round()).abs() < 1e-10);
        }
    }

    #[test]
    fn roots_of_scaled_unity() {
        let d = 7;
        let r = 0.5f64;
        let mut coeffs = vec![c(0.0, 0.0); d + 1];
        coeffs[0] = c(-r.powi(d as i32), 0.0);
        coeffs[d] = c(1.0, 0.0);
        let p = ComplexPolynomial::new(coeffs);
        let roots = p.roots().unwrap();
        assert_eq!(roots.len(), d);
        for k in 0..d {
            let expected = Complex64::from_polar(r, std::f64::consts::TAU * k as f64 / d as f64);
            let nearest = roots
                .iter()
                .map(|z| (z - expected).norm())
                .fold(f64::INFINITY, f64::min);
            assert!(nearest < 1e-12);
        }
    }

    #[test]
    fn roots_of_zero_polynomial_is_error() {
        assert!(matches!(
            ComplexPolynomial::zero().roots(),
            Err(Error::UndefinedRoots)
        ));
    }

    #[test]
    fn multiple_root_clusters() {
        let a = c(0.3, -0.2);
        let p = ComplexPolynomial::from_roots(&[a, a, a, c(1.0, 1.0)]);
        let clusters = p.root_clusters().unwrap();
        assert_eq!(clusters.len(), 2);
        let triple = clusters.iter().find(|x| x.1 == 3).unwrap();
        assert!((triple.0 - a).norm() < 1e-10);
    }

    #[test]
    fn coprime_examples() {
        let z = ComplexPolynomial::monomial(c(1.0, 0.0), 1);
        let z2 = ComplexPolynomial::monomial(c(1.0, 0.0), 2);
        assert!(!coprime(&z, &z2).unwrap());
        let z6 = ComplexPolynomial::monomial(c(1.0, 0.0), 6);
        let den = &ComplexPolynomial::monomial(c(1.0, 0.0), 7)
            - &ComplexPolynomial::constant(c(0.5f64.powi(7), 0.0));
        assert!(coprime(&z6, &den).unwrap());
        assert!(coprime(&ComplexPolynomial::one(), &z).unwrap());
        assert!(coprime(&ComplexPolynomial::zero(), &z).is_err());
    }

    #[test]
    fn div_rem_and_shift() {
        let p = ComplexPolynomial::from_roots(&[c(1.0, 0.0), c(2.0, 1.0), c(-1.0, 0.5)]);
        let (q, r) = p.div_rem(&ComplexPolynomial::linear(c(2.0, 1.0))).unwrap();
        assert!(r.max_modulus() < 1e-12);
        assert_eq!(q.degree(), Some(2));
        let s = p.shift(c(0.4, -0.3));
        for w in [c(0.1, 0.2), c(-1.0, 0.7)] {
            assert!((s.eval(w) - p.eval(w + c(0.4, -0.3))).norm() < 1e-12);
        }
    }

    fn oracle_bisect(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if (f(m) > 0.0) == (f(a) > 0.0) {
                a = m;
            } else {
                b = m;
            }
        }
        0.5 * (a + b)
    }

    #[test]
    fn positive_roots_f_minus() {
        // rho^3 + rho^2 - 0.05 on (0, sqrt(0.05)]
        let f = |x: f64| x * x * x + x * x - 0.05;
        let expected = oracle_bisect(f, 0.0, 0.05f64.sqrt());
        assert_relative_eq!(expected, 0.203_801_58, epsilon = 1e-6);
        let p = RealPolynomial::new(vec![-0.05, 0.0, 1.0, 1.0]);
        let r = p.positive_real_roots(0.0, 0.05f64.sqrt()).unwrap();
        assert_eq!(r.roots.len(), 1);
        assert_relative_eq!(r.roots[0], expected, epsilon = 1e-14);
        assert!(r.roots.len() <= r.descartes_bound);
    }

    #[test]
    fn positive_roots_f_plus() {
        // rho^3 - rho^2 + 0.05: two positive roots around the critical point 2/3
        let f = |x: f64| x * x * x - x * x + 0.05;
        let r2 = oracle_bisect(f, 0.05f64.sqrt(), 2.0 / 3.0);
        let r3 = oracle_bisect(f, 2.0 / 3.0, 2.0);
        assert_relative_eq!(r2, 0.259_924_33, epsilon = 1e-6);
        assert_relative_eq!(r3, 0.943_877_2, epsilon = 1e-6);
        let p = RealPolynomial::new(vec![0.05, 0.0, -1.0, 1.0]);
        let got = p.positive_real_roots(0.0, 2.0).unwrap();
        assert_eq!(got.roots.len(), 2);
        assert_relative_eq!(got.roots[0], r2, epsilon = 1e-13);
        assert_relative_eq!(got.roots[1], r3, epsilon = 1e-13);
        assert!(got.roots[0] < 2.0 / 3.0 && 2.0 / 3.0 < got.roots[1]);
        assert_eq!(got.descartes_bound, 2);
    }

    #[test]
    fn positive_roots_none() {
        let p = RealPolynomial::new(vec![1.0, 0.0, 1.0]);
        let r = p.positive_real_roots(0.0, 10.0).unwrap();
        assert!(r.roots.is_empty());
        assert!(!r.bracketed);
        assert_eq!(r.descartes_bound, 0);
    }
}
