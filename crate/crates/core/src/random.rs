//! Seeded random instances.
//!
//! All generators draw from `ChaCha8Rng`, so a seed fixes the instance on
//! every platform.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::harmonic::{CensusOptions, HarmonicLens, Sense, ZeroCensus};
use crate::polynomial::ComplexPolynomial;
use crate::rational::RationalFunction;

/// Attempts before a generator gives up.
pub const MAX_DRAWS: usize = 64;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Point with real and imaginary parts uniform in `[-1, 1]`.
pub fn unit_square_point<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0))
}

/// The degree-two `R = (a0 + a1 z + a2 z^2) / (b0 + b1 z + z^2)` with
/// `R(z_k) = conj(z_k)` at five given points.
pub fn fit_degree_two(points: &[Complex64; 5]) -> Result<RationalFunction> {
    let a = DMatrix::from_fn(5, 5, |k, j| {
        let z = points[k];
        match j {
            0 => Complex64::new(1.0, 0.0),
            1 => z,
            2 => z * z,
            3 => -z.conj(),
            _ => -z.conj() * z,
        }
    });
    let b = DVector::from_fn(5, |k, _| points[k].conj() * points[k] * points[k]);
    let x = a
        .lu()
        .solve(&b)
        .ok_or_else(|| Error::InvalidArgument("fitting points give a singular system".into()))?;
    let num = ComplexPolynomial::new(vec![x[0], x[1], x[2]]);
    let den = ComplexPolynomial::new(vec![x[3], x[4], Complex64::new(1.0, 0.0)]);
    RationalFunction::new(num, den)
}

/// Five uniform points and the degree-two fit through them, redrawn until
/// the fit has degree two and a regular census with exactly those five zeros.
pub fn fitted_degree_two<R: Rng>(rng: &mut R, opts: &CensusOptions) -> Result<(RationalFunction, ZeroCensus)> {
    for _ in 0..MAX_DRAWS {
        let pts: [Complex64; 5] = std::array::from_fn(|_| unit_square_point(rng));
        let Ok(r) = fit_degree_two(&pts) else { continue };
        if r.degree() != 2 {
            continue;
        }
        if let Some(census) = accept(r.clone(), opts) {
            if census.count() == 5 {
                return Ok((r, census));
            }
        }
    }
    Err(Error::InvalidArgument(format!("no regular fit in {MAX_DRAWS} draws")))
}

/// `p / q` with `deg p = deg q = degree` and coefficients uniform in the
/// unit square. `q` is monic so that the degree is exact.
pub fn random_rational<R: Rng>(rng: &mut R, degree: usize) -> Result<RationalFunction> {
    let num: Vec<Complex64> = (0..=degree).map(|_| unit_square_point(rng)).collect();
    let mut den: Vec<Complex64> = (0..degree).map(|_| unit_square_point(rng)).collect();
    den.push(Complex64::new(1.0, 0.0));
    RationalFunction::new(ComplexPolynomial::new(num), ComplexPolynomial::new(den))
}

/// A random rational function of exact degree `degree` whose census is
/// trusted and has no singular zero.
pub fn random_regular<R: Rng>(rng: &mut R, degree: usize, opts: &CensusOptions) -> Result<(RationalFunction, ZeroCensus)> {
    for _ in 0..MAX_DRAWS {
        let Ok(r) = random_rational(rng, degree) else { continue };
        if r.degree() != degree {
            continue;
        }
        if let Some(census) = accept(r.clone(), opts) {
            return Ok((r, census));
        }
    }
    Err(Error::InvalidArgument(format!(
        "no regular instance of degree {degree} in {MAX_DRAWS} draws"
    )))
}

fn accept(r: RationalFunction, opts: &CensusOptions) -> Option<ZeroCensus> {
    let census = HarmonicLens::new(r).ok()?.find_zeros(opts).ok()?;
    let regular = census.zeros.iter().all(|z| z.sense != Sense::Singular);
    (census.trusted() && regular).then_some(census)
}
