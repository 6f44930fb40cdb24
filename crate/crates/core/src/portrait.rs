//! Phase portraits of `f(z) = R(z) - conj(z)`.
//!
//! Hue shows `arg f(z)`; regions where `f` preserves sense are brightened and
//! regions where it reverses sense darkened, so the two kinds of zeros sit in
//! visibly different surroundings. Zeros are drawn as black disks, poles as
//! white squares and critical points of `R` as black triangles.

use std::f64::consts::TAU;
use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::contour::{Evaluatable, ZERO_ON_CONTOUR};
use crate::error::{Error, Result};
use crate::harmonic::{HarmonicLens, ZeroCensus, SENSE_BAND};
use crate::par;

pub const MIN_RESOLUTION: usize = 16;
/// Brightness factor applied on top of the base value.
pub const SHADE: f64 = 0.1;
const BASE_VALUE: f64 = 0.8;
/// Marker radius as a fraction of the window diagonal.
pub const MARKER_FRACTION: f64 = 0.008;
const MAX_REFINE: usize = 1 << 20;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Markers {
    #[serde(with = "crate::serde_complex::vec")]
    pub zeros: Vec<Complex64>,
    #[serde(with = "crate::serde_complex::vec")]
    pub poles: Vec<Complex64>,
    #[serde(with = "crate::serde_complex::vec")]
    pub critical: Vec<Complex64>,
}

impl Markers {
    /// Zeros from a census, poles and critical points from `f`.
    pub fn from_census(f: &HarmonicLens, census: &ZeroCensus) -> Result<Self> {
        Ok(Markers {
            zeros: census.zeros.iter().map(|z| z.location).collect(),
            poles: f.rational().poles().iter().map(|p| p.location).collect(),
            critical: f.rational().critical_points()?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PortraitSpec {
    #[serde(with = "crate::serde_complex")]
    pub center: Complex64,
    pub width: f64,
    pub height: f64,
    pub pixels_x: usize,
    pub pixels_y: usize,
    pub shading: bool,
    pub markers: Markers,
    pub parallel: bool,
}

impl PortraitSpec {
    pub fn new(center: Complex64, width: f64, height: f64, pixels_x: usize, pixels_y: usize) -> Self {
        PortraitSpec {
            center,
            width,
            height,
            pixels_x,
            pixels_y,
            shading: true,
            markers: Markers::default(),
            parallel: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.pixels_x < MIN_RESOLUTION || self.pixels_y < MIN_RESOLUTION {
            return Err(Error::InvalidArgument(format!(
                "resolution {}x{} is below {MIN_RESOLUTION}x{MIN_RESOLUTION}",
                self.pixels_x, self.pixels_y
            )));
        }
        let ok = |v: f64| v.is_finite() && v > 0.0;
        if !ok(self.width) || !ok(self.height) || !self.center.re.is_finite() || !self.center.im.is_finite() {
            return Err(Error::InvalidArgument("degenerate portrait window".into()));
        }
        Ok(())
    }

    /// Complex coordinate of the center of pixel `(i, j)`, row 0 on top.
    pub fn pixel_to_point(&self, i: usize, j: usize) -> Complex64 {
        let x = self.center.re - 0.5 * self.width + (i as f64 + 0.5) * self.width / self.pixels_x as f64;
        let y = self.center.im + 0.5 * self.height - (j as f64 + 0.5) * self.height / self.pixels_y as f64;
        Complex64::new(x, y)
    }

    /// Fractional pixel position of `z`.
    pub fn point_to_pixel(&self, z: Complex64) -> (f64, f64) {
        let x = (z.re - self.center.re + 0.5 * self.width) * self.pixels_x as f64 / self.width - 0.5;
        let y = (self.center.im + 0.5 * self.height - z.im) * self.pixels_y as f64 / self.height - 0.5;
        (x, y)
    }

    pub fn marker_radius(&self) -> f64 {
        let diag = ((self.pixels_x * self.pixels_x + self.pixels_y * self.pixels_y) as f64).sqrt();
        (MARKER_FRACTION * diag).max(1.5)
    }
}

/// 8-bit RGB raster, rows top to bottom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Image {
    pub width: usize,
    pub height: usize,
    pub data: Vec<u8>,
}

impl Image {
    pub fn pixel(&self, i: usize, j: usize) -> [u8; 3] {
        let k = 3 * (j * self.width + i);
        [self.data[k], self.data[k + 1], self.data[k + 2]]
    }

    fn put(&mut self, i: i64, j: i64, rgb: [u8; 3]) {
        if i < 0 || j < 0 || i as usize >= self.width || j as usize >= self.height {
            return;
        }
        let k = 3 * (j as usize * self.width + i as usize);
        self.data[k..k + 3].copy_from_slice(&rgb);
    }

    pub fn encode_png<W: Write>(&self, out: W) -> Result<()> {
        let mut enc = png::Encoder::new(out, self.width as u32, self.height as u32);
        enc.set_color(png::ColorType::Rgb);
        enc.set_depth(png::BitDepth::Eight);
        let mut writer = enc.write_header()?;
        writer.write_image_data(&self.data)?;
        writer.finish()?;
        Ok(())
    }

    pub fn write_png(&self, path: &Path) -> Result<()> {
        let file = std::io::BufWriter::new(std::fs::File::create(path)?);
        self.encode_png(file)
    }
}

/// Hue in `[0, 1)` for an argument in `(-pi, pi]`; `arg = 0` is red.
pub fn hue(arg: f64) -> f64 {
    (arg.rem_euclid(TAU) / TAU).min(1.0 - f64::EPSILON)
}

pub fn hsv_to_rgb(h: f64, s: f64, v: f64) -> [u8; 3] {
    let h6 = h * 6.0;
    let sector = h6.floor() as i64;
    let frac = h6 - sector as f64;
    let p = v * (1.0 - s);
    let q = v * (1.0 - s * frac);
    let t = v * (1.0 - s * (1.0 - frac));
    let (r, g, b) = match sector.rem_euclid(6) {
        0 => (v, t, p),
        1 => (q, v, p),
        2 => (p, v, t),
        3 => (p, q, v),
        4 => (t, p, v),
        _ => (v, p, q),
    };
    let byte = |x: f64| (x.clamp(0.0, 1.0) * 255.0).round() as u8;
    [byte(r), byte(g), byte(b)]
}

fn shade(f: &HarmonicLens, z: Complex64, shading: bool) -> [u8; 3] {
    let Some((v, d)) = f.eval_with_derivative(z) else {
        return [255, 255, 255];
    };
    let value = if !shading {
        BASE_VALUE
    } else if d.norm() > 1.0 + SENSE_BAND {
        BASE_VALUE * (1.0 + SHADE)
    } else if d.norm() < 1.0 - SENSE_BAND {
        BASE_VALUE * (1.0 - SHADE)
    } else {
        BASE_VALUE
    };
    hsv_to_rgb(hue(v.arg()), 1.0, value)
}

fn draw_disk(img: &mut Image, cx: f64, cy: f64, r: f64, rgb: [u8; 3]) {
    let (lo_x, hi_x) = ((cx - r).floor() as i64, (cx + r).ceil() as i64);
    let (lo_y, hi_y) = ((cy - r).floor() as i64, (cy + r).ceil() as i64);
    for j in lo_y..=hi_y {
        for i in lo_x..=hi_x {
            let (dx, dy) = (i as f64 - cx, j as f64 - cy);
            if dx * dx + dy * dy <= r * r {
                img.put(i, j, rgb);
            }
        }
    }
}

fn draw_square(img: &mut Image, cx: f64, cy: f64, r: f64, rgb: [u8; 3]) {
    for j in (cy - r).round() as i64..=(cy + r).round() as i64 {
        for i in (cx - r).round() as i64..=(cx + r).round() as i64 {
            img.put(i, j, rgb);
        }
    }
}

/// Upward triangle with circumradius `r`.
fn draw_triangle(img: &mut Image, cx: f64, cy: f64, r: f64, rgb: [u8; 3]) {
    let top = cy - r;
    let bottom = cy + 0.5 * r;
    let half_base = r * 3f64.sqrt() / 2.0;
    for j in top.floor() as i64..=bottom.ceil() as i64 {
        let y = j as f64;
        if y < top || y > bottom {
            continue;
        }
        let half = half_base * (y - top) / (bottom - top);
        for i in (cx - half).round() as i64..=(cx + half).round() as i64 {
            img.put(i, j, rgb);
        }
    }
}

/// Renders the phase portrait. Rows are computed in parallel when the spec
/// asks for it; the result does not depend on the scheduling.
pub fn render(f: &HarmonicLens, spec: &PortraitSpec) -> Result<Image> {
    spec.validate()?;
    let rows = par::map_range(spec.pixels_y, spec.parallel, |j| {
        let mut row = Vec::with_capacity(3 * spec.pixels_x);
        for i in 0..spec.pixels_x {
            row.extend_from_slice(&shade(f, spec.pixel_to_point(i, j), spec.shading));
        }
        row
    });
    let mut img = Image {
        width: spec.pixels_x,
        height: spec.pixels_y,
        data: rows.concat(),
    };
    let r = spec.marker_radius();
    for z in &spec.markers.critical {
        let (x, y) = spec.point_to_pixel(*z);
        draw_triangle(&mut img, x, y, r, [0, 0, 0]);
    }
    for z in &spec.markers.poles {
        let (x, y) = spec.point_to_pixel(*z);
        draw_square(&mut img, x, y, r, [255, 255, 255]);
    }
    for z in &spec.markers.zeros {
        let (x, y) = spec.point_to_pixel(*z);
        draw_disk(&mut img, x, y, r, [0, 0, 0]);
    }
    Ok(img)
}

fn color_bin(v: Complex64, bins: usize) -> i64 {
    ((hue(v.arg()) * bins as f64).floor() as i64).min(bins as i64 - 1)
}

fn sample<F: Evaluatable + ?Sized>(f: &F, center: Complex64, radius: f64, t: f64) -> Result<Complex64> {
    let v = f
        .value(center + Complex64::from_polar(radius, TAU * t))
        .ok_or(Error::PoleOnContour)?;
    if v.norm() < ZERO_ON_CONTOUR {
        return Err(Error::ZeroOnContour { min_modulus: v.norm() });
    }
    Ok(v)
}

/// Net number of times the color wheel is traversed along the circle,
/// counted on the `bins` discrete colors. Segments are bisected until
/// neighbouring samples lie in the same or adjacent bins.
pub fn chromatic_index<F: Evaluatable + ?Sized>(f: &F, center: Complex64, radius: f64, bins: usize) -> Result<i64> {
    if bins < 3 {
        return Err(Error::InvalidArgument(format!("need at least 3 color bins, got {bins}")));
    }
    if !(radius > 0.0) {
        return Err(Error::InvalidArgument(format!("radius must be positive, got {radius}")));
    }
    let wrap = |d: i64| {
        let n = bins as i64;
        let d = d.rem_euclid(n);
        if 2 * d > n { d - n } else { d }
    };
    let initial = 4 * bins.max(16);
    let first = color_bin(sample(f, center, radius, 0.0)?, bins);
    // right ends of the pending segments, popped in increasing order
    let mut stack: Vec<(f64, i64)> = Vec::with_capacity(initial);
    stack.push((1.0, first));
    for k in (1..initial).rev() {
        let t = k as f64 / initial as f64;
        stack.push((t, color_bin(sample(f, center, radius, t)?, bins)));
    }
    let (mut prev_t, mut prev_b) = (0.0, first);
    let mut steps = 0i64;
    let mut samples = initial;
    while let Some((t, b)) = stack.pop() {
        let d = wrap(b - prev_b);
        if d.abs() > 1 && t - prev_t > 1e-15 {
            if samples >= MAX_REFINE {
                return Err(Error::NonConvergent { samples });
            }
            let mid = 0.5 * (prev_t + t);
            stack.push((t, b));
            stack.push((mid, color_bin(sample(f, center, radius, mid)?, bins)));
            samples += 1;
            continue;
        }
        steps += d;
        (prev_t, prev_b) = (t, b);
    }
    let n = bins as i64;
    if steps % n != 0 {
        return Err(Error::NonConvergent { samples });
    }
    Ok(steps / n)
}
