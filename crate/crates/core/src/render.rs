//! Escape-time rasterization of filled Julia sets and boundary comparison.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::boettcher::{escape_time, green_with, EscapeParams};
use crate::error::{Error, Result};
use crate::poly::{Complex, Poly};

/// Square sampling window. Pixel `(x, y)` samples the point at its center,
/// with `y = 0` the top row.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RasterGrid {
    pub center: Complex,
    pub half_width: f64,
    pub resolution: usize,
    pub max_iter: u32,
    pub escape_radius: f64,
}

impl RasterGrid {
    /// Window `center 0, half_width 2 + scale`, 512 pixels, 256 iterations,
    /// escape radius `4 (1 + scale)`.
    pub fn default_for(f: &Poly) -> Self {
        let scale = f.coefficient_scale();
        Self {
            center: Complex::new(0.0, 0.0),
            half_width: 2.0 + scale,
            resolution: 512,
            max_iter: 256,
            escape_radius: 4.0 * (1.0 + scale),
        }
    }

    /// Same window for a given half width and resolution; the escape radius
    /// follows the map.
    pub fn square(f: &Poly, half_width: f64, resolution: usize) -> Self {
        Self {
            half_width,
            resolution,
            ..Self::default_for(f)
        }
    }

    pub fn pixel_size(&self) -> f64 {
        2.0 * self.half_width / self.resolution as f64
    }

    pub fn pixel_center(&self, x: usize, y: usize) -> Complex {
        let step = self.pixel_size();
        Complex::new(
            self.center.re - self.half_width + (x as f64 + 0.5) * step,
            self.center.im + self.half_width - (y as f64 + 0.5) * step,
        )
    }

    pub fn validate(&self, f: &Poly) -> Result<()> {
        if self.resolution < 16 {
            return Err(Error::InvalidGrid(format!("resolution {} < 16", self.resolution)));
        }
        if !(self.half_width > 0.0 && self.half_width.is_finite()) {
            return Err(Error::InvalidGrid(format!("half_width {}", self.half_width)));
        }
        let min_radius = 2.0 * (1.0 + f.coefficient_scale());
        if self.escape_radius.is_nan() || self.escape_radius < min_radius {
            return Err(Error::InvalidGrid(format!(
                "escape radius {} below {min_radius}",
                self.escape_radius
            )));
        }
        Ok(())
    }
}

/// Row-major membership mask.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryImage {
    pub width: usize,
    pub height: usize,
    pub bits: Vec<bool>,
}

impl BinaryImage {
    pub fn get(&self, x: usize, y: usize) -> bool {
        self.bits[y * self.width + x]
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    /// Set pixels with at least one unset 4-neighbour. Pixels outside the
    /// image count as unset.
    pub fn boundary(&self) -> BinaryImage {
        let (w, h) = (self.width, self.height);
        let unset = |x: isize, y: isize| {
            x < 0 || y < 0 || x >= w as isize || y >= h as isize || !self.get(x as usize, y as usize)
        };
        let bits = (0..w * h)
            .map(|i| {
                let (x, y) = ((i % w) as isize, (i / w) as isize);
                self.bits[i]
                    && (unset(x - 1, y) || unset(x + 1, y) || unset(x, y - 1) || unset(x, y + 1))
            })
            .collect();
        BinaryImage { width: w, height: h, bits }
    }

    /// Binary PBM (`P4`): one bit per pixel, rows padded to whole bytes,
    /// most significant bit leftmost, 1 = set.
    pub fn to_pbm(&self) -> Vec<u8> {
        let mut out = format!("P4\n{} {}\n", self.width, self.height).into_bytes();
        let row_bytes = self.width.div_ceil(8);
        for y in 0..self.height {
            let mut row = vec![0u8; row_bytes];
            for x in 0..self.width {
                if self.get(x, y) {
                    row[x / 8] |= 0x80 >> (x % 8);
                }
            }
            out.extend_from_slice(&row);
        }
        out
    }
}

/// Rasterizes an arbitrary membership test over the grid, row-parallel.
pub fn render_mask<F>(grid: &RasterGrid, member: F) -> BinaryImage
where
    F: Fn(Complex) -> bool + Sync,
{
    let n = grid.resolution;
    let rows: Vec<Vec<bool>> = (0..n)
        .into_par_iter()
        .map(|y| (0..n).map(|x| member(grid.pixel_center(x, y))).collect())
        .collect();
    BinaryImage {
        width: n,
        height: n,
        bits: rows.into_iter().flatten().collect(),
    }
}

/// Pixels whose center has a bounded orbit under the grid's budget.
pub fn render_filled(f: &Poly, grid: &RasterGrid) -> Result<BinaryImage> {
    if f.degree() < 2 {
        return Err(Error::DegreeTooLow { required: 2, found: f.degree() });
    }
    grid.validate(f)?;
    Ok(render_mask(grid, |z| {
        escape_time(f, z, grid.escape_radius, grid.max_iter).is_none()
    }))
}

/// Binary PPM (`P6`) heat map of the Green function: black on the filled
/// set, brightening with escape rate.
pub fn green_heatmap(f: &Poly, grid: &RasterGrid) -> Result<Vec<u8>> {
    if f.degree() < 2 {
        return Err(Error::DegreeTooLow { required: 2, found: f.degree() });
    }
    grid.validate(f)?;
    let params = EscapeParams {
        budget: grid.max_iter,
        ..EscapeParams::for_poly(f)
    };
    let n = grid.resolution;
    let rows: Vec<Vec<u8>> = (0..n)
        .into_par_iter()
        .map(|y| {
            let mut row = Vec::with_capacity(3 * n);
            for x in 0..n {
                let g = green_with(f, grid.pixel_center(x, y), params)
                    .map(|e| e.value)
                    .unwrap_or(0.0);
                let t = if g > 0.0 { 1.0 - (-4.0 * g).exp() } else { 0.0 };
                let v = (255.0 * t.sqrt()).round() as u8;
                row.extend_from_slice(&[v / 3, v, (v as u16 * 3 / 4) as u8]);
            }
            row
        })
        .collect();
    let mut out = format!("P6\n{n} {n}\n255\n").into_bytes();
    out.extend(rows.into_iter().flatten());
    Ok(out)
}

/// Exact squared Euclidean distance transform, one dimension, by the lower
/// envelope of parabolas.
fn edt_1d(f: &[f64], out: &mut [f64]) {
    let n = f.len();
    let mut v = vec![0usize; n];
    let mut z = vec![0f64; n + 1];
    let mut k = 0usize;
    let mut started = false;
    for q in 0..n {
        if f[q].is_infinite() {
            continue;
        }
        if !started {
            v[0] = q;
            z[0] = f64::NEG_INFINITY;
            z[1] = f64::INFINITY;
            started = true;
            continue;
        }
        loop {
            let p = v[k];
            let s = ((f[q] + (q * q) as f64) - (f[p] + (p * p) as f64)) / (2.0 * (q as f64 - p as f64));
            if s <= z[k] && k > 0 {
                k -= 1;
                continue;
            }
            if s <= z[k] {
                // k == 0: the new parabola dominates everything so far.
                v[0] = q;
                z[1] = f64::INFINITY;
                break;
            }
            k += 1;
            v[k] = q;
            z[k] = s;
            z[k + 1] = f64::INFINITY;
            break;
        }
    }
    if !started {
        out.fill(f64::INFINITY);
        return;
    }
    let mut k = 0;
    for (q, slot) in out.iter_mut().enumerate() {
        while z[k + 1] < q as f64 {
            k += 1;
        }
        let d = q as f64 - v[k] as f64;
        *slot = d * d + f[v[k]];
    }
}

/// Squared distance from every pixel to the nearest set pixel of `features`.
fn distance_transform_sq(features: &BinaryImage) -> Vec<f64> {
    let (w, h) = (features.width, features.height);
    let mut grid: Vec<f64> = features
        .bits
        .iter()
        .map(|&b| if b { 0.0 } else { f64::INFINITY })
        .collect();
    let mut column = vec![0f64; h];
    let mut column_out = vec![0f64; h];
    for x in 0..w {
        for y in 0..h {
            column[y] = grid[y * w + x];
        }
        edt_1d(&column, &mut column_out);
        for y in 0..h {
            grid[y * w + x] = column_out[y];
        }
    }
    let mut row_out = vec![0f64; w];
    for y in 0..h {
        edt_1d(&grid[y * w..(y + 1) * w], &mut row_out);
        grid[y * w..(y + 1) * w].copy_from_slice(&row_out);
    }
    grid
}

fn directed_hausdorff(from: &BinaryImage, to_distance_sq: &[f64]) -> f64 {
    from.bits
        .iter()
        .zip(to_distance_sq)
        .filter(|(&b, _)| b)
        .map(|(_, &d)| d)
        .fold(0.0, f64::max)
        .sqrt()
}

/// Symmetric Hausdorff distance in pixels between the boundaries of two
/// masks. Zero when both boundaries are empty, infinite when only one is.
pub fn set_distance(a: &BinaryImage, b: &BinaryImage) -> Result<f64> {
    if (a.width, a.height) != (b.width, b.height) {
        return Err(Error::DimensionMismatch((a.width, a.height), (b.width, b.height)));
    }
    let (ba, bb) = (a.boundary(), b.boundary());
    match (ba.count(), bb.count()) {
        (0, 0) => return Ok(0.0),
        (0, _) | (_, 0) => return Ok(f64::INFINITY),
        _ => {}
    }
    let da = distance_transform_sq(&ba);
    let db = distance_transform_sq(&bb);
    Ok(directed_hausdorff(&ba, &db).max(directed_hausdorff(&bb, &da)))
}
