//! Complex polynomial arithmetic with an explicit tolerance context.
//!
//! Coefficients are stored in ascending powers: `coeffs[i]` multiplies `z^i`.
//! Every comparison against zero goes through [`NumericContext::is_negligible`],
//! which applies one rule everywhere: `|c| <= eps_abs + eps_rel * scale`, where
//! `scale` is the largest coefficient magnitude in play.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Complex = Complex64;

/// Tolerances shared by every numeric decision in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NumericContext {
    pub eps_rel: f64,
    pub eps_abs: f64,
    pub max_series_order: usize,
}

impl Default for NumericContext {
    fn default() -> Self {
        Self {
            eps_rel: 1e-9,
            eps_abs: 1e-12,
            max_series_order: 64,
        }
    }
}

impl NumericContext {
    pub fn new(eps_rel: f64, eps_abs: f64, max_series_order: usize) -> Result<Self> {
        if !(eps_rel > 0.0 && eps_rel.is_finite()) {
            return Err(Error::InvalidContext(format!("eps_rel = {eps_rel}")));
        }
        if !(eps_abs > 0.0 && eps_abs.is_finite()) {
            return Err(Error::InvalidContext(format!("eps_abs = {eps_abs}")));
        }
        Ok(Self {
            eps_rel,
            eps_abs,
            max_series_order,
        })
    }

    /// Same context with a different relative tolerance.
    pub fn with_eps_rel(self, eps_rel: f64) -> Result<Self> {
        Self::new(eps_rel, self.eps_abs, self.max_series_order)
    }

    #[inline]
    pub fn threshold(&self, scale: f64) -> f64 {
        self.eps_abs + self.eps_rel * scale
    }

    #[inline]
    pub fn is_negligible(&self, value: f64, scale: f64) -> bool {
        value.abs() <= self.threshold(scale)
    }

    /// `|x - y|` within tolerance relative to the larger of the two.
    pub fn approx_eq(&self, x: Complex, y: Complex) -> bool {
        (x - y).norm() <= self.threshold(x.norm().max(y.norm()))
    }
}

/// A polynomial with complex coefficients in ascending powers.
///
/// The stored representation never ends in an exact zero unless it is the
/// zero polynomial itself, stored as a single `0`.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Complex>", into = "Vec<Complex>")]
pub struct Poly {
    coeffs: Vec<Complex>,
}

impl TryFrom<Vec<Complex>> for Poly {
    type Error = Error;

    fn try_from(coeffs: Vec<Complex>) -> Result<Self> {
        Poly::new(coeffs)
    }
}

impl From<Poly> for Vec<Complex> {
    fn from(p: Poly) -> Self {
        p.coeffs
    }
}

impl Poly {
    /// Builds a polynomial from ascending coefficients, trimming trailing
    /// exact zeros. NaN and infinite coefficients are rejected.
    pub fn new(coeffs: Vec<Complex>) -> Result<Self> {
        if let Some(i) = coeffs.iter().position(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(Error::NonFinite(i));
        }
        Ok(Self::from_vec_unchecked(coeffs))
    }

    /// Real coefficients in ascending powers.
    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex::new(c, 0.0)).collect())
    }

    pub(crate) fn from_vec_unchecked(mut coeffs: Vec<Complex>) -> Self {
        while coeffs.len() > 1 && *coeffs.last().unwrap() == Complex::new(0.0, 0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Complex::new(0.0, 0.0));
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::constant(Complex::new(0.0, 0.0))
    }

    pub fn constant(c: Complex) -> Self {
        Self::from_vec_unchecked(vec![c])
    }

    /// The identity map `z`.
    pub fn identity() -> Self {
        Self::monomial(Complex::new(1.0, 0.0), 1)
    }

    /// `c * z^degree`.
    pub fn monomial(c: Complex, degree: usize) -> Self {
        let mut coeffs = vec![Complex::new(0.0, 0.0); degree + 1];
        coeffs[degree] = c;
        Self::from_vec_unchecked(coeffs)
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> Complex {
        self.coeffs[self.degree()]
    }

    /// Coefficient of `z^i`, zero beyond the degree.
    pub fn coefficient(&self, i: usize) -> Complex {
        self.coeffs.get(i).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Complex::new(0.0, 0.0)
    }

    /// Largest coefficient magnitude.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Geometric size of the polynomial: the largest of `|c_i/c_n|^(1/(n-i))`
    /// and `|c_n|^(-1/(n-1))`. Roots and the filled Julia set lie within a
    /// small multiple of it.
    pub fn coefficient_scale(&self) -> f64 {
        let n = self.degree();
        if n == 0 {
            return 0.0;
        }
        let lead = self.leading().norm();
        let mut scale: f64 = 0.0;
        for (i, c) in self.coeffs[..n].iter().enumerate() {
            let ratio = c.norm() / lead;
            if ratio > 0.0 {
                scale = scale.max(ratio.powf(1.0 / (n - i) as f64));
            }
        }
        if n >= 2 {
            scale = scale.max(lead.powf(-1.0 / (n - 1) as f64));
        }
        scale
    }

    /// Horner evaluation.
    pub fn evaluate(&self, z: Complex) -> Complex {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| self.coefficient(i) + other.coefficient(i))
            .collect();
        Self::from_vec_unchecked(coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| self.coefficient(i) - other.coefficient(i))
            .collect();
        Self::from_vec_unchecked(coeffs)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Complex::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_vec_unchecked(coeffs)
    }

    /// `self^k` under multiplication.
    pub fn pow(&self, k: u32) -> Poly {
        let mut result = Poly::constant(Complex::new(1.0, 0.0));
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn derivative(&self) -> Poly {
        if self.degree() == 0 {
            return Poly::zero();
        }
        Self::from_vec_unchecked(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| c * i as f64)
                .collect(),
        )
    }

    /// `c * self`.
    pub fn scale(&self, c: Complex) -> Poly {
        Self::from_vec_unchecked(self.coeffs.iter().map(|&x| c * x).collect())
    }

    /// `z -> self(sigma * z)`, i.e. coefficient `i` multiplied by `sigma^i`.
    pub fn precompose_rotation(&self, sigma: Complex) -> Poly {
        let mut power = Complex::new(1.0, 0.0);
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| {
                let out = c * power;
                power *= sigma;
                out
            })
            .collect();
        Self::from_vec_unchecked(coeffs)
    }

    /// `self ∘ other`, by Horner's scheme over polynomial values.
    pub fn compose(&self, other: &Poly) -> Poly {
        let mut result = Poly::zero();
        for &c in self.coeffs.iter().rev() {
            result = result.mul(other);
            result.coeffs[0] += c;
        }
        Self::from_vec_unchecked(result.coeffs)
    }

    /// The `k`-fold self-composition. `k = 0` is rejected; see
    /// [`Poly::iterate_or_identity`] when the identity is acceptable.
    pub fn iterate(&self, k: u32) -> Result<Poly> {
        if k == 0 {
            return Err(Error::ZeroIterate);
        }
        Ok(self.iterate_or_identity(k))
    }

    pub fn iterate_or_identity(&self, k: u32) -> Poly {
        if k == 0 {
            return Poly::identity();
        }
        // Composition is associative, so square-and-multiply applies.
        let mut result: Option<Poly> = None;
        let mut base = self.clone();
        let mut k = k;
        loop {
            if k & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.compose(&base),
                });
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            base = base.compose(&base);
        }
        result.unwrap()
    }

    /// `L⁻¹ ∘ self ∘ L`.
    pub fn conjugate(&self, l: &AffineMap) -> Poly {
        let inner = self.compose(&l.as_poly());
        let inv = l.inverse();
        inv.as_poly().compose(&inner)
    }

    /// Zero-test scale used for this polynomial's own coefficients.
    fn negligible(&self, c: Complex, ctx: &NumericContext) -> bool {
        ctx.is_negligible(c.norm(), self.max_abs())
    }

    /// Indices `i < degree` whose coefficient is not negligible.
    pub fn support_below_leading(&self, ctx: &NumericContext) -> Vec<usize> {
        let n = self.degree();
        (0..n)
            .filter(|&i| !self.negligible(self.coeffs[i], ctx))
            .collect()
    }

    pub fn is_monomial(&self, ctx: &NumericContext) -> bool {
        self.support_below_leading(ctx).is_empty()
    }

    pub fn is_centered(&self, ctx: &NumericContext) -> bool {
        let d = self.degree();
        d < 1 || self.negligible(self.coeffs[d - 1], ctx)
    }

    /// Replaces negligible coefficients by exact zeros and trims.
    pub fn canonical(&self, ctx: &NumericContext) -> Poly {
        let scale = self.max_abs();
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| {
                if ctx.is_negligible(c.norm(), scale) {
                    Complex::new(0.0, 0.0)
                } else {
                    c
                }
            })
            .collect();
        Self::from_vec_unchecked(coeffs)
    }

    /// Conjugates by the translation that removes the `z^(d-1)` term.
    ///
    /// Returns `(centered, L)` with `centered = L⁻¹ ∘ self ∘ L` and
    /// `L(z) = z + a`, `a = -c_(d-1) / (d c_d)`. The `z^(d-1)` coefficient of
    /// the result is set to exactly zero after checking it is negligible.
    pub fn center(&self, ctx: &NumericContext) -> Result<(Poly, AffineMap)> {
        let d = self.degree();
        if d < 2 {
            return Err(Error::DegreeTooLow { required: 2, found: d });
        }
        if self.is_centered(ctx) {
            let mut coeffs = self.coeffs.clone();
            coeffs[d - 1] = Complex::new(0.0, 0.0);
            return Ok((Self::from_vec_unchecked(coeffs), AffineMap::identity()));
        }
        let shift = -self.coeffs[d - 1] / (self.leading() * d as f64);
        let l = AffineMap::translation(shift);
        let mut centered = self.conjugate(&l);
        let residual = centered.coeffs[d - 1];
        if !centered.negligible(residual, ctx) {
            return Err(Error::ResidualTooLarge {
                residual: residual.norm(),
                tolerance: ctx.threshold(centered.max_abs()),
            });
        }
        centered.coeffs[d - 1] = Complex::new(0.0, 0.0);
        Ok((centered, l))
    }

    /// Coefficientwise comparison; see [`poly_equal`].
    pub fn approx_eq(&self, other: &Poly, ctx: &NumericContext) -> bool {
        let scale = self.max_abs().max(other.max_abs());
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len).all(|i| {
            ctx.is_negligible((self.coefficient(i) - other.coefficient(i)).norm(), scale)
        })
    }

    /// Largest coefficientwise difference.
    pub fn max_coeff_diff(&self, other: &Poly) -> f64 {
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len)
            .map(|i| (self.coefficient(i) - other.coefficient(i)).norm())
            .fold(0.0, f64::max)
    }
}

/// All `e`-th roots of `value`, principal branch first, then by increasing
/// argument.
pub fn nth_roots(value: Complex, e: u32) -> Vec<Complex> {
    let modulus = value.norm().powf(1.0 / e as f64);
    let arg = value.arg();
    (0..e)
        .map(|j| Complex::from_polar(modulus, (arg + std::f64::consts::TAU * j as f64) / e as f64))
        .collect()
}

/// True iff the polynomials agree coefficientwise to within
/// `eps_abs + eps_rel * max|c|`, the maximum taken over both. A leading
/// coefficient that exceeds the tolerance on one side only is a degree
/// mismatch and fails the comparison.
pub fn poly_equal(p: &Poly, q: &Poly, ctx: &NumericContext) -> bool {
    p.approx_eq(q, ctx)
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if *c == Complex::new(0.0, 0.0) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coeff = if c.im == 0.0 {
                format!("{}", c.re)
            } else {
                format!("({}{:+}i)", c.re, c.im)
            };
            match i {
                0 => write!(f, "{coeff}")?,
                1 => write!(f, "{coeff}*z")?,
                _ => write!(f, "{coeff}*z^{i}")?,
            }
        }
        Ok(())
    }
}

/// `L(z) = A z + B` with `A` invertible.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AffineMap {
    pub a: Complex,
    pub b: Complex,
}

impl AffineMap {
    /// Rejects `|A| <= eps_abs` of the default context and non-finite parts.
    pub fn new(a: Complex, b: Complex) -> Result<Self> {
        let eps = NumericContext::default().eps_abs;
        if !(a.re.is_finite() && a.im.is_finite() && b.re.is_finite() && b.im.is_finite()) {
            return Err(Error::NonFinite(0));
        }
        if a.norm() <= eps {
            return Err(Error::DegenerateAffine(a.norm()));
        }
        Ok(Self { a, b })
    }

    pub fn identity() -> Self {
        Self {
            a: Complex::new(1.0, 0.0),
            b: Complex::new(0.0, 0.0),
        }
    }

    pub fn translation(b: Complex) -> Self {
        Self {
            a: Complex::new(1.0, 0.0),
            b,
        }
    }

    pub fn scaling(a: Complex) -> Result<Self> {
        Self::new(a, Complex::new(0.0, 0.0))
    }

    pub fn apply(&self, z: Complex) -> Complex {
        self.a * z + self.b
    }

    pub fn inverse(&self) -> Self {
        let inv = 1.0 / self.a;
        Self {
            a: inv,
            b: -self.b * inv,
        }
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &AffineMap) -> Self {
        Self {
            a: self.a * inner.a,
            b: self.a * inner.b + self.b,
        }
    }

    pub fn as_poly(&self) -> Poly {
        Poly::from_vec_unchecked(vec![self.b, self.a])
    }

    pub fn is_identity(&self, ctx: &NumericContext) -> bool {
        ctx.approx_eq(self.a, Complex::new(1.0, 0.0)) && ctx.is_negligible(self.b.norm(), 1.0)
    }
}
