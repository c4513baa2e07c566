//! Boettcher coordinate near infinity and the Green function of the basin
//! of infinity.
//!
//! The Boettcher map `φ(z) = z + b₀ + b₁/z + ...` satisfies
//! `φ(f(z)) = a φ(z)ⁿ` where `a` is the leading coefficient of `f`. Writing
//! both sides as Laurent series, the coefficient of `z^(n-k-1)` contains
//! `b_k` linearly with multiplier `a n` plus terms in `b_0..b_(k-1)` only, so
//! the coefficients are solved one at a time from the top down.
//!
//! The Green function is `lim log|f^k(z)| / n^k`. It agrees with
//! `log|φ(z)| + log|a| / (n - 1)` wherever the series converges.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::LaurentTail;
use crate::poly::{Complex, NumericContext, Poly};

/// Truncated Boettcher series `z + Σ_{k=0..K} b_k z^(-k)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoettcherSeries {
    pub b: Vec<Complex>,
    pub order: usize,
    pub leading: Complex,
    pub degree: usize,
    /// Largest functional-equation coefficient left over in the solved range.
    pub residual: f64,
}

impl BoettcherSeries {
    pub fn evaluate(&self, z: Complex) -> Complex {
        self.as_tail().evaluate(z)
    }

    /// `z + b₀ + b₁/z + ...` as a tail with top exponent one.
    pub fn as_tail(&self) -> LaurentTail {
        let mut coeffs = Vec::with_capacity(self.b.len() + 1);
        coeffs.push(Complex::new(1.0, 0.0));
        coeffs.extend_from_slice(&self.b);
        LaurentTail::new(1, coeffs)
    }

    /// `log|φ(z)| + log|a| / (n - 1)` from the truncated series.
    pub fn green_estimate(&self, z: Complex) -> f64 {
        self.evaluate(z).norm().ln() + self.leading.norm().ln() / (self.degree - 1) as f64
    }
}

/// Coefficients of `φ∘f - a φⁿ` from `z^(n-1)` down to `z^floor`.
struct FunctionalEquation {
    degree: usize,
    leading: Complex,
    floor: i64,
    f_tail: LaurentTail,
    /// `f^(-k)` for `k = 1..`, only those reaching down to `floor`.
    inverse_powers: Vec<LaurentTail>,
}

impl FunctionalEquation {
    fn new(f: &Poly, order: usize) -> Self {
        let n = f.degree();
        let floor = n as i64 - order as i64 - 1;
        let f_tail = LaurentTail::from_poly(f, floor);
        let inv = f_tail.recip();
        let mut inverse_powers = Vec::new();
        let mut power = inv.clone();
        while power.top() >= floor {
            inverse_powers.push(power.truncate(floor));
            power = power.mul(&inv);
        }
        Self {
            degree: n,
            leading: f.leading(),
            floor,
            f_tail,
            inverse_powers,
        }
    }

    /// `(φ∘f, a φⁿ)` for the given leading coefficients of `φ`.
    fn sides(&self, b: &[Complex]) -> (LaurentTail, LaurentTail) {
        let mut lhs = self
            .f_tail
            .add(&LaurentTail::monomial(b[0], 0, self.floor));
        for (power, &bk) in self.inverse_powers.iter().zip(&b[1..]) {
            lhs = lhs.add(&power.scale(bk));
        }
        let mut phi = Vec::with_capacity(b.len() + 1);
        phi.push(Complex::new(1.0, 0.0));
        phi.extend_from_slice(b);
        let rhs = LaurentTail::new(1, phi)
            .powi(self.degree as u32)
            .scale(self.leading)
            .truncate(self.floor);
        (lhs, rhs)
    }

    fn residual(&self, b: &[Complex]) -> LaurentTail {
        let (lhs, rhs) = self.sides(b);
        lhs.sub(&rhs)
    }
}

/// Solves for `b_0..b_K` in `φ∘f = a φⁿ`.
pub fn boettcher_series(f: &Poly, order: usize, ctx: &NumericContext) -> Result<BoettcherSeries> {
    let n = f.degree();
    if n < 2 {
        return Err(Error::DegreeTooLow { required: 2, found: n });
    }
    if order < 1 || order > ctx.max_series_order {
        return Err(Error::SeriesOrder {
            requested: order,
            max: ctx.max_series_order,
        });
    }
    let a = f.leading();
    let multiplier = a * n as f64;
    let equation = FunctionalEquation::new(f, order);
    let mut b = vec![Complex::new(0.0, 0.0); order + 1];
    for k in 0..=order {
        if multiplier.norm() <= ctx.eps_abs {
            return Err(Error::IllConditioned {
                order: k,
                multiplier: multiplier.norm(),
            });
        }
        let exponent = n as i64 - k as i64 - 1;
        let leftover = equation.residual(&b[..=k]).coefficient(exponent).unwrap();
        b[k] = leftover / multiplier;
    }

    let (lhs, rhs) = equation.sides(&b);
    let scale = rhs.coeffs().iter().map(|c| c.norm()).fold(f.max_abs(), f64::max);
    // The top coefficient a·zⁿ cancels identically; skip it.
    let residual = lhs.sub(&rhs).coeffs()[1..]
        .iter()
        .map(|c| c.norm())
        .fold(0.0, f64::max);
    let tolerance = ctx.threshold(scale);
    if residual > tolerance {
        return Err(Error::ResidualTooLarge { residual, tolerance });
    }
    Ok(BoettcherSeries {
        b,
        order,
        leading: a,
        degree: n,
        residual,
    })
}

/// How an orbit ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum OrbitStatus {
    Escaped { iterations: u32 },
    /// Stayed under the escape radius and contracted along the way.
    Bounded,
    /// Stayed under the escape radius but the derivative of the iterate kept
    /// growing, as it does on or near the Julia set.
    BoundaryUncertain,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GreenEstimate {
    pub value: f64,
    #[serde(flatten)]
    pub status: OrbitStatus,
}

/// Escape radius and iteration budget for orbit tests.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EscapeParams {
    pub radius: f64,
    pub budget: u32,
}

impl EscapeParams {
    /// `2 max(1, scale) 10⁶` with a budget of 1024 iterations.
    pub fn for_poly(f: &Poly) -> Self {
        Self {
            radius: 2.0 * f.coefficient_scale().max(1.0) * 1e6,
            budget: 1024,
        }
    }
}

/// First `k` with `|f^k(z)| > radius`, together with that iterate.
pub fn escape_time(f: &Poly, z: Complex, radius: f64, budget: u32) -> Option<(u32, Complex)> {
    let radius_sq = radius * radius;
    let mut w = z;
    for k in 0..=budget {
        if w.norm_sqr() > radius_sq {
            return Some((k, w));
        }
        if k < budget {
            w = f.evaluate(w);
        }
    }
    None
}

pub fn green(f: &Poly, z: Complex) -> Result<GreenEstimate> {
    green_with(f, z, EscapeParams::for_poly(f))
}

/// Green function of the basin of infinity at `z`.
///
/// Once the orbit passes the escape radius the iteration continues on
/// `log f^k(z)`, where `log f(w) = log a + n log w + log(1 + Σ (c_i/a) w^(i-n))`
/// no longer overflows, until the correction term drops below `1e-17`.
pub fn green_with(f: &Poly, z: Complex, params: EscapeParams) -> Result<GreenEstimate> {
    let n = f.degree();
    if n < 2 {
        return Err(Error::DegreeTooLow { required: 2, found: n });
    }
    let radius_sq = params.radius * params.radius;
    let derivative = f.derivative();
    let mut log_derivative = 0.0;
    let mut w = z;
    for k in 0..=params.budget {
        if w.norm_sqr() > radius_sq {
            let (value, steps) = escaped_green(f, w);
            let iterations = k + steps;
            let value = value * (-(iterations as f64) * (n as f64).ln()).exp();
            return Ok(GreenEstimate {
                value: value.max(0.0),
                status: OrbitStatus::Escaped { iterations: k },
            });
        }
        if k < params.budget {
            log_derivative += derivative.evaluate(w).norm().ln();
            w = f.evaluate(w);
        }
    }
    let status = if log_derivative > 0.0 {
        OrbitStatus::BoundaryUncertain
    } else {
        OrbitStatus::Bounded
    };
    Ok(GreenEstimate { value: 0.0, status })
}

/// `n^k G(w)` for a point already past the escape radius, and the number of
/// extra steps taken.
fn escaped_green(f: &Poly, w: Complex) -> (f64, u32) {
    let n = f.degree();
    let a = f.leading();
    let log_a = a.ln();
    let ratios: Vec<Complex> = f.coeffs()[..n].iter().map(|&c| c / a).collect();
    let mut zeta = w.ln();
    let mut steps = 0;
    while steps < 64 {
        let correction: Complex = ratios
            .iter()
            .enumerate()
            .map(|(i, &r)| r * (zeta * (i as f64 - n as f64)).exp())
            .sum();
        if correction.norm() < 1e-17 {
            break;
        }
        zeta = log_a + zeta * n as f64 + (Complex::new(1.0, 0.0) + correction).ln();
        steps += 1;
    }
    (zeta.re + a.norm().ln() / (n - 1) as f64, steps)
}

/// `max |G_f(z) - G_g(z)|` over the samples.
pub fn green_agreement(f: &Poly, g: &Poly, samples: &[Complex]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &z in samples {
        let gf = green(f, z)?.value;
        let gg = green(g, z)?.value;
        worst = worst.max((gf - gg).abs());
    }
    Ok(worst)
}
