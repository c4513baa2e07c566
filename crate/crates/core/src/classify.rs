//! Circle, interval and general classification,
//! same-Julia-set decisions with a rotation witness, commuting tests and
//! the complete list of same-Julia-set polynomials in degree `nⁱ`.

use serde::{Deserialize, Serialize};

use crate::decompose::{minimal_root, DecompositionResult};
use crate::error::{Error, Hypothesis, Result};
use crate::poly::{nth_roots, AffineMap, Complex, NumericContext, Poly};
use crate::powers::{multiplicatively_dependent, powers_up_to};
use crate::symmetry::{is_symmetry, require_centered, symmetry_group};

pub(crate) fn chebyshev_t(n: usize) -> Poly {
    let two_z = Poly::monomial(Complex::new(2.0, 0.0), 1);
    let mut prev = Poly::constant(Complex::new(1.0, 0.0));
    if n == 0 {
        return prev;
    }
    let mut cur = Poly::identity();
    for _ in 1..n {
        let next = two_z.mul(&cur).sub(&prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// Tchebycheff polynomial `T_n` by `T_(k+1) = 2z T_k - T_(k-1)`.
pub fn tchebycheff(n: usize) -> Result<Poly> {
    if n == 0 {
        return Err(Error::DegreeTooLow { required: 1, found: 0 });
    }
    Ok(chebyshev_t(n))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Classification {
    /// `conjugate(f, conjugacy) = sigma zⁿ` with `|sigma| = 1`; the Julia set
    /// is the circle of `radius` about the centering point.
    Circle {
        conjugacy: AffineMap,
        sigma: Complex,
        radius: f64,
    },
    /// `conjugate(f, conjugacy) = sign T_n`.
    Interval { conjugacy: AffineMap, sign: f64 },
    /// Neither; `decomposition` is the minimal root of the centered form.
    General {
        centering: AffineMap,
        decomposition: DecompositionResult,
    },
}

impl Classification {
    pub fn kind(&self) -> &'static str {
        match self {
            Classification::Circle { .. } => "circle",
            Classification::Interval { .. } => "interval",
            Classification::General { .. } => "general",
        }
    }
}

/// `λ` and sign with `conjugate(centered, λz) ≈ sign T_n`, trying every
/// solution of `λ^(n-1) = sign 2^(n-1) / a`.
fn interval_scaling(centered: &Poly, ctx: &NumericContext) -> Option<(Complex, f64)> {
    let n = centered.degree();
    let t_n = chebyshev_t(n);
    let a = centered.leading();
    for sign in [1.0, -1.0] {
        let target = Complex::new(sign * 2f64.powi(n as i32 - 1), 0.0) / a;
        for lambda in nth_roots(target, (n - 1) as u32) {
            let scaling = AffineMap::scaling(lambda).ok()?;
            if centered.conjugate(&scaling).approx_eq(&t_n.scale(Complex::new(sign, 0.0)), ctx) {
                return Some((lambda, sign));
            }
        }
    }
    None
}

pub fn classify(f: &Poly, ctx: &NumericContext) -> Result<Classification> {
    let (centered, centering) = f.center(ctx)?;
    let n = centered.degree();
    if centered.is_monomial(ctx) {
        let a = centered.leading();
        let radius = a.norm().powf(-1.0 / (n - 1) as f64);
        let conjugacy = centering.after(&AffineMap::scaling(Complex::new(radius, 0.0))?);
        let sigma = a * radius.powi(n as i32 - 1);
        return Ok(Classification::Circle {
            conjugacy,
            sigma,
            radius,
        });
    }
    if let Some((lambda, sign)) = interval_scaling(&centered, ctx) {
        return Ok(Classification::Interval {
            conjugacy: centering.after(&AffineMap::scaling(lambda)?),
            sign,
        });
    }
    Ok(Classification::General {
        centering,
        decomposition: minimal_root(&centered, ctx)?,
    })
}

pub fn commutes(f: &Poly, g: &Poly, ctx: &NumericContext) -> bool {
    f.compose(g).approx_eq(&g.compose(f), ctx)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SameJuliaReason {
    CircleRadius,
    IntervalConjugacy,
    SigmaCommuting,
    DegreeObstruction,
    CenteringMismatch,
    IdentityFailure,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SameJuliaVerdict {
    pub same: bool,
    /// `σ` with `g∘f = σ (f∘g)` on the centered forms; only for finite `Σ`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_sigma: Option<Complex>,
    pub reason: SameJuliaReason,
}

impl SameJuliaVerdict {
    fn no(reason: SameJuliaReason) -> Self {
        Self {
            same: false,
            witness_sigma: None,
            reason,
        }
    }
}

/// The only rotation that can satisfy `g∘f = σ (f∘g)`: comparing leading
/// coefficients `b aᵐ = σ a bⁿ` gives `σ = a^(m-1) / b^(n-1)`.
pub fn forced_sigma(f: &Poly, g: &Poly) -> Complex {
    let (a, b) = (f.leading(), g.leading());
    let (n, m) = (f.degree() as i32, g.degree() as i32);
    a.powi(m - 1) / b.powi(n - 1)
}

/// Decides `J_f = J_g`.
///
/// Both maps are centered first; equal Julia sets force equal centering
/// translations. Circles compare their radii, intervals their segments.
/// Otherwise the degrees must be powers of a common integer and
/// `g∘f = σ (f∘g)` must hold for the forced `σ`, which must also be a
/// symmetry of `f`. The witness refers to the centered forms.
pub fn same_julia_set(f: &Poly, g: &Poly, ctx: &NumericContext) -> Result<SameJuliaVerdict> {
    let (fc, lf) = f.center(ctx)?;
    let (gc, lg) = g.center(ctx)?;
    if !ctx.approx_eq(lf.b, lg.b) {
        return Ok(SameJuliaVerdict::no(SameJuliaReason::CenteringMismatch));
    }

    let (f_circle, g_circle) = (fc.is_monomial(ctx), gc.is_monomial(ctx));
    if f_circle || g_circle {
        let radius = |p: &Poly| p.leading().norm().powf(-1.0 / (p.degree() - 1) as f64);
        let same = f_circle && g_circle && {
            let (rf, rg) = (radius(&fc), radius(&gc));
            ctx.is_negligible(rf - rg, rf.max(rg))
        };
        return Ok(SameJuliaVerdict {
            same,
            witness_sigma: None,
            reason: SameJuliaReason::CircleRadius,
        });
    }

    let sigma = forced_sigma(&fc, &gc);
    let rotation_identity = |fc: &Poly, gc: &Poly| {
        is_symmetry(fc, sigma, ctx).unwrap_or(false)
            && gc.compose(fc).approx_eq(&fc.compose(gc).scale(sigma), ctx)
    };

    match (interval_scaling(&fc, ctx), interval_scaling(&gc, ctx)) {
        (Some((lf, _)), Some((lg, _))) => {
            // Segments λ[-1, 1] agree iff λ_f = ±λ_g.
            let same = ctx.approx_eq(lf, lg) || ctx.approx_eq(lf, -lg);
            Ok(SameJuliaVerdict {
                same,
                witness_sigma: (same && rotation_identity(&fc, &gc)).then_some(sigma),
                reason: SameJuliaReason::IntervalConjugacy,
            })
        }
        (Some(_), None) | (None, Some(_)) => {
            Ok(SameJuliaVerdict::no(SameJuliaReason::IntervalConjugacy))
        }
        (None, None) => {
            if !multiplicatively_dependent(fc.degree() as u64, gc.degree() as u64) {
                return Ok(SameJuliaVerdict::no(SameJuliaReason::DegreeObstruction));
            }
            if rotation_identity(&fc, &gc) {
                Ok(SameJuliaVerdict {
                    same: true,
                    witness_sigma: Some(sigma),
                    reason: SameJuliaReason::SigmaCommuting,
                })
            } else {
                Ok(SameJuliaVerdict::no(SameJuliaReason::IdentityFailure))
            }
        }
    }
}

/// `{σ f^{∘i} : σ ∈ Σ}`, the degree-`nⁱ` polynomials sharing the Julia set
/// of a minimal `f`.
pub fn same_julia_representatives(f: &Poly, i: u32, ctx: &NumericContext) -> Result<Vec<Poly>> {
    let group = symmetry_group(f, ctx)?;
    let elements = group.elements().ok_or(Error::FullCircleSymmetry)?;
    let iterate = f.iterate(i)?;
    Ok(elements.into_iter().map(|s| iterate.scale(s)).collect())
}

/// Degrees `m <= m_max` at which some polynomial shares the Julia set of a
/// minimal, general-case `f`: exactly the powers of `deg f`.
pub fn admissible_degrees(f: &Poly, m_max: u64, ctx: &NumericContext) -> Result<Vec<u64>> {
    require_centered(f, ctx)?;
    match classify(f, ctx)? {
        Classification::Circle { .. } => Err(Error::Hypothesis(Hypothesis::CircleCase)),
        Classification::Interval { .. } => Err(Error::Hypothesis(Hypothesis::IntervalCase)),
        Classification::General { decomposition, .. } if !decomposition.minimal => {
            Err(Error::Hypothesis(Hypothesis::NotMinimal))
        }
        Classification::General { .. } => Ok(powers_up_to(f.degree() as u64, m_max)),
    }
}
