//! Compositional roots and minimal-root extraction `f = ε R^{∘q}`.
//!
//! For `R = c z^r + d_(r-1) z^(r-1) + ... + d_0` and `N = r^q`, the leading
//! coefficient of `R^{∘q}` is `c^((r^q - 1)/(r - 1))`. Each lower coefficient
//! `d_(r-j)` first reaches `R^{∘q}` at `z^(N-j)`, linearly, with multiplier
//! `λ D c^(D-1)` where `D = r^(q-1)` and `λ = c^((D-1)/(r-1))` is the leading
//! coefficient of `R^{∘(q-1)}`. Everything else that lands on `z^(N-j)`
//! depends only on `c, d_(r-1), ..., d_(r-j+1)`, so once a branch for `c` is
//! fixed the rest of `R` is solved top-down, one coefficient per step, and
//! the candidate is accepted only if `R^{∘q}` reproduces the input.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{nth_roots, Complex, NumericContext, Poly};
use crate::powers::{exact_root, perfect_power_pairs};
use crate::symmetry::{is_symmetry, require_centered, symmetry_group};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum CompositionalRoot {
    Found { root: Poly },
    /// The degree admits a root but no branch verified.
    NotFound,
    /// The degree is not `r^q` for an integer `r >= 2`.
    Impossible { degree: usize, q: u32 },
}

impl CompositionalRoot {
    pub fn root(&self) -> Option<&Poly> {
        match self {
            CompositionalRoot::Found { root } => Some(root),
            _ => None,
        }
    }
}

/// `f = ε R^{∘q}` with `ε` in the symmetry group of `f`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecompositionResult {
    pub root: Poly,
    pub epsilon: Complex,
    pub q: u32,
    pub minimal: bool,
}

impl DecompositionResult {
    /// `ε R^{∘q}`.
    pub fn reconstruct(&self) -> Poly {
        self.root.iterate_or_identity(self.q).scale(self.epsilon)
    }

    /// Re-checks the witness against `f`: the reconstruction matches, the
    /// degrees agree and `ε` is a symmetry of `f`.
    pub fn verify(&self, f: &Poly, ctx: &NumericContext) -> bool {
        let degree_ok = (self.root.degree() as u64).checked_pow(self.q) == Some(f.degree() as u64);
        degree_ok
            && self.reconstruct().approx_eq(f, ctx)
            && is_symmetry(f, self.epsilon, ctx).unwrap_or(false)
    }
}

/// Completes the root for a fixed leading coefficient.
fn solve_lower(h: &Poly, lead: Complex, r: usize, q: u32) -> Poly {
    let n = h.degree();
    let inner_degree = n / r;
    let inner_lead_exp = ((inner_degree - 1) / (r - 1)) as i32;
    let multiplier = lead.powi(inner_lead_exp) * inner_degree as f64 * lead.powi(inner_degree as i32 - 1);
    let mut coeffs = vec![Complex::new(0.0, 0.0); r + 1];
    coeffs[r] = lead;
    for j in 1..=r {
        let candidate = Poly::from_vec_unchecked(coeffs.clone());
        let current = candidate.iterate_or_identity(q).coefficient(n - j);
        coeffs[r - j] = (h.coefficient(n - j) - current) / multiplier;
    }
    Poly::from_vec_unchecked(coeffs)
}

/// A polynomial `R` with `R^{∘q} ≈ h`, trying every branch of the leading
/// coefficient in order.
pub fn compositional_root(h: &Poly, q: u32, ctx: &NumericContext) -> Result<CompositionalRoot> {
    if q < 2 {
        return Err(Error::InvalidExponent { required: 2, found: q });
    }
    let n = h.degree();
    let r = match exact_root(n as u64, q) {
        Some(r) if r >= 2 => r as usize,
        _ => return Ok(CompositionalRoot::Impossible { degree: n, q }),
    };
    let branches = ((n - 1) / (r - 1)) as u32;
    for lead in nth_roots(h.leading(), branches) {
        let candidate = solve_lower(h, lead, r, q);
        if candidate.iterate_or_identity(q).approx_eq(h, ctx) {
            return Ok(CompositionalRoot::Found { root: candidate });
        }
    }
    Ok(CompositionalRoot::NotFound)
}

/// The decomposition `f = ε R^{∘q}` with the largest `q`.
///
/// Exponents are tried in decreasing order, then group elements by
/// increasing power of the generator, then leading-coefficient branches;
/// the first verified candidate wins. When nothing with `q >= 2` exists the
/// result is `(f, 1, 1)` and `f` is minimal.
pub fn minimal_root(f: &Poly, ctx: &NumericContext) -> Result<DecompositionResult> {
    require_centered(f, ctx)?;
    if f.is_monomial(ctx) {
        return Err(Error::Monomial);
    }
    let group = symmetry_group(f, ctx)?;
    let elements = group.elements().ok_or(Error::FullCircleSymmetry)?;
    for (_, q) in perfect_power_pairs(f.degree() as u64) {
        for &epsilon in &elements {
            let target = f.scale(epsilon.inv());
            if let CompositionalRoot::Found { root } = compositional_root(&target, q, ctx)? {
                return Ok(DecompositionResult {
                    root,
                    epsilon,
                    q,
                    minimal: false,
                });
            }
        }
    }
    Ok(DecompositionResult {
        root: f.clone(),
        epsilon: Complex::new(1.0, 0.0),
        q: 1,
        minimal: true,
    })
}

/// Minimality in the sense of `f ≠ σ R^i` with `i > 1`. A centered monomial
/// `a zⁿ` is minimal exactly when `n` is not a perfect power, since
/// `a z^(r^q) = (c z^r)^{∘q}` for suitable `c`.
pub fn is_minimal(f: &Poly, ctx: &NumericContext) -> Result<bool> {
    require_centered(f, ctx)?;
    if f.is_monomial(ctx) {
        return Ok(perfect_power_pairs(f.degree() as u64).is_empty());
    }
    Ok(minimal_root(f, ctx)?.minimal)
}
