//! Rotational symmetry group of a centered polynomial's Julia set.
//!
//! For centered `f` of degree `n`, a unit `σ` is a symmetry exactly when
//! `f(σz) = σⁿ f(z)`. Comparing coefficients, that holds iff `σ^(n-i) = 1`
//! for every `i` with `c_i ≠ 0`, so the group is the `l`-th roots of unity
//! with `l = gcd{n - i}` over the support below the leading term, or the
//! whole circle when that support is empty.
//!
//! Support is read from the canonicalized polynomial: coefficients that pass
//! the context's zero test count as absent.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Complex, NumericContext, Poly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SymmetryGroup {
    FullCircle,
    Cyclic { order: u32 },
}

impl SymmetryGroup {
    pub fn order(&self) -> Option<u32> {
        match self {
            SymmetryGroup::FullCircle => None,
            SymmetryGroup::Cyclic { order } => Some(*order),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, SymmetryGroup::Cyclic { .. })
    }

    /// `e^(2πi/l)` for the cyclic case.
    pub fn generator(&self) -> Option<Complex> {
        self.order().map(|l| root_of_unity(1, l))
    }

    /// `generator^j` for `0 <= j < l`, computed directly from the angle.
    pub fn elements(&self) -> Option<Vec<Complex>> {
        self.order()
            .map(|l| (0..l).map(|j| root_of_unity(j, l)).collect())
    }
}

/// `e^(2πi j/l)`, exact on the four axis directions.
pub fn root_of_unity(j: u32, l: u32) -> Complex {
    let (j, l) = ((j % l) as u64, l as u64);
    if (4 * j) % l != 0 {
        return Complex::from_polar(1.0, TAU * j as f64 / l as f64);
    }
    match 4 * j / l {
        0 => Complex::new(1.0, 0.0),
        1 => Complex::new(0.0, 1.0),
        2 => Complex::new(-1.0, 0.0),
        _ => Complex::new(0.0, -1.0),
    }
}

fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn require_centered(f: &Poly, ctx: &NumericContext) -> Result<()> {
    let n = f.degree();
    if n < 2 {
        return Err(Error::DegreeTooLow { required: 2, found: n });
    }
    if !f.is_centered(ctx) {
        return Err(Error::NotCentered(f.coefficient(n - 1).norm()));
    }
    Ok(())
}

/// Σ of a centered polynomial of degree at least two.
pub fn symmetry_group(f: &Poly, ctx: &NumericContext) -> Result<SymmetryGroup> {
    require_centered(f, ctx)?;
    let n = f.degree();
    let order = f
        .support_below_leading(ctx)
        .into_iter()
        .fold(0, |acc, i| gcd(acc, n - i));
    Ok(match order {
        0 => SymmetryGroup::FullCircle,
        l => SymmetryGroup::Cyclic { order: l as u32 },
    })
}

/// Whether `f(σz) = σⁿ f(z)` holds coefficientwise.
pub fn is_symmetry(f: &Poly, sigma: Complex, ctx: &NumericContext) -> Result<bool> {
    require_centered(f, ctx)?;
    let modulus = sigma.norm();
    if !ctx.is_negligible(modulus - 1.0, 1.0) {
        return Err(Error::NotUnitModulus(modulus));
    }
    let n = f.degree() as i32;
    let lhs = f.precompose_rotation(sigma);
    let rhs = f.scale(sigma.powi(n));
    Ok(lhs.approx_eq(&rhs, ctx))
}

/// Data of the semiconjugacy `ψ ∘ f = hat ∘ ψ` with `ψ(z) = z^l`, where
/// `f(z) = z^r f0(z^l)` and `hat(z) = z^r f0(z)^l`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HatData {
    pub r: usize,
    pub f0: Poly,
    pub hat: Poly,
    pub l: u32,
}

impl HatData {
    /// `ψ(z) = z^l`.
    pub fn psi(&self) -> Poly {
        Poly::monomial(Complex::new(1.0, 0.0), self.l as usize)
    }

    /// Largest coefficient of `ψ∘f - hat∘ψ`.
    pub fn semiconjugacy_residual(&self, f: &Poly) -> f64 {
        let psi = self.psi();
        psi.compose(f).max_coeff_diff(&self.hat.compose(&psi))
    }

    /// `z^r f0(z^l)`, which reproduces the input.
    pub fn reassemble(&self) -> Poly {
        let f0_of_psi = self.f0.compose(&self.psi());
        Poly::monomial(Complex::new(1.0, 0.0), self.r).mul(&f0_of_psi)
    }
}

/// Collapses the symmetry: writes `f = z^r f0(z^l)` and builds
/// `hat = z^r [f0]^l`. Requires a finite group.
pub fn hat_transform(f: &Poly, ctx: &NumericContext) -> Result<HatData> {
    let group = symmetry_group(f, ctx)?;
    let l = group.order().ok_or(Error::FullCircleSymmetry)?;
    let f = f.canonical(ctx);
    let step = l as usize;
    let coeffs = f.coeffs();
    let r = coeffs
        .iter()
        .position(|c| *c != Complex::new(0.0, 0.0))
        .expect("degree >= 2 polynomial has a nonzero coefficient");
    let f0 = Poly::new(coeffs[r..].iter().step_by(step).copied().collect())?;
    let hat = Poly::monomial(Complex::new(1.0, 0.0), r).mul(&f0.pow(l));
    Ok(HatData { r, f0, hat, l })
}
