//! Independent oracles, random generators and invariant checks shared by the
//! property and acceptance suites. Every check returns `Err(description)` on
//! a violation instead of panicking so callers can count failures.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use samejulia::*;

pub type Check = Result<(), String>;

pub fn ctx() -> NumericContext {
    NumericContext::default()
}

pub fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

pub fn real(coeffs: &[f64]) -> Poly {
    Poly::from_real(coeffs).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------------------------------------------------------------------------
// Oracles

/// `T_n` from the closed form: the coefficient of `x^(n-2k)` is
/// `(-1)^k n/(n-k) binom(n-k, k) 2^(n-2k-1)`, in exact integer arithmetic.
pub fn chebyshev_oracle(n: usize) -> Poly {
    let mut coeffs = vec![0f64; n + 1];
    if n == 0 {
        coeffs[0] = 1.0;
        return real(&coeffs);
    }
    let binom = |a: usize, b: usize| (0..b).fold(1i128, |acc, i| acc * (a - i) as i128 / (i + 1) as i128);
    for k in 0..=n / 2 {
        let numerator = n as i128 * binom(n - k, k) * (1i128 << (n - 2 * k));
        let value = numerator / (2 * (n - k) as i128);
        coeffs[n - 2 * k] = if k % 2 == 0 { value as f64 } else { -(value as f64) };
    }
    real(&coeffs)
}

/// Boettcher coefficients of `z² - 2`. The inverse of `w ↦ w + 1/w` is
/// `φ(z) = (z + sqrt(z² - 4)) / 2 = z - Σ_k C_k z^(-(2k+1))` with Catalan
/// numbers `C_k = binom(2k, k) / (k + 1)`. Entry `j` is `b_j`.
pub fn chebyshev_boettcher_oracle(count: usize) -> Vec<f64> {
    let binom = |n: u64, k: u64| (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128);
    (0..count)
        .map(|j| {
            if j % 2 == 0 {
                0.0
            } else {
                let k = (j as u64 - 1) / 2;
                -((binom(2 * k, k) / (k as u128 + 1)) as f64)
            }
        })
        .collect()
}

/// All `(r, s)` with `r^s = n`, `r, s >= 2`, for every `n <= limit`, by
/// enumerating powers.
pub fn perfect_power_table(limit: u64) -> BTreeMap<u64, Vec<(u64, u32)>> {
    let mut table: BTreeMap<u64, Vec<(u64, u32)>> = BTreeMap::new();
    let mut r = 2u64;
    while r * r <= limit {
        let mut value = r * r;
        let mut s = 2u32;
        while value <= limit {
            table.entry(value).or_default().push((r, s));
            value = match value.checked_mul(r) {
                Some(v) => v,
                None => break,
            };
            s += 1;
        }
        r += 1;
    }
    for pairs in table.values_mut() {
        pairs.sort_by_key(|&(_, s)| std::cmp::Reverse(s));
    }
    table
}

/// `e^(2πi j/k)` computed without the library.
pub fn unit(j: u32, k: u32) -> Complex {
    Complex::from_polar(1.0, TAU * j as f64 / k as f64)
}

// ---------------------------------------------------------------------------
// Generators

pub fn unit_disc(rng: &mut impl Rng) -> Complex {
    let r = rng.random::<f64>().sqrt();
    Complex::from_polar(r, rng.random_range(0.0..TAU))
}

/// Leading coefficient with modulus in `[0.5, 1.5]`.
pub fn leading(rng: &mut impl Rng) -> Complex {
    Complex::from_polar(rng.random_range(0.5..1.5), rng.random_range(0.0..TAU))
}

pub fn random_poly(rng: &mut impl Rng, degree: usize) -> Poly {
    let mut coeffs: Vec<Complex> = (0..degree).map(|_| unit_disc(rng)).collect();
    coeffs.push(leading(rng));
    Poly::new(coeffs).unwrap()
}

/// Centered, coefficients in the unit disc, leading coefficient bounded
/// away from zero, and never a monomial.
pub fn random_centered(rng: &mut impl Rng, degree: usize) -> Poly {
    let mut coeffs: Vec<Complex> = (0..degree).map(|_| unit_disc(rng)).collect();
    coeffs[degree - 1] = c(0.0, 0.0);
    coeffs[0] += Complex::from_polar(0.2, rng.random_range(0.0..TAU));
    coeffs.push(leading(rng));
    Poly::new(coeffs).unwrap()
}

/// `z^r f0(z^l)` of the given degree, so the symmetry group has order a
/// multiple of `l`.
pub fn random_symmetric(rng: &mut impl Rng, l: usize, degree: usize) -> Poly {
    let r = degree % l;
    let mut coeffs = vec![c(0.0, 0.0); degree + 1];
    let mut exponent = r;
    while exponent < degree {
        if degree - exponent >= 2 || l >= 2 {
            coeffs[exponent] = unit_disc(rng) + Complex::from_polar(0.2, rng.random_range(0.0..TAU));
        }
        exponent += l;
    }
    coeffs[degree] = leading(rng);
    Poly::new(coeffs).unwrap()
}

pub fn random_affine(rng: &mut impl Rng) -> AffineMap {
    let a = Complex::from_polar(rng.random_range(0.5..2.0), rng.random_range(0.0..TAU));
    AffineMap::new(a, unit_disc(rng)).unwrap()
}

pub fn random_point(rng: &mut impl Rng, radius: f64) -> Complex {
    unit_disc(rng) * radius
}

// ---------------------------------------------------------------------------
// Polynomial core

pub fn check_compose_associative(p: &Poly, q: &Poly, r: &Poly) -> Check {
    let left = p.compose(q).compose(r);
    let right = p.compose(&q.compose(r));
    ensure(left.approx_eq(&right, &ctx()), || {
        format!("associativity off by {}", left.max_coeff_diff(&right))
    })
}

pub fn check_compose_degree(p: &Poly, q: &Poly) -> Check {
    let d = p.compose(q).degree();
    ensure(d == p.degree() * q.degree(), || {
        format!("deg {} for {}·{}", d, p.degree(), q.degree())
    })
}

pub fn check_conjugate_roundtrip(p: &Poly, l: &AffineMap) -> Check {
    let back = p.conjugate(l).conjugate(&l.inverse());
    ensure(back.approx_eq(p, &ctx()), || {
        format!("conjugation round trip off by {}", back.max_coeff_diff(p))
    })
}

pub fn check_center_idempotent(p: &Poly) -> Check {
    let ctx = ctx();
    let (centered, _) = p.center(&ctx).map_err(|e| e.to_string())?;
    ensure(centered.is_centered(&ctx), || "centered form is not centered".into())?;
    let (again, map) = centered.center(&ctx).map_err(|e| e.to_string())?;
    ensure(again == centered && map == AffineMap::identity(), || {
        format!("recentering moved by {:?}", map)
    })
}

pub fn check_compose_evaluation(p: &Poly, q: &Poly, z: Complex) -> Check {
    let lhs = p.compose(q).evaluate(z);
    let rhs = p.evaluate(q.evaluate(z));
    let scale = 1.0 + rhs.norm();
    ensure((lhs - rhs).norm() <= 1e-9 * scale, || format!("{lhs} vs {rhs} at {z}"))
}

// ---------------------------------------------------------------------------
// Symmetry

/// Every power of the generator is a symmetry and no primitive `k`-th root
/// with `k ∤ l`, `k <= 2l`, is.
pub fn check_symmetry_exhaustive(f: &Poly) -> Check {
    let ctx = ctx();
    let group = symmetry_group(f, &ctx).map_err(|e| e.to_string())?;
    let l = group.order().ok_or("unexpected full circle")?;
    for j in 0..l {
        let sigma = unit(j, l);
        ensure(is_symmetry(f, sigma, &ctx).unwrap(), || format!("generator^{j} of order {l} rejected"))?;
    }
    for k in 1..=2 * l {
        if l % k == 0 {
            continue;
        }
        for j in (1..k).filter(|&j| gcd(j, k) == 1) {
            ensure(!is_symmetry(f, unit(j, k), &ctx).unwrap(), || {
                format!("primitive root {j}/{k} accepted for order {l}")
            })?;
        }
    }
    Ok(())
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn check_scaled_group(f: &Poly) -> Check {
    let ctx = ctx();
    let group = symmetry_group(f, &ctx).map_err(|e| e.to_string())?;
    for sigma in group.elements().ok_or("unexpected full circle")? {
        let scaled = symmetry_group(&f.scale(sigma), &ctx).map_err(|e| e.to_string())?;
        ensure(scaled.order() == group.order(), || format!("{group:?} became {scaled:?}"))?;
    }
    Ok(())
}

pub fn check_hat_semiconjugacy(f: &Poly, points: &[Complex]) -> Check {
    let ctx = ctx();
    let h = hat_transform(f, &ctx).map_err(|e| e.to_string())?;
    let psi = h.psi();
    let lhs = psi.compose(f);
    let rhs = h.hat.compose(&psi);
    ensure(lhs.approx_eq(&rhs, &ctx), || {
        format!("semiconjugacy off by {} coefficientwise", lhs.max_coeff_diff(&rhs))
    })?;
    for &z in points {
        let a = psi.evaluate(f.evaluate(z));
        let b = h.hat.evaluate(psi.evaluate(z));
        ensure((a - b).norm() <= 1e-9 * (1.0 + a.norm()), || format!("{a} vs {b} at {z}"))?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Boettcher coordinate and Green function

pub fn check_series_vs_iteration(f: &Poly, z: Complex) -> Check {
    let ctx = ctx();
    let series = boettcher_series(f, 48, &ctx).map_err(|e| e.to_string())?;
    let from_series = series.green_estimate(z);
    let from_orbit = green(f, z).map_err(|e| e.to_string())?.value;
    ensure((from_series - from_orbit).abs() <= 1e-6, || {
        format!("series {from_series} vs orbit {from_orbit} at {z}")
    })
}

/// `φ(f(z)) - a φ(z)ⁿ` relative to `|a φ(z)ⁿ|`, against `|z|^(-K)` times a
/// generous constant.
pub fn check_functional_residual(f: &Poly, order: usize, z: Complex) -> Check {
    let ctx = ctx();
    let series = boettcher_series(f, order, &ctx).map_err(|e| e.to_string())?;
    let lhs = series.evaluate(f.evaluate(z));
    let rhs = f.leading() * series.evaluate(z).powi(f.degree() as i32);
    let relative = (lhs - rhs).norm() / rhs.norm();
    let bound = 1e3 * z.norm().powi(-(order as i32)) * f.coefficient_scale().max(1.0).powi(order as i32) + 1e-13;
    ensure(relative <= bound, || format!("relative residual {relative} above {bound}"))
}

/// `b₀` is zero for centered maps and undoes the centering translation
/// otherwise.
pub fn check_b0_centering(f: &Poly) -> Check {
    let ctx = ctx();
    let (centered, map) = f.center(&ctx).map_err(|e| e.to_string())?;
    let b0 = boettcher_series(&centered, 8, &ctx).map_err(|e| e.to_string())?.b[0];
    ensure(b0.norm() <= 1e-9, || format!("centered b0 = {b0}"))?;
    let b0 = boettcher_series(f, 8, &ctx).map_err(|e| e.to_string())?.b[0];
    ensure((b0 + map.b).norm() <= 1e-9 * (1.0 + map.b.norm()), || {
        format!("b0 = {b0} but centering shift is {}", map.b)
    })
}

pub fn check_green_transformation(f: &Poly, z: Complex) -> Check {
    let g = green(f, z).map_err(|e| e.to_string())?.value;
    if g <= 0.0 {
        return Ok(());
    }
    let gf = green(f, f.evaluate(z)).map_err(|e| e.to_string())?.value;
    let n = f.degree() as f64;
    ensure((gf - n * g).abs() <= 1e-6, || format!("G(f z) = {gf}, n G(z) = {}", n * g))
}

// ---------------------------------------------------------------------------
// Decomposition

/// `minimal_root(ε R^{∘q})` finds exponent `>= q`, reconstructs the input
/// within `tol` coefficientwise and returns a symmetry.
pub fn check_decomposition_roundtrip(root: &Poly, q: u32, epsilon_index: u32, tol: f64) -> Check {
    let ctx = ctx();
    let iterate = root.iterate(q).map_err(|e| e.to_string())?;
    let group = symmetry_group(&iterate, &ctx).map_err(|e| e.to_string())?;
    let elements = group.elements().ok_or("iterate has full circle symmetry")?;
    let epsilon = elements[epsilon_index as usize % elements.len()];
    let f = iterate.scale(epsilon);
    let d = minimal_root(&f, &ctx).map_err(|e| e.to_string())?;
    ensure(d.q >= q, || format!("exponent {} below {q}", d.q))?;
    check_decomposition_witness(&d, &f, tol)
}

/// Independent re-verification of a returned witness.
pub fn check_decomposition_witness(d: &DecompositionResult, f: &Poly, tol: f64) -> Check {
    let ctx = ctx();
    let mut rebuilt = d.root.clone();
    for _ in 1..d.q {
        rebuilt = d.root.compose(&rebuilt);
    }
    let rebuilt = rebuilt.scale(d.epsilon);
    let diff = rebuilt.max_coeff_diff(f);
    ensure(diff <= tol, || format!("reconstruction off by {diff}"))?;
    ensure(d.root.degree().pow(d.q) == f.degree(), || "degree mismatch".into())?;
    ensure(is_symmetry(f, d.epsilon, &ctx).unwrap_or(false), || {
        format!("epsilon {} is not a symmetry", d.epsilon)
    })
}

pub fn check_perfect_powers(limit: u64) -> Check {
    let table = perfect_power_table(limit);
    for n in 1..=limit {
        let got = perfect_power_pairs(n);
        for &(r, s) in &got {
            ensure(r.checked_pow(s) == Some(n), || format!("{r}^{s} != {n}"))?;
        }
        let expected = table.get(&n).cloned().unwrap_or_default();
        ensure(got == expected, || format!("n = {n}: {got:?} vs {expected:?}"))?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Classification and same-Julia decisions

pub fn check_commuting_iterates(r: &Poly, i: u32, j: u32) -> Check {
    let ctx = ctx();
    let (f, g) = (r.iterate(i).unwrap(), r.iterate(j).unwrap());
    ensure(commutes(&f, &g, &ctx), || format!("R^{i} and R^{j} do not commute"))?;
    let v = same_julia_set(&f, &g, &ctx).map_err(|e| e.to_string())?;
    ensure(v.same, || format!("R^{i} and R^{j} judged different: {v:?}"))
}

/// If `J_f = J_g` then `f∘g` and `g∘f` share it too.
pub fn check_composition_closure(f: &Poly, g: &Poly) -> Check {
    let ctx = ctx();
    let v = same_julia_set(f, g, &ctx).map_err(|e| e.to_string())?;
    if !v.same {
        return Ok(());
    }
    for (name, h) in [("f∘g", f.compose(g)), ("g∘f", g.compose(f))] {
        let w = same_julia_set(&h, f, &ctx).map_err(|e| e.to_string())?;
        ensure(w.same, || format!("{name} judged different: {w:?}"))?;
    }
    Ok(())
}

/// `J_(σf) = J_f` exactly when `σ` is a symmetry, over all roots of unity
/// up to order `max_order`.
pub fn check_rotation_iff_symmetry(f: &Poly, max_order: u32) -> Check {
    let ctx = ctx();
    for k in 1..=max_order {
        for j in 0..k {
            let sigma = unit(j, k);
            let same = same_julia_set(f, &f.scale(sigma), &ctx).map_err(|e| e.to_string())?.same;
            let symmetric = is_symmetry(f, sigma, &ctx).map_err(|e| e.to_string())?;
            ensure(same == symmetric, || format!("σ = e^(2πi {j}/{k}): same {same}, symmetry {symmetric}"))?;
        }
    }
    Ok(())
}

/// Each representative is `σ f^{∘i}` with `σ ∈ Σ` and `f^{∘i}` commuting
/// with `f`; all pass the same-Julia test and their count is `|Σ|`.
pub fn check_representatives(f: &Poly, i: u32) -> Check {
    let ctx = ctx();
    let reps = same_julia_representatives(f, i, &ctx).map_err(|e| e.to_string())?;
    let order = symmetry_group(f, &ctx).unwrap().order().unwrap_or(0) as usize;
    ensure(reps.len() == order, || format!("{} representatives for order {order}", reps.len()))?;
    let h = f.iterate(i).unwrap();
    ensure(commutes(&h, f, &ctx), || "iterate does not commute".into())?;
    for rep in &reps {
        let sigma = rep.leading() / h.leading();
        ensure(is_symmetry(f, sigma, &ctx).unwrap_or(false), || format!("{sigma} not in Σ"))?;
        ensure(rep.approx_eq(&h.scale(sigma), &ctx), || "member is not σ·f^i".into())?;
        let v = same_julia_set(rep, f, &ctx).map_err(|e| e.to_string())?;
        ensure(v.same, || format!("representative rejected: {v:?}"))?;
    }
    Ok(())
}

/// Same degree and same Julia set forces `g = (b/a) f`.
pub fn check_same_degree_scalar(f: &Poly, g: &Poly) -> Check {
    let ctx = ctx();
    if f.degree() != g.degree() || !same_julia_set(f, g, &ctx).map_err(|e| e.to_string())?.same {
        return Ok(());
    }
    let expected = f.scale(g.leading() / f.leading());
    ensure(poly_equal(g, &expected, &ctx), || "g is not a multiple of f".into())
}

pub fn check_classify_covariant(f: &Poly, l: &AffineMap) -> Check {
    let ctx = ctx();
    let before = classify(f, &ctx).map_err(|e| e.to_string())?.kind();
    let after = classify(&f.conjugate(l), &ctx).map_err(|e| e.to_string())?.kind();
    ensure(before == after, || format!("{before} became {after}"))
}

// ---------------------------------------------------------------------------
// Rendering

pub fn check_mask_rotation(f: &Poly, sigma: Complex, resolution: usize) -> Check {
    let grid = RasterGrid::square(f, 2.0 + f.coefficient_scale(), resolution);
    let mask = render_filled(f, &grid).map_err(|e| e.to_string())?;
    let inverse = sigma.inv();
    let rotated = render_mask(&grid, |z| {
        escape_time(f, inverse * z, grid.escape_radius, grid.max_iter).is_none()
    });
    let d = set_distance(&mask, &rotated).map_err(|e| e.to_string())?;
    ensure(d <= 1.0, || format!("rotation by {sigma} moved the boundary {d} px"))
}

pub fn check_iterate_invariance(f: &Poly, resolution: usize) -> Check {
    let g = f.iterate(2).unwrap();
    let half_width = 2.0 + f.coefficient_scale();
    let a = render_filled(f, &RasterGrid::square(f, half_width, resolution)).map_err(|e| e.to_string())?;
    let b = render_filled(&g, &RasterGrid::square(&g, half_width, resolution)).map_err(|e| e.to_string())?;
    let d = set_distance(&a, &b).map_err(|e| e.to_string())?;
    ensure(d <= 2.0, || format!("f and f∘f differ by {d} px"))
}

pub fn check_render_deterministic(f: &Poly, resolution: usize) -> Check {
    let grid = RasterGrid::square(f, 2.0 + f.coefficient_scale(), resolution);
    let a = render_filled(f, &grid).map_err(|e| e.to_string())?;
    let b = render_filled(f, &grid).map_err(|e| e.to_string())?;
    ensure(a == b, || "masks differ between runs".into())
}

/// Hyperbolic maps with fat filled Julia sets, suitable for pixel checks.
pub fn render_corpus() -> Vec<Poly> {
    vec![
        real(&[-1.0, 0.0, 1.0]),
        Poly::new(vec![c(-0.1226, 0.7449), c(0.0, 0.0), c(1.0, 0.0)]).unwrap(),
        real(&[0.0, 0.0, 1.0, 0.0, 0.0, 1.0]),
        real(&[0.0, 0.5, 0.0, 1.0]),
    ]
}

/// Collapsed maps of two same-Julia-set polynomials commute.
pub fn check_hats_commute(f: &Poly, g: &Poly) -> Check {
    let ctx = ctx();
    let hf = hat_transform(f, &ctx).map_err(|e| e.to_string())?.hat;
    let hg = hat_transform(g, &ctx).map_err(|e| e.to_string())?.hat;
    let (a, b) = (hf.compose(&hg), hg.compose(&hf));
    ensure(a.approx_eq(&b, &ctx), || format!("hats fail to commute by {}", a.max_coeff_diff(&b)))
}

/// Cross-check of a positive verdict in the mirrored orientation:
/// `f∘g = (b^(n-1) / a^(m-1)) g∘f` on the centered forms.
pub fn check_mirrored_identity(f: &Poly, g: &Poly) -> Check {
    let ctx = ctx();
    let v = same_julia_set(f, g, &ctx).map_err(|e| e.to_string())?;
    if !v.same || v.witness_sigma.is_none() {
        return Ok(());
    }
    let (fc, _) = f.center(&ctx).map_err(|e| e.to_string())?;
    let (gc, _) = g.center(&ctx).map_err(|e| e.to_string())?;
    let (a, b) = (fc.leading(), gc.leading());
    let (n, m) = (fc.degree() as i32, gc.degree() as i32);
    let factor = b.powi(n - 1) / a.powi(m - 1);
    ensure((factor.norm() - 1.0).abs() <= 1e-9, || format!("|factor| = {}", factor.norm()))?;
    ensure(is_symmetry(&fc, factor, &ctx).unwrap_or(false), || format!("factor {factor} not in Σ"))?;
    let (lhs, rhs) = (fc.compose(&gc), gc.compose(&fc).scale(factor));
    ensure(lhs.approx_eq(&rhs, &ctx), || format!("mirrored identity off by {}", lhs.max_coeff_diff(&rhs)))
}
