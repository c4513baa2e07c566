//! Benchmark inputs.

use samejulia::{root_of_unity, Poly};

pub fn quintic() -> Poly {
    Poly::from_real(&[0.0, 0.0, 1.0, 0.0, 0.0, 1.0]).unwrap()
}

/// `e^(2πi/3) (z⁵ + z²)^{∘2}`, degree 25.
pub fn rotated_quintic_square() -> Poly {
    quintic().iterate(2).unwrap().scale(root_of_unity(1, 3))
}

pub fn basilica() -> Poly {
    Poly::from_real(&[-1.0, 0.0, 1.0]).unwrap()
}

/// A dense degree-`n` polynomial with slowly decaying real coefficients.
pub fn dense(n: usize) -> Poly {
    let coeffs: Vec<f64> = (0..=n).map(|i| 1.0 / (1.0 + i as f64)).collect();
    Poly::from_real(&coeffs).unwrap()
}
