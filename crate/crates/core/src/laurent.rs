//! Truncated Laurent series at infinity.
//!
//! A [`LaurentTail`] stores the coefficients of `z^top, z^(top-1), ...` down
//! to `z^floor`. Everything at or above `floor` is known; everything below it
//! is unknown. Sums keep the higher of the two floors and products keep the
//! relative length of the shorter factor.

use crate::poly::{Complex, Poly};

#[derive(Debug, Clone, PartialEq)]
pub struct LaurentTail {
    top: i64,
    coeffs: Vec<Complex>,
}

impl LaurentTail {
    /// `coeffs[j]` is the coefficient of `z^(top - j)`.
    pub fn new(top: i64, coeffs: Vec<Complex>) -> Self {
        assert!(!coeffs.is_empty(), "a Laurent tail needs at least one coefficient");
        Self { top, coeffs }
    }

    /// An exact polynomial, padded with zeros down to `floor`.
    pub fn from_poly(p: &Poly, floor: i64) -> Self {
        let top = p.degree() as i64;
        let top = top.max(floor);
        let coeffs = (floor..=top)
            .rev()
            .map(|e| if e >= 0 { p.coefficient(e as usize) } else { Complex::new(0.0, 0.0) })
            .collect();
        Self { top, coeffs }
    }

    /// `c * z^exponent`, known exactly down to `floor`.
    pub fn monomial(c: Complex, exponent: i64, floor: i64) -> Self {
        let top = exponent.max(floor);
        let mut coeffs = vec![Complex::new(0.0, 0.0); (top - floor + 1) as usize];
        if exponent >= floor {
            coeffs[(top - exponent) as usize] = c;
        }
        Self { top, coeffs }
    }

    pub fn top(&self) -> i64 {
        self.top
    }

    pub fn floor(&self) -> i64 {
        self.top - self.coeffs.len() as i64 + 1
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.coeffs
    }

    /// Coefficient of `z^exponent`; `None` below the known range.
    pub fn coefficient(&self, exponent: i64) -> Option<Complex> {
        if exponent > self.top {
            Some(Complex::new(0.0, 0.0))
        } else if exponent < self.floor() {
            None
        } else {
            Some(self.coeffs[(self.top - exponent) as usize])
        }
    }

    /// Drops terms below `floor`.
    pub fn truncate(&self, floor: i64) -> Self {
        if floor <= self.floor() {
            return self.clone();
        }
        if floor > self.top {
            return Self::monomial(Complex::new(0.0, 0.0), floor, floor);
        }
        let keep = (self.top - floor + 1) as usize;
        Self {
            top: self.top,
            coeffs: self.coeffs[..keep].to_vec(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a - b)
    }

    fn combine(&self, other: &Self, op: impl Fn(Complex, Complex) -> Complex) -> Self {
        let top = self.top.max(other.top);
        let floor = self.floor().max(other.floor());
        let coeffs = (floor..=top)
            .rev()
            .map(|e| op(self.coefficient(e).unwrap(), other.coefficient(e).unwrap()))
            .collect();
        Self { top, coeffs }
    }

    pub fn scale(&self, c: Complex) -> Self {
        Self {
            top: self.top,
            coeffs: self.coeffs.iter().map(|&x| x * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let len = self.coeffs.len().min(other.coeffs.len());
        let mut coeffs = vec![Complex::new(0.0, 0.0); len];
        for (i, &a) in self.coeffs[..len].iter().enumerate() {
            for (j, &b) in other.coeffs[..len - i].iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self {
            top: self.top + other.top,
            coeffs,
        }
    }

    /// Multiplicative inverse. The leading stored coefficient must be nonzero.
    pub fn recip(&self) -> Self {
        let lead = self.coeffs[0];
        assert!(lead != Complex::new(0.0, 0.0), "reciprocal of a tail with zero leading term");
        let inv_lead = 1.0 / lead;
        let len = self.coeffs.len();
        let mut inv = Vec::with_capacity(len);
        inv.push(inv_lead);
        for k in 1..len {
            let acc: Complex = (1..=k).map(|j| self.coeffs[j] * inv[k - j]).sum();
            inv.push(-acc * inv_lead);
        }
        Self {
            top: -self.top,
            coeffs: inv,
        }
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut result = Self::new(0, {
            let mut v = vec![Complex::new(0.0, 0.0); self.coeffs.len()];
            v[0] = Complex::new(1.0, 0.0);
            v
        });
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Sums the stored terms at `z`.
    pub fn evaluate(&self, z: Complex) -> Complex {
        let w = 1.0 / z;
        let tail = self
            .coeffs
            .iter()
            .rev()
            .fold(Complex::new(0.0, 0.0), |acc, &c| acc * w + c);
        tail * z.powi(self.top as i32)
    }
}
