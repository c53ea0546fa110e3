//! The norm identity for characters of real tori: for `x = y + σ(ȳ)`,
//! `χ(exp x) = exp(⟨μ, y⟩ + ⟨ν, ȳ⟩)` where
//! `χ(exp x) = exp(⟨h, x − σ(x̄)⟩ + ⟨μ/2, x + σ(x̄)⟩)`.

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::Rng;
use serde::Serialize;

use crate::abelian::IntMatrix;
use crate::error::{Error, Result};
use crate::gmodule::family::finite_order_matrices;

/// Default relative tolerance.
pub const ARCH_TOL: f64 = 1e-9;

/// Data of a character of `T(ℝ)`: the involution `σ` on `X_*`, exponents
/// `μ, ν` with `z ↦ z^μ z̄^ν` on `ℂ×`, and `h`.
#[derive(Clone, Debug, PartialEq)]
pub struct ArchimedeanCharDatum {
    pub sigma: Vec<Vec<i64>>,
    pub mu: Vec<Complex64>,
    pub nu: Vec<Complex64>,
    pub h: Vec<Complex64>,
}

fn apply(sigma: &[Vec<i64>], v: &[Complex64]) -> Vec<Complex64> {
    sigma.iter().map(|row| row.iter().zip(v).map(|(&a, &x)| x * a as f64).sum()).collect()
}

fn apply_transpose(sigma: &[Vec<i64>], v: &[Complex64]) -> Vec<Complex64> {
    let r = sigma.len();
    (0..r).map(|j| (0..r).map(|i| v[i] * sigma[i][j] as f64).sum()).collect()
}

fn pair(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn conj(v: &[Complex64]) -> Vec<Complex64> {
    v.iter().map(Complex64::conj).collect()
}

impl ArchimedeanCharDatum {
    /// Checks `σ² = 1`, `μ − ν ∈ ℤʳ` and `ν = σᵀμ`, all to [`ARCH_TOL`].
    pub fn new(sigma: Vec<Vec<i64>>, mu: Vec<Complex64>, nu: Vec<Complex64>, h: Vec<Complex64>) -> Result<Self> {
        let r = sigma.len();
        let bad = |m: &str| Err(Error::Archimedean(m.into()));
        if sigma.iter().any(|row| row.len() != r) || mu.len() != r || nu.len() != r || h.len() != r {
            return bad("σ, μ, ν, h must have matching rank");
        }
        let s = IntMatrix::from_rows(&sigma);
        if !s.mul(&s)?.is_identity() {
            return bad("σ is not an involution");
        }
        let scale = |z: &Complex64| 1.0 + z.norm();
        for (m, n) in mu.iter().zip(&nu) {
            let d = m - n;
            if d.im.abs() > ARCH_TOL * scale(m) || (d.re - d.re.round()).abs() > ARCH_TOL * scale(m) {
                return bad("μ − ν is not integral");
            }
        }
        for (n, want) in nu.iter().zip(apply_transpose(&sigma, &mu)) {
            if (n - want).norm() > ARCH_TOL * scale(&want) {
                return bad("ν ≠ σ(μ)");
            }
        }
        Ok(ArchimedeanCharDatum { sigma, mu, nu, h })
    }

    pub fn rank(&self) -> usize {
        self.sigma.len()
    }

    /// `χ(exp x)`.
    pub fn character_at_exp(&self, x: &[Complex64]) -> Complex64 {
        let sx = apply(&self.sigma, &conj(x));
        let minus: Vec<Complex64> = x.iter().zip(&sx).map(|(a, b)| a - b).collect();
        let plus: Vec<Complex64> = x.iter().zip(&sx).map(|(a, b)| (a + b) * 0.5).collect();
        (pair(&self.h, &minus) + pair(&self.mu, &plus)).exp()
    }

    /// `χ(N(exp y))` evaluated through `x = y + σ(ȳ)`.
    pub fn norm_side(&self, y: &[Complex64]) -> Complex64 {
        let sy = apply(&self.sigma, &conj(y));
        let x: Vec<Complex64> = y.iter().zip(&sy).map(|(a, b)| a + b).collect();
        self.character_at_exp(&x)
    }

    /// `exp(⟨μ, y⟩ + ⟨ν, ȳ⟩)`.
    pub fn parameter_side(&self, y: &[Complex64]) -> Complex64 {
        (pair(&self.mu, y) + pair(&self.nu, &conj(y))).exp()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ArchimedeanReport {
    pub samples: usize,
    pub max_relative_deviation: f64,
    /// Index of the sample attaining the maximum.
    pub worst_sample: Option<usize>,
}

impl ArchimedeanReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.max_relative_deviation <= tol
    }
}

pub fn archimedean_norm_check(a: &ArchimedeanCharDatum, samples: &[Vec<Complex64>]) -> Result<ArchimedeanReport> {
    let mut worst = (0.0f64, None);
    for (i, y) in samples.iter().enumerate() {
        if y.len() != a.rank() {
            return Err(Error::Archimedean(format!("sample {i} has length {}", y.len())));
        }
        let lhs = a.norm_side(y);
        let rhs = a.parameter_side(y);
        let dev = (lhs - rhs).norm() / rhs.norm().max(f64::MIN_POSITIVE);
        if !dev.is_finite() {
            return Err(Error::Archimedean(format!("sample {i} overflows")));
        }
        if worst.1.is_none() || dev > worst.0 {
            worst = (dev, Some(i));
        }
    }
    Ok(ArchimedeanReport { samples: samples.len(), max_relative_deviation: worst.0, worst_sample: worst.1 })
}

fn unit_complex<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0))
}

/// A random valid datum of rank `r`: `σ` an involution from the
/// finite-order catalog, `μ = (1 + σᵀ)w + v` with `v` integral, `ν = σᵀμ`.
pub fn random_datum<R: Rng>(rng: &mut R, r: usize) -> ArchimedeanCharDatum {
    let involutions: Vec<IntMatrix> =
        finite_order_matrices(r).into_iter().filter(|s| s.mul(s).map(|p| p.is_identity()).unwrap_or(false)).collect();
    let s = &involutions[rng.gen_range(0..involutions.len())];
    let sigma: Vec<Vec<i64>> =
        s.to_rows().iter().map(|row| row.iter().map(|x| x.to_i64().expect("small entries")).collect()).collect();
    let w: Vec<Complex64> = (0..r).map(|_| unit_complex(rng)).collect();
    let sw = apply_transpose(&sigma, &w);
    let mu: Vec<Complex64> =
        w.iter().zip(&sw).map(|(a, b)| a + b + Complex64::from(rng.gen_range(-2i32..=2) as f64)).collect();
    let nu = apply_transpose(&sigma, &mu);
    let h = (0..r).map(|_| unit_complex(rng)).collect();
    ArchimedeanCharDatum::new(sigma, mu, nu, h).expect("constructed to satisfy the invariants")
}

/// A random vector with `|y| ≤ radius`.
pub fn random_sample<R: Rng>(rng: &mut R, r: usize, radius: f64) -> Vec<Complex64> {
    loop {
        let y: Vec<Complex64> = (0..r).map(|_| unit_complex(rng) * radius).collect();
        if y.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt() <= radius {
            return y;
        }
    }
}
