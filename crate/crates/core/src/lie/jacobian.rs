use num_complex::Complex64;

use super::algebra::{AlgebraElement, MatrixLieAlgebra};
use crate::error::Result;
use crate::linalg;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpJacobian {
    pub j: f64,
    /// Analytic square root with value 1 at the origin. It may be negative
    /// once an imaginary eigenvalue of `ad_X` passes `2 pi i`.
    pub j_sqrt: f64,
}

fn phi(l: Complex64) -> Complex64 {
    // (1 - e^{-l}) / l
    if l.norm() < 1e-8 {
        Complex64::new(1.0, 0.0) - l / 2.0
    } else {
        (Complex64::new(1.0, 0.0) - (-l).exp()) / l
    }
}

fn sinhc_half(l: Complex64) -> Complex64 {
    // sinh(l/2) / (l/2)
    let h = l / 2.0;
    if h.norm() < 1e-8 {
        Complex64::new(1.0, 0.0) + h * h / 6.0
    } else {
        h.sinh() / h
    }
}

/// Jacobian of `exp: g -> G` at `X`, with its analytic square root.
pub fn exp_jacobian(l: &MatrixLieAlgebra, x: &AlgebraElement) -> Result<ExpJacobian> {
    let ad = l.ad_matrix(x)?;
    let eig = linalg::eigenvalues(&ad);
    let j = eig.iter().fold(Complex64::new(1.0, 0.0), |acc, &e| acc * phi(e)).norm();

    // The spectrum of ad_X is symmetric under negation because the trace form
    // is invariant, so j factors as a square over half of the spectrum.
    let scale = 1.0 + ad.norm();
    let tol = 1e-9 * scale;
    let nonzero = eig.iter().filter(|e| e.norm() > tol).count();
    let half: Vec<Complex64> = eig
        .iter()
        .cloned()
        .filter(|e| e.re > tol || (e.re.abs() <= tol && e.im > tol))
        .collect();
    let j_sqrt = if 2 * half.len() == nonzero {
        half.iter()
            .fold(Complex64::new(1.0, 0.0), |acc, &e| acc * sinhc_half(e))
            .re
    } else {
        j.sqrt()
    };
    Ok(ExpJacobian { j, j_sqrt })
}
