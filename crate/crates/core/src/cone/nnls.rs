//! Lawson-Hanson non-negative least squares.

use nalgebra::{DMatrix, DVector};

use crate::linalg;

/// Minimises `|A x - b|` over `x >= 0`. Returns `(x, residual norm)`.
pub fn nnls(a: &DMatrix<f64>, b: &DVector<f64>) -> (DVector<f64>, f64) {
    let (m, n) = a.shape();
    let mut x = DVector::zeros(n);
    if n == 0 {
        return (x, b.norm());
    }
    let scale = a.amax().max(1e-300) * b.amax().max(1.0);
    let tol = 1e-12 * scale * (m.max(n) as f64);
    let mut passive = vec![false; n];
    let max_outer = 3 * n + 10;

    let sub_solve = |passive: &[bool]| -> DVector<f64> {
        let idx: Vec<usize> = (0..n).filter(|&j| passive[j]).collect();
        let mut ap = DMatrix::zeros(m, idx.len());
        for (c, &j) in idx.iter().enumerate() {
            ap.set_column(c, &a.column(j));
        }
        let zp = linalg::lstsq(&ap, b);
        let mut z = DVector::zeros(n);
        for (c, &j) in idx.iter().enumerate() {
            z[j] = zp[c];
        }
        z
    };

    for _ in 0..max_outer {
        let w = a.transpose() * (b - a * &x);
        let cand = (0..n)
            .filter(|&j| !passive[j])
            .max_by(|&i, &j| w[i].total_cmp(&w[j]));
        let Some(t) = cand else { break };
        if w[t] <= tol {
            break;
        }
        passive[t] = true;
        let mut inner = 0;
        loop {
            inner += 1;
            let z = sub_solve(&passive);
            let bad: Vec<usize> = (0..n).filter(|&j| passive[j] && z[j] <= 0.0).collect();
            if bad.is_empty() || inner > 3 * n + 10 {
                x = z.map(|v| v.max(0.0));
                break;
            }
            let mut alpha = f64::INFINITY;
            for &j in &bad {
                let denom = x[j] - z[j];
                if denom > 0.0 {
                    alpha = alpha.min(x[j] / denom);
                }
            }
            if !alpha.is_finite() {
                alpha = 0.0;
            }
            x = &x + (&z - &x) * alpha;
            for j in 0..n {
                if passive[j] && x[j] <= 1e-15 * scale {
                    passive[j] = false;
                    x[j] = 0.0;
                }
            }
        }
    }
    let r = (a * &x - b).norm();
    (x, r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inside_quadrant() {
        let a = DMatrix::identity(2, 2);
        let (x, r) = nnls(&a, &DVector::from_vec(vec![1.0, 2.0]));
        assert!(r < 1e-12);
        assert!((x[0] - 1.0).abs() < 1e-12 && (x[1] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn outside_projects_to_face() {
        let a = DMatrix::identity(2, 2);
        let (x, r) = nnls(&a, &DVector::from_vec(vec![1.0, -2.0]));
        assert!((r - 2.0).abs() < 1e-12);
        assert!((x[0] - 1.0).abs() < 1e-12 && x[1] == 0.0);
    }

    #[test]
    fn redundant_generators() {
        let a = DMatrix::from_row_slice(2, 3, &[1.0, 0.0, 1.0, 0.0, 1.0, 1.0]);
        let (_, r) = nnls(&a, &DVector::from_vec(vec![3.0, 1.0]));
        assert!(r < 1e-10);
        let (_, r) = nnls(&a, &DVector::from_vec(vec![-1.0, 0.0]));
        assert!((r - 1.0).abs() < 1e-10);
    }
}
