//! Dense linear-algebra helpers shared by the geometric modules.

use nalgebra::{ComplexField, DMatrix, DVector, Schur, SVD};
use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};

/// Orthonormal basis (as columns) of the kernel of `m`.
///
/// Singular values at or below `rel_tol * max(1, σ_max)` count as zero.
pub(crate) fn null_space<T>(m: &DMatrix<T>, rel_tol: f64) -> DMatrix<T>
where
    T: ComplexField<RealField = f64>,
{
    let (rows, cols) = m.shape();
    if cols == 0 {
        return DMatrix::zeros(0, 0);
    }
    let padded = if rows < cols {
        let mut p = DMatrix::zeros(cols, cols);
        p.view_mut((0, 0), (rows, cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = SVD::new(padded, false, true);
    let v_t = svd.v_t.expect("v_t requested");
    let sigma = &svd.singular_values;
    let scale = sigma.iter().cloned().fold(1.0_f64, f64::max);
    let tol = rel_tol * scale;
    let keep: Vec<usize> = (0..sigma.len()).filter(|&i| sigma[i] <= tol).collect();
    let mut out = DMatrix::zeros(cols, keep.len());
    for (c, &i) in keep.iter().enumerate() {
        for r in 0..cols {
            out[(r, c)] = v_t[(i, r)].clone().conjugate();
        }
    }
    out
}

pub(crate) fn rank(m: &DMatrix<f64>, rel_tol: f64) -> usize {
    m.ncols() - null_space(m, rel_tol).ncols()
}

/// Least-squares solution of `a x = b` via SVD.
pub(crate) fn lstsq(a: &DMatrix<f64>, b: &DVector<f64>) -> DVector<f64> {
    if a.ncols() == 0 {
        return DVector::zeros(0);
    }
    let svd = SVD::new(a.clone(), true, true);
    let scale = svd.singular_values.iter().cloned().fold(0.0_f64, f64::max);
    svd.solve(b, 1e-13 * scale.max(1e-300))
        .unwrap_or_else(|_| DVector::zeros(a.ncols()))
}

/// Gram-Schmidt with one reorthogonalisation pass.
///
/// Returns the orthonormal vectors and the indices of the inputs that
/// contributed a new direction.
pub(crate) fn orthonormalize(
    vectors: &[DVector<f64>],
    rel_tol: f64,
) -> (Vec<DVector<f64>>, Vec<usize>) {
    let scale = vectors.iter().map(|v| v.norm()).fold(0.0_f64, f64::max);
    let mut basis: Vec<DVector<f64>> = Vec::new();
    let mut picked = Vec::new();
    if scale == 0.0 {
        return (basis, picked);
    }
    for (idx, v) in vectors.iter().enumerate() {
        let mut w = v.clone();
        for _ in 0..2 {
            for b in &basis {
                let c = b.dot(&w);
                w.axpy(-c, b, 1.0);
            }
        }
        let n = w.norm();
        if n > rel_tol * scale {
            basis.push(w / n);
            picked.push(idx);
        }
    }
    (basis, picked)
}

pub(crate) fn eigenvalues(m: &DMatrix<f64>) -> Vec<Complex64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    // nalgebra's real double-shift iteration can stall (it has no exceptional
    // shifts), so cap it and fall back to the complex iteration on a matrix
    // shifted off the real axis.
    let n = m.nrows();
    if let Some(s) = Schur::try_new(m.clone(), f64::EPSILON, 100 * n) {
        return s.complex_eigenvalues().iter().cloned().collect();
    }
    let scale = m.amax().max(1e-300);
    let mc: DMatrix<Complex64> = m.map(|x| Complex64::new(x, 0.0));
    for (a, b) in [(0.1, 0.07), (-0.13, 0.21), (0.31, -0.17), (0.05, 0.4)] {
        let c = Complex64::new(a * scale, b * scale);
        let shifted = &mc + DMatrix::<Complex64>::identity(n, n) * c;
        if let Some(s) = Schur::try_new(shifted, f64::EPSILON, 100 * n) {
            let (_, t) = s.unpack();
            return t.diagonal().iter().map(|z| z - c).collect();
        }
    }
    let s = Schur::try_new(m.clone(), 1e-10, 100_000).expect("Schur iteration did not converge");
    s.complex_eigenvalues().iter().cloned().collect()
}

/// Greedy clustering of complex numbers; returns (mean, count) pairs.
pub(crate) fn cluster(values: &[Complex64], tol: f64) -> Vec<(Complex64, usize)> {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let mut clusters: Vec<(Complex64, usize)> = Vec::new();
    for v in sorted {
        match clusters.iter_mut().find(|(c, _)| (*c - v).norm() <= tol) {
            Some((c, n)) => {
                *c = (*c * (*n as f64) + v) / ((*n + 1) as f64);
                *n += 1;
            }
            None => clusters.push((v, 1)),
        }
    }
    clusters
}

fn to_complex(m: &DMatrix<f64>) -> DMatrix<Complex64> {
    m.map(|x| Complex64::new(x, 0.0))
}

/// One simultaneous eigenspace of a commuting family.
#[derive(Debug, Clone)]
pub(crate) struct JointWeight {
    /// Eigenvalue of each matrix of the family on this eigenspace.
    pub values: Vec<Complex64>,
    pub multiplicity: usize,
}

pub(crate) fn commutator_residual(mats: &[DMatrix<f64>]) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..mats.len() {
        for j in (i + 1)..mats.len() {
            let c = &mats[i] * &mats[j] - &mats[j] * &mats[i];
            let scale = 1.0 + mats[i].norm() * mats[j].norm();
            worst = worst.max(c.norm() / scale);
        }
    }
    worst
}

/// Simultaneous diagonalisation of commuting, diagonalisable matrices of
/// size `n` by eigen-decomposing a random linear combination.
pub(crate) fn joint_weights<R: Rng>(
    mats: &[DMatrix<f64>],
    n: usize,
    rng: &mut R,
) -> Result<Vec<JointWeight>> {
    if mats.is_empty() || n == 0 {
        return Ok(vec![JointWeight {
            values: vec![Complex64::new(0.0, 0.0); mats.len()],
            multiplicity: n,
        }]);
    }
    let residual = commutator_residual(mats);
    if residual > 1e-9 {
        return Err(Error::NonCommuting(residual));
    }
    let complex: Vec<DMatrix<Complex64>> = mats.iter().map(to_complex).collect();
    'attempt: for _ in 0..8 {
        let mut m = DMatrix::<f64>::zeros(n, n);
        for a in mats {
            let c: f64 = rng.random_range(0.5..1.5) * if rng.random::<bool>() { 1.0 } else { -1.0 };
            m += a * c;
        }
        let scale = 1.0 + m.norm();
        let clusters = cluster(&eigenvalues(&m), 1e-7 * scale);
        let mc = to_complex(&m);
        let mut out = Vec::with_capacity(clusters.len());
        let mut total = 0;
        for (mu, count) in clusters {
            let shifted = &mc - DMatrix::<Complex64>::identity(n, n) * mu;
            let space = null_space(&shifted, 1e-8);
            if space.ncols() != count {
                continue 'attempt;
            }
            let v = space.column(0).into_owned();
            let vv = v.dotc(&v);
            let mut values = Vec::with_capacity(mats.len());
            for a in &complex {
                let lam = v.dotc(&(a * &v)) / vv;
                let resid = (a * &space - &space * lam).norm();
                if resid > 1e-7 * (1.0 + a.norm()) {
                    continue 'attempt;
                }
                values.push(lam);
            }
            total += count;
            out.push(JointWeight {
                values,
                multiplicity: count,
            });
        }
        if total == n {
            return Ok(out);
        }
    }
    Err(Error::Numerical(
        "simultaneous diagonalisation failed (family not diagonalisable?)".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn null_space_of_rank_one() {
        let m = DMatrix::from_row_slice(1, 3, &[1.0, 1.0, 0.0]);
        let k = null_space(&m, 1e-12);
        assert_eq!(k.ncols(), 2);
        assert!((&m * &k).norm() < 1e-12);
    }

    #[test]
    fn clusters_merge_close_values() {
        let v = [
            Complex64::new(1.0, 0.0),
            Complex64::new(1.0 + 1e-10, 0.0),
            Complex64::new(-1.0, 0.0),
        ];
        let c = cluster(&v, 1e-8);
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn joint_weights_of_diagonal_pair() {
        let a = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, -1.0, 0.0]));
        let b = DMatrix::from_diagonal(&DVector::from_vec(vec![2.0, 2.0, 0.0]));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let w = joint_weights(&[a, b], 3, &mut rng).unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(w.iter().map(|x| x.multiplicity).sum::<usize>(), 3);
        assert!(w
            .iter()
            .any(|x| (x.values[0].re - 1.0).abs() < 1e-9 && (x.values[1].re - 2.0).abs() < 1e-9));
    }

    #[test]
    fn joint_weights_rejects_non_commuting() {
        let a = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]);
        let b = DMatrix::from_row_slice(2, 2, &[0.0, 0.0, 1.0, 0.0]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert!(matches!(
            joint_weights(&[a, b], 2, &mut rng),
            Err(Error::NonCommuting(_))
        ));
    }
}
