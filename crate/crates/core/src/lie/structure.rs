//! Cartan decomposition helpers: `g = k + p` for `theta(X) = -X^T`,
//! maximal abelian subspaces of `p`, restricted-root nilradicals and random
//! group transports.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use super::algebra::MatrixLieAlgebra;
use crate::error::Result;
use crate::linalg;

#[derive(Debug, Clone)]
pub struct CartanDecomposition {
    pub theta: DMatrix<f64>,
    /// Coordinate vectors spanning the `+1` eigenspace of `theta`.
    pub k: Vec<DVector<f64>>,
    /// Coordinate vectors spanning the `-1` eigenspace of `theta`.
    pub p: Vec<DVector<f64>>,
}

fn columns(m: &DMatrix<f64>) -> Vec<DVector<f64>> {
    (0..m.ncols()).map(|j| m.column(j).into_owned()).collect()
}

pub(crate) fn stack(vectors: &[DVector<f64>], dim: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(dim, vectors.len());
    for (j, v) in vectors.iter().enumerate() {
        m.set_column(j, v);
    }
    m
}

pub fn cartan_decomposition(l: &MatrixLieAlgebra) -> Result<CartanDecomposition> {
    let theta = l.theta_matrix()?;
    let d = l.dim();
    let id = DMatrix::<f64>::identity(d, d);
    let k = columns(&linalg::null_space(&(&theta - &id), 1e-10));
    let p = columns(&linalg::null_space(&(&theta + &id), 1e-10));
    Ok(CartanDecomposition { theta, k, p })
}

/// Random Gaussian combination of the given vectors.
pub(crate) fn generic_in<R: Rng + ?Sized>(span: &[DVector<f64>], dim: usize, rng: &mut R) -> DVector<f64> {
    let mut v = DVector::zeros(dim);
    for b in span {
        let c: f64 = StandardNormal.sample(rng);
        v.axpy(c, b, 1.0);
    }
    v
}

/// Orthonormal basis of `{v in span : [x, v] = 0}`.
pub fn centralizer_in(
    l: &MatrixLieAlgebra,
    x: &DVector<f64>,
    span: &[DVector<f64>],
) -> Vec<DVector<f64>> {
    if span.is_empty() {
        return Vec::new();
    }
    let s = stack(span, l.dim());
    let ad = l.ad_of_coords(x);
    let ker = linalg::null_space(&(&ad * &s), 1e-9);
    let vecs: Vec<DVector<f64>> = columns(&(&s * ker));
    linalg::orthonormalize(&vecs, 1e-9).0
}

/// A maximal abelian subspace of `p` (the centralizer in `p` of a generic
/// element of `p`).
pub fn maximal_split_abelian<R: Rng + ?Sized>(
    l: &MatrixLieAlgebra,
    cd: &CartanDecomposition,
    rng: &mut R,
) -> Vec<DVector<f64>> {
    if cd.p.is_empty() {
        return Vec::new();
    }
    let h = generic_in(&cd.p, l.dim(), rng);
    centralizer_in(l, &h, &cd.p)
}

/// Sum of the eigenspaces of `ad_H` with positive real eigenvalue, for `H`
/// with real spectrum.
pub fn positive_eigenspaces(l: &MatrixLieAlgebra, h: &DVector<f64>) -> Vec<DVector<f64>> {
    let ad = l.ad_of_coords(h);
    let d = l.dim();
    let scale = 1.0 + ad.norm();
    let mut out = Vec::new();
    for (mu, _) in linalg::cluster(&linalg::eigenvalues(&ad), 1e-6 * scale) {
        if mu.re > 1e-8 * scale {
            let shifted = &ad - DMatrix::<f64>::identity(d, d) * mu.re;
            out.extend(columns(&linalg::null_space(&shifted, 1e-8)));
        }
    }
    linalg::orthonormalize(&out, 1e-9).0
}

/// Matrix (on chart coordinates) of `Ad(exp Y_m) ... Ad(exp Y_1)` for random
/// `Y_i` drawn from the span with standard Gaussian coefficients times `scale`.
pub fn random_transport_in<R: Rng + ?Sized>(
    l: &MatrixLieAlgebra,
    span: &[DVector<f64>],
    factors: usize,
    scale: f64,
    rng: &mut R,
) -> DMatrix<f64> {
    let d = l.dim();
    let mut t = DMatrix::identity(d, d);
    if span.is_empty() {
        return t;
    }
    for _ in 0..factors {
        let y = generic_in(span, d, rng) * scale;
        t = (l.ad_of_coords(&y)).exp() * t;
    }
    t
}

/// Random walk of `steps` factors `exp(s ad e_i)` with a uniformly chosen
/// basis index `i` and `s ~ U(-1, 1)`.
pub fn random_walk_transport<R: Rng + ?Sized>(l: &MatrixLieAlgebra, steps: usize, rng: &mut R) -> DMatrix<f64> {
    let d = l.dim();
    let mut t = DMatrix::identity(d, d);
    if d == 0 {
        return t;
    }
    for _ in 0..steps {
        let i = rng.random_range(0..d);
        let s: f64 = rng.random_range(-1.0..1.0);
        t = (l.ad_basis(i) * s).exp() * t;
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{sl2r, so_pq, su21};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn decomposition_dimensions() {
        let cd = cartan_decomposition(&sl2r()).unwrap();
        assert_eq!((cd.k.len(), cd.p.len()), (1, 2));
        let cd = cartan_decomposition(&so_pq(3, 2).unwrap()).unwrap();
        assert_eq!((cd.k.len(), cd.p.len()), (4, 6));
        let cd = cartan_decomposition(&su21()).unwrap();
        assert_eq!((cd.k.len(), cd.p.len()), (4, 4));
    }

    #[test]
    fn split_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for (p, q, r) in [(2, 1, 1), (2, 2, 2), (3, 2, 2), (4, 0, 0), (3, 3, 3)] {
            let g = so_pq(p, q).unwrap();
            let cd = cartan_decomposition(&g).unwrap();
            assert_eq!(maximal_split_abelian(&g, &cd, &mut rng).len(), r, "so({p},{q})");
        }
        let g = su21();
        let cd = cartan_decomposition(&g).unwrap();
        assert_eq!(maximal_split_abelian(&g, &cd, &mut rng).len(), 1);
    }

    #[test]
    fn minimal_parabolic_nilradical_dimension() {
        // g = z(H) + n + theta(n) for generic H in a.
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for g in [sl2r(), su21(), so_pq(3, 2).unwrap()] {
            let cd = cartan_decomposition(&g).unwrap();
            let a = maximal_split_abelian(&g, &cd, &mut rng);
            let h = generic_in(&a, g.dim(), &mut rng);
            let n = positive_eigenspaces(&g, &h);
            let all: Vec<_> = (0..g.dim()).map(|i| DVector::from_fn(g.dim(), |r, _| (r == i) as u8 as f64)).collect();
            let z = centralizer_in(&g, &h, &all);
            assert_eq!(z.len() + 2 * n.len(), g.dim(), "{}", g.name());
        }
    }
}
