use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cone::random_unit;
use crate::error::{Error, Result};
use crate::lie::{AlgebraElement, AlgebraKind, Covector, MatrixLieAlgebra};
use crate::linalg;

/// Quantities constant along coadjoint orbits: the Casimir `x^2+y^2-z^2` for
/// `sl(2,R)`, otherwise the characteristic-polynomial coefficients of the
/// transported matrix.
pub fn orbit_invariants(l: &MatrixLieAlgebra, xi: &Covector) -> Result<Vec<f64>> {
    let x = l.element_of(xi)?;
    if *l.kind() == AlgebraKind::Sl2R {
        let v = x.coords();
        return Ok(vec![v[0] * v[0] + v[1] * v[1] - v[2] * v[2]]);
    }
    let m = l.element_matrix(&x)?;
    Ok(char_poly(&m))
}

/// Coefficients `c_{n-1}, ..., c_0` of `det(t I - A) = t^n + c_{n-1} t^{n-1} + ... + c_0`
/// by the Faddeev-LeVerrier recursion.
fn char_poly(a: &DMatrix<f64>) -> Vec<f64> {
    let n = a.nrows();
    let id = DMatrix::<f64>::identity(n, n);
    let mut m = DMatrix::<f64>::zeros(n, n);
    let mut c = 1.0;
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        m = a * &m + &id * c;
        c = -(a * &m).trace() / k as f64;
        out.push(c);
    }
    out
}

/// Tangent vectors `ad*_{e_i} xi` for a maximal independent set of basis
/// indices `i`.
#[derive(Debug, Clone)]
pub struct TangentFrame {
    pub generators: Vec<usize>,
    pub vectors: Vec<Covector>,
}

pub fn tangent_frame(l: &MatrixLieAlgebra, xi: &Covector) -> Result<TangentFrame> {
    l.check_len(xi.dim())?;
    if xi.norm() < 1e-12 {
        return Err(Error::ZeroPoint);
    }
    let all: Vec<DVector<f64>> = (0..l.dim()).map(|i| l.ad_basis(i) * xi.coords()).collect();
    let scale = xi.norm() * (0..l.dim()).map(|i| l.ad_basis(i).norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return Ok(TangentFrame {
            generators: Vec::new(),
            vectors: Vec::new(),
        });
    }
    let (_, picked) = linalg::orthonormalize(&all, 1e-9);
    let vectors = picked.iter().map(|&i| Covector::from_vector(all[i].clone())).collect();
    Ok(TangentFrame {
        generators: picked,
        vectors,
    })
}

/// A basis of the tangent space of the orbit through `xi`.
pub fn tangent_basis(l: &MatrixLieAlgebra, xi: &Covector) -> Result<Vec<Covector>> {
    Ok(tangent_frame(l, xi)?.vectors)
}

/// `-<xi, [X, Y]>`.
pub fn kks_form(l: &MatrixLieAlgebra, xi: &Covector, x: &AlgebraElement, y: &AlgebraElement) -> Result<f64> {
    let b = l.bracket(x, y)?;
    Ok(-l.pair(xi, &b)?)
}

/// Elements `X_i` with `ad*_{X_i} xi = v_i`.
fn preimages(l: &MatrixLieAlgebra, xi: &Covector, vectors: &[Covector]) -> Result<Vec<DVector<f64>>> {
    let d = l.dim();
    let mut a = DMatrix::zeros(d, d);
    for i in 0..d {
        a.set_column(i, &(l.ad_basis(i) * xi.coords()));
    }
    vectors
        .iter()
        .map(|v| {
            l.check_len(v.dim())?;
            let x = linalg::lstsq(&a, v.coords());
            let resid = (&a * &x - v.coords()).norm();
            if resid > 1e-8 * (1.0 + v.norm()) {
                return Err(Error::DegenerateForm(format!(
                    "vector is not tangent to the orbit (residual {resid:.3e})"
                )));
            }
            Ok(x)
        })
        .collect()
}

/// Gram matrix of the KKS form on the given tangent vectors.
pub fn kks_gram(l: &MatrixLieAlgebra, xi: &Covector, vectors: &[Covector]) -> Result<DMatrix<f64>> {
    let xs = preimages(l, xi, vectors)?;
    let k = xs.len();
    let mut om = DMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            let b = l.ad_of_coords(&xs[i]) * &xs[j];
            om[(i, j)] = -xi.coords().dot(&(l.gram() * b));
        }
    }
    Ok(om)
}

/// `|Pf(Omega)| / (2 pi)^d` on a frame of `2d` tangent vectors.
pub fn canonical_density(l: &MatrixLieAlgebra, xi: &Covector, vectors: &[Covector]) -> Result<f64> {
    let k = vectors.len();
    if k % 2 == 1 {
        return Err(Error::OddDimension(k));
    }
    if k == 0 {
        return Ok(1.0);
    }
    let om = kks_gram(l, xi, vectors)?;
    let det = om.determinant();
    if det < 1e-14 {
        return Err(Error::DegenerateForm(format!("KKS Gram determinant {det:.3e}")));
    }
    Ok(det.sqrt() / (2.0 * PI).powi((k / 2) as i32))
}

/// `|det((v_i, e_j))|` against an orthonormal basis `e_j` of the tangent
/// space, for the coordinate inner product.
pub fn euclidean_density(l: &MatrixLieAlgebra, xi: &Covector, vectors: &[Covector]) -> Result<f64> {
    let dim_t = tangent_frame(l, xi).map(|f| f.vectors.len()).unwrap_or(0);
    if vectors.len() != dim_t {
        return Err(Error::DegenerateForm(format!(
            "{} vectors for a tangent space of dimension {dim_t}",
            vectors.len()
        )));
    }
    if dim_t == 0 {
        return Ok(1.0);
    }
    preimages(l, xi, vectors)?;
    let cols: Vec<DVector<f64>> = vectors.iter().map(|v| v.coords().clone()).collect();
    let (basis, _) = linalg::orthonormalize(&cols, 1e-10);
    if basis.len() != dim_t {
        return Err(Error::DegenerateForm("tangent vectors are dependent".into()));
    }
    let mut m = DMatrix::zeros(dim_t, dim_t);
    for (i, v) in cols.iter().enumerate() {
        for (j, e) in basis.iter().enumerate() {
            m[(i, j)] = v.dot(e);
        }
    }
    Ok(m.determinant().abs())
}

/// The ratio `F(xi)` with `F m(O)_xi = Eucl(O)_xi`.
///
/// With `eta_j` an orthonormal basis of the tangent space and `X_i` defined by
/// `<eta, X_i> = (eta, eta_i)`, `F = (2 pi)^d |det((ad*_{X_i} xi, eta_j))|^{1/2}`.
pub fn density_ratio_f(l: &MatrixLieAlgebra, xi: &Covector) -> Result<f64> {
    let frame = tangent_frame(l, xi)?;
    let k = frame.vectors.len();
    if k == 0 {
        return Ok(1.0);
    }
    let cols: Vec<DVector<f64>> = frame.vectors.iter().map(|v| v.coords().clone()).collect();
    let (eta, _) = linalg::orthonormalize(&cols, 1e-10);
    let ginv = l.gram_inverse()?;
    let mut m = DMatrix::zeros(k, k);
    for i in 0..k {
        let xi_elem = ginv * &eta[i];
        let w = l.ad_of_coords(&xi_elem) * xi.coords();
        for j in 0..k {
            m[(i, j)] = w.dot(&eta[j]);
        }
    }
    Ok((2.0 * PI).powi((k / 2) as i32) * m.determinant().abs().sqrt())
}

/// Orthonormal tangent frame at `xi`.
#[cfg(test)]
fn orthonormal_frame(l: &MatrixLieAlgebra, xi: &Covector) -> Result<Vec<Covector>> {
    let frame = tangent_frame(l, xi)?;
    let cols: Vec<DVector<f64>> = frame.vectors.iter().map(|v| v.coords().clone()).collect();
    Ok(linalg::orthonormalize(&cols, 1e-10)
        .0
        .into_iter()
        .map(Covector::from_vector)
        .collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct GrowthFit {
    /// `(|xi|, F(xi))` for every evaluated point.
    pub samples: Vec<(f64, f64)>,
    /// `(1 + |xi|, max F)` per norm level.
    pub maxima: Vec<(f64, f64)>,
    pub slope: f64,
    pub intercept: f64,
}

/// Least-squares slope of `log y` against `log x`.
pub fn fit_log_slope(points: &[(f64, f64)]) -> (f64, f64) {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    let n = pts.len() as f64;
    if pts.len() < 2 {
        return (f64::NAN, f64::NAN);
    }
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// Evaluates `F` at `directions` random unit directions scaled to
/// `levels` log-spaced norms in `[lo, hi]` and fits the growth exponent of
/// the per-level maximum against `1 + |xi|`.
pub fn growth_scan(
    l: &MatrixLieAlgebra,
    lo: f64,
    hi: f64,
    levels: usize,
    directions: usize,
    seed: u64,
) -> Result<GrowthFit> {
    if !(lo > 0.0 && hi > lo) || levels < 2 || directions == 0 {
        return Err(Error::Parse("growth scan needs 0 < lo < hi, levels >= 2".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dirs: Vec<DVector<f64>> = (0..directions).map(|_| random_unit(l.dim(), &mut rng)).collect();
    let mut samples = Vec::new();
    let mut maxima = Vec::new();
    for k in 0..levels {
        let r = lo * (hi / lo).powf(k as f64 / (levels - 1) as f64);
        let mut best: f64 = 0.0;
        for d in &dirs {
            let xi = Covector::from_vector(d * r);
            let f = density_ratio_f(l, &xi)?;
            samples.push((r, f));
            best = best.max(f);
        }
        maxima.push((1.0 + r, best));
    }
    let (slope, intercept) = fit_log_slope(&maxima);
    Ok(GrowthFit {
        samples,
        maxima,
        slope,
        intercept,
    })
}
