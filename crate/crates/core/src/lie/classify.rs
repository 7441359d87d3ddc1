use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::algebra::{Covector, MatrixLieAlgebra};
use crate::error::Result;
use crate::linalg;

/// Coordinates below this norm count as the zero covector.
pub const ZERO_TOL: f64 = 1e-12;
/// Tolerance for the real / imaginary / zero tests on normalised spectra.
pub const EIGEN_TOL: f64 = 1e-9;
/// Frobenius threshold for `ad_X^dim` on normalised `X`.
pub const NILPOTENT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassTag {
    Zero,
    Elliptic,
    Hyperbolic,
    Nilpotent,
    Mixed,
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ClassTag::Zero => "Zero",
            ClassTag::Elliptic => "Elliptic",
            ClassTag::Hyperbolic => "Hyperbolic",
            ClassTag::Nilpotent => "Nilpotent",
            ClassTag::Mixed => "Mixed",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ElementClass {
    pub tag: ClassTag,
    /// Eigenvalues of `ad_X`, sorted by real then imaginary part.
    pub eigen_summary: Vec<Complex64>,
    /// Sign of the element against the algebra's orientation reference, for
    /// elliptic and nilpotent elements of rank-one three-dimensional algebras.
    pub orientation: Option<i8>,
}

/// Finer classification of a covector of `sl(2,R)` or `so(2,1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Region {
    Zero,
    Hyperbolic,
    EllipticPlus,
    EllipticMinus,
    NilpotentPlus,
    NilpotentMinus,
    Mixed,
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Region::Zero => "Zero",
            Region::Hyperbolic => "Hyperbolic",
            Region::EllipticPlus => "EllipticPlus",
            Region::EllipticMinus => "EllipticMinus",
            Region::NilpotentPlus => "NilpotentPlus",
            Region::NilpotentMinus => "NilpotentMinus",
            Region::Mixed => "Mixed",
        };
        f.write_str(s)
    }
}

fn sorted(mut v: Vec<Complex64>) -> Vec<Complex64> {
    v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    v
}

fn power_norm(a: &DMatrix<f64>, k: usize) -> f64 {
    let mut p = a.clone();
    for _ in 1..k {
        p = &p * a;
        if p.amax() > 1e12 {
            return f64::INFINITY;
        }
    }
    p.norm()
}

fn is_semisimple(a: &DMatrix<f64>, eig: &[Complex64]) -> bool {
    let n = a.nrows();
    let ac = a.map(|x| Complex64::new(x, 0.0));
    for (mu, count) in linalg::cluster(eig, 1e-5) {
        if count == 1 {
            continue;
        }
        let shifted = &ac - DMatrix::<Complex64>::identity(n, n) * mu;
        if linalg::null_space(&shifted, 1e-7).ncols() != count {
            return false;
        }
    }
    true
}

/// Spectral type of a (normalised) square matrix.
fn spectral_tag(a: &DMatrix<f64>) -> ClassTag {
    let n = a.nrows();
    if power_norm(a, n.max(1)) < NILPOTENT_TOL {
        return ClassTag::Nilpotent;
    }
    let eig = linalg::eigenvalues(a);
    if !is_semisimple(a, &eig) {
        return ClassTag::Mixed;
    }
    if eig.iter().all(|l| l.re.abs() <= EIGEN_TOL) {
        ClassTag::Elliptic
    } else if eig.iter().all(|l| l.im.abs() <= EIGEN_TOL) {
        ClassTag::Hyperbolic
    } else {
        ClassTag::Mixed
    }
}

/// Classifies a covector by the eigenstructure of `ad_X` for its trace-form
/// transport `X`. Central elements (where `ad_X = 0`) are classified by the
/// defining matrix of `X` instead.
pub fn classify_element(l: &MatrixLieAlgebra, xi: &Covector) -> Result<ElementClass> {
    let x = l.element_of(xi)?;
    let ad = l.ad_of_coords(x.coords());
    let eigen_summary = sorted(linalg::eigenvalues(&ad));
    let norm = x.norm();
    if norm < ZERO_TOL {
        return Ok(ElementClass {
            tag: ClassTag::Zero,
            eigen_summary,
            orientation: None,
        });
    }
    let adn = &ad / norm;
    let tag = if adn.norm() < NILPOTENT_TOL {
        let m = l.matrix_of_coords(x.coords()) / norm;
        spectral_tag(&m)
    } else {
        spectral_tag(&adn)
    };
    let orientation = match (tag, l.orientation_reference()) {
        (ClassTag::Elliptic | ClassTag::Nilpotent, Some(k)) => {
            let s = -l.pair(xi, &k)?;
            Some(if s > 0.0 { 1 } else { -1 })
        }
        _ => None,
    };
    Ok(ElementClass {
        tag,
        eigen_summary,
        orientation,
    })
}

/// Region of a covector in a rank-one three-dimensional algebra, using the
/// closed-form quadric `x^2 + y^2 - z^2` of the trace-form chart.
///
/// Falls back to [`classify_element`] for other algebras (elliptic and
/// nilpotent elements are then reported with the `Plus` variant only when an
/// orientation is available).
pub fn region(l: &MatrixLieAlgebra, xi: &Covector) -> Result<Region> {
    let c = classify_element(l, xi)?;
    Ok(match (c.tag, c.orientation) {
        (ClassTag::Zero, _) => Region::Zero,
        (ClassTag::Hyperbolic, _) => Region::Hyperbolic,
        (ClassTag::Elliptic, Some(-1)) => Region::EllipticMinus,
        (ClassTag::Elliptic, _) => Region::EllipticPlus,
        (ClassTag::Nilpotent, Some(-1)) => Region::NilpotentMinus,
        (ClassTag::Nilpotent, _) => Region::NilpotentPlus,
        (ClassTag::Mixed, _) => Region::Mixed,
    })
}

/// Region of a point in the `sl(2,R)` chart by direct evaluation of the
/// quadric, with a relative tolerance for the cone `x^2+y^2 = z^2`.
pub fn sl2_region(p: &[f64], rel_tol: f64) -> Region {
    let (x, y, z) = (p[0], p[1], p[2]);
    let n2 = x * x + y * y + z * z;
    if n2.sqrt() < ZERO_TOL {
        return Region::Zero;
    }
    let q = x * x + y * y - z * z;
    if q.abs() <= rel_tol * n2 {
        if z > 0.0 {
            Region::NilpotentPlus
        } else {
            Region::NilpotentMinus
        }
    } else if q > 0.0 {
        Region::Hyperbolic
    } else if z > 0.0 {
        Region::EllipticPlus
    } else {
        Region::EllipticMinus
    }
}
