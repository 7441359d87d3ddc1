use nalgebra::{DMatrix, DVector};

use super::{nnls, ConeDescription};
use crate::error::{Error, Result};
use crate::linalg;

/// Ambient dimension limit for facet enumeration.
pub const MAX_DUAL_DIM: usize = 8;

fn push_unique(out: &mut Vec<DVector<f64>>, v: DVector<f64>) {
    let n = v.norm();
    if n < 1e-12 {
        return;
    }
    let u = v / n;
    if !out.iter().any(|w| (w - &u).norm() < 1e-9) {
        out.push(u);
    }
}

fn subsets(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    'outer: loop {
        f(&idx);
        let mut i = k;
        while i > 0 {
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                continue 'outer;
            }
        }
        return;
    }
}

/// `{xi : xi . y <= 0 for all generators y}` as a generator list, with the
/// coordinate dot product as pairing.
pub fn dual_cone(c: &ConeDescription) -> Result<ConeDescription> {
    let ConeDescription::Polyhedral { dim, generators } = c else {
        return Err(Error::UnsupportedCone("dual_cone needs a polyhedral cone".into()));
    };
    let n = *dim;
    if n > MAX_DUAL_DIM {
        return Err(Error::DimensionTooLarge {
            what: "dual cone ambient space",
            dim: n,
            max: MAX_DUAL_DIM,
        });
    }
    let gens: Vec<DVector<f64>> = generators
        .iter()
        .filter(|g| g.norm() > 1e-14)
        .map(|g| g / g.norm())
        .collect();
    let mut out = Vec::new();

    // Orthocomplement of the span is the lineality space of the dual.
    let mut gmat = DMatrix::zeros(gens.len(), n);
    for (i, g) in gens.iter().enumerate() {
        gmat.set_row(i, &g.transpose());
    }
    let lineality = if gens.is_empty() {
        DMatrix::identity(n, n)
    } else {
        linalg::null_space(&gmat, 1e-10)
    };
    for j in 0..lineality.ncols() {
        let v = lineality.column(j).into_owned();
        push_unique(&mut out, v.clone());
        push_unique(&mut out, -v);
    }

    // Inside the span the dual is pointed: its extreme rays are cut out by
    // r - 1 independent active constraints.
    let (span, _) = linalg::orthonormalize(&gens, 1e-10);
    let r = span.len();
    if r > 0 {
        let mut b = DMatrix::zeros(n, r);
        for (j, s) in span.iter().enumerate() {
            b.set_column(j, s);
        }
        let a = &gmat * &b; // constraints in span coordinates
        let m = gens.len();
        subsets(m, r - 1, |idx| {
            let mut sub = DMatrix::zeros(idx.len(), r);
            for (row, &i) in idx.iter().enumerate() {
                sub.set_row(row, &a.row(i));
            }
            let ker = linalg::null_space(&sub, 1e-10);
            if ker.ncols() != 1 {
                return;
            }
            let k = ker.column(0).into_owned();
            for sign in [1.0, -1.0] {
                let ks = &k * sign;
                let vals = &a * &ks;
                if vals.iter().all(|&v| v <= 1e-10) {
                    push_unique(&mut out, &b * &ks);
                }
            }
        });
    }
    Ok(ConeDescription::Polyhedral {
        dim: n,
        generators: out,
    })
}

/// NNLS membership in a polyhedral cone at absolute residual `tol` (for a
/// unit-normalised query).
pub fn polyhedral_contains(generators: &[DVector<f64>], v: &DVector<f64>, tol: f64) -> bool {
    let n = v.norm();
    if n < 1e-14 {
        return true;
    }
    let gens: Vec<&DVector<f64>> = generators.iter().filter(|g| g.norm() > 1e-14).collect();
    if gens.is_empty() {
        return false;
    }
    let mut a = DMatrix::zeros(v.len(), gens.len());
    for (j, g) in gens.iter().enumerate() {
        a.set_column(j, &(*g / g.norm()));
    }
    let (_, r) = nnls(&a, &(v / n));
    r <= tol
}

/// Mutual generator containment.
pub fn polyhedral_equal(a: &ConeDescription, b: &ConeDescription, tol: f64) -> Result<bool> {
    match (a, b) {
        (
            ConeDescription::Polyhedral { generators: ga, .. },
            ConeDescription::Polyhedral { generators: gb, .. },
        ) => Ok(ga.iter().all(|g| polyhedral_contains(gb, g, tol))
            && gb.iter().all(|g| polyhedral_contains(ga, g, tol))),
        _ => Err(Error::UnsupportedCone("polyhedral_equal needs polyhedral cones".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(dim: usize, g: &[&[f64]]) -> ConeDescription {
        ConeDescription::Polyhedral {
            dim,
            generators: g.iter().map(|x| DVector::from_column_slice(x)).collect(),
        }
    }

    #[test]
    fn dual_of_zero_is_full() {
        let d = dual_cone(&poly(3, &[])).unwrap();
        let ConeDescription::Polyhedral { generators, .. } = &d else { panic!() };
        assert_eq!(generators.len(), 6);
        assert!(polyhedral_contains(generators, &DVector::from_vec(vec![0.3, -2.0, 1.0]), 1e-9));
    }

    #[test]
    fn dual_of_full_is_zero() {
        let full = poly(2, &[&[1.0, 0.0], &[-1.0, 0.0], &[0.0, 1.0], &[0.0, -1.0]]);
        let d = dual_cone(&full).unwrap();
        assert!(d.is_zero());
    }

    #[test]
    fn dual_of_first_quadrant_is_third() {
        let d = dual_cone(&poly(2, &[&[1.0, 0.0], &[0.0, 1.0]])).unwrap();
        let expect = poly(2, &[&[-1.0, 0.0], &[0.0, -1.0]]);
        assert!(polyhedral_equal(&d, &expect, 1e-9).unwrap());
    }

    #[test]
    fn dual_of_half_plane() {
        let d = dual_cone(&poly(2, &[&[1.0, 0.0], &[0.0, 1.0], &[0.0, -1.0]])).unwrap();
        assert!(polyhedral_equal(&d, &poly(2, &[&[-1.0, 0.0]]), 1e-9).unwrap());
    }

    #[test]
    fn dimension_limit() {
        assert!(matches!(
            dual_cone(&poly(9, &[])),
            Err(Error::DimensionTooLarge { dim: 9, .. })
        ));
    }

    #[test]
    fn subset_enumeration_counts() {
        let mut c = 0;
        subsets(6, 3, |_| c += 1);
        assert_eq!(c, 20);
        let mut c = 0;
        subsets(4, 0, |s| {
            assert!(s.is_empty());
            c += 1
        });
        assert_eq!(c, 1);
    }
}
