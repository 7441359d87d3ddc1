//! Conjugacy classes of Cartan subalgebras, separated by the invariant
//! (compact dimension, split dimension).

use std::collections::BTreeSet;
use std::fmt;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lie::structure::{cartan_decomposition, centralizer_in, generic_in, stack};
use crate::lie::{
    abelian, product, signature_diag, sl2r, so_generator, so_pq, su21, AlgebraKind,
    MatrixLieAlgebra,
};
use crate::linalg;

/// Largest `p + q` accepted for `so(p,q)`.
pub const MAX_CARTAN_SO_SIZE: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CartanSignature {
    pub compact: usize,
    pub split: usize,
}

impl fmt::Display for CartanSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.compact, self.split)
    }
}

#[derive(Debug, Clone)]
pub struct CartanClass {
    pub signature: CartanSignature,
    /// Coordinate vectors of a basis.
    pub basis: Vec<DVector<f64>>,
    pub description: String,
}

/// Dimension of a Cartan subalgebra: the nullity of `ad X` for generic `X`.
pub fn complex_rank(l: &MatrixLieAlgebra) -> usize {
    if l.dim() == 0 {
        return 0;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let all = coordinate_basis(l.dim());
    (0..3)
        .map(|_| {
            let x = generic_in(&all, l.dim(), &mut rng);
            linalg::null_space(&l.ad_of_coords(&x), 1e-9).ncols()
        })
        .min()
        .unwrap_or(0)
}

fn coordinate_basis(d: usize) -> Vec<DVector<f64>> {
    (0..d)
        .map(|i| DVector::from_fn(d, |r, _| if r == i { 1.0 } else { 0.0 }))
        .collect()
}

/// Signature of a commuting, diagonalisable family read off the weights of
/// the defining representation: the rank of the real parts is the split
/// dimension, the rank of the imaginary parts the compact one.
pub fn signature_of_span(l: &MatrixLieAlgebra, basis: &[DVector<f64>]) -> Result<CartanSignature> {
    if basis.is_empty() {
        return Ok(CartanSignature { compact: 0, split: 0 });
    }
    let mats: Vec<DMatrix<f64>> = basis.iter().map(|b| l.matrix_of_coords(b)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let w = linalg::joint_weights(&mats, l.matrix_size(), &mut rng)?;
    let scale = mats.iter().map(|m| m.norm()).fold(1.0, f64::max);
    let re = DMatrix::from_fn(w.len(), basis.len(), |i, j| w[i].values[j].re / scale);
    let im = DMatrix::from_fn(w.len(), basis.len(), |i, j| w[i].values[j].im / scale);
    Ok(CartanSignature {
        compact: rank_abs(&im, 1e-7),
        split: rank_abs(&re, 1e-7),
    })
}

fn rank_abs(m: &DMatrix<f64>, tol: f64) -> usize {
    if m.is_empty() {
        return 0;
    }
    let svd = m.clone().svd(false, false);
    svd.singular_values.iter().filter(|s| **s > tol).count()
}

/// If `x` is regular semisimple, the signature of its centralizer.
pub fn regular_signature(l: &MatrixLieAlgebra, x: &DVector<f64>, rank: usize) -> Option<CartanSignature> {
    let ad = l.ad_of_coords(x);
    let ker = linalg::null_space(&ad, 1e-8);
    if ker.ncols() != rank {
        return None;
    }
    let basis: Vec<DVector<f64>> = (0..ker.ncols()).map(|j| ker.column(j).into_owned()).collect();
    let mats: Vec<DMatrix<f64>> = basis.iter().map(|b| l.matrix_of_coords(b)).collect();
    if linalg::commutator_residual(&mats) > 1e-8 {
        return None;
    }
    signature_of_span(l, &basis).ok()
}

/// Residual of the Cartan conditions for the span of `basis`: abelian,
/// diagonalisable in the defining representation, and equal to the
/// centralizer of a generic element.
pub fn cartan_residual(l: &MatrixLieAlgebra, basis: &[DVector<f64>]) -> Result<f64> {
    let mats: Vec<DMatrix<f64>> = basis.iter().map(|b| l.matrix_of_coords(b)).collect();
    let comm = linalg::commutator_residual(&mats);
    if !basis.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        linalg::joint_weights(&mats, l.matrix_size(), &mut rng)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    let x = generic_in(basis, l.dim(), &mut rng);
    let cent = centralizer_in(l, &x, &coordinate_basis(l.dim()));
    if cent.len() != basis.len() {
        return Err(Error::Numerical(format!(
            "span of dimension {} is not its own centralizer (dimension {})",
            basis.len(),
            cent.len()
        )));
    }
    // the centralizer must be the span itself
    let s = stack(basis, l.dim());
    let mut worst = comm;
    for c in &cent {
        let coef = linalg::lstsq(&s, c);
        worst = worst.max((&s * coef - c).amax());
    }
    Ok(worst)
}

fn build_from_kind(kind: &AlgebraKind) -> Result<MatrixLieAlgebra> {
    match kind {
        AlgebraKind::Sl2R => Ok(sl2r()),
        AlgebraKind::Su21 => Ok(su21()),
        AlgebraKind::So { p, q } => so_pq(*p, *q),
        AlgebraKind::Abelian(n) => abelian(*n),
        AlgebraKind::Product(parts) => {
            let f = parts.iter().map(build_from_kind).collect::<Result<Vec<_>>>()?;
            product(&f)
        }
        AlgebraKind::Custom => Err(Error::UnsupportedAlgebra(
            "Cartan classes of a custom algebra".into(),
        )),
    }
}

fn check_supported(kind: &AlgebraKind) -> Result<()> {
    match kind {
        AlgebraKind::So { p, q } if p + q > MAX_CARTAN_SO_SIZE => Err(Error::DimensionTooLarge {
            what: "so(p,q) matrix size for Cartan classes",
            dim: p + q,
            max: MAX_CARTAN_SO_SIZE,
        }),
        AlgebraKind::Product(parts) => parts.iter().try_for_each(check_supported),
        AlgebraKind::Custom => Err(Error::UnsupportedAlgebra(
            "Cartan classes of a custom algebra".into(),
        )),
        _ => Ok(()),
    }
}

/// Representatives of `so(p,q)`: `s` boosts, `k` blocks `R = M_ab + M_cd`,
/// `B = M_ac + M_bd` on two positive and two negative indices, and
/// rotations on the remaining indices paired within each sign.
fn so_representatives(p: usize, q: usize) -> Vec<(String, Vec<DMatrix<f64>>)> {
    let n = p + q;
    let sig = signature_diag(p, q);
    let g = |i: usize, j: usize| so_generator(n, &sig, i.min(j), i.max(j)) * if i < j { 1.0 } else { -1.0 };
    let mut out = Vec::new();
    for s in 0..=p.min(q) {
        for k in 0.. {
            if s + 2 * k > p.min(q) {
                break;
            }
            let (pr, qr) = (p - s - 2 * k, q - s - 2 * k);
            if pr % 2 == 1 && qr % 2 == 1 {
                continue;
            }
            let mut pos = 0..p;
            let mut neg = p..n;
            let mut mats = Vec::new();
            for _ in 0..s {
                let (a, b) = (pos.next().unwrap(), neg.next().unwrap());
                mats.push(g(a, b));
            }
            for _ in 0..k {
                let (a, b) = (pos.next().unwrap(), pos.next().unwrap());
                let (c, d) = (neg.next().unwrap(), neg.next().unwrap());
                mats.push(g(a, b) + g(c, d));
                mats.push(g(a, c) + g(b, d));
            }
            let rest_p: Vec<usize> = pos.collect();
            let rest_q: Vec<usize> = neg.collect();
            for pair in rest_p.chunks_exact(2).chain(rest_q.chunks_exact(2)) {
                mats.push(g(pair[0], pair[1]));
            }
            out.push((format!("{s} boosts, {k} mixed blocks"), mats));
        }
    }
    out
}

fn raw_classes(l: &MatrixLieAlgebra) -> Result<Vec<(String, Vec<DVector<f64>>)>> {
    let d = l.dim();
    let e = |i: usize| DVector::from_fn(d, |r, _| if r == i { 1.0 } else { 0.0 });
    match l.kind() {
        AlgebraKind::Sl2R => Ok(vec![
            ("compact so(2)".into(), vec![e(2)]),
            ("split diagonal".into(), vec![e(0)]),
        ]),
        AlgebraKind::Su21 => {
            // iD1, iD2 diagonal; M02 with i diag(1,-2,1) = 3/2 iD1 - 1/2 iD2.
            let mut mixed = e(6) * 1.5;
            mixed.axpy(-0.5, &e(7), 1.0);
            Ok(vec![
                ("compact diagonal".into(), vec![e(6), e(7)]),
                ("one boost".into(), vec![e(1), mixed]),
            ])
        }
        AlgebraKind::So { p, q } => so_representatives(*p, *q)
            .into_iter()
            .map(|(name, mats)| {
                let v = mats
                    .iter()
                    .map(|m| l.coords_of_matrix(m))
                    .collect::<Result<Vec<_>>>()?;
                Ok((name, v))
            })
            .collect(),
        AlgebraKind::Abelian(_) => Ok(vec![("whole algebra".into(), (0..d).map(e).collect())]),
        AlgebraKind::Product(parts) => {
            let mut combos: Vec<(String, Vec<DVector<f64>>)> = vec![(String::new(), Vec::new())];
            let mut offset = 0;
            for part in parts {
                let f = build_from_kind(part)?;
                let fd = f.dim();
                let classes = raw_classes(&f)?;
                let mut next = Vec::new();
                for (name, basis) in &combos {
                    for (fname, fbasis) in &classes {
                        let mut b = basis.clone();
                        for v in fbasis {
                            let mut w = DVector::zeros(d);
                            w.rows_mut(offset, fd).copy_from(v);
                            b.push(w);
                        }
                        let label = if name.is_empty() {
                            fname.clone()
                        } else {
                            format!("{name} x {fname}")
                        };
                        next.push((label, b));
                    }
                }
                combos = next;
                offset += fd;
            }
            Ok(combos)
        }
        AlgebraKind::Custom => Err(Error::UnsupportedAlgebra(
            "Cartan classes of a custom algebra".into(),
        )),
    }
}

/// One representative per signature, each verified to be a Cartan
/// subalgebra. Representatives sharing a signature are merged.
pub fn cartan_classes(l: &MatrixLieAlgebra) -> Result<Vec<CartanClass>> {
    check_supported(l.kind())?;
    let rank = complex_rank(l);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for (description, basis) in raw_classes(l)? {
        if basis.len() != rank {
            return Err(Error::Numerical(format!(
                "{description}: dimension {} differs from the rank {rank}",
                basis.len()
            )));
        }
        let r = cartan_residual(l, &basis)?;
        if r > 1e-10 {
            return Err(Error::Numerical(format!(
                "{description}: Cartan residual {r:.3e}"
            )));
        }
        let signature = signature_of_span(l, &basis)?;
        if seen.insert(signature) {
            out.push(CartanClass {
                signature,
                basis,
                description,
            });
        }
    }
    out.sort_by_key(|c| c.signature);
    Ok(out)
}

/// Signatures of the centralizers of random regular semisimple elements
/// `a K + b P` with `K` in `k`, `P` in `p` and log-uniform weights.
pub fn brute_force_signatures(l: &MatrixLieAlgebra, trials: usize, seed: u64) -> Result<BTreeSet<CartanSignature>> {
    let cd = cartan_decomposition(l)?;
    let rank = complex_rank(l);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found = BTreeSet::new();
    for _ in 0..trials {
        let a = rng.random_range(-3.0f64..3.0).exp();
        let b = rng.random_range(-3.0f64..3.0).exp();
        let x = generic_in(&cd.k, l.dim(), &mut rng) * a + generic_in(&cd.p, l.dim(), &mut rng) * b;
        if let Some(s) = regular_signature(l, &x, rank) {
            found.insert(s);
        }
    }
    Ok(found)
}
