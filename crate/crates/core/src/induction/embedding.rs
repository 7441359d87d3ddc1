use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lie::structure::{cartan_decomposition, maximal_split_abelian};
use crate::lie::{
    call_args, parse_algebra, parse_usize, product, realify, signature_diag, so_generator, so_pq,
    split_top_level, subalgebra_from_matrices, AlgebraElement, AlgebraKind, Covector,
    MatrixLieAlgebra,
};
use crate::linalg;

/// An injective homomorphism `h -> g` of matrix Lie algebras.
///
/// Covectors of `h` live in the trace-form chart of `h` itself, so the
/// pullback `q` is `G_h^{-1} I^T G_g` where `I` is the inclusion on
/// coordinates.
#[derive(Debug, Clone)]
pub struct SubalgebraEmbedding {
    label: String,
    ambient: Arc<MatrixLieAlgebra>,
    sub: Arc<MatrixLieAlgebra>,
    /// `dim g x dim h`; column `j` holds the coordinates of the image of `f_j`.
    inclusion: DMatrix<f64>,
    q: DMatrix<f64>,
    /// Right inverse of `q` with image in the span of the inclusion.
    lift: DMatrix<f64>,
    complement: Vec<DVector<f64>>,
}

impl SubalgebraEmbedding {
    /// Embedding given by the ambient matrices of the images of the basis of
    /// `sub`.
    pub fn from_images(
        label: impl Into<String>,
        ambient: Arc<MatrixLieAlgebra>,
        sub: Arc<MatrixLieAlgebra>,
        images: &[DMatrix<f64>],
    ) -> Result<Self> {
        let label = label.into();
        if images.len() != sub.dim() {
            return Err(Error::InvalidEmbedding(format!(
                "{label}: {} images for a {}-dimensional subalgebra",
                images.len(),
                sub.dim()
            )));
        }
        let mut cols = Vec::with_capacity(images.len());
        for m in images {
            let c = ambient
                .coords_of_matrix(m)
                .map_err(|e| Error::InvalidEmbedding(format!("{label}: {e}")))?;
            cols.push(c);
        }
        let inclusion = crate::lie::structure::stack(&cols, ambient.dim());
        Self::new(label, ambient, sub, inclusion)
    }

    pub fn new(
        label: impl Into<String>,
        ambient: Arc<MatrixLieAlgebra>,
        sub: Arc<MatrixLieAlgebra>,
        inclusion: DMatrix<f64>,
    ) -> Result<Self> {
        let label = label.into();
        let (dg, dh) = (ambient.dim(), sub.dim());
        if inclusion.shape() != (dg, dh) {
            return Err(Error::DimensionMismatch {
                expected: dg * dh,
                found: inclusion.len(),
            });
        }
        if dh > 0 && linalg::rank(&inclusion, 1e-10) != dh {
            return Err(Error::InvalidEmbedding(format!("{label}: inclusion is not injective")));
        }
        let gh_inv = sub.gram_inverse()?.clone();
        let gg = ambient.gram();
        let q = &gh_inv * inclusion.transpose() * gg;
        let qi = &q * &inclusion;
        let lift = if dh == 0 {
            DMatrix::zeros(dg, 0)
        } else {
            let inv = qi.clone().try_inverse().ok_or_else(|| {
                Error::InvalidEmbedding(format!("{label}: trace form degenerates on the subalgebra"))
            })?;
            &inclusion * inv
        };
        let complement: Vec<DVector<f64>> = if dh == 0 {
            (0..dg).map(|i| unit(dg, i)).collect()
        } else {
            let k = linalg::null_space(&(inclusion.transpose() * gg), 1e-10);
            (0..k.ncols()).map(|j| k.column(j).into_owned()).collect()
        };
        let e = SubalgebraEmbedding {
            label,
            ambient,
            sub,
            inclusion,
            q,
            lift,
            complement,
        };
        let b = e.bracket_residual();
        if b > 1e-10 {
            return Err(Error::InvalidEmbedding(format!(
                "{}: inclusion does not respect brackets (residual {b:.3e})",
                e.label
            )));
        }
        let det = e.splitting_determinant();
        if !(det > 1e-9) {
            return Err(Error::InvalidEmbedding(format!(
                "{}: g is not the direct sum of h and its orthocomplement (|det| = {det:.3e})",
                e.label
            )));
        }
        Ok(e)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn ambient(&self) -> &Arc<MatrixLieAlgebra> {
        &self.ambient
    }

    pub fn sub(&self) -> &Arc<MatrixLieAlgebra> {
        &self.sub
    }

    pub fn inclusion(&self) -> &DMatrix<f64> {
        &self.inclusion
    }

    /// Matrix of `q` on chart coordinates (`dim h x dim g`).
    pub fn q_matrix(&self) -> &DMatrix<f64> {
        &self.q
    }

    /// Basis of the trace-form orthocomplement of `h` in `g`, which is also
    /// the annihilator `{xi : q(xi) = 0}` in the chart.
    pub fn complement(&self) -> &[DVector<f64>] {
        &self.complement
    }

    pub fn include(&self, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.sub.check_len(y.dim())?;
        Ok(AlgebraElement::from_vector(&self.inclusion * y.coords()))
    }

    pub fn pullback(&self, xi: &Covector) -> Result<Covector> {
        self.ambient.check_len(xi.dim())?;
        Ok(Covector::from_vector(&self.q * xi.coords()))
    }

    /// A covector of `g` whose pullback is `eta`.
    pub fn lift(&self, eta: &Covector) -> Result<Covector> {
        self.sub.check_len(eta.dim())?;
        Ok(Covector::from_vector(&self.lift * eta.coords()))
    }

    pub(crate) fn lift_matrix(&self) -> &DMatrix<f64> {
        &self.lift
    }

    /// Largest `|<q(e_i), f_j>_h - <e_i, I f_j>_g|` over basis pairs.
    pub fn pullback_residual(&self) -> f64 {
        let lhs = self.q.transpose() * self.sub.gram();
        let rhs = self.ambient.gram() * &self.inclusion;
        if lhs.is_empty() {
            return 0.0;
        }
        (lhs - rhs).amax()
    }

    /// Largest residual of `I[f_i, f_j] = [I f_i, I f_j]` over basis pairs.
    pub fn bracket_residual(&self) -> f64 {
        let dh = self.sub.dim();
        let mut worst = 0.0_f64;
        for i in 0..dh {
            let xi = self.inclusion.column(i).into_owned();
            let ad = self.ambient.ad_of_coords(&xi);
            for j in 0..dh {
                let lhs = &self.inclusion * self.sub.ad_basis(i).column(j);
                let rhs = &ad * self.inclusion.column(j);
                worst = worst.max((lhs - rhs).amax());
            }
        }
        worst
    }

    /// `|det|` of the normalised inclusion columns stacked with the
    /// complement basis.
    pub fn splitting_determinant(&self) -> f64 {
        let dg = self.ambient.dim();
        if dg == 0 {
            return 1.0;
        }
        let mut cols: Vec<DVector<f64>> = (0..self.inclusion.ncols())
            .map(|j| {
                let c = self.inclusion.column(j).into_owned();
                let n = c.norm();
                c / n
            })
            .collect();
        cols.extend(self.complement.iter().cloned());
        if cols.len() != dg {
            return 0.0;
        }
        crate::lie::structure::stack(&cols, dg).determinant().abs()
    }
}

fn unit(n: usize, i: usize) -> DVector<f64> {
    let mut v = DVector::zeros(n);
    v[i] = 1.0;
    v
}

fn matrices_of(l: &MatrixLieAlgebra, vecs: &[DVector<f64>]) -> Vec<DMatrix<f64>> {
    vecs.iter()
        .map(|v| l.element_matrix(&AlgebraElement::from_vector(v.clone())).expect("length checked"))
        .collect()
}

/// `prod(so(p_1,q_1), ...)` placed block-diagonally in `so(p,q)`. Block `i`
/// uses the next `p_i` positive and the next `q_i` negative indices.
pub fn block_embedding(p: usize, q: usize, blocks: &[(usize, usize)]) -> Result<SubalgebraEmbedding> {
    if blocks.is_empty() {
        return Err(Error::BadPartition("no blocks given".into()));
    }
    if let Some(b) = blocks.iter().find(|b| b.0 + b.1 == 0) {
        return Err(Error::BadPartition(format!("empty block {b:?}")));
    }
    let (sp, sq): (usize, usize) = blocks.iter().fold((0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    if sp > p || sq > q {
        return Err(Error::BadPartition(format!(
            "blocks use ({sp},{sq}) indices, only ({p},{q}) are available"
        )));
    }
    let ambient = Arc::new(so_pq(p, q)?);
    let factors = blocks
        .iter()
        .map(|&(a, b)| so_pq(a, b))
        .collect::<Result<Vec<_>>>()?;
    let n = p + q;
    let sig = signature_diag(p, q);
    let mut images = Vec::new();
    let (mut next_pos, mut next_neg) = (0, p);
    for (f, &(bp, bq)) in factors.iter().zip(blocks) {
        let idx: Vec<usize> = (next_pos..next_pos + bp).chain(next_neg..next_neg + bq).collect();
        next_pos += bp;
        next_neg += bq;
        for b in f.basis() {
            let mut m = DMatrix::zeros(n, n);
            for r in 0..idx.len() {
                for c in 0..idx.len() {
                    m[(idx[r], idx[c])] = b[(r, c)];
                }
            }
            images.push(m);
        }
    }
    debug_assert!(images.iter().all(|m| {
        let s = DMatrix::from_diagonal(&DVector::from_vec(sig.clone()));
        (m.transpose() * &s + &s * m).amax() < 1e-14
    }));
    let sub = Arc::new(product(&factors)?);
    let label = format!(
        "so({p},{q})|blocks[{}]",
        blocks
            .iter()
            .map(|(a, b)| format!("({a},{b})"))
            .collect::<Vec<_>>()
            .join(",")
    );
    SubalgebraEmbedding::from_images(label, ambient, sub, &images)
}

/// `g -> g + g`, `X -> (X, X)`.
pub fn diagonal_embedding(g: &MatrixLieAlgebra) -> Result<SubalgebraEmbedding> {
    let ambient = Arc::new(product(&[g.clone(), g.clone()])?);
    let n = g.matrix_size();
    let images: Vec<DMatrix<f64>> = g
        .basis()
        .iter()
        .map(|b| {
            let mut m = DMatrix::zeros(2 * n, 2 * n);
            m.view_mut((0, 0), (n, n)).copy_from(b);
            m.view_mut((n, n), (n, n)).copy_from(b);
            m
        })
        .collect();
    SubalgebraEmbedding::from_images(
        format!("diag({})", g.name()),
        ambient,
        Arc::new(g.clone()),
        &images,
    )
}

/// `so(2,1)` inside `su(2,1)` as the real matrices.
pub fn real_form_embedding() -> Result<SubalgebraEmbedding> {
    let ambient = Arc::new(crate::lie::su21());
    let sub = so_pq(2, 1)?;
    let zero = DMatrix::zeros(3, 3);
    let images: Vec<DMatrix<f64>> = sub.basis().iter().map(|b| realify(b, &zero)).collect();
    SubalgebraEmbedding::from_images("su(2,1)|so(2,1)", ambient, Arc::new(sub), &images)
}

fn subspace_embedding(
    label: String,
    ambient: Arc<MatrixLieAlgebra>,
    name: &str,
    vecs: &[DVector<f64>],
) -> Result<SubalgebraEmbedding> {
    let mats = matrices_of(&ambient, vecs);
    let sub = subalgebra_from_matrices(&ambient, name, mats.clone())
        .map_err(|e| Error::InvalidEmbedding(format!("{label}: {e}")))?;
    SubalgebraEmbedding::from_images(label, ambient, Arc::new(sub), &mats)
}

/// Split Cartan-type abelian subalgebra with a fixed, readable basis where
/// one is known.
fn split_abelian_vectors(g: &MatrixLieAlgebra) -> Result<Vec<DVector<f64>>> {
    let d = g.dim();
    match g.kind() {
        AlgebraKind::Sl2R => Ok(vec![unit(d, 0)]),
        AlgebraKind::Su21 => Ok(vec![unit(d, 1)]),
        AlgebraKind::So { p, q } => {
            let n = p + q;
            let sig = signature_diag(*p, *q);
            (0..(*p).min(*q))
                .map(|i| g.coords_of_matrix(&so_generator(n, &sig, i, p + i)))
                .collect()
        }
        _ => {
            let cd = cartan_decomposition(g)?;
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            Ok(maximal_split_abelian(g, &cd, &mut rng))
        }
    }
}

fn parse_blocks(s: &str) -> Result<Vec<(usize, usize)>> {
    let inner = s
        .trim()
        .strip_prefix("blocks")
        .map(str::trim_start)
        .and_then(|r| r.strip_prefix('['))
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected blocks[(p,q),...], got '{s}'")))?;
    split_top_level(inner)?
        .into_iter()
        .map(|b| {
            let args = b
                .strip_prefix('(')
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| Error::Parse(format!("expected (p,q), got '{b}'")))?;
            match split_top_level(args)?.as_slice() {
                [a, c] => Ok((parse_usize(a)?, parse_usize(c)?)),
                _ => Err(Error::Parse(format!("expected (p,q), got '{b}'"))),
            }
        })
        .collect()
}

/// Parses an embedding spec:
///
/// * `pair(G, H)` or `G|H` with `H` one of `blocks[(p1,q1),...]` (for
///   `G = so(p,q)`), `so(2,1)` (for `G = su(2,1)`), `so(2)` (for `G = sl2R`),
///   `a` (split abelian), `k` (maximal compact), `0`, or `G` itself;
/// * `diag(G)` for the diagonal in `G + G`.
pub fn parse_embedding(spec: &str) -> Result<SubalgebraEmbedding> {
    let s = spec.trim();
    if let Some(args) = call_args(s, "diag") {
        return diagonal_embedding(&parse_algebra(args)?);
    }
    let (g_spec, h_spec) = if let Some(args) = call_args(s, "pair") {
        match split_top_level(args)?.as_slice() {
            [a, b] => (a.to_string(), b.to_string()),
            _ => return Err(Error::Parse(format!("pair expects two arguments: '{s}'"))),
        }
    } else if let Some((a, b)) = s.split_once('|') {
        (a.trim().to_string(), b.trim().to_string())
    } else {
        return Err(Error::Parse(format!(
            "expected pair(G,H), G|H or diag(G), got '{s}'"
        )));
    };
    let g = parse_algebra(&g_spec)?;
    let label = format!("{}|{}", g.name(), h_spec);
    let h = h_spec.as_str();
    if h.starts_with("blocks") {
        return match g.kind() {
            AlgebraKind::So { p, q } => block_embedding(*p, *q, &parse_blocks(h)?),
            _ => Err(Error::InvalidEmbedding(format!("{label}: blocks need an so(p,q) ambient"))),
        };
    }
    let ambient = Arc::new(g);
    match h {
        "0" => return subspace_embedding(label, ambient, "0", &[]),
        "a" => {
            let a = split_abelian_vectors(&ambient)?;
            return subspace_embedding(label, ambient, "a", &a);
        }
        "k" => {
            let cd = cartan_decomposition(&ambient)?;
            return subspace_embedding(label, ambient, "k", &cd.k);
        }
        _ => {}
    }
    let h_alg = parse_algebra(h)?;
    if h_alg.kind() == ambient.kind() {
        let d = ambient.dim();
        return SubalgebraEmbedding::new(
            label,
            ambient.clone(),
            ambient,
            DMatrix::identity(d, d),
        );
    }
    match (ambient.kind(), h_alg.kind()) {
        (AlgebraKind::Su21, AlgebraKind::So { p: 2, q: 1 }) => real_form_embedding(),
        (AlgebraKind::Sl2R, AlgebraKind::So { p: 2, q: 0 }) => {
            subspace_embedding(label, ambient, "so(2)", &[unit(3, 2)])
        }
        (AlgebraKind::So { p, q }, AlgebraKind::So { p: a, q: b }) => {
            block_embedding(*p, *q, &[(*a, *b)])
        }
        _ => Err(Error::InvalidEmbedding(format!(
            "no embedding of {} in {} is known",
            h_alg.name(),
            ambient.name()
        ))),
    }
}
