use std::fmt;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::linalg;

/// Largest matrix size accepted for the indefinite orthogonal family.
pub const MAX_SO_SIZE: usize = 10;

/// Which family a concrete algebra was built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraKind {
    Sl2R,
    So { p: usize, q: usize },
    Su21,
    Abelian(usize),
    Product(Vec<AlgebraKind>),
    /// Built from explicit matrices (e.g. a subalgebra inside an ambient one).
    Custom,
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraKind::Sl2R => write!(f, "sl2R"),
            AlgebraKind::So { p, q } => write!(f, "so({p},{q})"),
            AlgebraKind::Su21 => write!(f, "su(2,1)"),
            AlgebraKind::Abelian(n) => write!(f, "abelian({n})"),
            AlgebraKind::Product(parts) => {
                write!(f, "prod(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
            AlgebraKind::Custom => write!(f, "custom"),
        }
    }
}

/// A diagonal block of the defining representation with its own trace weight.
///
/// Realified complex algebras use weight 1/2 so that the form equals the real
/// part of the complex trace.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct FormBlock {
    pub offset: usize,
    pub size: usize,
    pub weight: f64,
}

/// A real matrix Lie algebra given by a basis of `n x n` matrices.
///
/// Elements are stored as coordinate vectors in that basis. Covectors are
/// stored in the same chart after transport through the trace form, so the
/// covector with coordinates `x` is `Y -> Tr(X Y)` where `X` has coordinates `x`.
#[derive(Debug, Clone)]
pub struct MatrixLieAlgebra {
    name: String,
    kind: AlgebraKind,
    matrix_size: usize,
    basis: Vec<DMatrix<f64>>,
    labels: Vec<String>,
    blocks: Vec<FormBlock>,
    /// `ad_basis[i]` is the matrix of `Y -> [e_i, Y]`.
    ad_basis: Vec<DMatrix<f64>>,
    gram: DMatrix<f64>,
    gram_inv: Option<DMatrix<f64>>,
    coord_map: DMatrix<f64>,
}

/// Residuals of the structural identities, measured over all basis triples.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvariantReport {
    pub antisymmetry: f64,
    pub jacobi: f64,
    pub invariance: f64,
    pub gram_asymmetry: f64,
    pub gram_det: f64,
}

impl InvariantReport {
    pub fn holds(&self, tol: f64) -> bool {
        self.antisymmetry <= tol
            && self.jacobi <= tol
            && self.invariance <= tol
            && self.gram_asymmetry <= tol
    }
}

fn unit(n: usize, i: usize, j: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(n, n);
    m[(i, j)] = 1.0;
    m
}

fn flatten(m: &DMatrix<f64>) -> DVector<f64> {
    DVector::from_iterator(m.len(), m.iter().cloned())
}

impl MatrixLieAlgebra {
    /// Builds an algebra from basis matrices. Structure constants are read off
    /// matrix commutators; the span must be closed under the bracket.
    pub(crate) fn from_matrices(
        name: impl Into<String>,
        kind: AlgebraKind,
        matrix_size: usize,
        basis: Vec<DMatrix<f64>>,
        labels: Vec<String>,
        blocks: Vec<FormBlock>,
    ) -> Result<Self> {
        let name = name.into();
        let dim = basis.len();
        if labels.len() != dim {
            return Err(Error::InvalidAlgebra(format!("{name}: label count mismatch")));
        }
        if basis.iter().any(|b| b.nrows() != matrix_size || b.ncols() != matrix_size) {
            return Err(Error::InvalidAlgebra(format!("{name}: basis matrix of wrong size")));
        }
        let n2 = matrix_size * matrix_size;
        let mut flat = DMatrix::zeros(n2, dim);
        for (j, b) in basis.iter().enumerate() {
            flat.set_column(j, &flatten(b));
        }
        if linalg::rank(&flat, 1e-10) != dim {
            return Err(Error::InvalidAlgebra(format!("{name}: basis is linearly dependent")));
        }
        let coord_map = if dim == 0 {
            DMatrix::zeros(0, n2)
        } else {
            flat.clone()
                .pseudo_inverse(1e-12)
                .map_err(|e| Error::Numerical(e.to_string()))?
        };

        let mut alg = MatrixLieAlgebra {
            name,
            kind,
            matrix_size,
            basis,
            labels,
            blocks,
            ad_basis: Vec::new(),
            gram: DMatrix::zeros(dim, dim),
            gram_inv: None,
            coord_map,
        };

        let mut ad_basis = vec![DMatrix::zeros(dim, dim); dim];
        for i in 0..dim {
            for j in 0..dim {
                let c = &alg.basis[i] * &alg.basis[j] - &alg.basis[j] * &alg.basis[i];
                let coords = alg.coords_of_matrix(&c).map_err(|_| {
                    Error::InvalidAlgebra(format!("{}: span not closed under bracket", alg.name))
                })?;
                ad_basis[i].set_column(j, &coords);
            }
        }
        alg.ad_basis = ad_basis;

        let mut gram = DMatrix::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                gram[(i, j)] = alg.trace_form_matrices(&alg.basis[i], &alg.basis[j]);
            }
        }
        alg.gram_inv = if dim == 0 {
            Some(DMatrix::zeros(0, 0))
        } else if gram.determinant().abs() > 1e-9 {
            gram.clone().try_inverse()
        } else {
            None
        };
        alg.gram = gram;
        Ok(alg)
    }

    fn trace_form_matrices(&self, a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
        let prod = a * b;
        self.blocks
            .iter()
            .map(|blk| {
                let mut t = 0.0;
                for k in blk.offset..blk.offset + blk.size {
                    t += prod[(k, k)];
                }
                blk.weight * t
            })
            .sum()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &AlgebraKind {
        &self.kind
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn matrix_size(&self) -> usize {
        self.matrix_size
    }

    pub fn basis(&self) -> &[DMatrix<f64>] {
        &self.basis
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Trace-form Gram matrix `Tr(e_i e_j)`.
    pub fn gram(&self) -> &DMatrix<f64> {
        &self.gram
    }

    pub(crate) fn blocks(&self) -> &[FormBlock] {
        &self.blocks
    }

    /// `c[i][j][k]` with `[e_i, e_j] = sum_k c[i][j][k] e_k`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> f64 {
        self.ad_basis[i][(k, j)]
    }

    /// Matrix of `ad(e_i)` in the basis.
    pub fn ad_basis(&self, i: usize) -> &DMatrix<f64> {
        &self.ad_basis[i]
    }

    pub fn is_form_nondegenerate(&self) -> bool {
        self.gram_inv.is_some()
    }

    pub(crate) fn gram_inverse(&self) -> Result<&DMatrix<f64>> {
        self.gram_inv.as_ref().ok_or_else(|| {
            Error::DegenerateForm(format!(
                "{}: |det gram| = {:.3e}",
                self.name,
                self.gram.determinant().abs()
            ))
        })
    }

    pub(crate) fn check_len(&self, len: usize) -> Result<()> {
        if len != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: len,
            });
        }
        Ok(())
    }

    /// Coordinates of a matrix that lies in the algebra.
    pub fn coords_of_matrix(&self, m: &DMatrix<f64>) -> Result<DVector<f64>> {
        if m.nrows() != self.matrix_size || m.ncols() != self.matrix_size {
            return Err(Error::DimensionMismatch {
                expected: self.matrix_size,
                found: m.nrows(),
            });
        }
        let flat = flatten(m);
        let coords = &self.coord_map * &flat;
        let back = self.matrix_of_coords(&coords);
        let resid = (&back - m).norm();
        if resid > 1e-9 * (1.0 + m.norm()) {
            return Err(Error::InvalidAlgebra(format!(
                "matrix is not in {} (residual {resid:.3e})",
                self.name
            )));
        }
        Ok(coords)
    }

    pub(crate) fn matrix_of_coords(&self, coords: &DVector<f64>) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.matrix_size, self.matrix_size);
        for (c, b) in coords.iter().zip(&self.basis) {
            if *c != 0.0 {
                m += b * *c;
            }
        }
        m
    }

    /// Matrix realisation of an element.
    pub fn element_matrix(&self, x: &AlgebraElement) -> Result<DMatrix<f64>> {
        self.check_len(x.dim())?;
        Ok(self.matrix_of_coords(x.coords()))
    }

    pub fn ad_matrix(&self, x: &AlgebraElement) -> Result<DMatrix<f64>> {
        self.check_len(x.dim())?;
        Ok(self.ad_of_coords(x.coords()))
    }

    pub(crate) fn ad_of_coords(&self, coords: &DVector<f64>) -> DMatrix<f64> {
        let d = self.dim();
        let mut m = DMatrix::zeros(d, d);
        for (c, a) in coords.iter().zip(&self.ad_basis) {
            if *c != 0.0 {
                m += a * *c;
            }
        }
        m
    }

    pub fn bracket(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.check_len(x.dim())?;
        self.check_len(y.dim())?;
        Ok(AlgebraElement(self.ad_of_coords(x.coords()) * y.coords()))
    }

    /// Trace form `Tr(XY)` of two elements.
    pub fn trace_form(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<f64> {
        self.check_len(x.dim())?;
        self.check_len(y.dim())?;
        Ok(x.coords().dot(&(&self.gram * y.coords())))
    }

    /// `X -> (Y -> Tr(XY))`.
    pub fn identify_dual(&self, x: &AlgebraElement) -> Result<Covector> {
        self.check_len(x.dim())?;
        self.gram_inverse()?;
        Ok(Covector(x.coords().clone()))
    }

    /// Inverse of [`identify_dual`](Self::identify_dual).
    pub fn element_of(&self, xi: &Covector) -> Result<AlgebraElement> {
        self.check_len(xi.dim())?;
        self.gram_inverse()?;
        Ok(AlgebraElement(xi.coords().clone()))
    }

    /// Coordinates of a covector in the dual basis: `<xi, e_i>`.
    pub fn dual_basis_coords(&self, xi: &Covector) -> Result<DVector<f64>> {
        self.check_len(xi.dim())?;
        Ok(&self.gram * xi.coords())
    }

    /// Covector with the given dual-basis coordinates.
    pub fn covector_from_dual_basis(&self, values: &DVector<f64>) -> Result<Covector> {
        self.check_len(values.len())?;
        Ok(Covector(self.gram_inverse()? * values))
    }

    /// Pairing `<xi, Y>`.
    pub fn pair(&self, xi: &Covector, y: &AlgebraElement) -> Result<f64> {
        self.check_len(xi.dim())?;
        self.check_len(y.dim())?;
        Ok(xi.coords().dot(&(&self.gram * y.coords())))
    }

    /// `ad*_X xi`, defined by `<ad*_X xi, Y> = -<xi, [X, Y]>`.
    ///
    /// In the trace-form chart this is the adjoint action on the transported
    /// element.
    pub fn coadjoint_ad(&self, x: &AlgebraElement, xi: &Covector) -> Result<Covector> {
        self.check_len(x.dim())?;
        self.check_len(xi.dim())?;
        Ok(Covector(self.ad_of_coords(x.coords()) * xi.coords()))
    }

    /// Matrix on covector coordinates of `exp(s_k ad*_{X_k}) ... exp(s_1 ad*_{X_1})`,
    /// i.e. the factors are applied left to right in list order.
    pub fn transport_matrix(&self, generators: &[(AlgebraElement, f64)]) -> Result<DMatrix<f64>> {
        let d = self.dim();
        let mut t = DMatrix::identity(d, d);
        for (x, s) in generators {
            self.check_len(x.dim())?;
            if !s.is_finite() {
                return Err(Error::Numerical(format!("non-finite step {s}")));
            }
            let step = (self.ad_of_coords(x.coords()) * *s).exp();
            t = step * t;
        }
        Ok(t)
    }

    pub fn group_orbit_step(
        &self,
        generators: &[(AlgebraElement, f64)],
        xi: &Covector,
    ) -> Result<Covector> {
        self.check_len(xi.dim())?;
        Ok(Covector(self.transport_matrix(generators)? * xi.coords()))
    }

    /// Matrix of the Cartan involution `X -> -X^T` on coordinates, if the
    /// algebra is stable under it.
    pub fn theta_matrix(&self) -> Result<DMatrix<f64>> {
        let d = self.dim();
        let mut th = DMatrix::zeros(d, d);
        for (i, b) in self.basis.iter().enumerate() {
            let c = self.coords_of_matrix(&(-b.transpose())).map_err(|_| {
                Error::UnsupportedAlgebra(format!("{} is not stable under X -> -X^T", self.name))
            })?;
            th.set_column(i, &c);
        }
        Ok(th)
    }

    /// Maximum residuals of antisymmetry, Jacobi and trace-form invariance.
    pub fn verify(&self) -> InvariantReport {
        let d = self.dim();
        let mut antisym = 0.0_f64;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let r = self.structure_constant(i, j, k) + self.structure_constant(j, i, k);
                    antisym = antisym.max(r.abs());
                }
            }
        }
        // Jacobi on basis triples is equivalent to ad([e_i,e_j]) = [ad e_i, ad e_j].
        let mut jacobi = 0.0_f64;
        for i in 0..d {
            for j in 0..d {
                let bracket = self.ad_basis[i].column(j).into_owned();
                let lhs = self.ad_of_coords(&bracket);
                let rhs = &self.ad_basis[i] * &self.ad_basis[j] - &self.ad_basis[j] * &self.ad_basis[i];
                jacobi = jacobi.max((lhs - rhs).amax());
            }
        }
        // Tr([X,Y]Z) + Tr(Y[X,Z]) = 0 on the basis is ad_i^T G + G ad_i = 0.
        let mut inv = 0.0_f64;
        for a in &self.ad_basis {
            let r = a.transpose() * &self.gram + &self.gram * a;
            inv = inv.max(r.amax());
        }
        let gram_asym = (&self.gram - self.gram.transpose()).amax();
        InvariantReport {
            antisymmetry: antisym,
            jacobi,
            invariance: inv,
            gram_asymmetry: if d == 0 { 0.0 } else { gram_asym },
            gram_det: if d == 0 { 1.0 } else { self.gram.determinant() },
        }
    }

    /// Reference elliptic element used to orient the two elliptic and
    /// nilpotent nappes of a three-dimensional simple algebra of real rank one.
    pub fn orientation_reference(&self) -> Option<AlgebraElement> {
        match self.kind {
            AlgebraKind::Sl2R => Some(AlgebraElement::basis_vector(3, 2)),
            AlgebraKind::So { p: 2, q: 1 } => Some(AlgebraElement::basis_vector(3, 0)),
            AlgebraKind::So { p: 1, q: 2 } => Some(AlgebraElement::basis_vector(3, 2)),
            _ => None,
        }
    }
}

/// An element of the algebra in basis coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement(pub(crate) DVector<f64>);

/// An element of `i g*` in the trace-form chart.
#[derive(Debug, Clone, PartialEq)]
pub struct Covector(pub(crate) DVector<f64>);

macro_rules! vector_newtype {
    ($t:ident) => {
        impl $t {
            pub fn new(coords: Vec<f64>) -> Self {
                $t(DVector::from_vec(coords))
            }

            pub fn from_vector(coords: DVector<f64>) -> Self {
                $t(coords)
            }

            pub fn zeros(dim: usize) -> Self {
                $t(DVector::zeros(dim))
            }

            pub fn basis_vector(dim: usize, i: usize) -> Self {
                let mut v = DVector::zeros(dim);
                v[i] = 1.0;
                $t(v)
            }

            pub fn coords(&self) -> &DVector<f64> {
                &self.0
            }

            pub fn to_vec(&self) -> Vec<f64> {
                self.0.iter().cloned().collect()
            }

            pub fn dim(&self) -> usize {
                self.0.len()
            }

            pub fn norm(&self) -> f64 {
                self.0.norm()
            }

            pub fn scale(&self, t: f64) -> Self {
                $t(&self.0 * t)
            }

            pub fn add(&self, other: &Self) -> Self {
                $t(&self.0 + &other.0)
            }

            pub fn sub(&self, other: &Self) -> Self {
                $t(&self.0 - &other.0)
            }
        }
    };
}

vector_newtype!(AlgebraElement);
vector_newtype!(Covector);

// ---- concrete algebras ----------------------------------------------------

/// `sl(2,R)` with the chart `(x,y,z) -> [[x, y-z], [y+z, -x]]`.
pub fn sl2r() -> MatrixLieAlgebra {
    let ex = DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]);
    let ey = DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]);
    let ez = DMatrix::from_row_slice(2, 2, &[0.0, -1.0, 1.0, 0.0]);
    MatrixLieAlgebra::from_matrices(
        "sl2R",
        AlgebraKind::Sl2R,
        2,
        vec![ex, ey, ez],
        vec!["x".into(), "y".into(), "z".into()],
        vec![FormBlock {
            offset: 0,
            size: 2,
            weight: 1.0,
        }],
    )
    .expect("sl2R basis is valid")
}

/// Signature of `diag(1_p, -1_q)`.
pub(crate) fn signature_diag(p: usize, q: usize) -> Vec<f64> {
    (0..p + q).map(|i| if i < p { 1.0 } else { -1.0 }).collect()
}

/// Generator of `so(p,q)` supported on the index pair `i < j`: a rotation
/// when both indices have the same sign, a boost otherwise.
pub(crate) fn so_generator(n: usize, sig: &[f64], i: usize, j: usize) -> DMatrix<f64> {
    unit(n, i, j) - unit(n, j, i) * (sig[i] * sig[j])
}

/// `so(p,q)`: real matrices skew with respect to `diag(1_p, -1_q)`.
pub fn so_pq(p: usize, q: usize) -> Result<MatrixLieAlgebra> {
    let n = p + q;
    if n == 0 {
        return Err(Error::UnsupportedAlgebra("so(0,0)".into()));
    }
    if n > MAX_SO_SIZE {
        return Err(Error::DimensionTooLarge {
            what: "so(p,q) matrix size p+q",
            dim: n,
            max: MAX_SO_SIZE,
        });
    }
    let sig = signature_diag(p, q);
    let mut basis = Vec::new();
    let mut labels = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            basis.push(so_generator(n, &sig, i, j));
            labels.push(format!("M{i}{j}"));
        }
    }
    MatrixLieAlgebra::from_matrices(
        format!("so({p},{q})"),
        AlgebraKind::So { p, q },
        n,
        basis,
        labels,
        vec![FormBlock {
            offset: 0,
            size: n,
            weight: 1.0,
        }],
    )
}

/// Realification `A + iB -> [[A, -B], [B, A]]`.
pub(crate) fn realify(re: &DMatrix<f64>, im: &DMatrix<f64>) -> DMatrix<f64> {
    let n = re.nrows();
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    m.view_mut((0, 0), (n, n)).copy_from(re);
    m.view_mut((n, n), (n, n)).copy_from(re);
    m.view_mut((0, n), (n, n)).copy_from(&(-im));
    m.view_mut((n, 0), (n, n)).copy_from(im);
    m
}

/// `su(2,1)` realised as real 6x6 matrices. The first three basis elements
/// span the real subalgebra `so(2,1)` in the same order as [`so_pq`]`(2,1)`.
pub fn su21() -> MatrixLieAlgebra {
    let n = 3;
    let sig = signature_diag(2, 1);
    let zero = DMatrix::zeros(n, n);
    let mut basis = Vec::new();
    let mut labels = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            basis.push(realify(&so_generator(n, &sig, i, j), &zero));
            labels.push(format!("M{i}{j}"));
        }
    }
    // i * S with S Hermitian with respect to the form.
    for i in 0..n {
        for j in (i + 1)..n {
            let s = unit(n, i, j) + unit(n, j, i) * (sig[i] * sig[j]);
            basis.push(realify(&zero, &s));
            labels.push(format!("iS{i}{j}"));
        }
    }
    let d1 = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, -1.0, 0.0]));
    let d2 = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 1.0, -2.0]));
    basis.push(realify(&zero, &d1));
    labels.push("iD1".into());
    basis.push(realify(&zero, &d2));
    labels.push("iD2".into());
    MatrixLieAlgebra::from_matrices(
        "su(2,1)",
        AlgebraKind::Su21,
        2 * n,
        basis,
        labels,
        vec![FormBlock {
            offset: 0,
            size: 2 * n,
            weight: 0.5,
        }],
    )
    .expect("su(2,1) basis is valid")
}

/// Diagonal real `n x n` matrices.
pub fn abelian(n: usize) -> Result<MatrixLieAlgebra> {
    if n == 0 || n > MAX_SO_SIZE {
        return Err(Error::UnsupportedAlgebra(format!("abelian({n})")));
    }
    let basis = (0..n).map(|i| unit(n, i, i)).collect();
    let labels = (0..n).map(|i| format!("h{i}")).collect();
    MatrixLieAlgebra::from_matrices(
        format!("abelian({n})"),
        AlgebraKind::Abelian(n),
        n,
        basis,
        labels,
        vec![FormBlock {
            offset: 0,
            size: n,
            weight: 1.0,
        }],
    )
}

/// Block-diagonal direct product.
pub fn product(factors: &[MatrixLieAlgebra]) -> Result<MatrixLieAlgebra> {
    if factors.is_empty() {
        return Err(Error::UnsupportedAlgebra("empty product".into()));
    }
    let n: usize = factors.iter().map(|f| f.matrix_size()).sum();
    if n > 2 * MAX_SO_SIZE {
        return Err(Error::DimensionTooLarge {
            what: "product matrix size",
            dim: n,
            max: 2 * MAX_SO_SIZE,
        });
    }
    let mut basis = Vec::new();
    let mut labels = Vec::new();
    let mut blocks = Vec::new();
    let mut offset = 0;
    for (fi, f) in factors.iter().enumerate() {
        let s = f.matrix_size();
        for (b, l) in f.basis().iter().zip(f.labels()) {
            let mut m = DMatrix::zeros(n, n);
            m.view_mut((offset, offset), (s, s)).copy_from(b);
            basis.push(m);
            labels.push(format!("{fi}.{l}"));
        }
        for blk in f.blocks() {
            blocks.push(FormBlock {
                offset: offset + blk.offset,
                size: blk.size,
                weight: blk.weight,
            });
        }
        offset += s;
    }
    let kind = AlgebraKind::Product(factors.iter().map(|f| f.kind().clone()).collect());
    let name = kind.to_string();
    MatrixLieAlgebra::from_matrices(name, kind, n, basis, labels, blocks)
}

/// Subalgebra spanned by matrices of an ambient algebra, carrying the
/// restricted trace form.
pub fn subalgebra_from_matrices(
    ambient: &MatrixLieAlgebra,
    name: impl Into<String>,
    matrices: Vec<DMatrix<f64>>,
) -> Result<MatrixLieAlgebra> {
    let labels = (0..matrices.len()).map(|i| format!("f{i}")).collect();
    MatrixLieAlgebra::from_matrices(
        name,
        AlgebraKind::Custom,
        ambient.matrix_size(),
        matrices,
        labels,
        ambient.blocks().to_vec(),
    )
}
