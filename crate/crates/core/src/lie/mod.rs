//! Matrix Lie algebras, coadjoint action, element classification and the
//! Jacobian of the exponential map.

mod algebra;
mod classify;
mod jacobian;
mod parse;
pub mod structure;

pub use algebra::{
    abelian, product, sl2r, so_pq, su21, subalgebra_from_matrices, AlgebraElement, AlgebraKind,
    Covector, InvariantReport, MatrixLieAlgebra, MAX_SO_SIZE,
};
pub(crate) use algebra::{realify, signature_diag, so_generator};
pub use classify::{
    classify_element, region, sl2_region, ClassTag, ElementClass, Region, EIGEN_TOL,
    NILPOTENT_TOL, ZERO_TOL,
};
pub use jacobian::{exp_jacobian, ExpJacobian};
pub use parse::parse_algebra;
pub(crate) use parse::{call_args, parse_usize, split_top_level};

/// Parses an algebra name; alias of [`parse_algebra`].
pub fn build_algebra(spec: &str) -> crate::error::Result<MatrixLieAlgebra> {
    parse_algebra(spec)
}
