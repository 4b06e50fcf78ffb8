//! Exact sparse multivariate polynomial arithmetic over the rationals and
//! prime fields, plus the handful of univariate and linear-algebra routines
//! the geometric modules are built from.

mod field;
mod gcd;
mod linalg;
mod monomial;
mod point;
mod poly;
mod resultant;
mod univariate;

use thiserror::Error;

pub use field::{modp, q, qf, Field, Fp, Q};
pub use gcd::{
    content_in, divides, gcd, is_squarefree, primitive_part_in, squarefree_part, strip_common,
    tuple_content,
};
pub use linalg::{solve_linear, QMatrix};
pub use monomial::Monomial;
pub use point::{multiplicity_at, recenter, Point};
pub use poly::Poly;
pub use resultant::resultant;
pub use univariate::{simplest_between, RootSplit, UniPoly};

/// `squarefree_part_check`: true iff `s` has no repeated factor.
pub fn squarefree_part_check(s: &Poly) -> bool {
    is_squarefree(s)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgError {
    #[error("ring dimension mismatch: {left} vs {right} variables")]
    RingMismatch { left: usize, right: usize },
    #[error("substitution tuple has {got} entries, expected {expected}")]
    TupleLength { expected: usize, got: usize },
    #[error("not divisible")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("all entries of the tuple are zero")]
    ZeroTuple,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("cannot homogenize a degree {degree} polynomial to degree {target}")]
    HomogenizeDegree { degree: u32, target: u32 },
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
    #[error("point has {got} coordinates, the ring has {expected} variables")]
    PointDimension { expected: usize, got: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("matrix is not square")]
    NotSquare,
}
