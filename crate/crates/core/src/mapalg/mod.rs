//! Rational self-maps of projective space as polynomial tuples, the verified
//! birational pair, generator maps and pushforward of hypersurfaces.

mod birational;
mod maprep;
mod precheck;

use thiserror::Error;

use crate::exactalg::AlgError;

pub use birational::{compose, pushforward, BirationalMap};
pub use maprep::{restrict_to_last_hyperplane, verify_birational_pair, MapRep, Residual};
pub use precheck::{numeric_precheck, MAX_REJECTIONS, MIN_PRECHECK_PRIME};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error("component {0} is not homogeneous")]
    InhomogeneousComponent(usize),
    #[error("components of unequal degree")]
    UnequalDegrees,
    #[error("all components are zero")]
    ZeroTuple,
    #[error("a map needs at least two components, got {0}")]
    TooFewComponents(usize),
    #[error("{components} components for a ring of {variables} variables")]
    ComponentCount { components: usize, variables: usize },
    #[error("dimension mismatch: P^{left} vs P^{right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("composition is not the identity; residual {residual}")]
    NotBirational { residual: Residual },
    #[error("composition of verified maps failed to verify: {0}")]
    CompositionFailed(Box<MapError>),
    #[error("the standard quadratic map needs n >= 2, got n = {0}")]
    TooSmallDimension(usize),
    #[error("hypersurface is contracted or lies in the exceptional locus")]
    HypersurfaceContracted,
    #[error("hypersurface equation is zero")]
    ZeroHypersurface,
    #[error("hypersurface equation is not homogeneous")]
    InhomogeneousHypersurface,
    #[error("hypersurface equation has a repeated factor")]
    NotSquarefree,
    #[error("restriction to the last hyperplane is the zero tuple")]
    RestrictionDegenerate,
    #[error("modulus {0} must be a prime in [2^20, 2^62)")]
    InvalidModulus(u64),
}
