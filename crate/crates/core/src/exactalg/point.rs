use std::fmt;

use num_traits::{One, Zero};

use super::field::Q;
use super::linalg::QMatrix;
use super::poly::Poly;
use super::AlgError;

/// Point of projective space; coordinates are kept with the first nonzero
/// coordinate equal to 1, so equality is projective equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Point {
    coords: Vec<Q>,
}

impl Point {
    pub fn new(coords: Vec<Q>) -> Result<Self, AlgError> {
        let lead = coords
            .iter()
            .find(|c| !c.is_zero())
            .cloned()
            .ok_or(AlgError::ZeroPoint)?;
        Ok(Point {
            coords: coords.into_iter().map(|c| c / lead.clone()).collect(),
        })
    }

    /// The coordinate point `e_i` of `P^{dim-1}` (`dim` coordinates).
    pub fn coordinate(dim: usize, i: usize) -> Self {
        let mut coords = vec![Q::zero(); dim];
        coords[i] = Q::one();
        Point { coords }
    }

    /// `[0 : ... : 0 : 1]`.
    pub fn last_coordinate(dim: usize) -> Self {
        Point::coordinate(dim, dim - 1)
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Invertible `M` with `M e_last = self`: unit vectors `e_i` for every
    /// `i` except the first nonzero coordinate, then the point itself.
    pub fn moving_frame(&self) -> QMatrix {
        let n = self.coords.len();
        let k = self.coords.iter().position(|c| !c.is_zero()).unwrap();
        let mut cols: Vec<Vec<Q>> = (0..n)
            .filter(|&i| i != k)
            .map(|i| Point::coordinate(n, i).coords)
            .collect();
        cols.push(self.coords.clone());
        QMatrix::from_columns(&cols).expect("square by construction")
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(":")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

/// The polynomial in coordinates where `p` sits at `[0 : ... : 0 : 1]`.
pub fn recenter(s: &Poly, p: &Point) -> Result<Poly, AlgError> {
    if p.dim() != s.nvars() {
        return Err(AlgError::PointDimension {
            expected: s.nvars(),
            got: p.dim(),
        });
    }
    p.moving_frame().pull_back(s)
}

/// Multiplicity of the hypersurface `V(s)` at `p`: lowest degree of the local
/// equation after moving `p` to `[0 : ... : 0 : 1]` and setting the last
/// coordinate to 1. Zero iff `p` is not on `V(s)`.
pub fn multiplicity_at(s: &Poly, p: &Point) -> Result<u32, AlgError> {
    if s.is_zero() {
        return Err(AlgError::ZeroPolynomial);
    }
    if !s.is_homogeneous() {
        return Err(AlgError::NotHomogeneous);
    }
    let local = recenter(s, p)?.dehomogenize(s.nvars() - 1);
    Ok(local.min_degree().unwrap_or(0))
}
