use std::fmt;

use crate::exactalg::{divides, is_squarefree, squarefree_part, strip_common, Poly, QMatrix};

use super::maprep::{verify_birational_pair, MapRep};
use super::MapError;

/// A verified pair of mutually inverse rational maps of `P^n`.
///
/// Both compositions are checked at construction:
/// `inverse(forward(x)) = cofactor_fwd * x` and
/// `forward(inverse(y)) = cofactor_bwd * y`. The exceptional lists hold
/// hypersurfaces contracted by `forward` (resp. `inverse`); every entry divides
/// the corresponding cofactor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BirationalMap {
    forward: MapRep,
    inverse: MapRep,
    cofactor_fwd: Poly,
    cofactor_bwd: Poly,
    exceptional_fwd: Vec<Poly>,
    exceptional_bwd: Vec<Poly>,
    /// Atomic factors in application order; empty for an atomic map.
    generators: Vec<BirationalMap>,
}

/// Splits the support of `cofactor` into the known `candidates` that divide
/// it, plus one squarefree polynomial for whatever remains.
fn exceptional_divisors(cofactor: &Poly, candidates: &[Poly]) -> Vec<Poly> {
    let mut found: Vec<Poly> = Vec::new();
    let mut rest = cofactor.clone();
    for c in candidates {
        if c.is_constant() || found.iter().any(|f| f.proj_eq(c)) || !divides(c, cofactor) {
            continue;
        }
        while let Ok(qt) = rest.exact_div(c) {
            rest = qt;
        }
        found.push(c.monic());
    }
    if !rest.is_constant() {
        for f in &found {
            rest = strip_common(&rest, f).0;
        }
        if !rest.is_constant() {
            found.push(squarefree_part(&rest));
        }
    }
    found
}

impl BirationalMap {
    /// Verifies both compositions; exceptional divisors are read off the
    /// cofactors.
    pub fn new(forward: MapRep, inverse: MapRep) -> Result<Self, MapError> {
        Self::with_candidates(forward, inverse, &[], &[], vec![])
    }

    pub(crate) fn with_candidates(
        forward: MapRep,
        inverse: MapRep,
        fwd_candidates: &[Poly],
        bwd_candidates: &[Poly],
        generators: Vec<BirationalMap>,
    ) -> Result<Self, MapError> {
        let cofactor_fwd = verify_birational_pair(&forward, &inverse)?;
        let cofactor_bwd = verify_birational_pair(&inverse, &forward)?;
        Ok(BirationalMap {
            exceptional_fwd: exceptional_divisors(&cofactor_fwd, fwd_candidates),
            exceptional_bwd: exceptional_divisors(&cofactor_bwd, bwd_candidates),
            forward,
            inverse,
            cofactor_fwd,
            cofactor_bwd,
            generators,
        })
    }

    pub fn identity(dim: usize) -> Self {
        Self::new(MapRep::identity(dim), MapRep::identity(dim)).expect("identity verifies")
    }

    /// `linear_map`: `x -> M x`, inverted by `M^{-1}` (the adjugate up to the
    /// determinant, which is projectively the same map).
    pub fn linear(m: &QMatrix) -> Result<Self, MapError> {
        let inv = m.inverse()?;
        Self::new(
            MapRep::normalize(m.linear_forms())?,
            MapRep::normalize(inv.linear_forms())?,
        )
    }

    /// `standard_quadratic`: `y_i = prod_{j != i} x_j`, self-inverse with
    /// cofactor `(x0 ... xn)^(n-1)`.
    pub fn standard_quadratic(dim: usize) -> Result<Self, MapError> {
        if dim < 2 {
            return Err(MapError::TooSmallDimension(dim));
        }
        let nvars = dim + 1;
        let comps = (0..nvars)
            .map(|i| {
                (0..nvars)
                    .filter(|&j| j != i)
                    .fold(Poly::one(nvars), |acc, j| &acc * &Poly::var(nvars, j))
            })
            .collect();
        let sigma = MapRep::normalize(comps)?;
        let hyperplanes: Vec<Poly> = (0..nvars).map(|i| Poly::var(nvars, i)).collect();
        Self::with_candidates(sigma.clone(), sigma, &hyperplanes, &hyperplanes, vec![])
    }

    pub fn forward(&self) -> &MapRep {
        &self.forward
    }

    pub fn inverse(&self) -> &MapRep {
        &self.inverse
    }

    pub fn cofactor_fwd(&self) -> &Poly {
        &self.cofactor_fwd
    }

    pub fn cofactor_bwd(&self) -> &Poly {
        &self.cofactor_bwd
    }

    pub fn exceptional_fwd(&self) -> &[Poly] {
        &self.exceptional_fwd
    }

    pub fn exceptional_bwd(&self) -> &[Poly] {
        &self.exceptional_bwd
    }

    pub fn dim(&self) -> usize {
        self.forward.dim()
    }

    pub fn degree(&self) -> u32 {
        self.forward.degree()
    }

    /// The atomic factors, in application order (`[self]` for an atomic map).
    pub fn factors(&self) -> Vec<&BirationalMap> {
        if self.generators.is_empty() {
            vec![self]
        } else {
            self.generators.iter().collect()
        }
    }

    pub fn is_atomic(&self) -> bool {
        self.generators.is_empty()
    }

    /// The same pair with the roles of forward and inverse swapped.
    pub fn inverted(&self) -> Self {
        BirationalMap {
            forward: self.inverse.clone(),
            inverse: self.forward.clone(),
            cofactor_fwd: self.cofactor_bwd.clone(),
            cofactor_bwd: self.cofactor_fwd.clone(),
            exceptional_fwd: self.exceptional_bwd.clone(),
            exceptional_bwd: self.exceptional_fwd.clone(),
            generators: self.generators.iter().rev().map(Self::inverted).collect(),
        }
    }
}

impl fmt::Display for BirationalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.forward, self.inverse)
    }
}

/// `compose(phi, psi)`: apply `phi`, then `psi`. Tuples are re-primitivized
/// and both cofactors recomputed by verification.
pub fn compose(phi: &BirationalMap, psi: &BirationalMap) -> Result<BirationalMap, MapError> {
    if phi.dim() != psi.dim() {
        return Err(MapError::DimensionMismatch {
            left: phi.dim(),
            right: psi.dim(),
        });
    }
    let forward = MapRep::normalize(psi.forward.compose_raw(&phi.forward)?)?;
    let inverse = MapRep::normalize(phi.inverse.compose_raw(&psi.inverse)?)?;

    // divisors contracted by psi∘phi: those of phi, and preimages under phi
    // of those contracted by psi
    let phi_inv = phi.inverted();
    let mut fwd_candidates = phi.exceptional_fwd.clone();
    fwd_candidates.extend(
        psi.exceptional_fwd
            .iter()
            .filter_map(|e| pushforward(&phi_inv, e).ok()),
    );
    let mut bwd_candidates = psi.exceptional_bwd.clone();
    bwd_candidates.extend(
        phi.exceptional_bwd
            .iter()
            .filter_map(|e| pushforward(psi, e).ok()),
    );

    let generators = phi
        .factors()
        .into_iter()
        .chain(psi.factors())
        .cloned()
        .collect();
    BirationalMap::with_candidates(
        forward,
        inverse,
        &fwd_candidates,
        &bwd_candidates,
        generators,
    )
    .map_err(|e| MapError::CompositionFailed(Box::new(e)))
}

/// `pushforward`: the equation of the closure of `phi(V(s))`.
///
/// The total transform `s(phi.inverse)` is stripped of every factor it shares
/// with `cofactor_bwd`, which contains all hypersurfaces contracted by the
/// inverse. A hypersurface whose image lies in that locus is over-stripped and
/// reported as contracted.
pub fn pushforward(phi: &BirationalMap, s: &Poly) -> Result<Poly, MapError> {
    if s.nvars() != phi.forward.nvars() {
        return Err(MapError::DimensionMismatch {
            left: phi.dim(),
            right: s.nvars().saturating_sub(1),
        });
    }
    if s.is_zero() {
        return Err(MapError::ZeroHypersurface);
    }
    if !s.is_homogeneous() {
        return Err(MapError::InhomogeneousHypersurface);
    }
    if !is_squarefree(s) {
        return Err(MapError::NotSquarefree);
    }
    let mut t = s.substitute(phi.inverse.components())?;
    for e in &phi.exceptional_bwd {
        while let Ok(qt) = t.exact_div(e) {
            t = qt;
        }
    }
    let (t, _) = strip_common(&t, &phi.cofactor_bwd);
    if t.is_constant() {
        return Err(MapError::HypersurfaceContracted);
    }
    Ok(t.monic())
}
