//! Cones over hypersurfaces, vertex detection, the lift of a Cremona map of
//! `P^(n-1)` to one of `P^n` fixing the vertex, and equivalence witnesses
//! between cones.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactalg::{
    is_squarefree, multiplicity_at, solve_linear, squarefree_part, AlgError, Monomial, Point, Poly,
    QMatrix, Q,
};
use crate::mapalg::{
    compose, pushforward, restrict_to_last_hyperplane, verify_birational_pair, BirationalMap,
    MapError, MapRep, Residual,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConeError {
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("base equation is zero or constant")]
    DegenerateBase,
    #[error("base equation is not homogeneous")]
    InhomogeneousBase,
    #[error("base equation has a repeated factor")]
    NotSquarefree,
    #[error("point has multiplicity {multiplicity} on a hypersurface of degree {degree}")]
    NotAVertex { multiplicity: u32, degree: u32 },
    #[error(
        "lift cofactor must be nonzero and homogeneous of degree {expected} in {nvars} variables"
    )]
    InvalidCofactor { expected: u32, nvars: usize },
    #[error("pivot x{pivot} out of range for {nvars} variables")]
    PivotOutOfRange { pivot: usize, nvars: usize },
    #[error(
        "no candidate inverse of the lift verifies ({} residuals); \
         supply the map as a composition of generators",
        residuals.len()
    )]
    InverseCandidateFailure { residuals: Vec<Residual> },
    #[error("the map does not send the first base to the second: pushforward is {got}, expected {expected}")]
    WitnessMismatch { expected: Poly, got: String },
    #[error("lift contract violated: {0}")]
    ContractViolation(&'static str),
}

/// A cone `S ⊂ P^n` with vertex `p` over a hypersurface `C ⊂ P^(n-1)`.
///
/// `frame` sends canonical coordinates (vertex at `[0:...:0:1]`) to the
/// ambient ones, so `equation(frame x) = base(x_0, ..., x_(n-1))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeWitness {
    ambient_dim: usize,
    base: Poly,
    equation: Poly,
    vertex: Point,
    frame: QMatrix,
}

fn check_hypersurface(s: &Poly) -> Result<u32, ConeError> {
    if s.is_constant() {
        return Err(ConeError::DegenerateBase);
    }
    let d = s.homogeneous_degree().ok_or(ConeError::InhomogeneousBase)?;
    if !is_squarefree(s) {
        return Err(ConeError::NotSquarefree);
    }
    Ok(d)
}

impl ConeWitness {
    /// `cone_over`: `C` read in one more variable, vertex `[0:...:0:1]`.
    pub fn cone_over(base: &Poly) -> Result<Self, ConeError> {
        let degree = check_hypersurface(base)?;
        let n = base.nvars();
        let equation = base.extend_vars(1);
        let vertex = Point::last_coordinate(n + 1);
        let multiplicity = multiplicity_at(&equation, &vertex)?;
        if multiplicity != degree {
            return Err(ConeError::NotAVertex {
                multiplicity,
                degree,
            });
        }
        Ok(ConeWitness {
            ambient_dim: n,
            base: base.clone(),
            equation,
            vertex,
            frame: QMatrix::identity(n + 1),
        })
    }

    /// A cone given by its equation and a point of full multiplicity on it.
    pub fn from_equation(equation: &Poly, vertex: &Point) -> Result<Self, ConeError> {
        let degree = check_hypersurface(equation)?;
        let multiplicity = multiplicity_at(equation, vertex)?;
        if multiplicity != degree {
            return Err(ConeError::NotAVertex {
                multiplicity,
                degree,
            });
        }
        let n = equation.nvars() - 1;
        let frame = vertex.moving_frame();
        let canonical = frame.pull_back(equation)?;
        debug_assert!(!canonical.involves(n));
        Ok(ConeWitness {
            ambient_dim: n,
            base: canonical.specialize(n, &Q::zero()),
            equation: equation.clone(),
            vertex: vertex.clone(),
            frame,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn base(&self) -> &Poly {
        &self.base
    }

    pub fn equation(&self) -> &Poly {
        &self.equation
    }

    /// The equation after moving the vertex to `[0:...:0:1]`.
    pub fn canonical_equation(&self) -> Poly {
        self.base.extend_vars(1)
    }

    pub fn vertex(&self) -> &Point {
        &self.vertex
    }

    pub fn frame(&self) -> &QMatrix {
        &self.frame
    }

    pub fn degree(&self) -> u32 {
        self.base.degree().unwrap_or(0)
    }
}

impl fmt::Display for ConeWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "cone {} in P^{} over {} with vertex {}",
            self.equation, self.ambient_dim, self.base, self.vertex
        )
    }
}

/// `detect_vertex`: whether `p` has multiplicity `deg s` on `s`.
pub fn detect_vertex(s: &Poly, p: &Point) -> bool {
    match (s.homogeneous_degree(), multiplicity_at(s, p)) {
        (Some(d), Ok(m)) => d == m,
        _ => false,
    }
}

/// The cofactor multiplying `x_n` in the last component of a lift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftChoice {
    pub pivot_index: usize,
    pub cofactor: Poly,
}

impl LiftChoice {
    /// `x_pivot^(h-1)` for a map of degree `h` in `nvars` variables.
    pub fn pivot(pivot_index: usize, nvars: usize, h: u32) -> Self {
        LiftChoice {
            pivot_index,
            cofactor: Poly::var(nvars, pivot_index).pow(h.saturating_sub(1)),
        }
    }

    pub fn default_for(psi: &BirationalMap) -> Self {
        Self::pivot(0, psi.forward().nvars(), psi.degree())
    }

    fn validate(&self, psi: &BirationalMap) -> Result<(), ConeError> {
        let nvars = psi.forward().nvars();
        if self.pivot_index >= nvars {
            return Err(ConeError::PivotOutOfRange {
                pivot: self.pivot_index,
                nvars,
            });
        }
        let expected = psi.degree() - 1;
        let ok = self.cofactor.nvars() == nvars
            && !self.cofactor.is_zero()
            && self.cofactor.homogeneous_degree() == Some(expected);
        if ok {
            Ok(())
        } else {
            Err(ConeError::InvalidCofactor { expected, nvars })
        }
    }
}

/// How the inverse of a lift was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftRoute {
    /// The lift of `psi.inverse` with the same pivot.
    Symmetric,
    /// An inverse cofactor solved for by linear algebra.
    SolvedCofactor,
    /// The composition of the lifts of the atomic factors of `psi`.
    GeneratorChain,
}

impl fmt::Display for LiftRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LiftRoute::Symmetric => "symmetric",
            LiftRoute::SolvedCofactor => "solved cofactor",
            LiftRoute::GeneratorChain => "generator chain",
        })
    }
}

fn lift_tuple(map: &MapRep, cofactor: &Poly) -> Result<MapRep, MapError> {
    let n = map.nvars();
    let mut comps: Vec<Poly> = map.components().iter().map(|c| c.extend_vars(1)).collect();
    comps.push(&Poly::var(n + 1, n) * &cofactor.extend_vars(1));
    MapRep::normalize(comps)
}

/// All monomials of total degree `d` in `nvars` variables.
fn monomials(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(prefix: &mut Vec<u32>, left: usize, d: u32, out: &mut Vec<Monomial>) {
        if left == 1 {
            prefix.push(d);
            out.push(Monomial::new(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(prefix, left - 1, d - e, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if nvars > 0 {
        rec(&mut Vec::new(), nvars, d, &mut out);
    }
    out
}

/// Finds `c'` of degree `h' - 1` with `c(x) * c'(f(x)) = e(x)`, where `e` is
/// the forward cofactor of `psi`; then `(g, x_n c')` inverts `(f, x_n c)`.
fn solve_inverse_cofactor(psi: &BirationalMap, cofactor: &Poly) -> Option<Poly> {
    let nvars = psi.forward().nvars();
    let target = psi.cofactor_fwd();
    let unknowns = monomials(nvars, psi.inverse().degree() - 1);
    let products: Vec<Poly> = unknowns
        .iter()
        .map(|m| {
            let mono = Poly::term(m.clone(), Q::one());
            let image = mono.substitute(psi.forward().components()).ok()?;
            Some(cofactor * &image)
        })
        .collect::<Option<_>>()?;
    let mut rows: Vec<Monomial> = target.terms().map(|(m, _)| m.clone()).collect();
    for p in &products {
        rows.extend(p.terms().map(|(m, _)| m.clone()));
    }
    rows.sort();
    rows.dedup();
    let a: Vec<Vec<Q>> = rows
        .iter()
        .map(|m| products.iter().map(|p| p.coeff(m)).collect())
        .collect();
    let b: Vec<Q> = rows.iter().map(|m| target.coeff(m)).collect();
    let u = solve_linear(&a, &b)?;
    let c = Poly::from_terms(
        nvars,
        unknowns
            .iter()
            .zip(u)
            .map(|(m, v)| (m.exponents().to_vec(), v)),
    );
    (!c.is_zero()).then_some(c)
}

fn lift_candidates(psi: &BirationalMap) -> (Vec<Poly>, Vec<Poly>) {
    let n = psi.forward().nvars();
    let vars = (0..n).map(|i| Poly::var(n + 1, i));
    let fwd = psi
        .exceptional_fwd()
        .iter()
        .map(|e| e.extend_vars(1))
        .chain(vars.clone())
        .collect();
    let bwd = psi
        .exceptional_bwd()
        .iter()
        .map(|e| e.extend_vars(1))
        .chain(vars)
        .collect();
    (fwd, bwd)
}

/// Tries the symmetric and the solved inverse for one cofactor.
fn lift_direct(
    psi: &BirationalMap,
    choice: &LiftChoice,
    residuals: &mut Vec<Residual>,
) -> Result<Option<(BirationalMap, LiftRoute)>, ConeError> {
    let nvars = psi.forward().nvars();
    let forward = lift_tuple(psi.forward(), &choice.cofactor)?;
    let (mut fwd_c, mut bwd_c) = lift_candidates(psi);
    fwd_c.push(squarefree_part(&choice.cofactor).extend_vars(1));

    let symmetric = LiftChoice::pivot(choice.pivot_index, nvars, psi.inverse().degree());
    let mut inverse_cofactors = vec![(symmetric.cofactor, LiftRoute::Symmetric)];
    if let Some(c) = solve_inverse_cofactor(psi, &choice.cofactor) {
        inverse_cofactors.push((c, LiftRoute::SolvedCofactor));
    }
    for (c, route) in inverse_cofactors {
        let inverse = lift_tuple(psi.inverse(), &c)?;
        bwd_c.push(squarefree_part(&c).extend_vars(1));
        match BirationalMap::with_candidates(forward.clone(), inverse, &fwd_c, &bwd_c, vec![]) {
            Ok(m) => return Ok(Some((m, route))),
            Err(MapError::NotBirational { residual }) => residuals.push(residual),
            Err(e) => return Err(e.into()),
        }
        bwd_c.pop();
    }
    Ok(None)
}

fn lift_atom(psi: &BirationalMap, preferred: usize) -> Result<Option<BirationalMap>, ConeError> {
    let nvars = psi.forward().nvars();
    let order = std::iter::once(preferred).chain((0..nvars).filter(|&k| k != preferred));
    let mut scratch = Vec::new();
    for k in order {
        let choice = LiftChoice::pivot(k, nvars, psi.degree());
        if let Some((m, _)) = lift_direct(psi, &choice, &mut scratch)? {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

fn check_lift(psi: &BirationalMap, lift: &BirationalMap) -> Result<(), ConeError> {
    let restricted = restrict_to_last_hyperplane(lift.forward())?;
    if !restricted.proj_eq(psi.forward()) {
        return Err(ConeError::ContractViolation(
            "restriction to x_n = 0 differs from the base map",
        ));
    }
    let n = psi.forward().nvars();
    let vertex = Point::last_coordinate(n + 1);
    let h = lift.degree();
    let comps = lift.forward().components();
    for (i, c) in comps.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let expected = if i == n { h - 1 } else { h };
        if multiplicity_at(c, &vertex)? != expected {
            return Err(ConeError::ContractViolation(
                "component multiplicities at the vertex",
            ));
        }
    }
    Ok(())
}

/// `lift_cone_map` together with the route that produced the inverse.
pub fn lift_cone_map_traced(
    psi: &BirationalMap,
    choice: &LiftChoice,
) -> Result<(BirationalMap, LiftRoute), ConeError> {
    choice.validate(psi)?;
    let mut residuals = Vec::new();
    let (lift, route) = match lift_direct(psi, choice, &mut residuals)? {
        Some(found) => found,
        None if !psi.is_atomic() => {
            let mut acc: Option<BirationalMap> = None;
            for atom in psi.factors() {
                let Some(l) = lift_atom(atom, choice.pivot_index)? else {
                    return Err(ConeError::InverseCandidateFailure { residuals });
                };
                acc = Some(match acc {
                    None => l,
                    Some(prev) => compose(&prev, &l)?,
                });
            }
            (
                acc.expect("non-atomic map has factors"),
                LiftRoute::GeneratorChain,
            )
        }
        None => return Err(ConeError::InverseCandidateFailure { residuals }),
    };
    check_lift(psi, &lift)?;
    Ok((lift, route))
}

/// `lift_cone_map`: the map `(f_0, ..., f_(n-1), x_n * cofactor)` of `P^n`
/// with a verified inverse.
pub fn lift_cone_map(psi: &BirationalMap, choice: &LiftChoice) -> Result<BirationalMap, ConeError> {
    lift_cone_map_traced(psi, choice).map(|(m, _)| m)
}

/// `cone_equivalence_witness`: given `psi` with `psi_*(C1) = C2`, a map of
/// `P^n` sending the cone over `C1` to the cone over `C2`.
pub fn cone_equivalence_witness(
    c1: &Poly,
    c2: &Poly,
    psi: &BirationalMap,
) -> Result<BirationalMap, ConeError> {
    cone_equivalence_witness_with(c1, c2, psi, &LiftChoice::default_for(psi))
}

pub fn cone_equivalence_witness_with(
    c1: &Poly,
    c2: &Poly,
    psi: &BirationalMap,
    choice: &LiftChoice,
) -> Result<BirationalMap, ConeError> {
    let cone1 = ConeWitness::cone_over(c1)?;
    let cone2 = ConeWitness::cone_over(c2)?;
    let image = pushforward(psi, c1);
    if !matches!(&image, Ok(p) if p.proj_eq(c2)) {
        return Err(ConeError::WitnessMismatch {
            expected: c2.clone(),
            got: match image {
                Ok(p) => p.to_string(),
                Err(e) => e.to_string(),
            },
        });
    }
    let lift = lift_cone_map(psi, choice)?;
    let pushed = pushforward(&lift, cone1.equation())?;
    if !pushed.proj_eq(cone2.equation()) {
        return Err(ConeError::ContractViolation(
            "lift does not carry the first cone onto the second",
        ));
    }
    if !detect_vertex(&pushed, &Point::last_coordinate(pushed.nvars())) {
        return Err(ConeError::ContractViolation("image cone lost its vertex"));
    }
    Ok(lift)
}

/// The quadric cone over `x0x1 + x1x2 + x0x2` in `P^3`, the lift of the
/// standard quadratic map, and the plane it is sent to.
pub fn quadric_cone_to_plane() -> (ConeWitness, BirationalMap, Poly) {
    let x = |i| Poly::var(3, i);
    let conic = &(&(&x(0) * &x(1)) + &(&x(1) * &x(2))) + &(&x(0) * &x(2));
    let line = &(&x(0) + &x(1)) + &x(2);
    let sigma = BirationalMap::standard_quadratic(2).expect("n = 2");
    let lift = cone_equivalence_witness(&conic, &line, &sigma).expect("fixed example verifies");
    let cone = ConeWitness::cone_over(&conic).expect("conic is reduced");
    let plane = pushforward(&lift, cone.equation()).expect("cone is not contracted");
    debug_assert!(verify_birational_pair(lift.forward(), lift.inverse()).is_ok());
    (cone, lift, plane)
}
