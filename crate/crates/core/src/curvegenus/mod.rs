//! Plane curves: singular points, local resolution by blowing up, geometric
//! genus, and the genus test for cones in `P^3`.

use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::conelab::ConeWitness;
use crate::exactalg::{
    content_in, is_squarefree, multiplicity_at, q, recenter, resultant, AlgError, Point, Poly,
    QMatrix, UniPoly, Q,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error("curve equation is zero or constant")]
    DegenerateCurve,
    #[error("expected a polynomial in {expected} variables, got {got}")]
    WrongRing { expected: usize, got: usize },
    #[error("equation is not homogeneous")]
    NotHomogeneous,
    #[error("equation has a repeated factor")]
    NotSquarefree,
    #[error("singular point with irrational coordinates: unresolved factor {factor} of degree {}", factor.degree().unwrap_or(0))]
    NonRationalSingularity { factor: UniPoly },
    #[error("point has multiplicity {0}; blowing up needs a singular point")]
    NotSingular(u32),
    #[error("claimed multiplicity {claimed} at the origin, actual {actual}")]
    WrongMultiplicity { claimed: u32, actual: u32 },
    #[error("negative geometric genus {0}: the curve is reducible")]
    NegativeGenus(i64),
    #[error("no acceptable hyperplane section after {0} attempts")]
    RetriesExhausted(usize),
    #[error("expected a cone in P^3, got one in P^{0}")]
    NotInP3(usize),
}

fn check_plane_curve(c: &Poly) -> Result<u32, CurveError> {
    if c.nvars() != 3 {
        return Err(CurveError::WrongRing {
            expected: 3,
            got: c.nvars(),
        });
    }
    if c.is_constant() {
        return Err(CurveError::DegenerateCurve);
    }
    let d = c.homogeneous_degree().ok_or(CurveError::NotHomogeneous)?;
    if !is_squarefree(c) {
        return Err(CurveError::NotSquarefree);
    }
    Ok(d)
}

fn uni(p: &Poly, var: usize) -> UniPoly {
    UniPoly::from_poly(p, var).expect("polynomial in one variable")
}

/// Rational roots of `u`; any irrational root is an error.
fn rational_roots_only(u: &UniPoly) -> Result<Vec<Q>, CurveError> {
    let split = u.rational_roots();
    if !split.all_rational() {
        return Err(CurveError::NonRationalSingularity {
            factor: split.residual,
        });
    }
    Ok(split.roots.into_iter().map(|(r, _)| r).collect())
}

fn gcd_all(us: &[UniPoly]) -> UniPoly {
    us.iter().fold(UniPoly::zero(), |g, u| g.gcd(u))
}

/// Singular points of `c` (degree >= 2), assuming `[0:1:0]` is not on `c`.
fn singular_points_in_position(c: &Poly) -> Result<Vec<Point>, CurveError> {
    let partials: Vec<Poly> = (0..3).map(|i| c.derivative(i)).collect();
    let mut points = Vec::new();

    // affine chart x2 = 1, coordinates (x, y) = (x0, x1), lambda = x2
    let f = c.set_var(2, &Q::one());
    let lambda = Poly::var(3, 2);
    let polar = &f.derivative(0) + &(&lambda * &f.derivative(1));
    // vanishes identically in lambda exactly above the singular points, since
    // f is monic in y up to a constant
    let eliminant = content_in(&resultant(&f, &polar, 1), 2);
    if !eliminant.is_zero() && !eliminant.is_constant() {
        for r in rational_roots_only(&uni(&eliminant, 0))? {
            let fibre: Vec<UniPoly> = std::iter::once(&f)
                .chain(&[f.derivative(0), f.derivative(1)])
                .map(|p| uni(&p.set_var(0, &r), 1))
                .collect();
            for s in rational_roots_only(&gcd_all(&fibre))? {
                points.push(Point::new(vec![r.clone(), s, Q::one()])?);
            }
        }
    }

    // line at infinity: [t:1:0] and [1:0:0]
    let at_infinity: Vec<UniPoly> = partials
        .iter()
        .map(|p| uni(&p.set_var(1, &Q::one()).set_var(2, &Q::zero()), 0))
        .collect();
    let g = gcd_all(&at_infinity);
    if !g.is_zero() {
        for t in rational_roots_only(&g)? {
            points.push(Point::new(vec![t, Q::one(), Q::zero()])?);
        }
    }
    let e0 = [Q::one(), Q::zero(), Q::zero()];
    if partials.iter().all(|p| p.eval(&e0).is_zero()) {
        points.push(Point::new(e0.to_vec())?);
    }
    Ok(points)
}

/// `singular_points`: every singular point of the plane curve `c` with its
/// multiplicity, sorted by coordinates. Irrational singular points raise
/// [`CurveError::NonRationalSingularity`].
pub fn singular_points(c: &Poly) -> Result<Vec<(Point, u32)>, CurveError> {
    let d = check_plane_curve(c)?;
    if d < 2 {
        return Ok(vec![]);
    }
    // shear so that [0:1:0] is off the curve: c(k, 1, j) != 0 for some
    // 0 <= k, j <= d since c(x0, 1, x2) is a nonzero polynomial of degree d
    let (k, j) = (0..=d as i64)
        .flat_map(|k| (0..=d as i64).map(move |j| (k, j)))
        .find(|&(k, j)| !c.eval(&[q(k), q(1), q(j)]).is_zero())
        .expect("nonzero polynomial on a grid");
    let m = QMatrix::new(vec![
        vec![q(1), q(k), q(0)],
        vec![q(0), q(1), q(0)],
        vec![q(0), q(j), q(1)],
    ])?;
    let sheared = m.pull_back(c)?;
    let mut out = Vec::new();
    for p in singular_points_in_position(&sheared)? {
        let back = Point::new(m.mul_vec(p.coords()))?;
        let mult = multiplicity_at(c, &back)?;
        out.push((back, mult));
    }
    out.sort_by(|a, b| a.0.coords().cmp(b.0.coords()));
    out.dedup_by(|a, b| a.0 == b.0);
    Ok(out)
}

/// Where a point of the exceptional line sits after one blowup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExceptionalPoint {
    /// `(x, t) = (0, r)` in the chart `y = x t`.
    Slope { t: Q, tangent_multiplicity: u32 },
    /// `(s, y) = (0, 0)` in the chart `x = s y`, the tangent direction `x = 0`.
    Vertical { tangent_multiplicity: u32 },
}

impl ExceptionalPoint {
    pub fn tangent_multiplicity(&self) -> u32 {
        match self {
            ExceptionalPoint::Slope {
                tangent_multiplicity,
                ..
            }
            | ExceptionalPoint::Vertical {
                tangent_multiplicity,
            } => *tangent_multiplicity,
        }
    }
}

impl fmt::Display for ExceptionalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExceptionalPoint::Slope { t, .. } => write!(f, "slope {t}"),
            ExceptionalPoint::Vertical { .. } => f.write_str("vertical"),
        }
    }
}

/// Strict transforms in both charts and the rational points where they meet
/// the exceptional line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Blowup {
    /// `f(x, x t) / x^m` in variables `(x, t)`.
    pub chart1: Poly,
    /// `f(s y, y) / y^m` in variables `(s, y)`.
    pub chart2: Poly,
    pub meetings: Vec<ExceptionalPoint>,
    /// Simple irrational slopes; the strict transform is smooth there.
    pub irrational_simple: usize,
}

/// `blowup_once`: blows up the origin of the affine curve `f(x, y) = 0`,
/// where it has multiplicity `m >= 2`.
pub fn blowup_once(f: &Poly, m: u32) -> Result<Blowup, CurveError> {
    if f.nvars() != 2 {
        return Err(CurveError::WrongRing {
            expected: 2,
            got: f.nvars(),
        });
    }
    if m < 2 {
        return Err(CurveError::NotSingular(m));
    }
    let actual = f.min_degree().ok_or(CurveError::DegenerateCurve)?;
    if actual != m {
        return Err(CurveError::WrongMultiplicity { claimed: m, actual });
    }
    let x = Poly::var(2, 0);
    let y = Poly::var(2, 1);
    let chart1 = f.substitute(&[x.clone(), &x * &y])?.exact_div(&x.pow(m))?;
    let chart2 = f.substitute(&[&x * &y, y.clone()])?.exact_div(&y.pow(m))?;

    let slopes = uni(&f.homogeneous_part(m).set_var(0, &Q::one()), 1);
    let split = slopes.rational_roots();
    let rational = split.roots.iter().fold(UniPoly::one(), |acc, (r, k)| {
        (0..*k).fold(acc, |a, _| a.mul(&UniPoly::linear_root(r)))
    });
    let irrational = slopes.div_rem(&rational).0;
    let irrational_degree = irrational.degree().unwrap_or(0);
    if irrational_degree > split.residual.degree().unwrap_or(0) {
        // a repeated irrational slope may hide a singular infinitely near point
        return Err(CurveError::NonRationalSingularity {
            factor: split.residual,
        });
    }
    let mut meetings: Vec<ExceptionalPoint> = split
        .roots
        .into_iter()
        .map(|(t, k)| ExceptionalPoint::Slope {
            t,
            tangent_multiplicity: k,
        })
        .collect();
    let vertical = m - slopes.degree().unwrap_or(0) as u32;
    if vertical > 0 {
        meetings.push(ExceptionalPoint::Vertical {
            tangent_multiplicity: vertical,
        });
    }
    Ok(Blowup {
        chart1,
        chart2,
        meetings,
        irrational_simple: irrational_degree,
    })
}

/// Location of a node in a resolution tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeLocation {
    /// A singular point of the projective curve.
    Root(Point),
    /// An infinitely near point on the exceptional line of the parent.
    Near(ExceptionalPoint),
}

/// Infinitely near singular points over one singular point of a curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionTree {
    pub location: NodeLocation,
    pub multiplicity: u32,
    pub children: Vec<ResolutionTree>,
}

impl ResolutionTree {
    /// `sum m(m-1)/2` over all nodes.
    pub fn delta(&self) -> u64 {
        let m = self.multiplicity as u64;
        m * (m - 1) / 2 + self.children.iter().map(Self::delta).sum::<u64>()
    }

    /// Multiplicities in depth-first order.
    pub fn multiplicities(&self) -> Vec<u32> {
        let mut out = vec![self.multiplicity];
        for c in &self.children {
            out.extend(c.multiplicities());
        }
        out
    }

    fn render(&self, depth: usize, out: &mut String) {
        let indent = "  ".repeat(depth);
        let at = match &self.location {
            NodeLocation::Root(p) => p.to_string(),
            NodeLocation::Near(e) => e.to_string(),
        };
        out.push_str(&format!(
            "{indent}{at} multiplicity {}\n",
            self.multiplicity
        ));
        for c in &self.children {
            c.render(depth + 1, out);
        }
    }
}

impl fmt::Display for ResolutionTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.render(0, &mut s);
        f.write_str(s.trim_end())
    }
}

/// Each node adds at least 1 to delta, which is at most the arithmetic
/// genus; this only guards against a reducible or malformed input.
const MAX_TREE_DEPTH: usize = 256;

fn resolve_local(
    f: &Poly,
    m: u32,
    location: NodeLocation,
    depth: usize,
) -> Result<ResolutionTree, CurveError> {
    if depth > MAX_TREE_DEPTH {
        return Err(CurveError::NegativeGenus(-1));
    }
    let b = blowup_once(f, m)?;
    let mut children = Vec::new();
    for e in b.meetings {
        if e.tangent_multiplicity() < 2 {
            continue;
        }
        let g = match &e {
            ExceptionalPoint::Slope { t, .. } => {
                let x = Poly::var(2, 0);
                let shifted = &Poly::var(2, 1) + &Poly::constant(2, t.clone());
                b.chart1.substitute(&[x, shifted])?
            }
            ExceptionalPoint::Vertical { .. } => b.chart2.clone(),
        };
        let mg = g.min_degree().unwrap_or(0);
        if mg >= 2 {
            children.push(resolve_local(&g, mg, NodeLocation::Near(e), depth + 1)?);
        }
    }
    Ok(ResolutionTree {
        location,
        multiplicity: m,
        children,
    })
}

/// `resolve`: the tree of infinitely near singular points over `p`, a point
/// of multiplicity `m >= 2` on the plane curve `c`.
pub fn resolve(c: &Poly, p: &Point, m: u32) -> Result<ResolutionTree, CurveError> {
    check_plane_curve(c)?;
    let local = recenter(c, p)?.specialize(2, &Q::one());
    resolve_local(&local, m, NodeLocation::Root(p.clone()), 0)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Singularity {
    pub point: Point,
    pub multiplicity: u32,
    pub tree: ResolutionTree,
    pub delta: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusReport {
    pub curve: Poly,
    pub degree: u32,
    pub arithmetic_genus: u64,
    pub singularities: Vec<Singularity>,
    pub geometric_genus: u64,
}

impl GenusReport {
    pub fn total_delta(&self) -> u64 {
        self.singularities.iter().map(|s| s.delta).sum()
    }
}

impl fmt::Display for GenusReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "curve: {}", self.curve)?;
        writeln!(f, "degree: {}", self.degree)?;
        writeln!(f, "arithmetic genus: {}", self.arithmetic_genus)?;
        writeln!(f, "singular points: {}", self.singularities.len())?;
        for s in &self.singularities {
            writeln!(
                f,
                "  {} multiplicity {} delta {}",
                s.point, s.multiplicity, s.delta
            )?;
            for line in s.tree.to_string().lines().skip(1) {
                writeln!(f, "  {line}")?;
            }
        }
        write!(f, "geometric genus: {}", self.geometric_genus)
    }
}

/// `geometric_genus`: `(d-1)(d-2)/2` minus the deltas of all singular points.
/// The curve is assumed irreducible; a negative result is an error.
pub fn geometric_genus(c: &Poly) -> Result<GenusReport, CurveError> {
    let d = check_plane_curve(c)?;
    let arithmetic = (d as u64).saturating_sub(1) * (d as u64).saturating_sub(2) / 2;
    let mut singularities = Vec::new();
    for (point, m) in singular_points(c)? {
        let tree = resolve(c, &point, m)?;
        singularities.push(Singularity {
            delta: tree.delta(),
            point,
            multiplicity: m,
            tree,
        });
    }
    let delta: u64 = singularities.iter().map(|s| s.delta).sum();
    if delta > arithmetic {
        return Err(CurveError::NegativeGenus(arithmetic as i64 - delta as i64));
    }
    Ok(GenusReport {
        curve: c.clone(),
        degree: d,
        arithmetic_genus: arithmetic,
        singularities,
        geometric_genus: arithmetic - delta,
    })
}

/// Attempts made by [`general_section`].
pub const SECTION_ATTEMPTS: usize = 20;

/// `general_section`: `S(x0, x1, x2, a0 x0 + a1 x1 + a2 x2)` for random
/// `a_i` in `[-5, 5]`, accepted when squarefree of the same degree.
pub fn general_section<R: Rng + ?Sized>(s: &Poly, rng: &mut R) -> Result<Poly, CurveError> {
    if s.nvars() != 4 {
        return Err(CurveError::WrongRing {
            expected: 4,
            got: s.nvars(),
        });
    }
    if s.is_constant() {
        return Err(CurveError::DegenerateCurve);
    }
    let d = s.homogeneous_degree().ok_or(CurveError::NotHomogeneous)?;
    if !is_squarefree(s) {
        return Err(CurveError::NotSquarefree);
    }
    let x = |i| Poly::var(3, i);
    for _ in 0..SECTION_ATTEMPTS {
        let a: Vec<i64> = (0..3).map(|_| rng.random_range(-5..=5)).collect();
        let h = (0..3).fold(Poly::zero(3), |acc, i| &acc + &x(i).scale(&q(a[i])));
        let section = s.substitute(&[x(0), x(1), x(2), h])?;
        if section.homogeneous_degree() == Some(d) && is_squarefree(&section) {
            return Ok(section);
        }
    }
    Err(CurveError::RetriesExhausted(SECTION_ATTEMPTS))
}

/// Why two cones were or were not declared equivalent.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecisionBasis {
    /// Both sections have genus 0, so both cones are equivalent to a plane.
    Rational,
    /// Equal positive genus; birationality of the sections is not checked.
    EqualGenus,
    /// Different genera; the sections are not birational.
    GenusDiffers,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeDecision {
    pub equivalent: bool,
    pub basis: DecisionBasis,
    pub first: GenusReport,
    pub second: GenusReport,
}

impl fmt::Display for ConeDecision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = match self.basis {
            DecisionBasis::Rational => {
                "equivalent: both cones are rational, hence equivalent to a plane"
            }
            DecisionBasis::EqualGenus => {
                "equivalent: sections have equal genus (birationality of sections assumed)"
            }
            DecisionBasis::GenusDiffers => "not equivalent: sections have different genus",
        };
        writeln!(f, "first section:\n{}", self.first)?;
        writeln!(f, "second section:\n{}", self.second)?;
        write!(f, "verdict: {verdict}")
    }
}

/// `decide_cone_equivalence_P3`: compares the genera of general hyperplane
/// sections of two cones in `P^3` with irreducible bases.
pub fn decide_cone_equivalence_p3(
    s1: &ConeWitness,
    s2: &ConeWitness,
    seed: u64,
) -> Result<ConeDecision, CurveError> {
    for s in [s1, s2] {
        if s.ambient_dim() != 3 {
            return Err(CurveError::NotInP3(s.ambient_dim()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // sections of the cone in canonical position avoid the vertex
    let first = geometric_genus(&general_section(&s1.canonical_equation(), &mut rng)?)?;
    let second = geometric_genus(&general_section(&s2.canonical_equation(), &mut rng)?)?;
    let basis = match (first.geometric_genus, second.geometric_genus) {
        (0, 0) => DecisionBasis::Rational,
        (a, b) if a == b => DecisionBasis::EqualGenus,
        _ => DecisionBasis::GenusDiffers,
    };
    Ok(ConeDecision {
        equivalent: basis != DecisionBasis::GenusDiffers,
        basis,
        first,
        second,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> Poly {
        Poly::var(3, i)
    }

    fn u(i: usize) -> Poly {
        Poly::var(2, i)
    }

    fn nodal() -> Poly {
        &(&(&x(1).pow(2) * &x(2)) - &x(0).pow(3)) - &(&x(0).pow(2) * &x(2))
    }

    fn fermat(d: u32) -> Poly {
        &(&x(0).pow(d) + &x(1).pow(d)) + &x(2).pow(d)
    }

    fn pt(c: &[i64]) -> Point {
        Point::new(c.iter().map(|&v| q(v)).collect()).unwrap()
    }

    #[test]
    fn singular_points_examples() {
        assert_eq!(
            singular_points(&nodal()).unwrap(),
            vec![(pt(&[0, 0, 1]), 2)]
        );
        assert_eq!(singular_points(&fermat(3)).unwrap(), vec![]);
        let triangle = &(&x(0) * &x(1)) * &x(2);
        assert_eq!(
            singular_points(&triangle).unwrap(),
            vec![
                (pt(&[0, 0, 1]), 2),
                (pt(&[0, 1, 0]), 2),
                (pt(&[1, 0, 0]), 2)
            ]
        );
    }

    #[test]
    fn irrational_singularity_is_reported() {
        // two conics meeting only at [±sqrt(2) : 0 : 1]
        let conic = &(&x(0).pow(2) + &x(1).pow(2)) - &x(2).pow(2).scale(&q(2));
        let c = &(&x(0).pow(2) - &x(2).pow(2).scale(&q(2))) + &x(1).pow(2).scale(&q(3));
        let curve = &conic * &c;
        assert!(matches!(
            singular_points(&curve),
            Err(CurveError::NonRationalSingularity { .. })
        ));
    }

    #[test]
    fn blowup_examples() {
        let node = &(&u(1).pow(2) - &u(0).pow(2)) - &u(0).pow(3);
        let b = blowup_once(&node, 2).unwrap();
        assert_eq!(b.chart1, &(&u(1).pow(2) - &Poly::one(2)) - &u(0));
        let slopes: Vec<_> = b.meetings.iter().map(|e| e.to_string()).collect();
        assert_eq!(slopes, ["slope -1", "slope 1"]);

        let cusp = &u(1).pow(2) - &u(0).pow(3);
        let b = blowup_once(&cusp, 2).unwrap();
        assert_eq!(b.chart1, &u(1).pow(2) - &u(0));
        assert_eq!(b.meetings.len(), 1);

        let smooth = &u(1) - &u(0).pow(2);
        assert_eq!(blowup_once(&smooth, 1), Err(CurveError::NotSingular(1)));
        assert_eq!(
            blowup_once(&cusp, 3),
            Err(CurveError::WrongMultiplicity {
                claimed: 3,
                actual: 2
            })
        );
    }

    #[test]
    fn vertical_tangent_is_found() {
        // x^2 - y^4: tacnode with vertical tangent
        let f = &u(0).pow(2) - &u(1).pow(4);
        let b = blowup_once(&f, 2).unwrap();
        assert_eq!(
            b.meetings,
            vec![ExceptionalPoint::Vertical {
                tangent_multiplicity: 2
            }]
        );
    }

    #[test]
    fn resolution_trees() {
        let origin = pt(&[0, 0, 1]);
        let node = resolve(&nodal(), &origin, 2).unwrap();
        assert_eq!(node.multiplicities(), vec![2]);
        assert_eq!(node.delta(), 1);

        let cusp = &(&x(1).pow(2) * &x(2)) - &x(0).pow(3);
        let t = resolve(&cusp, &origin, 2).unwrap();
        assert_eq!(t.delta(), 1);

        let tacnode = &(&x(1).pow(2) * &x(2).pow(2)) - &x(0).pow(4);
        let t = resolve(&tacnode, &origin, 2).unwrap();
        assert_eq!(t.multiplicities(), vec![2, 2]);
        assert_eq!(t.delta(), 2);

        // x1^2 x2^3 - x0^5: A4 singularity, multiplicity sequence 2, 2
        let a4 = &(&x(1).pow(2) * &x(2).pow(3)) - &x(0).pow(5);
        assert_eq!(resolve(&a4, &origin, 2).unwrap().delta(), 2);
    }

    #[test]
    fn genus_examples() {
        assert_eq!(geometric_genus(&fermat(3)).unwrap().geometric_genus, 1);
        assert_eq!(geometric_genus(&nodal()).unwrap().geometric_genus, 0);
        let conic = &(&x(0) * &x(1)) - &x(2).pow(2);
        assert_eq!(geometric_genus(&conic).unwrap().geometric_genus, 0);
        assert_eq!(geometric_genus(&fermat(4)).unwrap().geometric_genus, 3);
        assert_eq!(geometric_genus(&x(0)).unwrap().geometric_genus, 0);

        let triangle = &(&x(0) * &x(1)) * &x(2);
        assert_eq!(
            geometric_genus(&triangle),
            Err(CurveError::NegativeGenus(-2))
        );
    }

    #[test]
    fn tricuspidal_quartic_is_rational() {
        let (a, b, c) = (x(0), x(1), x(2));
        let sq = |p: &Poly| p.pow(2);
        let sum = &(&(&sq(&a) * &sq(&b)) + &(&sq(&b) * &sq(&c))) + &(&sq(&a) * &sq(&c));
        let abc = &(&a * &b) * &c;
        let lin = &(&a + &b) + &c;
        let quartic = &sum - &(&abc * &lin).scale(&q(2));
        let report = geometric_genus(&quartic).unwrap();
        assert_eq!(report.singularities.len(), 3);
        assert_eq!(report.geometric_genus, 0);
    }

    #[test]
    fn singular_point_off_the_chart() {
        // nodal cubic with its node moved to [1:2:0]
        let moved = Point::new(vec![q(1), q(2), q(0)]).unwrap();
        let frame = moved.moving_frame().inverse().unwrap();
        let c = frame.pull_back(&nodal()).unwrap();
        assert_eq!(singular_points(&c).unwrap(), vec![(moved, 2)]);
        assert_eq!(geometric_genus(&c).unwrap().geometric_genus, 0);
    }

    #[test]
    fn general_section_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let cone = ConeWitness::cone_over(&nodal()).unwrap();
        let s = general_section(cone.equation(), &mut rng).unwrap();
        assert_eq!(s, nodal());

        let y = |i| Poly::var(4, i);
        let quadric = &(&y(0) * &y(3)) - &(&y(1) * &y(2));
        // the section is a line pair when a0 + a1*a2 = 0, a conic otherwise
        let mut conics = 0;
        for _ in 0..10 {
            let s = general_section(&quadric, &mut rng).unwrap();
            assert_eq!(s.degree(), Some(2));
            match geometric_genus(&s) {
                Ok(r) => {
                    assert_eq!(r.geometric_genus, 0);
                    conics += 1;
                }
                Err(e) => assert_eq!(e, CurveError::NegativeGenus(-1)),
            }
        }
        assert!(conics > 0);

        let doubled = &y(3).pow(2) * &quadric;
        assert_eq!(
            general_section(&doubled, &mut rng),
            Err(CurveError::NotSquarefree)
        );
    }

    #[test]
    fn decide_examples() {
        let nodal_cone = ConeWitness::cone_over(&nodal()).unwrap();
        let smooth_cone = ConeWitness::cone_over(&fermat(3)).unwrap();
        let plane = ConeWitness::cone_over(&(&(&x(0) + &x(1)) + &x(2))).unwrap();
        let d = decide_cone_equivalence_p3(&nodal_cone, &plane, 1).unwrap();
        assert!(d.equivalent);
        assert_eq!(d.basis, DecisionBasis::Rational);
        let d = decide_cone_equivalence_p3(&smooth_cone, &plane, 1).unwrap();
        assert!(!d.equivalent);
        let d = decide_cone_equivalence_p3(&smooth_cone, &smooth_cone, 1).unwrap();
        assert!(d.equivalent);
        assert_eq!(d.basis, DecisionBasis::EqualGenus);
    }
}
