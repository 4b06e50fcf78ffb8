use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::exactalg::{tuple_content, Poly, Q};

use super::MapError;

/// Rational self-map of `P^dim` given by `dim + 1` homogeneous components of
/// a common degree with no common factor.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MapRep {
    components: Vec<Poly>,
    degree: u32,
}

/// Scales a tuple to integer coefficients with no common integer factor and a
/// positive leading coefficient in its first nonzero entry.
pub(crate) fn integral_normal_form(tuple: &[Poly]) -> Vec<Poly> {
    let mut lcm = BigInt::one();
    let mut g = BigInt::zero();
    for p in tuple {
        for (_, c) in p.terms() {
            lcm = lcm.lcm(c.denom());
        }
    }
    for p in tuple {
        for (_, c) in p.terms() {
            g = g.gcd(&(c.numer() * (&lcm / c.denom())));
        }
    }
    if g.is_zero() {
        return tuple.to_vec();
    }
    let negative = tuple
        .iter()
        .find_map(|p| p.leading_coeff())
        .is_some_and(|c| c.is_negative());
    let mut factor = Q::new(lcm, g);
    if negative {
        factor = -factor;
    }
    tuple.iter().map(|p| p.scale(&factor)).collect()
}

impl MapRep {
    /// `normalize`: checks the grading, divides out the tuple content and
    /// fixes the scalar.
    pub fn normalize(tuple: Vec<Poly>) -> Result<MapRep, MapError> {
        let nvars = tuple.first().ok_or(MapError::ZeroTuple)?.nvars();
        if tuple.len() < 2 {
            return Err(MapError::TooFewComponents(tuple.len()));
        }
        if tuple.iter().any(|p| p.nvars() != nvars) || tuple.len() != nvars {
            return Err(MapError::ComponentCount {
                components: tuple.len(),
                variables: nvars,
            });
        }
        let mut degree = None;
        for (i, p) in tuple.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let d = p
                .homogeneous_degree()
                .ok_or(MapError::InhomogeneousComponent(i))?;
            match degree {
                None => degree = Some(d),
                Some(d0) if d0 != d => return Err(MapError::UnequalDegrees),
                _ => {}
            }
        }
        if degree.is_none() {
            return Err(MapError::ZeroTuple);
        }
        let content = tuple_content(&tuple)?;
        let components: Vec<Poly> = tuple
            .iter()
            .map(|p| p.exact_div(&content).expect("content divides"))
            .collect();
        let degree = degree.unwrap() - content.degree().unwrap_or(0);
        Ok(MapRep {
            components: integral_normal_form(&components),
            degree,
        })
    }

    pub fn identity(dim: usize) -> MapRep {
        MapRep {
            components: (0..=dim).map(|i| Poly::var(dim + 1, i)).collect(),
            degree: 1,
        }
    }

    pub fn components(&self) -> &[Poly] {
        &self.components
    }

    /// `n` for a map of `P^n`.
    pub fn dim(&self) -> usize {
        self.components.len() - 1
    }

    pub fn nvars(&self) -> usize {
        self.components.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// `self ∘ inner`: substitutes `inner` into every component (unnormalized).
    pub fn compose_raw(&self, inner: &MapRep) -> Result<Vec<Poly>, MapError> {
        if self.nvars() != inner.nvars() {
            return Err(MapError::DimensionMismatch {
                left: self.dim(),
                right: inner.dim(),
            });
        }
        self.components
            .iter()
            .map(|c| c.substitute(&inner.components).map_err(MapError::from))
            .collect()
    }

    /// Equality of tuples up to one global nonzero scalar.
    pub fn proj_eq(&self, other: &MapRep) -> bool {
        proportional(&self.components, &other.components)
    }
}

pub(crate) fn proportional(a: &[Poly], b: &[Poly]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let Some(k) = a.iter().position(|p| !p.is_zero()) else {
        return b.iter().all(Poly::is_zero);
    };
    let (Some(la), Some(lb)) = (a[k].leading_coeff(), b[k].leading_coeff()) else {
        return false;
    };
    let ratio = lb.clone() / la.clone();
    a.iter().zip(b).all(|(x, y)| &x.scale(&ratio) == y)
}

pub(crate) fn write_tuple(f: &mut fmt::Formatter<'_>, tuple: &[Poly]) -> fmt::Result {
    f.write_str("[")?;
    for (i, c) in tuple.iter().enumerate() {
        if i > 0 {
            f.write_str(" : ")?;
        }
        write!(f, "{c}")?;
    }
    f.write_str("]")
}

impl fmt::Display for MapRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.components)
    }
}

/// `verify_birational_pair`: the cofactor `e` with `G(F(x)) = e * x`
/// componentwise, or the primitive residual tuple when the composition is not
/// the identity up to a common factor.
pub fn verify_birational_pair(f: &MapRep, g: &MapRep) -> Result<Poly, MapError> {
    let composed = g.compose_raw(f)?;
    let nvars = f.nvars();
    let residual = |prim: &[Poly]| MapError::NotBirational {
        residual: Residual(integral_normal_form(prim)),
    };
    let content = match tuple_content(&composed) {
        Ok(c) => c,
        Err(_) => return Err(residual(&composed)),
    };
    let prim: Vec<Poly> = composed
        .iter()
        .map(|p| p.exact_div(&content).expect("content divides"))
        .collect();
    let mut scalar: Option<Q> = None;
    for (i, p) in prim.iter().enumerate() {
        let x = Poly::var(nvars, i);
        let lambda = match (p.num_terms(), p.leading_term()) {
            (1, Some((m, c))) if Some((m, &Q::one())) == x.leading_term() => c.clone(),
            _ => return Err(residual(&prim)),
        };
        match &scalar {
            None => scalar = Some(lambda),
            Some(s) if *s != lambda => return Err(residual(&prim)),
            _ => {}
        }
    }
    Ok(content.scale(&scalar.expect("at least two components")))
}

/// `restrict_to_last_hyperplane`: drops the last component and sets the last
/// variable to zero in the others.
pub fn restrict_to_last_hyperplane(map: &MapRep) -> Result<MapRep, MapError> {
    let n = map.dim();
    let restricted: Vec<Poly> = map.components[..n]
        .iter()
        .map(|c| c.specialize(n, &Q::zero()))
        .collect();
    if restricted.iter().all(Poly::is_zero) {
        return Err(MapError::RestrictionDegenerate);
    }
    MapRep::normalize(restricted)
}

/// A tuple carried by a verification failure, printed like a map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residual(pub Vec<Poly>);

impl fmt::Display for Residual {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::q;

    fn x(i: usize) -> Poly {
        Poly::var(3, i)
    }

    fn sigma() -> MapRep {
        MapRep::normalize(vec![&x(1) * &x(2), &x(0) * &x(2), &x(0) * &x(1)]).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let content = &(&x(0) * &x(1)) * &x(2);
        let m =
            MapRep::normalize(vec![&content * &x(0), &content * &x(1), &content * &x(2)]).unwrap();
        assert_eq!(m, MapRep::identity(2));
        assert_eq!(m.degree(), 1);

        assert_eq!(sigma().degree(), 2);
        assert_eq!(sigma().to_string(), "[x1*x2 : x0*x2 : x0*x1]");

        let m = MapRep::normalize(vec![x(0).pow(2), &x(0) * &x(1), Poly::zero(3)]).unwrap();
        assert_eq!(m.components(), &[x(0), x(1), Poly::zero(3)]);
        assert_eq!(m.degree(), 1);
    }

    #[test]
    fn normalize_errors() {
        assert_eq!(
            MapRep::normalize(vec![x(0), x(1).pow(2), x(2)]),
            Err(MapError::UnequalDegrees)
        );
        assert_eq!(
            MapRep::normalize(vec![Poly::zero(3), Poly::zero(3), Poly::zero(3)]),
            Err(MapError::ZeroTuple)
        );
        assert_eq!(
            MapRep::normalize(vec![&x(0) + &Poly::one(3), x(1), x(2)]),
            Err(MapError::InhomogeneousComponent(0))
        );
    }

    #[test]
    fn scalar_normal_form() {
        let m = MapRep::normalize(vec![
            x(0).scale(&q(-2)),
            x(1).scale(&q(4)),
            x(2).scale(&q(6)),
        ])
        .unwrap();
        assert_eq!(m.to_string(), "[x0 : -2*x1 : -3*x2]");
    }

    #[test]
    fn verify_examples() {
        let e = verify_birational_pair(&sigma(), &sigma()).unwrap();
        assert_eq!(e, &(&x(0) * &x(1)) * &x(2));

        let id = MapRep::identity(2);
        assert_eq!(verify_birational_pair(&id, &id).unwrap(), Poly::one(3));

        match verify_birational_pair(&sigma(), &id) {
            Err(MapError::NotBirational { residual }) => {
                assert_eq!(residual.to_string(), "[x1*x2 : x0*x2 : x0*x1]")
            }
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn restriction_examples() {
        let n4 = |i| Poly::var(4, i);
        let lifted = MapRep::normalize(vec![
            &n4(1) * &n4(2),
            &n4(0) * &n4(2),
            &n4(0) * &n4(1),
            &n4(3) * &n4(0),
        ])
        .unwrap();
        assert_eq!(restrict_to_last_hyperplane(&lifted).unwrap(), sigma());
        assert_eq!(
            restrict_to_last_hyperplane(&MapRep::identity(3)).unwrap(),
            MapRep::identity(2)
        );
        let degenerate = MapRep::normalize(vec![x(2), x(2), x(0)]).unwrap();
        assert_eq!(
            restrict_to_last_hyperplane(&degenerate),
            Err(MapError::RestrictionDegenerate)
        );
    }
}
