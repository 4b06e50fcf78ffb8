//! Dense univariate polynomials over the rationals and exact rational-root
//! extraction.
//!
//! Rational roots are found without integer factorization: the real roots of
//! the squarefree part are isolated with a Sturm sequence, each isolating
//! interval is shrunk below `1 / L^2` (`L` the leading coefficient of the
//! primitive integer form, which bounds every rational root's denominator),
//! and the simplest fraction in the interval is the only candidate. Candidates
//! are confirmed by exact evaluation.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::{q, Q};
use super::poly::Poly;
use super::Monomial;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly {
    /// Coefficient of `t^k` at index `k`; no trailing zeros.
    coeffs: Vec<Q>,
}

/// Rational roots with multiplicities, and the monic squarefree factor that
/// carries every remaining (irrational or complex) root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSplit {
    pub roots: Vec<(Q, u32)>,
    pub residual: UniPoly,
}

impl RootSplit {
    pub fn all_rational(&self) -> bool {
        self.residual.degree().unwrap_or(0) == 0
    }
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        UniPoly {
            coeffs: vec![Q::one()],
        }
    }

    /// `t - r`.
    pub fn linear_root(r: &Q) -> Self {
        UniPoly::new(vec![-r.clone(), Q::one()])
    }

    /// Reads a polynomial in which only `var` occurs.
    pub fn from_poly(p: &Poly, var: usize) -> Option<Self> {
        let mut coeffs = vec![Q::zero(); p.degree_in(var) as usize + 1];
        for (m, c) in p.terms() {
            if m.degree() != m.exponent(var) {
                return None;
            }
            coeffs[m.exponent(var) as usize] = c.clone();
        }
        Some(UniPoly::new(coeffs))
    }

    pub fn to_poly(&self, nvars: usize, var: usize) -> Poly {
        Poly::from_terms(
            nvars,
            self.coeffs.iter().enumerate().map(|(k, c)| {
                (
                    Monomial::one(nvars)
                        .with_exponent(var, k as u32)
                        .exponents()
                        .to_vec(),
                    c.clone(),
                )
            }),
        )
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Q> {
        self.coeffs.last()
    }

    pub fn eval(&self, t: &Q) -> Q {
        self.coeffs
            .iter()
            .rev()
            .fold(Q::zero(), |acc, c| acc * t.clone() + c.clone())
    }

    pub fn derivative(&self) -> Self {
        UniPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * q(k as i64))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => UniPoly {
                coeffs: self.coeffs.iter().map(|c| c.clone() / lc.clone()).collect(),
            },
            None => self.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        UniPoly::new(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![Q::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone() / lc.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - c.clone() * dc.clone();
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// Splits off the rational roots. The zero polynomial yields no roots and
    /// a zero residual.
    pub fn rational_roots(&self) -> RootSplit {
        if self.is_zero() {
            return RootSplit {
                roots: vec![],
                residual: UniPoly::zero(),
            };
        }
        let sf = self.squarefree_part();
        let candidates = match sf.degree() {
            Some(0) => vec![],
            Some(1) => vec![-sf.coeffs[0].clone()],
            _ => rational_roots_squarefree(&sf),
        };
        let mut roots = Vec::new();
        let mut residual = sf;
        for r in candidates {
            let lin = UniPoly::linear_root(&r);
            residual = residual.div_rem(&lin).0;
            let mut mult = 0;
            let mut rest = self.clone();
            loop {
                let (qt, rm) = rest.div_rem(&lin);
                if !rm.is_zero() {
                    break;
                }
                mult += 1;
                rest = qt;
            }
            roots.push((r, mult));
        }
        roots.sort_by(|a, b| a.0.cmp(&b.0));
        RootSplit {
            roots,
            residual: residual.monic(),
        }
    }
}

fn sturm_sequence(p: &UniPoly) -> Vec<UniPoly> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
        if r.is_zero() {
            return seq;
        }
        seq.push(UniPoly::new(r.coeffs.into_iter().map(|c| -c).collect()));
    }
}

fn sign_variations(seq: &[UniPoly], t: &Q) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for s in seq {
        let v = s.eval(t);
        let sg = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if sg != 0 {
            if last != 0 && sg != last {
                count += 1;
            }
            last = sg;
        }
    }
    count
}

/// Number of distinct real roots in `(lo, hi]`.
fn count_roots(seq: &[UniPoly], lo: &Q, hi: &Q) -> usize {
    sign_variations(seq, lo) - sign_variations(seq, hi)
}

/// Leading coefficient magnitude of the primitive integer multiple.
fn denominator_bound(p: &UniPoly) -> BigInt {
    let lcm = p
        .coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p
        .coeffs
        .iter()
        .map(|c| (c * Q::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    (ints.last().unwrap() / g).abs()
}

fn rational_roots_squarefree(sf: &UniPoly) -> Vec<Q> {
    let seq = sturm_sequence(sf);
    let lc = sf.leading().unwrap().clone();
    let bound = sf
        .coeffs
        .iter()
        .map(|c| (c.clone() / lc.clone()).abs())
        .fold(Q::zero(), |a, b| if b > a { b } else { a })
        + Q::one();
    let l = Q::from_integer(denominator_bound(sf));
    let tolerance = Q::one() / (l.clone() * l + Q::one());

    let mut found = Vec::new();
    let mut isolated = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        let c = count_roots(&seq, &lo, &hi);
        if c == 0 {
            continue;
        }
        if c == 1 {
            isolated.push((lo, hi));
            continue;
        }
        let mid = (lo.clone() + hi.clone()) / q(2);
        if sf.eval(&mid).is_zero() {
            found.push(mid.clone());
            // step off the root until it is alone in (mid - d, mid + d]
            let mut d = (hi.clone() - lo.clone()) / q(4);
            loop {
                let a = mid.clone() - d.clone();
                let b = mid.clone() + d.clone();
                if !sf.eval(&a).is_zero()
                    && !sf.eval(&b).is_zero()
                    && count_roots(&seq, &a, &b) == 1
                {
                    stack.push((lo, a));
                    stack.push((b, hi));
                    break;
                }
                d /= q(2);
            }
        } else {
            stack.push((lo, mid.clone()));
            stack.push((mid, hi));
        }
    }

    for (mut lo, mut hi) in isolated {
        // the endpoints are never roots here, so the simple root is a sign change
        let lo_positive = sf.eval(&lo).is_positive();
        let mut exact = None;
        while hi.clone() - lo.clone() >= tolerance {
            let mid = (lo.clone() + hi.clone()) / q(2);
            let v = sf.eval(&mid);
            if v.is_zero() {
                exact = Some(mid);
                break;
            }
            if v.is_positive() == lo_positive {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let candidate = exact.unwrap_or_else(|| simplest_between(&lo, &hi));
        if sf.eval(&candidate).is_zero() {
            found.push(candidate);
        }
    }
    found
}

/// The fraction with the smallest denominator in the closed interval `[lo, hi]`.
pub fn simplest_between(lo: &Q, hi: &Q) -> Q {
    debug_assert!(lo <= hi);
    if !lo.is_positive() && !hi.is_negative() {
        return Q::zero();
    }
    if hi.is_negative() {
        return -simplest_between(&-hi.clone(), &-lo.clone());
    }
    let ceil = lo.ceil();
    if &ceil <= hi {
        return ceil;
    }
    let fl = lo.floor();
    let inner = simplest_between(
        &(Q::one() / (hi.clone() - fl.clone())),
        &(Q::one() / (lo.clone() - fl.clone())),
    );
    fl + Q::one() / inner
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly(1, 0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::qf;

    fn up(c: &[i64]) -> UniPoly {
        UniPoly::new(c.iter().map(|&v| q(v)).collect())
    }

    /// Brute-force oracle: every p/q with |p| <= 60, 1 <= q <= 12.
    fn brute_roots(p: &UniPoly) -> Vec<Q> {
        let mut out = Vec::new();
        for den in 1..=12 {
            for num in -60..=60 {
                let r = qf(num, den);
                if p.eval(&r).is_zero() && !out.contains(&r) {
                    out.push(r);
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn finds_rational_roots_with_multiplicity() {
        // (t - 1)^2 (t + 2) (3t - 1) (t^2 - 2)
        let p = up(&[-1, 1])
            .mul(&up(&[-1, 1]))
            .mul(&up(&[2, 1]))
            .mul(&up(&[-1, 3]))
            .mul(&up(&[-2, 0, 1]));
        let split = p.rational_roots();
        assert_eq!(split.roots, vec![(q(-2), 1), (qf(1, 3), 1), (q(1), 2)]);
        assert_eq!(split.residual, up(&[-2, 0, 1]));
        assert!(!split.all_rational());
        let roots: Vec<Q> = split.roots.iter().map(|r| r.0.clone()).collect();
        assert_eq!(roots, brute_roots(&p));
    }

    #[test]
    fn close_roots_are_separated() {
        // roots 1/7 and 1/6 and 7/41
        let p = up(&[-1, 7]).mul(&up(&[-1, 6])).mul(&up(&[-7, 41]));
        let split = p.rational_roots();
        assert_eq!(
            split.roots.iter().map(|r| r.0.clone()).collect::<Vec<_>>(),
            vec![qf(1, 7), qf(1, 6), qf(7, 41)]
        );
        assert!(split.all_rational());
    }

    #[test]
    fn no_real_roots() {
        let split = up(&[1, 0, 1]).rational_roots();
        assert!(split.roots.is_empty());
        assert_eq!(split.residual, up(&[1, 0, 1]));
    }

    #[test]
    fn root_at_a_bisection_point() {
        // 0 is the first midpoint tried
        let p = up(&[0, -1, 0, 1]);
        let split = p.rational_roots();
        assert_eq!(
            split.roots.iter().map(|r| r.0.clone()).collect::<Vec<_>>(),
            vec![q(-1), q(0), q(1)]
        );
    }

    #[test]
    fn simplest_fraction() {
        assert_eq!(simplest_between(&qf(3, 10), &qf(4, 10)), qf(1, 3));
        assert_eq!(simplest_between(&qf(-12, 5), &qf(-9, 4)), qf(-7, 3));
        assert_eq!(simplest_between(&qf(-5, 2), &qf(-9, 4)), qf(-5, 2));
        assert_eq!(simplest_between(&qf(-1, 2), &qf(1, 2)), q(0));
        assert_eq!(simplest_between(&qf(5, 2), &qf(7, 2)), q(3));
    }
}
