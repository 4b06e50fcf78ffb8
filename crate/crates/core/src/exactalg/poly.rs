use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Field, Q};
use super::monomial::Monomial;
use super::AlgError;

/// Sparse multivariate polynomial with coefficients in `K`.
///
/// Terms are keyed by [`Monomial`] in graded reverse lexicographic order and
/// no stored coefficient is zero. The ring has a fixed number of variables
/// `x0 .. x{nvars-1}`; mixing rings is an error (`try_*`) or a panic (operators).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<K: Field = Q> {
    nvars: usize,
    terms: BTreeMap<Monomial, K>,
}

impl<K: Field> Poly<K> {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, K::one())
    }

    pub fn constant(nvars: usize, c: K) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(
            i < nvars,
            "variable x{i} outside a ring of {nvars} variables"
        );
        Self::term(Monomial::var(nvars, i), K::one())
    }

    pub fn term(m: Monomial, c: K) -> Self {
        let nvars = m.nvars();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { nvars, terms }
    }

    /// Builds a polynomial from exponent vectors, summing repeated monomials.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, K)>,
    {
        let mut p = Poly::zero(nvars);
        for (exps, c) in terms {
            assert_eq!(exps.len(), nvars, "exponent vector length");
            p.add_term(Monomial::new(exps), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: K) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial (zero for the zero polynomial).
    pub fn constant_value(&self) -> Option<K> {
        match self.terms.len() {
            0 => Some(K::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms from the leading monomial downwards.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &K)> + '_ {
        self.terms.iter().rev()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &K)> {
        self.terms.last_key_value()
    }

    pub fn leading_coeff(&self) -> Option<&K> {
        self.leading_term().map(|(_, c)| c)
    }

    pub fn coeff(&self, m: &Monomial) -> K {
        self.terms.get(m).cloned().unwrap_or_else(K::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    /// Lowest total degree among the terms; `None` for the zero polynomial.
    pub fn min_degree(&self) -> Option<u32> {
        self.terms.first_key_value().map(|(m, _)| m.degree())
    }

    /// `Some(d)` iff the polynomial is nonzero with every term of degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.degree()?;
        (self.min_degree() == Some(d)).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_degree().is_some()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exponent(var))
            .max()
            .unwrap_or(0)
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.exponent(var) > 0)
    }

    pub fn homogeneous_part(&self, d: u32) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    fn check_ring(&self, other: &Self) -> Result<(), AlgError> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(AlgError::RingMismatch {
                left: self.nvars,
                right: other.nvars,
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgError> {
        self.check_ring(other)?;
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut acc = Poly::one(self.nvars);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(t, a)| (t.mul(m), a.clone()))
                .collect(),
        }
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(lc) if !lc.is_one() => self.scale(&(K::one() / lc.clone())),
            _ => self.clone(),
        }
    }

    /// Equality up to a nonzero scalar factor.
    pub fn proj_eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.monic() == other.monic()
    }

    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e > 0 {
                out.add_term(
                    m.with_exponent(var, e - 1),
                    c.clone() * K::from_i64(e as i64),
                );
            }
        }
        out
    }

    pub fn eval(&self, point: &[K]) -> K {
        assert_eq!(point.len(), self.nvars, "evaluation point dimension");
        let mut acc = K::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                for _ in 0..e {
                    t = t * x.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Formal substitution `x_i -> tuple[i]`, fully expanded in the ring of the tuple.
    pub fn substitute(&self, tuple: &[Poly<K>]) -> Result<Poly<K>, AlgError> {
        if tuple.len() != self.nvars {
            return Err(AlgError::TupleLength {
                expected: self.nvars,
                got: tuple.len(),
            });
        }
        let Some(first) = tuple.first() else {
            // polynomial in zero variables: a constant
            return Ok(Poly {
                nvars: 0,
                terms: self.terms.clone(),
            });
        };
        let target = first.nvars;
        if let Some(bad) = tuple.iter().find(|t| t.nvars != target) {
            return Err(AlgError::RingMismatch {
                left: target,
                right: bad.nvars,
            });
        }
        // powers[i][e] = tuple[i]^e, built on demand
        let mut powers: Vec<Vec<Poly<K>>> = tuple.iter().map(|_| vec![Poly::one(target)]).collect();
        for (i, t) in tuple.iter().enumerate() {
            let need = self.degree_in(i) as usize;
            while powers[i].len() <= need {
                let next = powers[i].last().unwrap() * t;
                powers[i].push(next);
            }
        }
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut prod = Poly::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    prod = &prod * &powers[i][e as usize];
                }
            }
            for (tm, tc) in prod.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }

    /// Exact quotient `self / b`, or `NotDivisible`.
    pub fn exact_div(&self, b: &Self) -> Result<Self, AlgError> {
        self.check_ring(b)?;
        let (lm_b, lc_b) = b.leading_term().ok_or(AlgError::DivisionByZero)?;
        let (lm_b, lc_b) = (lm_b.clone(), lc_b.clone());
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars);
        while let Some((lm_r, lc_r)) = rem.leading_term() {
            // leading monomials multiply, so a failed monomial division is final
            let Some(qm) = lm_r.div(&lm_b) else {
                return Err(AlgError::NotDivisible);
            };
            let qc = lc_r.clone() / lc_b.clone();
            for (m, c) in &b.terms {
                rem.add_term(m.mul(&qm), -(c.clone() * qc.clone()));
            }
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// Sets `x_var = value`, keeping the ring (the variable no longer occurs).
    pub fn set_var(&self, var: usize, value: &K) -> Self {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            let mut coef = c.clone();
            for _ in 0..e {
                coef = coef * value.clone();
            }
            out.add_term(m.with_exponent(var, 0), coef);
        }
        out
    }

    /// Sets `x_var = 1`, keeping the ring.
    pub fn dehomogenize(&self, var: usize) -> Self {
        self.set_var(var, &K::one())
    }

    /// Inverse of [`dehomogenize`](Self::dehomogenize) for a target degree `d`.
    pub fn homogenize(&self, var: usize, d: u32) -> Result<Self, AlgError> {
        let degree = self.degree().unwrap_or(0);
        if degree > d {
            return Err(AlgError::HomogenizeDegree { degree, target: d });
        }
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponent(var) + d - m.degree();
            out.add_term(m.with_exponent(var, e), c.clone());
        }
        Ok(out)
    }

    /// Sets `x_var = value` and removes the variable from the ring.
    pub fn specialize(&self, var: usize, value: &K) -> Self {
        let mut out = Poly::zero(self.nvars - 1);
        for (m, c) in &self.set_var(var, value).terms {
            out.add_term(m.without_var(var), c.clone());
        }
        out
    }

    /// Views the polynomial in a ring with `extra` more trailing variables.
    pub fn extend_vars(&self, extra: usize) -> Self {
        Poly {
            nvars: self.nvars + extra,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.extended(extra), c.clone()))
                .collect(),
        }
    }

    /// Coefficients with respect to `var`: entry `k` multiplies `x_var^k`.
    pub fn coeffs_in(&self, var: usize) -> Vec<Self> {
        let mut out = vec![Poly::zero(self.nvars); self.degree_in(var) as usize + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(var) as usize;
            out[e].add_term(m.with_exponent(var, 0), c.clone());
        }
        out
    }

    pub fn from_coeffs_in(nvars: usize, var: usize, coeffs: &[Self]) -> Self {
        let mut out = Poly::zero(nvars);
        for (k, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                out.add_term(m.with_exponent(var, m.exponent(var) + k as u32), a.clone());
            }
        }
        out
    }

    pub fn map_coeffs<L: Field>(&self, f: impl Fn(&K) -> L) -> Poly<L> {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $try:ident) => {
        impl<K: Field> $tr<&Poly<K>> for &Poly<K> {
            type Output = Poly<K>;
            fn $method(self, rhs: &Poly<K>) -> Poly<K> {
                self.$try(rhs).expect("polynomial ring mismatch")
            }
        }
        impl<K: Field> $tr<Poly<K>> for Poly<K> {
            type Output = Poly<K>;
            fn $method(self, rhs: Poly<K>) -> Poly<K> {
                (&self).$method(&rhs)
            }
        }
        impl<K: Field> $tr<&Poly<K>> for Poly<K> {
            type Output = Poly<K>;
            fn $method(self, rhs: &Poly<K>) -> Poly<K> {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl<K: Field> Neg for &Poly<K> {
    type Output = Poly<K>;
    fn neg(self) -> Poly<K> {
        self.scale(&-K::one())
    }
}

impl<K: Field> Neg for Poly<K> {
    type Output = Poly<K>;
    fn neg(self) -> Poly<K> {
        -&self
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        write!(f, "x{i}")?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

/// Canonical text: terms from the leading monomial down, `*` between factors,
/// `^` for powers, variables `x0 .. xN`. The zero polynomial prints as `0`.
impl<K: Field> fmt::Display for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms().enumerate() {
            let text = c.to_string();
            let (negative, magnitude) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            match (idx, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                f.write_str(&magnitude)?;
            } else {
                if magnitude != "1" {
                    write!(f, "{magnitude}*")?;
                }
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}
