//! Multivariate gcd by recursive content / primitive-part reduction.
//!
//! A polynomial in `x0 .. xk` is viewed as univariate in its highest occurring
//! variable with coefficients in the remaining ones. The primitive parts are
//! combined with a primitive pseudo-remainder sequence and the contents by a
//! recursive gcd. Results are normalized to leading coefficient 1.

use super::field::Field;
use super::poly::Poly;
use super::AlgError;

fn main_var<K: Field>(a: &Poly<K>, b: &Poly<K>) -> Option<usize> {
    (0..a.nvars())
        .rev()
        .find(|&v| a.involves(v) || b.involves(v))
}

/// Greatest common divisor, monic. `gcd(0, 0)` is `0`.
pub fn gcd<K: Field>(a: &Poly<K>, b: &Poly<K>) -> Poly<K> {
    assert_eq!(a.nvars(), b.nvars(), "gcd across rings");
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(a.nvars());
    }
    if a.num_terms() == 1 && b.num_terms() == 1 {
        return monomial_gcd(a, b);
    }
    let v = main_var(a, b).expect("nonconstant polynomial has a variable");
    if !a.involves(v) {
        return gcd(a, &content_in(b, v));
    }
    if !b.involves(v) {
        return gcd(&content_in(a, v), b);
    }

    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd(&ca, &cb);
    let mut r0 = a.exact_div(&ca).expect("content divides");
    let mut r1 = b.exact_div(&cb).expect("content divides");
    if r0.degree_in(v) < r1.degree_in(v) {
        std::mem::swap(&mut r0, &mut r1);
    }
    loop {
        let r = pseudo_rem(&r0, &r1, v);
        if r.is_zero() {
            break;
        }
        if !r.involves(v) {
            // the primitive parts are coprime in v
            return c.monic();
        }
        r0 = r1;
        r1 = primitive_part_in(&r, v);
    }
    (&c * &primitive_part_in(&r1, v)).monic()
}

fn monomial_gcd<K: Field>(a: &Poly<K>, b: &Poly<K>) -> Poly<K> {
    let (ma, _) = a.leading_term().unwrap();
    let (mb, _) = b.leading_term().unwrap();
    let exps = ma
        .exponents()
        .iter()
        .zip(mb.exponents())
        .map(|(x, y)| *x.min(y))
        .collect();
    Poly::term(super::Monomial::new(exps), K::one())
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `var`.
pub fn content_in<K: Field>(p: &Poly<K>, var: usize) -> Poly<K> {
    let mut g = Poly::zero(p.nvars());
    for c in p.coeffs_in(var) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_constant() {
            break;
        }
    }
    g
}

/// `p / content_in(p, var)`, scaled to leading coefficient 1.
pub fn primitive_part_in<K: Field>(p: &Poly<K>, var: usize) -> Poly<K> {
    if p.is_zero() {
        return p.clone();
    }
    let c = content_in(p, var);
    p.exact_div(&c).expect("content divides").monic()
}

/// Pseudo-remainder of `a` by `b` as polynomials in `var`.
fn pseudo_rem<K: Field>(a: &Poly<K>, b: &Poly<K>, var: usize) -> Poly<K> {
    let n = a.nvars();
    let db = b.degree_in(var);
    let lc_b = b.coeffs_in(var).pop().unwrap();
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(var) >= db {
        let dr = r.degree_in(var);
        let lc_r = r.coeffs_in(var).pop().unwrap();
        let shift = super::Monomial::var(n, var);
        let mut shifted = b * &lc_r;
        for _ in 0..(dr - db) {
            shifted = shifted.mul_monomial(&shift);
        }
        r = &(&r * &lc_b) - &shifted;
    }
    r
}

/// Gcd of all entries; used to make map tuples primitive.
pub fn tuple_content<K: Field>(ts: &[Poly<K>]) -> Result<Poly<K>, AlgError> {
    let first = ts.first().ok_or(AlgError::ZeroTuple)?;
    let mut g = Poly::zero(first.nvars());
    for t in ts {
        g = gcd(&g, t);
        if g.is_constant() && !g.is_zero() {
            break;
        }
    }
    if g.is_zero() {
        Err(AlgError::ZeroTuple)
    } else {
        Ok(g)
    }
}

/// True iff `s` has no repeated factor.
///
/// In characteristic zero an irreducible `h` with `h^2 | s` divides every
/// partial derivative, while a factor dividing `s` and all partials would have
/// all its own partials divisible by itself, which forces it to be constant.
/// So `s` is squarefree iff `gcd(s, ds/dx0, .., ds/dxn)` is constant.
pub fn is_squarefree<K: Field>(s: &Poly<K>) -> bool {
    if s.is_zero() {
        return false;
    }
    let mut g = s.clone();
    for v in 0..s.nvars() {
        if g.is_constant() {
            return true;
        }
        let d = s.derivative(v);
        if !d.is_zero() {
            g = gcd(&g, &d);
        }
    }
    g.is_constant()
}

/// Product of the distinct irreducible factors of `s` (up to scalar).
pub fn squarefree_part<K: Field>(s: &Poly<K>) -> Poly<K> {
    if s.is_zero() || s.is_constant() {
        return s.monic();
    }
    let mut g = s.clone();
    for v in 0..s.nvars() {
        let d = s.derivative(v);
        if !d.is_zero() {
            g = gcd(&g, &d);
        }
    }
    s.exact_div(&g).expect("gcd divides").monic()
}

/// True iff `d` divides `p` exactly.
pub fn divides<K: Field>(d: &Poly<K>, p: &Poly<K>) -> bool {
    if d.is_zero() {
        return p.is_zero();
    }
    p.exact_div(d).is_ok()
}

/// Returns `p` with every factor shared with `f` removed, and the removed part.
pub fn strip_common<K: Field>(p: &Poly<K>, f: &Poly<K>) -> (Poly<K>, Poly<K>) {
    let mut rest = p.clone();
    let mut removed = Poly::one(p.nvars());
    loop {
        let g = gcd(&rest, f);
        if g.is_constant() {
            return (rest, removed);
        }
        rest = rest.exact_div(&g).expect("gcd divides");
        removed = &removed * &g;
    }
}
