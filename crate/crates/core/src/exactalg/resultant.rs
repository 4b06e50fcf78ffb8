use super::field::Q;
use super::poly::Poly;

/// Resultant of `a` and `b` with respect to `var`: the Sylvester determinant,
/// computed fraction-free (Bareiss) over the coefficient ring.
pub fn resultant(a: &Poly, b: &Poly, var: usize) -> Poly {
    let n = a.nvars();
    if a.is_zero() || b.is_zero() {
        return Poly::zero(n);
    }
    let ca = a.coeffs_in(var);
    let cb = b.coeffs_in(var);
    let (m, k) = (ca.len() - 1, cb.len() - 1);
    let size = m + k;
    let mut mat = vec![vec![Poly::<Q>::zero(n); size]; size];
    for i in 0..k {
        for (j, c) in ca.iter().rev().enumerate() {
            mat[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in cb.iter().rev().enumerate() {
            mat[k + i][i + j] = c.clone();
        }
    }
    bareiss_det(mat, n)
}

fn bareiss_det(mut m: Vec<Vec<Poly>>, nvars: usize) -> Poly {
    let size = m.len();
    if size == 0 {
        return Poly::one(nvars);
    }
    let mut negate = false;
    let mut prev = Poly::one(nvars);
    for k in 0..size - 1 {
        if m[k][k].is_zero() {
            let Some(piv) = (k + 1..size).find(|&i| !m[i][k].is_zero()) else {
                return Poly::zero(nvars);
            };
            m.swap(k, piv);
            negate = !negate;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.exact_div(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = Poly::zero(nvars);
        }
        prev = m[k][k].clone();
    }
    let det = m[size - 1][size - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::q;

    fn x(i: usize) -> Poly {
        Poly::var(2, i)
    }

    #[test]
    fn resultant_of_parabola_and_line() {
        // res_y(y^2 - x, y - 1) = 1 - x
        let a = &x(1).pow(2) - &x(0);
        let b = &x(1) - &Poly::one(2);
        let r = resultant(&a, &b, 1);
        assert_eq!(r, &Poly::one(2) - &x(0));
    }

    #[test]
    fn resultant_vanishes_on_common_factor() {
        let f = &x(0) + &x(1);
        let a = &f * &(&x(1) - &Poly::constant(2, q(3)));
        let b = &f * &x(0);
        assert!(resultant(&a, &b, 1).is_zero());
    }

    #[test]
    fn resultant_with_constant_in_var() {
        // a free of y: res = a^deg_y(b)
        let a = &x(0) - &Poly::one(2);
        let b = &x(1).pow(2) + &x(0);
        assert_eq!(resultant(&a, &b, 1), a.pow(2));
    }

    #[test]
    fn circle_and_line_meet_at_rational_x() {
        // x^2 + y^2 - 1 and y - x + 1 meet at x = 0 and x = 1
        let c = &(&x(0).pow(2) + &x(1).pow(2)) - &Poly::one(2);
        let l = &(&x(1) - &x(0)) + &Poly::one(2);
        let r = resultant(&c, &l, 1);
        assert!(r.proj_eq(&(&x(0).pow(2) - &x(0))));
    }
}
