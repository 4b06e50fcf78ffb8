// Row operations read one row while writing another.
#![allow(clippy::needless_range_loop)]

use num_traits::{One, Zero};

use super::field::Q;
use super::poly::Poly;
use super::AlgError;

/// Square matrix over the rationals, row major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: Vec<Vec<Q>>,
}

impl QMatrix {
    pub fn new(rows: Vec<Vec<Q>>) -> Result<Self, AlgError> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(AlgError::NotSquare);
        }
        Ok(QMatrix { rows })
    }

    pub fn identity(n: usize) -> Self {
        QMatrix {
            rows: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| if i == j { Q::one() } else { Q::zero() })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn from_columns(cols: &[Vec<Q>]) -> Result<Self, AlgError> {
        let n = cols.len();
        QMatrix::new(
            (0..n)
                .map(|i| cols.iter().map(|c| c[i].clone()).collect())
                .collect(),
        )
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<Q>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.rows[i][j]
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        let n = self.size();
        QMatrix {
            rows: (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            (0..n).fold(Q::zero(), |acc, k| {
                                acc + self.rows[i][k].clone() * other.rows[k][j].clone()
                            })
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .zip(v)
                    .fold(Q::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn determinant(&self) -> Q {
        let mut m = self.rows.clone();
        let n = m.len();
        let mut det = Q::one();
        for k in 0..n {
            let Some(piv) = (k..n).find(|&i| !m[i][k].is_zero()) else {
                return Q::zero();
            };
            if piv != k {
                m.swap(piv, k);
                det = -det;
            }
            det *= m[k][k].clone();
            for i in k + 1..n {
                if m[i][k].is_zero() {
                    continue;
                }
                let f = m[i][k].clone() / m[k][k].clone();
                for j in k..n {
                    let t = m[k][j].clone() * f.clone();
                    m[i][j] = m[i][j].clone() - t;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<QMatrix, AlgError> {
        let n = self.size();
        let mut m: Vec<Vec<Q>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
                row
            })
            .collect();
        for k in 0..n {
            let piv = (k..n)
                .find(|&i| !m[i][k].is_zero())
                .ok_or(AlgError::SingularMatrix)?;
            m.swap(piv, k);
            let p = m[k][k].clone();
            for v in m[k].iter_mut() {
                *v = v.clone() / p.clone();
            }
            for i in 0..n {
                if i == k || m[i][k].is_zero() {
                    continue;
                }
                let f = m[i][k].clone();
                for j in 0..2 * n {
                    let t = m[k][j].clone() * f.clone();
                    m[i][j] = m[i][j].clone() - t;
                }
            }
        }
        Ok(QMatrix {
            rows: m.into_iter().map(|r| r[n..].to_vec()).collect(),
        })
    }

    /// The substitution tuple `x_i -> sum_j M[i][j] * x_j` in `n` variables.
    pub fn linear_forms(&self) -> Vec<Poly> {
        let n = self.size();
        self.rows
            .iter()
            .map(|r| {
                r.iter().enumerate().fold(Poly::zero(n), |acc, (j, c)| {
                    &acc + &Poly::var(n, j).scale(c)
                })
            })
            .collect()
    }

    /// `s(M x)`: the polynomial in the coordinates where `x = M y`.
    pub fn pull_back(&self, s: &Poly) -> Result<Poly, AlgError> {
        s.substitute(&self.linear_forms())
    }
}

/// One solution of `A u = b` over the rationals, free variables set to zero.
pub fn solve_linear(a: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<Q>> = a
        .iter()
        .zip(b)
        .map(|(r, v)| {
            let mut row = r.clone();
            row.push(v.clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(piv, r);
        let p = m[r][c].clone();
        for v in m[r].iter_mut() {
            *v = v.clone() / p.clone();
        }
        for i in 0..rows {
            if i == r || m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].clone();
            for j in c..=cols {
                let t = m[r][j].clone() * f.clone();
                m[i][j] = m[i][j].clone() - t;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut u = vec![Q::zero(); cols];
    for (i, &c) in pivots.iter().enumerate() {
        u[c] = m[i][cols].clone();
    }
    Some(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::field::q;

    fn mat(rows: &[&[i64]]) -> QMatrix {
        QMatrix::new(
            rows.iter()
                .map(|r| r.iter().map(|&v| q(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn inverse_of_shear() {
        let m = mat(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(
            m.inverse().unwrap(),
            mat(&[&[1, -1, 0], &[0, 1, 0], &[0, 0, 1]])
        );
        assert_eq!(m.determinant(), q(1));
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let m = mat(&[&[1, 2], &[2, 4]]);
        assert_eq!(m.inverse(), Err(AlgError::SingularMatrix));
        assert_eq!(m.determinant(), q(0));
        assert_eq!(mat(&[&[0, 1], &[1, 0]]).determinant(), q(-1));
    }

    #[test]
    fn linear_solve() {
        let a = vec![vec![q(1), q(1)], vec![q(1), q(-1)], vec![q(2), q(0)]];
        assert_eq!(
            solve_linear(&a, &[q(3), q(1), q(4)]),
            Some(vec![q(2), q(1)])
        );
        assert_eq!(solve_linear(&a, &[q(3), q(1), q(5)]), None);
    }
}
