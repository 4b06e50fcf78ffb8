use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactalg::{modp, Poly};

use super::maprep::MapRep;
use super::MapError;

/// Smallest modulus accepted for screening.
pub const MIN_PRECHECK_PRIME: u64 = 1 << 20;
/// Resampling cap when a random point lands on the vanishing locus.
pub const MAX_REJECTIONS: usize = 50;

struct ModPoly {
    terms: Vec<(Vec<u32>, u64)>,
}

impl ModPoly {
    /// `None` if `p` divides a coefficient denominator.
    fn reduce(poly: &Poly, p: u64) -> Option<Self> {
        let terms = poly
            .terms()
            .map(|(m, c)| Some((m.exponents().to_vec(), modp::reduce(c, p)?)))
            .collect::<Option<Vec<_>>>()?;
        Some(ModPoly { terms })
    }

    fn eval(&self, x: &[u64], p: u64) -> u64 {
        self.terms.iter().fold(0, |acc, (exps, c)| {
            let t = exps
                .iter()
                .zip(x)
                .fold(*c, |t, (&e, &v)| modp::mul(t, modp::pow(v, e as u64, p), p));
            modp::add(acc, t, p)
        })
    }
}

fn reduce_map(map: &MapRep, p: u64) -> Option<Vec<ModPoly>> {
    map.components()
        .iter()
        .map(|c| ModPoly::reduce(c, p))
        .collect()
}

fn proportional(a: &[u64], b: &[u64], p: u64) -> bool {
    a.iter().enumerate().all(|(i, &ai)| {
        b.iter()
            .enumerate()
            .all(|(j, &bj)| modp::mul(ai, bj, p) == modp::mul(a[j], b[i], p))
    })
}

/// `numeric_precheck`: evaluates `G(F(x))` at random points of `F_p^{n+1}`.
///
/// `false` proves that `verify_birational_pair(F, G)` fails. `true` is only
/// evidence: points where `F` or `G(F)` vanishes identically are resampled
/// (at most [`MAX_REJECTIONS`] times per trial, after which the trial counts
/// as passed), and a modulus dividing a coefficient denominator makes the
/// screen inconclusive, which is reported as `true`.
pub fn numeric_precheck(
    f: &MapRep,
    g: &MapRep,
    trials: usize,
    p: u64,
    seed: u64,
) -> Result<bool, MapError> {
    if !(MIN_PRECHECK_PRIME..1 << 62).contains(&p) || !modp::is_prime(p) {
        return Err(MapError::InvalidModulus(p));
    }
    if f.nvars() != g.nvars() {
        return Err(MapError::DimensionMismatch {
            left: f.dim(),
            right: g.dim(),
        });
    }
    let (Some(fm), Some(gm)) = (reduce_map(f, p), reduce_map(g, p)) else {
        return Ok(true);
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = f.nvars();
    for _ in 0..trials {
        for _ in 0..MAX_REJECTIONS {
            let x: Vec<u64> = (0..n).map(|_| rng.random_range(0..p)).collect();
            let y: Vec<u64> = fm.iter().map(|c| c.eval(&x, p)).collect();
            if y.iter().all(|&v| v == 0) {
                continue;
            }
            let z: Vec<u64> = gm.iter().map(|c| c.eval(&y, p)).collect();
            if z.iter().all(|&v| v == 0) {
                continue;
            }
            if !proportional(&z, &x, p) {
                return Ok(false);
            }
            break;
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mapalg::BirationalMap;

    const P: u64 = 2_147_483_647;

    #[test]
    fn precheck_examples() {
        let s = BirationalMap::standard_quadratic(2).unwrap();
        let id = MapRep::identity(2);
        assert!(numeric_precheck(s.forward(), s.inverse(), 100, P, 1).unwrap());
        assert!(!numeric_precheck(s.forward(), &id, 100, P, 1).unwrap());
        assert!(numeric_precheck(&id, &id, 1, P, 1).unwrap());
    }

    #[test]
    fn rejects_bad_modulus() {
        let id = MapRep::identity(2);
        assert_eq!(
            numeric_precheck(&id, &id, 1, 1_000_001 << 2, 0),
            Err(MapError::InvalidModulus(4_000_004))
        );
        assert_eq!(
            numeric_precheck(&id, &id, 1, 101, 0),
            Err(MapError::InvalidModulus(101))
        );
    }
}
