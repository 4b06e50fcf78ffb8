use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact rational numbers, the coefficient domain for every verdict.
pub type Q = BigRational;

/// Coefficient field of a [`Poly`](super::Poly).
///
/// Division by zero panics, as it does for `BigRational`.
pub trait Field:
    Clone
    + Eq
    + Hash
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn from_i64(v: i64) -> Self;
}

impl Field for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

/// Integer as a rational.
pub fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// `num / den` as a reduced rational. Panics if `den == 0`.
pub fn qf(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Element of the prime field `F_P`, stored in `[0, P)`.
///
/// `P` must be prime and below `2^63`; nothing checks this at compile time.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp<const P: u64>(u64);

impl<const P: u64> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp(1 % P);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn inv(self) -> Option<Self> {
        if self.0 == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }
}

impl<const P: u64> Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.0, P)
    }
}

impl<const P: u64> Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Fp(((self.0 as u128 + o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Fp(((self.0 as u128 + P as u128 - o.0 as u128) % P as u128) as u64)
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp(((self.0 as u128 * o.0 as u128) % P as u128) as u64)
    }
}

#[allow(clippy::suspicious_arithmetic_impl)]
impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        self * o.inv().expect("division by zero in F_p")
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp((P - self.0) % P)
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u64> Field for Fp<P> {
    fn from_i64(v: i64) -> Self {
        Fp::new(v)
    }
}

/// Runtime prime-field helpers used by numeric screening, where the modulus is
/// only known at run time.
pub mod modp {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::ToPrimitive;

    use super::Q;

    pub fn mul(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    pub fn add(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 + b as u128) % p as u128) as u64
    }

    pub fn pow(mut base: u64, mut e: u64, p: u64) -> u64 {
        let mut acc = 1 % p;
        base %= p;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, base, p);
            }
            base = mul(base, base, p);
            e >>= 1;
        }
        acc
    }

    /// Reduces a rational modulo `p`; `None` when `p` divides the denominator.
    pub fn reduce(v: &Q, p: u64) -> Option<u64> {
        let pb = BigInt::from(p);
        let num = v.numer().mod_floor(&pb).to_u64()?;
        let den = v.denom().mod_floor(&pb).to_u64()?;
        if den == 0 {
            return None;
        }
        Some(mul(num, pow(den, p - 2, p), p))
    }

    /// Deterministic Miller-Rabin for 64-bit integers.
    pub fn is_prime(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
        for &w in &WITNESSES {
            if n.is_multiple_of(w) {
                return n == w;
            }
        }
        let mut d = n - 1;
        let mut s = 0;
        while d.is_multiple_of(2) {
            d /= 2;
            s += 1;
        }
        'witness: for &a in &WITNESSES {
            let mut x = pow(a, d, n);
            if x == 1 || x == n - 1 {
                continue;
            }
            for _ in 1..s {
                x = mul(x, x, n);
                if x == n - 1 {
                    continue 'witness;
                }
            }
            return false;
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type F7 = Fp<7>;

    #[test]
    fn fp_arithmetic_wraps() {
        assert_eq!(F7::new(-1).value(), 6);
        assert_eq!((F7::new(5) + F7::new(4)).value(), 2);
        assert_eq!((F7::new(3) * F7::new(5)).value(), 1);
        assert_eq!((F7::new(1) / F7::new(3)).value(), 5);
        assert_eq!((-F7::new(0)).value(), 0);
        assert!(F7::new(0).inv().is_none());
    }

    #[test]
    fn modp_reduce_and_primality() {
        assert_eq!(modp::reduce(&qf(1, 2), 7), Some(4));
        assert_eq!(modp::reduce(&qf(-3, 1), 7), Some(4));
        assert_eq!(modp::reduce(&qf(1, 7), 7), None);
        assert!(modp::is_prime(1_000_003));
        assert!(modp::is_prime(2_305_843_009_213_693_951));
        assert!(!modp::is_prime(1_000_001));
        assert!(!modp::is_prime(1));
    }
}
