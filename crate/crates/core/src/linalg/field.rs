//! Scalar fields used by the elimination routines.

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use std::fmt::Debug;

/// Exact rational scalar.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qfrac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Arithmetic of a field whose elements are plain values.
pub trait Field: Sync + Send {
    type E: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    /// Multiplicative inverse; callers never pass zero.
    fn inv(&self, a: &Self::E) -> Self::E;
    /// Image of a rational, `None` when the denominator is not invertible.
    fn from_q(&self, x: &Q) -> Option<Self::E>;

    fn from_i64(&self, n: i64) -> Self::E {
        self.from_q(&q(n)).expect("integers embed in every field")
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

pub const QQ: Rationals = Rationals;

impl Field for Rationals {
    type E = Q;

    fn zero(&self) -> Q {
        Q::zero()
    }
    fn one(&self) -> Q {
        Q::one()
    }
    fn is_zero(&self, a: &Q) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Q, b: &Q) -> Q {
        a + b
    }
    fn sub(&self, a: &Q, b: &Q) -> Q {
        a - b
    }
    fn mul(&self, a: &Q, b: &Q) -> Q {
        if a.is_zero() || b.is_zero() {
            return Q::zero();
        }
        a * b
    }
    fn neg(&self, a: &Q) -> Q {
        -a
    }
    fn inv(&self, a: &Q) -> Q {
        a.recip()
    }
    fn from_q(&self, x: &Q) -> Option<Q> {
        Some(x.clone())
    }
}

/// Integers modulo a prime below 2^63.
#[derive(Clone, Copy, Debug)]
pub struct ModP {
    pub p: u64,
}

impl ModP {
    pub fn new(p: u64) -> Self {
        ModP { p }
    }

    pub fn reduce_int(&self, n: &BigInt) -> u64 {
        let r = (n.abs() % BigInt::from(self.p)).to_u64().unwrap();
        if n.is_negative() && r != 0 {
            self.p - r
        } else {
            r
        }
    }

    pub fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        b %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }
}

impl Field for ModP {
    type E = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        self.pow(*a, self.p - 2)
    }
    fn from_q(&self, x: &Q) -> Option<u64> {
        let d = self.reduce_int(x.denom());
        if d == 0 {
            return None;
        }
        let n = self.reduce_int(x.numer());
        Some(self.mul(&n, &self.inv(&d)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modp_inverse_and_embedding() {
        let f = ModP::new(1_000_000_007);
        let a = f.from_q(&qfrac(3, 7)).unwrap();
        assert_eq!(f.mul(&a, &7), 3);
        assert_eq!(f.from_i64(-1), 1_000_000_006);
        assert!(ModP::new(7).from_q(&qfrac(1, 14)).is_none());
    }
}
