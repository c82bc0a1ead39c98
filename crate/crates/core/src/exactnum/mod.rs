//! Exact numeric substrate: big integers and rationals, `p`-adic valuations,
//! factorization, multiplicative orders and cyclotomic field arithmetic.

mod arith;
mod cyclotomic;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use arith::{
    divisors, euler_phi, factor_u64, factorize, geometric_sum, int_pow, is_prime, lcm_u64,
    mult_order, nu2_i128, nu_p, nu_p_int, pow_mod, Factorization,
};
pub use cyclotomic::{cyclotomic_polynomial, root_of_unity_order, CycRat};

pub type Int = BigInt;
pub type Rat = BigRational;

/// An exact field usable as polynomial coefficients.
///
/// Implemented by [`Rat`] and [`CycRat`]; the second is a superset of the
/// first, so every field element can be viewed as a [`CycRat`].
pub trait Field: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rat(q: Rat) -> Self;
    fn from_cyc(x: &CycRat) -> Result<Self>;
    fn to_cyc(&self) -> CycRat;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;
    fn inverse(&self) -> Result<Self>;
    fn conductor(&self) -> u64;
    /// Image in `F_p` under `ζ_N ↦ omega`, where `omega` has order `big_n`
    /// and `big_n` is a multiple of the conductor. `None` when a denominator
    /// vanishes modulo `p`.
    fn reduce_mod(&self, p: u64, big_n: u64, omega: u64) -> Option<u64>;
    /// Complex value under `ζ_n ↦ exp(2πi/n)`.
    fn to_complex(&self) -> (f64, f64);

    fn from_int(k: i64) -> Self {
        Self::from_rat(Rat::from_integer(BigInt::from(k)))
    }

    fn pow_u64(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            base = base.times(&base);
            e >>= 1;
        }
        acc
    }
}

pub(crate) fn rat_mod_p(q: &Rat, p: u64) -> Option<u64> {
    let bp = BigInt::from(p);
    let den = (q.denom() % &bp).to_u64()?;
    if den == 0 {
        return None;
    }
    let num = num_integer::Integer::mod_floor(q.numer(), &bp).to_u64()?;
    Some(mulmod(num, powmod(den, p - 2, p), p))
}

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

impl Field for Rat {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_rat(q: Rat) -> Self {
        q
    }
    fn from_cyc(x: &CycRat) -> Result<Self> {
        x.as_rational()
            .ok_or_else(|| Error::Unsupported(format!("{x} is not rational")))
    }
    fn to_cyc(&self) -> CycRat {
        CycRat::from_rat(self.clone())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
    fn conductor(&self) -> u64 {
        1
    }
    fn reduce_mod(&self, p: u64, _big_n: u64, _omega: u64) -> Option<u64> {
        rat_mod_p(self, p)
    }
    fn to_complex(&self) -> (f64, f64) {
        (rat_to_f64(self), 0.0)
    }
}

pub(crate) fn rat_to_f64(q: &Rat) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        if q.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// The rational `num/den`.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}
