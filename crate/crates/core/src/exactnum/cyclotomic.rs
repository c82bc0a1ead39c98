use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::arith::{divisors, factor_u64};
use super::{rat_mod_p, rat_to_f64, Field, Int, Rat};
use crate::error::{Error, Result};
use crate::polyfield::Poly;

fn phi_cache() -> &'static RwLock<HashMap<u64, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Integer coefficients of `Φ_n`, constant term first.
pub(crate) fn phi_coeffs(n: u64) -> Arc<Vec<i64>> {
    if let Some(c) = phi_cache().read().expect("cache poisoned").get(&n) {
        return c.clone();
    }
    // z^n - 1 divided by Φ_d for every proper divisor d of n.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in divisors(n) {
        if d == n {
            continue;
        }
        let div = phi_coeffs(d);
        let dd = div.len() - 1;
        let mut quot = vec![0i64; num.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = num[i + dd];
            quot[i] = c;
            if c != 0 {
                for (j, &b) in div.iter().enumerate() {
                    num[i + j] -= c * b;
                }
            }
        }
        num = quot;
    }
    let out = Arc::new(num);
    phi_cache()
        .write()
        .expect("cache poisoned")
        .insert(n, out.clone());
    out
}

/// The `n`-th cyclotomic polynomial over the rationals.
pub fn cyclotomic_polynomial(n: u64) -> Result<Poly<Rat>> {
    if n == 0 {
        return Err(Error::Precondition(
            "cyclotomic index must be positive".into(),
        ));
    }
    Ok(Poly::new(
        phi_coeffs(n)
            .iter()
            .map(|&c| Rat::from_integer(BigInt::from(c)))
            .collect(),
    ))
}

/// An element of `ℚ(ζ_n)` stored as a vector of `φ(n)` rational coordinates
/// in the power basis `1, ζ_n, …, ζ_n^{φ(n)-1}`.
#[derive(Clone, Debug)]
pub struct CycRat {
    n: u64,
    coeffs: Vec<Rat>,
}

fn reduce_vec(n: u64, mut v: Vec<Rat>) -> Vec<Rat> {
    let phi = phi_coeffs(n);
    let deg = phi.len() - 1;
    if v.len() > deg {
        for i in (deg..v.len()).rev() {
            if Zero::is_zero(&v[i]) {
                continue;
            }
            let c = v[i].clone();
            for (j, &b) in phi.iter().enumerate() {
                if b != 0 {
                    let t = &c * Rat::from_integer(BigInt::from(b));
                    v[i - deg + j] -= t;
                }
            }
        }
    }
    v.resize(deg, <Rat as Zero>::zero());
    v
}

impl CycRat {
    /// The element `Σ coeffs[i] ζ_n^i`, reduced modulo `Φ_n`.
    pub fn new(n: u64, coeffs: Vec<Rat>) -> Self {
        assert!(n >= 1, "conductor must be positive");
        CycRat {
            n,
            coeffs: reduce_vec(n, coeffs),
        }
    }

    pub fn from_rat(q: Rat) -> Self {
        CycRat {
            n: 1,
            coeffs: vec![q],
        }
    }

    pub fn from_int(k: i64) -> Self {
        Self::from_rat(Rat::from_integer(BigInt::from(k)))
    }

    /// `ζ_n^j` for `ζ_n = exp(2πi/n)`.
    pub fn zeta(n: u64, j: u64) -> Self {
        let j = (j % n) as usize;
        let mut v = vec![<Rat as Zero>::zero(); j + 1];
        v[j] = <Rat as One>::one();
        Self::new(n, v)
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// The rational value, when the element lies in `ℚ`.
    pub fn as_rational(&self) -> Option<Rat> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(
                self.coeffs
                    .first()
                    .cloned()
                    .unwrap_or_else(<Rat as Zero>::zero),
            )
        } else {
            None
        }
    }

    /// Rewrites the element over a conductor that is a multiple of the current one.
    pub fn lift(&self, big: u64) -> Self {
        if big == self.n {
            return self.clone();
        }
        assert!(big.is_multiple_of(self.n), "lift target must be a multiple");
        let step = (big / self.n) as usize;
        let mut v = vec![<Rat as Zero>::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i * step] = c.clone();
        }
        Self::new(big, v)
    }

    fn align(&self, other: &Self) -> (Self, Self) {
        let big = self.n.lcm(&other.n);
        (self.lift(big), other.lift(big))
    }

    fn map_exponents(&self, f: impl Fn(u64) -> u64) -> Self {
        let mut v = vec![<Rat as Zero>::zero(); self.n as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let j = (f(i as u64) % self.n) as usize;
            v[j] += c;
        }
        Self::new(self.n, v)
    }

    /// Complex conjugation, the automorphism `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        let n = self.n;
        self.map_exponents(|i| (n - i % n) % n)
    }

    /// The automorphism `ζ ↦ ζ^j` for `j` coprime to the conductor.
    pub fn galois(&self, j: u64) -> Self {
        self.map_exponents(|i| i * j)
    }

    /// Field norm down to `ℚ`.
    pub fn norm(&self) -> Rat {
        let n = self.n;
        let mut acc = CycRat::from_int(1);
        for j in 1..=n {
            if j.gcd(&n) == 1 {
                acc = acc.times(&self.galois(j));
            }
        }
        acc.as_rational().expect("norm lies in the rationals")
    }

    /// Least common denominator of the power-basis coordinates.
    pub fn denominator(&self) -> Int {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    pub fn pow(&self, e: &Int) -> Result<Self> {
        let base = if e.is_negative() {
            self.inverse()?
        } else {
            self.clone()
        };
        let mut e = e.abs();
        let mut base = base;
        let mut acc = Self::one();
        let two = BigInt::from(2);
        while !e.is_zero() {
            if e.is_odd() {
                acc = acc.times(&base);
            }
            base = base.times(&base);
            e /= &two;
        }
        Ok(acc)
    }

    /// Exponent `j` with `self = ζ_k^j`, when such a `j` exists.
    pub fn discrete_log(&self, k: u64) -> Option<u64> {
        let mut z = CycRat::one();
        let step = CycRat::zeta(k, 1);
        for j in 0..k {
            if z == *self {
                return Some(j);
            }
            z = z.times(&step);
        }
        None
    }
}

/// Smallest `m ≥ 1` with `x^m = 1`, or `None` when `x` is not a root of unity.
pub fn root_of_unity_order(x: &CycRat) -> Result<Option<u64>> {
    if x.is_zero() {
        return Err(Error::ZeroInput("root_of_unity_order"));
    }
    let bound = 2 * x.n;
    if !x.pow_u64(bound).is_one() {
        return Ok(None);
    }
    let mut ord = bound;
    for (q, _) in factor_u64(bound) {
        while ord.is_multiple_of(q) && x.pow_u64(ord / q).is_one() {
            ord /= q;
        }
    }
    Ok(Some(ord))
}

impl PartialEq for CycRat {
    fn eq(&self, other: &Self) -> bool {
        if self.n == other.n {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.align(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycRat {}

impl Field for CycRat {
    fn zero() -> Self {
        CycRat::from_rat(<Rat as Zero>::zero())
    }
    fn one() -> Self {
        CycRat::from_rat(<Rat as One>::one())
    }
    fn from_rat(q: Rat) -> Self {
        CycRat::from_rat(q)
    }
    fn from_cyc(x: &CycRat) -> Result<Self> {
        Ok(x.clone())
    }
    fn to_cyc(&self) -> CycRat {
        self.clone()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
    fn is_one(&self) -> bool {
        self.coeffs.first().is_some_and(One::is_one)
            && self.coeffs.iter().skip(1).all(Zero::is_zero)
    }
    fn plus(&self, other: &Self) -> Self {
        let (a, b) = self.align(other);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect();
        CycRat { n: a.n, coeffs }
    }
    fn minus(&self, other: &Self) -> Self {
        let (a, b) = self.align(other);
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect();
        CycRat { n: a.n, coeffs }
    }
    fn times(&self, other: &Self) -> Self {
        if self.n == 1 {
            let q = &self.coeffs[0];
            return CycRat {
                n: other.n,
                coeffs: other.coeffs.iter().map(|c| c * q).collect(),
            };
        }
        if other.n == 1 {
            return other.times(self);
        }
        let (a, b) = self.align(other);
        let mut v = vec![<Rat as Zero>::zero(); a.coeffs.len() + b.coeffs.len()];
        for (i, x) in a.coeffs.iter().enumerate() {
            if Zero::is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !Zero::is_zero(y) {
                    v[i + j] += x * y;
                }
            }
        }
        CycRat::new(a.n, v)
    }
    fn negate(&self) -> Self {
        CycRat {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
    fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.n == 1 || self.coeffs.len() == 1 {
            let q = self.coeffs[0].recip();
            return Ok(CycRat::new(self.n, vec![q]));
        }
        let a = Poly::new(self.coeffs.clone());
        let m = cyclotomic_polynomial(self.n)?;
        let (g, s, _) = a.ext_gcd(&m)?;
        // g is a nonzero constant because Φ_n is irreducible and deg a < deg Φ_n.
        let c = g.coeff(0).inverse()?;
        Ok(CycRat::new(
            self.n,
            s.coeffs().iter().map(|x| x * &c).collect(),
        ))
    }
    fn conductor(&self) -> u64 {
        self.n
    }
    fn reduce_mod(&self, p: u64, big_n: u64, omega: u64) -> Option<u64> {
        let w = super::powmod(omega, big_n / self.n, p);
        let mut acc = 0u64;
        let mut wp = 1u64;
        for c in &self.coeffs {
            let r = rat_mod_p(c, p)?;
            acc = (acc + super::mulmod(r, wp, p)) % p;
            wp = super::mulmod(wp, w, p);
        }
        Some(acc)
    }
    fn to_complex(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            let t = std::f64::consts::TAU * i as f64 / self.n as f64;
            let v = rat_to_f64(c);
            re += v * t.cos();
            im += v * t.sin();
        }
        (re, im)
    }
}

impl fmt::Display for CycRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let z = match i {
                0 => String::new(),
                1 => format!("zeta({})", self.n),
                _ => format!("zeta({})^{}", self.n, i),
            };
            match (z.is_empty(), One::is_one(&a)) {
                (true, _) => write!(f, "{a}")?,
                (false, true) => write!(f, "{z}")?,
                (false, false) => write!(f, "{a}*{z}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}
