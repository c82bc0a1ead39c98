use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::{Int, Rat};
use crate::error::{Error, Result};

/// `p`-adic valuation of a nonzero rational.
pub fn nu_p(x: &Rat, p: &Int) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::ValuationOfZero);
    }
    Ok(nu_p_int(x.numer(), p)? - nu_p_int(x.denom(), p)?)
}

/// `p`-adic valuation of a nonzero integer.
pub fn nu_p_int(x: &Int, p: &Int) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::ValuationOfZero);
    }
    if *p < BigInt::from(2) {
        return Err(Error::Precondition(format!("{p} is not a prime")));
    }
    let mut v = 0;
    let mut y = x.abs();
    loop {
        let (q, r) = y.div_rem(p);
        if !r.is_zero() {
            return Ok(v);
        }
        y = q;
        v += 1;
    }
}

/// 2-adic valuation of a nonzero machine integer.
pub fn nu2_i128(x: i128) -> Result<u32> {
    if x == 0 {
        Err(Error::ValuationOfZero)
    } else {
        Ok(x.trailing_zeros())
    }
}

/// Sign and prime-power decomposition of a nonzero integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    pub sign: i8,
    pub factors: Vec<(Int, u32)>,
}

impl Factorization {
    pub fn product(&self) -> Int {
        let mut acc = BigInt::from(self.sign);
        for (p, e) in &self.factors {
            acc *= num_traits::pow(p.clone(), *e as usize);
        }
        acc
    }

    pub fn exponent_of(&self, p: &Int) -> u32 {
        self.factors
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0, |(_, e)| *e)
    }

    pub fn primes(&self) -> impl Iterator<Item = &Int> {
        self.factors.iter().map(|(p, _)| p)
    }
}

const SMALL_PRIMES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

/// Miller–Rabin with the first thirteen prime bases; deterministic below 3.3·10²⁴.
pub fn is_prime(n: &Int) -> bool {
    if *n < BigInt::from(2) {
        return false;
    }
    for &p in &SMALL_PRIMES {
        let p = BigInt::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'bases: for &a in &SMALL_PRIMES {
        let mut x = BigInt::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn pollard_brent(n: &Int) -> Int {
    let one = BigInt::one();
    let mut c = BigInt::one();
    loop {
        let f = |x: &Int| (x * x + &c) % n;
        let mut x = BigInt::from(2);
        let mut y = x.clone();
        let mut d = one.clone();
        while d == one {
            x = f(&x);
            y = f(&f(&y));
            d = (&x - &y).abs().gcd(n);
        }
        if d != *n {
            return d;
        }
        c += 1;
    }
}

fn split_into(n: Int, out: &mut Vec<Int>) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        out.push(n);
        return;
    }
    let d = pollard_brent(&n);
    let rest = &n / &d;
    split_into(d, out);
    split_into(rest, out);
}

/// Trial division by small primes followed by Miller–Rabin and Pollard–Brent on the cofactor.
pub fn factorize(x: &Int) -> Result<Factorization> {
    if x.is_zero() {
        return Err(Error::ZeroInput("factorize"));
    }
    let sign = if x.sign() == Sign::Minus { -1 } else { 1 };
    let mut n = x.abs();
    let mut primes: Vec<Int> = Vec::new();
    let mut p = 2u32;
    while p < 10_000 {
        let bp = BigInt::from(p);
        if &bp * &bp > n {
            break;
        }
        loop {
            let (q, r) = n.div_rem(&bp);
            if !r.is_zero() {
                break;
            }
            primes.push(bp.clone());
            n = q;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    split_into(n, &mut primes);
    primes.sort();
    let mut factors: Vec<(Int, u32)> = Vec::new();
    for q in primes {
        match factors.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => factors.push((q, 1)),
        }
    }
    Ok(Factorization { sign, factors })
}

/// Factorization of a small positive integer, as `(prime, exponent)` pairs.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factor_u64(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for (p, e) in factor_u64(n) {
        let mut next = Vec::with_capacity(ds.len() * (e as usize + 1));
        for &d in &ds {
            let mut q = d;
            for _ in 0..=e {
                next.push(q);
                q *= p;
            }
        }
        ds = next;
    }
    ds.sort_unstable();
    ds
}

fn carmichael(f: &Factorization) -> Int {
    let mut acc = BigInt::one();
    for (p, e) in &f.factors {
        let lam = if *p == BigInt::from(2) {
            match e {
                1 => BigInt::one(),
                2 => BigInt::from(2),
                _ => BigInt::one() << (*e as usize - 2),
            }
        } else {
            num_traits::pow(p.clone(), *e as usize - 1) * (p - 1)
        };
        acc = acc.lcm(&lam);
    }
    acc
}

/// Order of `u` in `(ℤ/m)^×`; requires `gcd(u, m) = 1`.
fn unit_order(u: &Int, m: &Int) -> Result<Int> {
    if m.is_one() {
        return Ok(BigInt::one());
    }
    let fm = factorize(m)?;
    let mut ord = carmichael(&fm);
    let fo = factorize(&ord)?;
    for (q, _) in &fo.factors {
        while (&ord % q).is_zero() && u.modpow(&(&ord / q), m).is_one() {
            ord /= q;
        }
    }
    Ok(ord)
}

/// Preperiod and minimal period of the sequence `u^n mod modulus`.
pub fn mult_order(u: &Int, modulus: &Int) -> Result<(u64, u64)> {
    if *modulus < BigInt::from(2) {
        return Err(Error::Precondition(format!("modulus {modulus} < 2")));
    }
    let r = u.mod_floor(modulus);
    if r.is_zero() {
        return Ok((1, 1));
    }
    let fm = factorize(modulus)?;
    let mut pre = 0u64;
    let mut coprime_part = BigInt::one();
    for (p, e) in &fm.factors {
        if (&r % p).is_zero() {
            let v = nu_p_int(&r, p)? as u64;
            pre = pre.max((*e as u64).div_ceil(v));
        } else {
            coprime_part *= num_traits::pow(p.clone(), *e as usize);
        }
    }
    let per = unit_order(&r, &coprime_part)?;
    let per = per
        .to_u64()
        .ok_or_else(|| Error::Unsupported(format!("period {per} does not fit in 64 bits")))?;
    Ok((pre, per))
}

/// `(base^exp - 1) / (base - 1)` as an exact integer, with the value `exp` when `base = 1`.
pub fn geometric_sum(base: &Int, exp: u64) -> Int {
    if base.is_one() {
        return BigInt::from(exp);
    }
    (num_traits::pow(base.clone(), exp as usize) - 1) / (base - 1)
}

/// `base^exp mod modulus` with a nonnegative result; `modulus ≥ 1`.
pub fn pow_mod(base: &Int, exp: u64, modulus: &Int) -> Int {
    base.mod_floor(modulus).modpow(&BigInt::from(exp), modulus)
}

pub fn int_pow(base: i64, exp: u64) -> Int {
    num_traits::pow(BigInt::from(base), exp as usize)
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        a.max(b)
    } else {
        a.lcm(&b)
    }
}
