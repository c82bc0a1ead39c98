//! Dense univariate polynomials over an exact field: arithmetic, composition,
//! iteration, gcd, common-root tests and orbit cycle detection.

mod gcd;
mod orbit;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::exactnum::{lcm_u64, CycRat, Field, Rat};

pub use gcd::{common_root_exists, poly_gcd};
pub use orbit::{orbit_progression, power_equation_set, OrbitClass, OrbitResult};

/// Default cap on the degree of an iterate.
pub const DEFAULT_DEGREE_CAP: u64 = 1_000_000;

/// Polynomial with coefficients `coeffs[i]` of `z^i`; no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<F: Field> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: F) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    /// The identity polynomial `z`.
    pub fn z() -> Self {
        Self::monomial(F::one(), 1)
    }

    pub fn monomial(c: F, k: usize) -> Self {
        let mut v = vec![F::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lead(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|x| x.times(c)).collect(),
        }
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) => {
                let inv = l.inverse().expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.times(x).plus(c);
        }
        acc
    }

    /// Multiplicity of `0` as a root (zero for the zero polynomial).
    pub fn zero_multiplicity(&self) -> usize {
        self.coeffs
            .iter()
            .take_while(|c| c.is_zero())
            .count()
            .min(self.coeffs.len())
    }

    /// Divides out the largest power of `z`.
    pub fn strip_zero_root(&self) -> Self {
        let v = self.zero_multiplicity();
        Poly {
            coeffs: self.coeffs[v..].to_vec(),
        }
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.times(&F::from_int(i as i64)))
                .collect(),
        )
    }

    /// The product of the distinct monic irreducible factors.
    pub fn squarefree_part(&self) -> Result<Self> {
        if self.is_constant() {
            return Ok(self.monic());
        }
        let g = poly_gcd(self, &self.derivative())?;
        Ok(self.div_rem(&g)?.0.monic())
    }

    /// Euclidean division; skips zero divisor coefficients so sparse divisors are cheap.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        if self.coeffs.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let inv = d.coeffs[dd].inverse()?;
        let support: Vec<(usize, &F)> = d.coeffs[..dd]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut r = self.coeffs.clone();
        let mut q = vec![F::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let top = &r[i + dd];
            if top.is_zero() {
                continue;
            }
            let c = top.times(&inv);
            for &(j, b) in &support {
                r[i + j] = r[i + j].minus(&c.times(b));
            }
            r[i + dd] = F::zero();
            q[i] = c;
        }
        r.truncate(dd);
        Ok((Self::new(q), Self::new(r)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.div_rem(d)?.1)
    }

    /// Extended Euclid: `(g, s, t)` with `g = s·self + t·other` and `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> Result<(Self, Self, Self)> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroInput("gcd of two zero polynomials"));
        }
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1)?;
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        let inv = r0.lead().expect("nonzero remainder").inverse()?;
        Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
    }

    /// `self ∘ q`, by Horner's rule.
    pub fn compose(&self, q: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + &Self::constant(c.clone());
        }
        acc
    }

    /// Least common multiple of the coefficient conductors.
    pub fn conductor(&self) -> u64 {
        self.coeffs
            .iter()
            .fold(1, |acc, c| lcm_u64(acc, c.conductor()))
    }

    pub fn to_cyc(&self) -> Poly<CycRat> {
        Poly::new(self.coeffs.iter().map(|c| c.to_cyc()).collect())
    }

    /// Reinterprets the coefficients in another field, failing when one does not fit.
    pub fn convert<G: Field>(&self) -> Result<Poly<G>> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| G::from_cyc(&c.to_cyc()))
            .collect::<Result<Vec<G>>>()?;
        Ok(Poly::new(coeffs))
    }
}

impl Poly<CycRat> {
    /// The same polynomial over `ℚ`, when every coefficient is rational.
    pub fn to_rational(&self) -> Option<Poly<Rat>> {
        self.coeffs
            .iter()
            .map(|c| c.as_rational())
            .collect::<Option<Vec<Rat>>>()
            .map(Poly::new)
    }
}

impl<F: Field> Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, o: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(o.coeffs.len());
        let v = (0..n)
            .map(|i| match (self.coeffs.get(i), o.coeffs.get(i)) {
                (Some(a), Some(b)) => a.plus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::new(v)
    }
}

impl<F: Field> Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, o: &Poly<F>) -> Poly<F> {
        self + &(-o)
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly {
            coeffs: self.coeffs.iter().map(|c| c.negate()).collect(),
        }
    }
}

impl<F: Field> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, o: &Poly<F>) -> Poly<F> {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![F::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        let right: Vec<(usize, &F)> = o
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for &(j, b) in &right {
                v[i + j] = v[i + j].plus(&a.times(b));
            }
        }
        Poly::new(v)
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let zpart = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            let cs = c.to_string();
            let compound = cs.contains(" + ") || cs.contains(" - ");
            let (neg, body) = match cs.strip_prefix('-') {
                Some(rest) if !compound => (true, rest.to_string()),
                _ => (false, cs.clone()),
            };
            let body = if compound { format!("({body})") } else { body };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (zpart.is_empty(), body == "1") {
                (true, _) => write!(f, "{body}")?,
                (false, true) => write!(f, "{zpart}")?,
                (false, false) => write!(f, "{body}*{zpart}")?,
            }
        }
        Ok(())
    }
}

/// `p ∘ q`.
pub fn compose<F: Field>(p: &Poly<F>, q: &Poly<F>) -> Poly<F> {
    p.compose(q)
}

/// `p^{∘m}` with `p^{∘0} = z`; fails before building an iterate whose degree exceeds `cap`.
pub fn iterate<F: Field>(p: &Poly<F>, m: u64, cap: u64) -> Result<Poly<F>> {
    let d = p.degree().unwrap_or(0) as u128;
    let predicted = if m == 0 {
        1
    } else if d <= 1 {
        d
    } else {
        d.checked_pow(m.min(200) as u32).unwrap_or(u128::MAX)
    };
    if predicted > cap as u128 {
        return Err(Error::DegreeCapExceeded {
            degree: predicted,
            cap,
        });
    }
    let mut acc = Poly::z();
    for _ in 0..m {
        acc = p.compose(&acc);
    }
    Ok(acc)
}

/// The iterates `p^{∘0}, …, p^{∘(count-1)}`, stopping early at the degree cap.
pub fn iterates<F: Field>(p: &Poly<F>, count: u64, cap: u64) -> Vec<Poly<F>> {
    let d = p.degree().unwrap_or(0) as u128;
    let mut out = Vec::new();
    let mut acc = Poly::z();
    let mut deg: u128 = 1;
    for i in 0..count {
        if i > 0 {
            deg = if d == 0 { 0 } else { deg.saturating_mul(d) };
            if deg > cap as u128 {
                break;
            }
            acc = p.compose(&acc);
        }
        out.push(acc.clone());
    }
    out
}

#[cfg(test)]
mod tests;
