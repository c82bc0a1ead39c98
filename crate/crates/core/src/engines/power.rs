use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::EngineOutput;
use crate::error::{Error, Result};
use crate::exactnum::{
    factor_u64, int_pow, lcm_u64, mult_order, pow_mod, root_of_unity_order, CycRat, Int,
};
use crate::semilinear::{synthesis_side, synthesize, EPSet1, Form};

/// `f = z^{d₁}`, `g = ζ z^{d₂}` and constant `c`, with `ζ = ζ_{zeta_order}^{zeta_exp}`
/// and `c = ζ_{c_order}^{c_exp}`. Only nonzero `λ` count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerSpec {
    pub d1: i64,
    pub d2: i64,
    pub zeta_order: u64,
    pub zeta_exp: u64,
    pub c_order: u64,
    pub c_exp: u64,
}

impl PowerSpec {
    pub fn new(d1: i64, d2: i64, zeta: (u64, u64), c: (u64, u64)) -> Result<Self> {
        let s = PowerSpec {
            d1,
            d2,
            zeta_order: zeta.0,
            zeta_exp: zeta.1,
            c_order: c.0,
            c_exp: c.1,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn validate(&self) -> Result<()> {
        if self.d1.abs() < 2 || self.d2.abs() < 2 {
            return Err(Error::Precondition("power maps need |d₁|, |d₂| ≥ 2".into()));
        }
        if self.zeta_order == 0 || self.c_order == 0 {
            return Err(Error::Precondition(
                "root of unity orders must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Order of the common cyclotomic root `ξ`.
    pub fn k(&self) -> u64 {
        lcm_u64(self.zeta_order, self.c_order)
    }

    /// `ζ = ξ^e`.
    pub fn e(&self) -> u64 {
        (self.zeta_exp % self.zeta_order) * (self.k() / self.zeta_order)
    }

    /// `c = ξ^a`.
    pub fn a(&self) -> u64 {
        (self.c_exp % self.c_order) * (self.k() / self.c_order)
    }

    pub fn q0(&self) -> i64 {
        self.d2 - 1
    }

    /// The modulus `kQ` of the membership congruence.
    pub fn modulus(&self) -> u64 {
        self.k() * self.q0().unsigned_abs()
    }

    fn gcd_of_powers(&self, m: u64, n: u64) -> Int {
        let f1 = factor_u64(self.d1.unsigned_abs());
        let f2 = factor_u64(self.d2.unsigned_abs());
        let mut g = Int::one();
        for &(p, tau) in &f1 {
            if let Some(&(_, mu)) = f2.iter().find(|(q, _)| *q == p) {
                let e = (m * tau as u64).min(n * mu as u64);
                g *= int_pow(p as i64, e);
            }
        }
        g
    }

    /// `h(m, n) = (aQ₀(d₁^m − d₂^n) − e·d₁^m(d₂^n − 1)) / gcd(|d₁^m|, |d₂^n|)`.
    pub fn h(&self, m: u64, n: u64) -> Int {
        let p1 = int_pow(self.d1, m);
        let p2 = int_pow(self.d2, n);
        let g = self.gcd_of_powers(m, n);
        let a = Int::from(self.a());
        let e = Int::from(self.e());
        let q0 = Int::from(self.q0());
        let num = a * q0 * (&p1 - &p2) - e * &p1 * (&p2 - 1);
        num / g
    }

    /// `(m, n)` lies in the set iff `kQ | h(m, n)`.
    pub fn member(&self, m: u64, n: u64) -> bool {
        self.h(m, n).mod_floor(&Int::from(self.modulus())).is_zero()
    }

    /// The root of unity `c` as a field element.
    pub fn c_value(&self) -> CycRat {
        CycRat::zeta(self.c_order, self.c_exp)
    }
}

/// The row `{m : (m, 0) ∈ S} = {m : c^{d₁^m − 1} = 1}`.
pub fn power_row0(spec: &PowerSpec) -> Result<EPSet1> {
    spec.validate()?;
    let ord = root_of_unity_order(&spec.c_value())?.expect("c is a root of unity");
    if ord == 1 {
        return Ok(EPSet1::full());
    }
    let modulus = Int::from(ord);
    let d1 = Int::from(spec.d1);
    let (pre, per) = mult_order(&d1, &modulus)?;
    Ok(EPSet1::from_pattern(pre, per, |m| {
        pow_mod(&d1, m, &modulus).is_one()
    }))
}

/// Builds the set of `(m, n)` with `f^∘m(λ) = g^∘n(λ) = c` for some `λ ≠ 0`.
///
/// The cones are cut by the forms `τ_p m − μ_p n` for the primes `p` shared by
/// `d₁` and `d₂`; inside them `h(m, n) mod kQ` is periodic with the periods of
/// the primes of `d₁d₂` modulo `kQ` and the sign parities.
pub fn power_engine(spec: &PowerSpec) -> Result<EngineOutput> {
    spec.validate()?;
    let modulus = spec.modulus();
    let f1 = factor_u64(spec.d1.unsigned_abs());
    let f2 = factor_u64(spec.d2.unsigned_abs());
    let mut forms = Vec::new();
    let mut l = 2;
    let mut t = 1;
    let mut primes: Vec<u64> = f1.iter().chain(&f2).map(|&(p, _)| p).collect();
    primes.sort_unstable();
    primes.dedup();
    for &p in &primes {
        if modulus >= 2 {
            let (pre, per) = mult_order(&Int::from(p), &Int::from(modulus))?;
            l = lcm_u64(l, per);
            t = t.max(pre + 1);
        }
        let tau = f1.iter().find(|q| q.0 == p).map_or(0, |q| q.1 as u64);
        let mu = f2.iter().find(|q| q.0 == p).map_or(0, |q| q.1 as u64);
        if tau > 0 && mu > 0 {
            let f = Form::new(tau, mu);
            if !forms.contains(&f) {
                forms.push(f);
            }
        }
    }
    let set = synthesize(|m, n| spec.member(m, n), l, t, &forms)?;
    Ok(EngineOutput {
        formula: "power".into(),
        set,
        verified_side: synthesis_side(l, t, &forms),
        notes: vec![format!(
            "k = {}, a = {}, e = {}, kQ = {modulus}, period {l}, threshold {t}",
            spec.k(),
            spec.a(),
            spec.e()
        )],
    })
}

#[cfg(test)]
pub(super) fn h_by_gcd(spec: &PowerSpec, m: u64, n: u64) -> Int {
    let p1 = int_pow(spec.d1, m);
    let p2 = int_pow(spec.d2, n);
    let g = num_traits::Signed::abs(&p1).gcd(&num_traits::Signed::abs(&p2));
    let num = Int::from(spec.a()) * Int::from(spec.q0()) * (&p1 - &p2)
        - Int::from(spec.e()) * &p1 * (&p2 - 1);
    num / g
}
