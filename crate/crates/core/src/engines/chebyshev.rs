use num_traits::Signed;
use serde::{Deserialize, Serialize};

use super::{lemma41_check, EngineOutput};
use crate::error::{Error, Result};
use crate::exactnum::{int_pow, lcm_u64, mult_order, Int};
use crate::oracle::torsion_solvable;
use crate::semilinear::{synthesis_side, synthesize};

/// `f = ε₁T_r`, `g = ε₂T_s`, `c = ε₃T_t` with `T_1 = z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChebSpec {
    pub r: u64,
    pub s: u64,
    pub t: u64,
    pub e1: i8,
    pub e2: i8,
    pub e3: i8,
}

/// Verdict on the quadrant `ℤ≥m₀ × ℤ≥n₀`: either all of it or none.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VClass {
    pub full: bool,
    pub m0: u64,
    pub n0: u64,
}

fn nu2(x: u64) -> u64 {
    x.trailing_zeros() as u64
}

/// Least `m ≥ 1` with `r^m > t` and `μ_r(μ_r m − μ_t − 2) ≥ 0`.
fn start(r: u64, t: u64) -> u64 {
    let (mr, mt) = (nu2(r) as i64, nu2(t) as i64);
    let mut m = 1u64;
    loop {
        let big = int_pow(r as i64, m) > Int::from(t);
        if big && mr * (mr * m as i64 - mt - 2) >= 0 {
            return m;
        }
        m += 1;
    }
}

fn check_signs(signs: &[i8]) -> Result<()> {
    if signs.iter().all(|&e| e == 1 || e == -1) {
        Ok(())
    } else {
        Err(Error::Precondition("signs must be ±1".into()))
    }
}

/// Decides whether `λ^{r^m − ηt} = ε₁`, `λ^{s^n − κt} = ε₂` is solvable for
/// every or for no `(m, n)` in the quadrant, following the parity case split.
pub fn v_classify(r: u64, s: u64, t: u64, e1: i8, e2: i8) -> Result<VClass> {
    if r < 2 || s < 2 || t < 1 {
        return Err(Error::Precondition("need r, s ≥ 2 and t ≥ 1".into()));
    }
    check_signs(&[e1, e2])?;
    let (m0, n0) = (start(r, t), start(s, t));
    let full = match (e1, e2) {
        (1, 1) => true,
        (1, _) | (_, 1) => {
            // Orient so that the first exponent carries the sign +1.
            let (r, s) = if e1 == 1 { (r, s) } else { (s, r) };
            if r % 2 != t % 2 {
                false
            } else if r % 2 == 0 {
                s % 2 == 1
            } else {
                true
            }
        }
        _ => {
            if r % 2 != t % 2 || s % 2 != t % 2 {
                r % 2 == s % 2
            } else {
                true
            }
        }
    };
    Ok(VClass { full, m0, n0 })
}

/// Membership in the quadrant set by direct divisibility tests, for `m ≥ m₀`, `n ≥ n₀`.
pub fn v_member(r: u64, s: u64, t: u64, e1: i8, e2: i8, m: u64, n: u64) -> Result<bool> {
    let (a, b) = ((e1 == -1) as i64, (e2 == -1) as i64);
    for eta in [1i64, -1] {
        for kappa in [1i64, -1] {
            let (d3, d4) = (eta * t as i64, kappa * t as i64);
            if lemma41_check(2, a, b, r as i64, s as i64, d3, d4, m, n)? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

impl ChebSpec {
    pub fn new(r: u64, s: u64, t: u64, e: (i8, i8, i8)) -> Result<Self> {
        let spec = ChebSpec {
            r,
            s,
            t,
            e1: e.0,
            e2: e.1,
            e3: e.2,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.r < 2 || self.s < 2 || self.t < 1 {
            return Err(Error::Precondition("need r, s ≥ 2 and t ≥ 1".into()));
        }
        check_signs(&[self.e1, self.e2, self.e3])
    }

    /// Sign of `ε^{1 + d + … + d^{m−1}}`.
    fn twist(e: i8, d: u64, m: u64) -> i8 {
        let odd = if d.is_multiple_of(2) {
            m > 0
        } else {
            m % 2 == 1
        };
        if odd {
            e
        } else {
            1
        }
    }

    /// Membership for every `(m, n)`: after lifting along `z + 1/z`, ask for
    /// `λ ≠ 0` and signs `η, κ` with `F^∘m(λ) = h(λ)^η` and `G^∘n(λ) = h(λ)^κ`.
    pub fn member(&self, m: u64, n: u64) -> bool {
        let t = Int::from(self.t);
        let rm = int_pow(self.r as i64, m);
        let sn = int_pow(self.s as i64, n);
        let a1 = (Self::twist(self.e1, self.r, m) * self.e3 == -1) as u64;
        let a2 = (Self::twist(self.e2, self.s, n) * self.e3 == -1) as u64;
        [(1, 1), (1, -1), (-1, 1), (-1, -1)]
            .iter()
            .any(|&(eta, kappa)| {
                let x1 = &rm - &t * eta;
                let x2 = &sn - &t * kappa;
                torsion_solvable(&x1, &Int::from(a1), &x2, &Int::from(a2), 2)
            })
    }
}

/// Periods of `u^j` modulo `2|r^m ∓ t|` for the rows below `m0`.
fn strip_periods(r: u64, u: u64, t: u64, m0: u64) -> Result<(u64, u64)> {
    let (mut l, mut pre) = (1, 0);
    for m in 0..m0 {
        for eta in [1i64, -1] {
            let e = (int_pow(r as i64, m) - Int::from(eta * t as i64)).abs();
            if e.is_positive() {
                let (p, q) = mult_order(&Int::from(u), &(e * 2))?;
                l = lcm_u64(l, q);
                pre = pre.max(p);
            }
        }
    }
    Ok((l, pre))
}

/// Builds the recurrence set of the Chebyshev triple. Beyond `(m₀, n₀)` each
/// parity class is full or empty; the strips below are periodic with the
/// multiplicative periods of `s` and `r` modulo the fixed exponents.
pub fn chebyshev_engine(spec: &ChebSpec) -> Result<EngineOutput> {
    spec.validate()?;
    let mut notes = Vec::new();
    let mut m0 = 1;
    let mut n0 = 1;
    for j1 in 0..2u64 {
        for j2 in 0..2u64 {
            // Signs on the class of representatives m = 2 + j1, n = 2 + j2.
            let e1 = ChebSpec::twist(spec.e1, spec.r, 2 + j1) * spec.e3;
            let e2 = ChebSpec::twist(spec.e2, spec.s, 2 + j2) * spec.e3;
            let v = v_classify(spec.r, spec.s, spec.t, e1, e2)?;
            m0 = v.m0;
            n0 = v.n0;
            notes.push(format!(
                "parity class ({j1}, {j2}): {}",
                if v.full { "full" } else { "empty" }
            ));
        }
    }
    let (lr, pr) = strip_periods(spec.r, spec.s, spec.t, m0)?;
    let (lc, pc) = strip_periods(spec.s, spec.r, spec.t, n0)?;
    let l = lcm_u64(2, lcm_u64(lr, lc));
    let t = m0.max(n0).max(pr).max(pc).max(1);
    let set = synthesize(|m, n| spec.member(m, n), l, t, &[])?;
    notes.push(format!(
        "quadrant from ({m0}, {n0}), period {l}, threshold {t}"
    ));
    Ok(EngineOutput {
        formula: "chebyshev".into(),
        set,
        verified_side: synthesis_side(l, t, &[]),
        notes,
    })
}
