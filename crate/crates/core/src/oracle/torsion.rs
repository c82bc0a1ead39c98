use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{Int, Rat};
use crate::semilinear::Window;

/// Power maps twisted by roots of unity: with `ξ = e^{2πi/k}`, the cell
/// `(m, n)` asks for `λ ≠ 0` with `λ^{d₁^m} = ξ^a λ^{d₃}` and
/// `ξ^{e(1 + d₂ + ⋯ + d₂^{n−1})} λ^{d₂^n} = ξ^a λ^{d₄}`, i.e. the recurrence
/// set of `f = z^{d₁}`, `g = ξ^e z^{d₂}`, `c = ξ^a z^{d₃}` (when `d₃ = d₄`)
/// over `ℂ^×`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionSpec {
    pub d1: i64,
    pub d2: i64,
    #[serde(default)]
    pub d3: i64,
    #[serde(default)]
    pub d4: i64,
    pub k: u64,
    pub a: u64,
    pub e: u64,
}

impl TorsionSpec {
    pub fn new(d1: i64, d2: i64, k: u64, a: u64, e: u64) -> Result<Self> {
        let s = TorsionSpec {
            d1,
            d2,
            d3: 0,
            d4: 0,
            k,
            a,
            e,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn with_shifts(mut self, d3: i64, d4: i64) -> Self {
        self.d3 = d3;
        self.d4 = d4;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.d1.abs() < 2 || self.d2.abs() < 2 {
            return Err(Error::Precondition("need |d₁|, |d₂| ≥ 2".into()));
        }
        if self.k == 0 || self.a >= self.k || self.e >= self.k {
            return Err(Error::Precondition("need k ≥ 1 and 0 ≤ a, e < k".into()));
        }
        Ok(())
    }

    /// `(E₁, A₁, E₂, A₂)` with the cell equations `λ^{E_i} = ξ^{A_i}`.
    pub fn exponents(&self, m: u64, n: u64) -> (Int, Int, Int, Int) {
        let pow = |d: i64, k: u64| num_traits::pow(BigInt::from(d), k as usize);
        let e1 = pow(self.d1, m) - self.d3;
        let e2 = pow(self.d2, n) - self.d4;
        let s: Int = (0..n).map(|i| pow(self.d2, i)).sum();
        let a2 = BigInt::from(self.a) - BigInt::from(self.e) * s;
        (e1, BigInt::from(self.a), e2, a2)
    }

    pub fn cell(&self, m: u64, n: u64) -> bool {
        let (e1, a1, e2, a2) = self.exponents(m, n);
        torsion_solvable(&e1, &a1, &e2, &a2, self.k)
    }
}

/// Whether `λ^{e1} = ξ^{a1}` and `λ^{e2} = ξ^{a2}` share a solution in `ℂ^×`.
///
/// Writing `λ = e^{2πiθ}`, the first equation pins `θ` to
/// `(a1 + kj)/(k·e1)`. When one exponent is small these candidates are
/// tried one by one; otherwise the two solution cosets in `ℚ/ℤ` are compared.
pub fn torsion_solvable(e1: &Int, a1: &Int, e2: &Int, a2: &Int, k: u64) -> bool {
    let k = BigInt::from(k);
    let divides = |x: &Int| x.is_multiple_of(&k);
    match (e1.is_zero(), e2.is_zero()) {
        (true, true) => return divides(a1) && divides(a2),
        (true, false) => return divides(a1),
        (false, true) => return divides(a2),
        _ => {}
    }
    let (e1, a1, e2, a2) = if e1.abs() <= e2.abs() {
        (e1, a1, e2, a2)
    } else {
        (e2, a2, e1, a1)
    };
    if let Some(count) = e1.abs().to_u64().filter(|&c| c <= 2048) {
        // θ = (a1 + kj)/(k e1) solves the second equation iff
        // e2 (a1 + kj) ≡ a2 e1 (mod k e1).
        let modulus = (&k * e1).abs();
        let target = a2 * e1;
        return (0..count).any(|j| {
            let lhs = e2 * (a1 + &k * BigInt::from(j));
            (lhs - &target).is_multiple_of(&modulus)
        });
    }
    // The cosets a_i/(k e_i) + (1/e_i)ℤ meet iff their offsets differ by an
    // element of (1/e1)ℤ + (1/e2)ℤ = (1/lcm)ℤ.
    let l = e1.lcm(e2);
    let diff = Rat::new(a1.clone(), &k * e1) - Rat::new(a2.clone(), &k * e2);
    (diff * Rat::from_integer(l)).is_integer()
}

/// The window of a torsion spec, in pure exponent arithmetic.
pub fn torsion_window(spec: &TorsionSpec, m: u64, n: u64) -> Window {
    let rows = (0..m)
        .into_par_iter()
        .map(|i| (0..n).map(|j| spec.cell(i, j)).collect())
        .collect();
    Window::from_rows(rows, n, "torsion-oracle")
}
