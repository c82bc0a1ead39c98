use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{int_pow, nu_p_int, Int};

/// Whether `λ^{d₁^m − d₃} = ξ^a` and `λ^{d₂^n − d₄} = ξ^b` have a common
/// nonzero solution, `ξ` a primitive `k`-th root of unity, decided by
/// `k·gcd(|d₁^m − d₃|, |d₂^n − d₄|) | b(d₁^m − d₃) − a(d₂^n − d₄)`.
#[allow(clippy::too_many_arguments)]
pub fn lemma41_check(
    k: u64,
    a: i64,
    b: i64,
    d1: i64,
    d2: i64,
    d3: i64,
    d4: i64,
    m: u64,
    n: u64,
) -> Result<bool> {
    if k == 0 || d1.abs() < 2 || d2.abs() < 2 {
        return Err(Error::Precondition("need k ≥ 1 and |d₁|, |d₂| ≥ 2".into()));
    }
    let p1 = int_pow(d1, m);
    let p2 = int_pow(d2, n);
    if p1.abs() <= Int::from(d3.abs()) || p2.abs() <= Int::from(d4.abs()) {
        return Err(Error::Precondition(format!(
            "need |d₁|^m > |d₃| and |d₂|^n > |d₄| at ({m}, {n})"
        )));
    }
    let e1 = p1 - d3;
    let e2 = p2 - d4;
    let g = e1.abs().gcd(&e2.abs());
    let rhs = Int::from(b) * &e1 - Int::from(a) * &e2;
    Ok((rhs % (Int::from(k) * g)).is_zero())
}

/// `ν₂(xⁿ − yⁿ)` (or `ν₂(xⁿ + yⁿ)` when `plus`) for odd `x, y` by the
/// lifting-the-exponent formulas.
pub fn lte_nu2(x: &Int, y: &Int, n: u64, plus: bool) -> Result<i64> {
    if x.is_even() || y.is_even() || n == 0 {
        return Err(Error::Precondition("need odd x, y and n ≥ 1".into()));
    }
    let two = Int::from(2);
    let nu = |v: &Int| nu_p_int(v, &two);
    match (plus, n.is_multiple_of(2)) {
        (false, true) => Ok(nu(&Int::from(n))? + nu(&(x - y))? + nu(&(x + y))? - 1),
        (false, false) => nu(&(x - y)),
        (true, true) => Ok(1),
        (true, false) => nu(&(x + y)),
    }
}
