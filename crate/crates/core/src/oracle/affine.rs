use crate::error::{Error, Result};
use crate::exactnum::Field;
use crate::semilinear::Window;

/// The window of `f = A₁z + B₁`, `g = A₂z + B₂`, `c = Cz + D`.
///
/// Writing `f^∘m(z) = A₁^m z + β_m` and `g^∘n(z) = A₂^n z + δ_n`, the cell
/// `(m, n)` holds iff `A₁^m ≠ C` or `β_m = D`, likewise for `g`, and
/// `(A₁^m − C)(δ_n − D) = (A₂^n − C)(β_m − D)`.
#[allow(clippy::too_many_arguments)]
pub fn affine_window<F: Field>(
    a1: &F,
    b1: &F,
    a2: &F,
    b2: &F,
    c: &F,
    d: &F,
    m: u64,
    n: u64,
) -> Result<Window> {
    if a1.is_zero() || a2.is_zero() {
        return Err(Error::Precondition("affine maps need A₁, A₂ ≠ 0".into()));
    }
    // (A^k − C, β_k − D, condition (1)) for k below the bound.
    let side = |a: &F, b: &F, count: u64| -> Vec<(F, F, bool)> {
        let (mut x, mut beta) = (F::one(), F::zero());
        let mut out = Vec::with_capacity(count as usize);
        for _ in 0..count {
            let u = x.minus(c);
            let v = beta.minus(d);
            let ok = !u.is_zero() || v.is_zero();
            out.push((u, v, ok));
            beta = a.times(&beta).plus(b);
            x = x.times(a);
        }
        out
    };
    let rs = side(a1, b1, m);
    let cs = side(a2, b2, n);
    let rows = rs
        .iter()
        .map(|(u1, v1, ok1)| {
            cs.iter()
                .map(|(u2, v2, ok2)| *ok1 && *ok2 && u1.times(v2) == u2.times(v1))
                .collect()
        })
        .collect();
    Ok(Window::from_rows(rows, n, "affine-oracle"))
}
