//! Brute-force recurrence windows by exact algebra. Every engine is checked
//! against these.

mod affine;
mod torsion;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactnum::{lcm_u64, Field};
use crate::polyfield::{common_root_exists, iterate, iterates, Poly};
use crate::semilinear::{CellError, EPSet1, Window};

pub use affine::affine_window;
pub use torsion::{torsion_solvable, torsion_window, TorsionSpec};

/// A triple `(f, g, c)`. With `exclude_zero` only nonzero `λ` count, which
/// gives the modified sets used for power maps.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyTriple<F: Field> {
    pub f: Poly<F>,
    pub g: Poly<F>,
    pub c: Poly<F>,
    pub exclude_zero: bool,
}

impl<F: Field> PolyTriple<F> {
    pub fn new(f: Poly<F>, g: Poly<F>, c: Poly<F>) -> Self {
        PolyTriple {
            f,
            g,
            c,
            exclude_zero: false,
        }
    }

    pub fn excluding_zero(mut self) -> Self {
        self.exclude_zero = true;
        self
    }

    /// The triple with `f` and `g` exchanged; its window is the transpose.
    pub fn swapped(&self) -> Self {
        PolyTriple {
            f: self.g.clone(),
            g: self.f.clone(),
            c: self.c.clone(),
            exclude_zero: self.exclude_zero,
        }
    }

    pub fn conductor(&self) -> u64 {
        lcm_u64(
            self.f.conductor(),
            lcm_u64(self.g.conductor(), self.c.conductor()),
        )
    }
}

/// Marks `(m, n)` when `f^∘m − c` and `g^∘n − c` have a common root.
///
/// A difference that vanishes identically imposes no condition, so the cell
/// then only asks whether the other difference has a root. Cells whose
/// iterates would exceed the degree cap are left false and listed in
/// `errors`.
pub fn recurrence_window<F: Field>(t: &PolyTriple<F>, m: u64, n: u64, cap: u64) -> Window {
    let diffs = |p: &Poly<F>, count: u64| -> Vec<Poly<F>> {
        iterates(p, count, cap).iter().map(|q| q - &t.c).collect()
    };
    let fs = diffs(&t.f, m);
    let gs = diffs(&t.g, n);
    let cells: Vec<(bool, Option<CellError>)> = (0..m * n)
        .into_par_iter()
        .map(|i| {
            let (a, b) = (i / n, i % n);
            match (fs.get(a as usize), gs.get(b as usize)) {
                (Some(p), Some(q)) => (common_root_exists(p, q, t.exclude_zero), None),
                _ => {
                    let (which, k) = if (a as usize) < fs.len() {
                        ("g", b)
                    } else {
                        ("f", a)
                    };
                    let message = format!("degree cap {cap} exceeded by {which}^{k}");
                    (
                        false,
                        Some(CellError {
                            m: a,
                            n: b,
                            message,
                        }),
                    )
                }
            }
        })
        .collect();
    let rows = cells
        .chunks(n.max(1) as usize)
        .take(m as usize)
        .map(|r| r.iter().map(|c| c.0).collect())
        .collect();
    let mut w = Window::from_rows(rows, n, "oracle");
    w.errors = cells.into_iter().filter_map(|c| c.1).collect();
    w
}

/// Orbits whose coefficients grow past this many printed characters are
/// treated as non-repeating.
const STATE_TEXT_LIMIT: usize = 1 << 16;

fn rem_compose<F: Field>(g: &Poly<F>, x: &Poly<F>, modulus: &Poly<F>) -> Result<Poly<F>> {
    let mut acc = Poly::zero();
    for c in g.coeffs().iter().rev() {
        acc = (&(&acc * x) + &Poly::constant(c.clone())).rem(modulus)?;
    }
    Ok(acc)
}

/// The row `{n : (m, n) ∈ S}` as an eventually periodic set.
///
/// When `f^∘m ≠ c`, the roots of `f^∘m − c` are followed under `g` inside the
/// algebra `F[z]/(Q)`, `Q` the squarefree part, until the state repeats. This
/// terminates exactly when those roots are preperiodic for `g`; otherwise
/// the `budget` (or a bound on coefficient size) runs out. Requires `deg g ≥ 2` and `exclude_zero` unset.
pub fn row_set<F: Field>(t: &PolyTriple<F>, m: u64, budget: u64, cap: u64) -> Result<EPSet1> {
    if t.exclude_zero {
        return Err(Error::Unsupported(
            "row sets of modified recurrence sets".into(),
        ));
    }
    let dg = t.g.degree().unwrap_or(0);
    if dg < 2 {
        return Err(Error::Unsupported("row sets need deg g ≥ 2".into()));
    }
    let p = &iterate(&t.f, m, cap)? - &t.c;
    if p.is_zero() {
        // Only g^∘n(λ) = c(λ) remains; it is solvable once g^∘n − c is nonconstant.
        let dc = t.c.degree().unwrap_or(0) as u128;
        let mut n1 = 0u64;
        let mut deg = 1u128;
        while deg <= dc {
            deg *= dg as u128;
            n1 += 1;
        }
        let gs = iterates(&t.g, n1 + 1, cap);
        if (gs.len() as u64) < n1 + 1 {
            return Err(Error::DegreeCapExceeded { degree: deg, cap });
        }
        let bits: Vec<bool> = gs
            .iter()
            .map(|q| common_root_exists(&Poly::zero(), &(q - &t.c), false))
            .collect();
        return Ok(EPSet1::from_pattern(n1, 1, |i| i >= n1 || bits[i as usize]));
    }
    if p.is_constant() {
        return Ok(EPSet1::empty());
    }
    let q = p.squarefree_part()?;
    let mut states: Vec<Poly<F>> = Vec::new();
    let mut bits: Vec<bool> = Vec::new();
    let mut x = Poly::z().rem(&q)?;
    for _ in 0..budget {
        if let Some(j) = states.iter().position(|s| *s == x) {
            let len = states.len() as u64;
            return Ok(EPSet1::from_pattern(j as u64, len - j as u64, |i| {
                bits[i as usize]
            }));
        }
        let target = (&x - &t.c).rem(&q)?;
        bits.push(common_root_exists(&q, &target, false));
        let next = rem_compose(&t.g, &x, &q)?;
        if next.to_string().len() > STATE_TEXT_LIMIT {
            return Err(Error::BudgetExhausted(format!(
                "row {m}: orbit coefficients outgrew {STATE_TEXT_LIMIT} characters"
            )));
        }
        states.push(std::mem::replace(&mut x, next));
    }
    Err(Error::BudgetExhausted(format!(
        "row {m}: no repeat within {budget} iterations of g"
    )))
}

/// The column `{m : (m, n) ∈ S}`.
pub fn col_set<F: Field>(t: &PolyTriple<F>, n: u64, budget: u64, cap: u64) -> Result<EPSet1> {
    row_set(&t.swapped(), n, budget, cap)
}

#[cfg(test)]
mod tests;
