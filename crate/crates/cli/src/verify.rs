//! Engine windows against independent oracles.

use std::collections::HashSet;

use serde::Serialize;
use slrec_core::engines::{EngineResult, Gallery};
use slrec_core::exactnum::rat;
use slrec_core::oracle::{
    affine_window, recurrence_window, torsion_window, PolyTriple, TorsionSpec,
};
use slrec_core::semilinear::{window_enumerate, CellError, Point};
use slrec_core::{Error, Poly, Rat, Window};

use crate::cmd::Family;

/// Rows and columns whose Chebyshev iterates stay below this degree are
/// also checked against the gcd oracle.
pub const CHEB_GCD_DEGREE: u64 = 256;

#[derive(Clone, Debug, Serialize)]
pub struct Comparison {
    pub oracle: String,
    #[serde(rename = "M")]
    pub m: u64,
    #[serde(rename = "N")]
    pub n: u64,
    pub agree: bool,
    /// Least `(m, n)` where engine and oracle differ.
    pub first_difference: Option<Point>,
    pub engine_value: Option<bool>,
    /// Cells the oracle could not evaluate; they are not compared.
    pub skipped: Vec<CellError>,
}

/// Compares on the engine's grid, ignoring cells the oracle marked as failed.
pub fn compare(engine: &Window, oracle: &Window) -> Comparison {
    let skip: HashSet<Point> = oracle.errors.iter().map(|e| (e.m, e.n)).collect();
    let (m, n) = engine.dims();
    let first = (0..m)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .find(|&p| !skip.contains(&p) && engine.get(p.0, p.1) != oracle.get(p.0, p.1));
    Comparison {
        oracle: oracle.source.clone(),
        m,
        n,
        agree: first.is_none(),
        first_difference: first,
        engine_value: first.map(|p| engine.get(p.0, p.1)),
        skipped: oracle.errors.clone(),
    }
}

fn rpoly(c: &[i64]) -> Poly<Rat> {
    Poly::new(c.iter().map(|&x| rat(x, 1)).collect())
}

/// `T_d` with `T_d(cos θ) = cos dθ`.
pub fn chebyshev_poly(d: u64) -> Poly<Rat> {
    let (mut prev, mut cur) = (rpoly(&[1]), rpoly(&[0, 1]));
    for _ in 1..d {
        let next = &(&rpoly(&[0, 2]) * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

fn signed(e: i8, q: Poly<Rat>) -> Poly<Rat> {
    q.scale(&rat(e as i64, 1))
}

/// The explicit triple of a gallery counter.
pub fn counter_triple(entry: &Gallery) -> Option<PolyTriple<Rat>> {
    match *entry {
        Gallery::Deg1Counter1 => Some(PolyTriple::new(
            Poly::new(vec![rat(0, 1), rat(1, 2)]),
            rpoly(&[-1, 1]),
            rpoly(&[1]),
        )),
        Gallery::Deg1Counter2 { k } => {
            let mut c = vec![0; k as usize + 1];
            c[k as usize] = 1;
            Some(PolyTriple::new(rpoly(&[0, 2]), rpoly(&[1, 1]), rpoly(&c)))
        }
        Gallery::PowerTil { .. } => None,
    }
}

/// The engine's verdict on the window: the set itself when semilinear,
/// otherwise the exact membership formula.
pub fn engine_window(family: &Family, result: &EngineResult, m: u64, n: u64) -> Window {
    if let Some(out) = result.semilinear() {
        return out.window(m, n);
    }
    let source = format!("formula:{}", family.name());
    match family {
        Family::Gallery(g) => window_enumerate(m, n, &source, |i, j| g.member(i, j)),
        Family::Affine(s) => window_enumerate(m, n, &source, |i, j| s.member(i, j)),
        Family::Power(s) => window_enumerate(m, n, &source, |i, j| s.member(i, j)),
        Family::Chebyshev(s) => window_enumerate(m, n, &source, |i, j| s.member(i, j)),
        Family::Decomposed(_) => unreachable!("decomposed sets are always semilinear"),
    }
}

fn tag(mut w: Window, source: &str) -> Window {
    w.source = source.to_string();
    w
}

/// Runs every oracle that applies to `family` on the `m × n` window.
/// With `thorough` unset only the primary oracle runs.
pub fn oracles(
    family: &Family,
    m: u64,
    n: u64,
    cap: u64,
    thorough: bool,
) -> Result<Vec<Window>, Error> {
    Ok(match family {
        Family::Power(s) => {
            let t = TorsionSpec::new(s.d1, s.d2, s.k(), s.a(), s.e())?;
            vec![tag(torsion_window(&t, m, n), "torsion")]
        }
        Family::Chebyshev(s) => {
            let mut out = vec![window_enumerate(m, n, "torsion-lift", |i, j| {
                s.member(i, j)
            })];
            if thorough {
                let rows = (0..m)
                    .take_while(|&i| {
                        s.r.checked_pow(i as u32)
                            .is_some_and(|d| d <= CHEB_GCD_DEGREE)
                    })
                    .count() as u64;
                let cols = (0..n)
                    .take_while(|&j| {
                        s.s.checked_pow(j as u32)
                            .is_some_and(|d| d <= CHEB_GCD_DEGREE)
                    })
                    .count() as u64;
                let triple = PolyTriple::new(
                    signed(s.e1, chebyshev_poly(s.r)),
                    signed(s.e2, chebyshev_poly(s.s)),
                    signed(s.e3, chebyshev_poly(s.t)),
                );
                out.push(tag(recurrence_window(&triple, rows, cols, cap), "gcd"));
            }
            out
        }
        Family::Affine(s) => vec![tag(
            affine_window(&s.a1, &s.b1, &s.a2, &s.b2, &s.c, &s.d, m, n)?,
            "affine",
        )],
        Family::Decomposed(s) => vec![tag(recurrence_window(&s.triple(cap)?, m, n, cap), "gcd")],
        Family::Gallery(g) => match counter_triple(g) {
            Some(t) => vec![tag(recurrence_window(&t, m, n, cap), "gcd")],
            None => {
                let Gallery::PowerTil { r, s } = *g else {
                    unreachable!()
                };
                let t = TorsionSpec::new(r as i64, s as i64, 2, 1, 0)?.with_shifts(1, 1);
                vec![tag(torsion_window(&t, m, n), "torsion")]
            }
        },
    })
}

/// Runs the engine and compares it with each applicable oracle.
pub fn verify(
    family: &Family,
    result: &EngineResult,
    m: u64,
    n: u64,
    cap: u64,
    thorough: bool,
) -> Result<Vec<Comparison>, Error> {
    let engine = engine_window(family, result, m, n);
    Ok(oracles(family, m, n, cap, thorough)?
        .iter()
        .map(|o| {
            let (om, on) = o.dims();
            let sub = if (om, on) == (m, n) {
                engine.clone()
            } else {
                engine_window(family, result, om, on)
            };
            compare(&sub, o)
        })
        .collect())
}
