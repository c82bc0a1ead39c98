use std::collections::HashMap;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{LinSet, Point, SemiLin2};
use crate::error::{Error, Result};

/// The linear form `α·m − β·n` separating the cones of a synthesis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Form {
    pub alpha: u64,
    pub beta: u64,
}

impl Form {
    pub fn new(alpha: u64, beta: u64) -> Self {
        assert!(alpha > 0 && beta > 0, "form coefficients must be positive");
        Form { alpha, beta }
    }

    fn value(&self, (m, n): Point) -> i64 {
        self.alpha as i64 * m as i64 - self.beta as i64 * n as i64
    }

    fn direction(&self) -> Point {
        let g = self.alpha.gcd(&self.beta);
        (self.beta / g, self.alpha / g)
    }
}

const LOW: i64 = i64::MIN;
const HIGH: i64 = i64::MAX;

/// The region of a point: exact coordinates below `t` (or `HIGH`), then per
/// form `LOW` when the value is below `−t`, `HIGH` above `t`, else the value.
fn signature(p: Point, t: u64, forms: &[Form]) -> Vec<i64> {
    let coord = |x: u64| if x < t { x as i64 } else { HIGH };
    let mut sig = vec![coord(p.0), coord(p.1)];
    for f in forms {
        let v = f.value(p);
        sig.push(if v < -(t as i64) {
            LOW
        } else if v > t as i64 {
            HIGH
        } else {
            v
        });
    }
    sig
}

/// Extreme rays of the recession cone of a region.
fn rays(sig: &[i64], forms: &[Form]) -> Vec<Point> {
    let mut cands = vec![(1u64, 0u64), (0, 1)];
    cands.extend(forms.iter().map(Form::direction));
    let valid: Vec<Point> = cands
        .into_iter()
        .filter(|&u| {
            (sig[0] == HIGH || u.0 == 0)
                && (sig[1] == HIGH || u.1 == 0)
                && forms.iter().zip(&sig[2..]).all(|(f, &c)| {
                    let v = f.value(u);
                    match c {
                        LOW => v <= 0,
                        HIGH => v >= 0,
                        _ => v == 0,
                    }
                })
        })
        .collect();
    // Order by angle from the m-axis: u below w iff u.1 * w.0 < w.1 * u.0.
    let below = |u: &Point, w: &Point| u.1 * w.0 < w.1 * u.0;
    let lowest = valid
        .iter()
        .copied()
        .reduce(|a, b| if below(&b, &a) { b } else { a });
    let highest = valid
        .iter()
        .copied()
        .reduce(|a, b| if below(&a, &b) { b } else { a });
    match (lowest, highest) {
        (Some(a), Some(b)) if a == b => vec![a],
        (Some(a), Some(b)) => vec![a, b],
        _ => Vec::new(),
    }
}

fn extent(l: u64, t: u64, forms: &[Form]) -> (u64, u64) {
    let a = forms.iter().map(|f| f.alpha.max(f.beta)).max().unwrap_or(1);
    let u = forms
        .iter()
        .map(|f| {
            let d = f.direction();
            d.0.max(d.1)
        })
        .max()
        .unwrap_or(1);
    let corner = (2 * t + 2) * (a + 1) + 2 * l * u + 1;
    (corner, corner.max(t + 4 * l))
}

/// Side of the square on which [`synthesize`] checks its output.
pub fn synthesis_side(l: u64, t: u64, forms: &[Form]) -> u64 {
    extent(l.max(1), t, forms).1
}

/// Builds an explicit set from a membership predicate.
///
/// The caller guarantees that inside each region cut out by the coordinate
/// threshold `t` and the `forms` (see [`Form`]), membership only depends on
/// `(m mod l, n mod l)`. Every region is then the union of its members near
/// the region's corner, translated by `l` times the extreme rays of the
/// region. The result is checked against `pred` on a square that contains
/// every corner and at least `[0, t + 4l)²`.
pub fn synthesize<P>(pred: P, l: u64, t: u64, forms: &[Form]) -> Result<SemiLin2>
where
    P: Fn(u64, u64) -> bool + Sync,
{
    let l = l.max(1);
    let (corner, side) = extent(l, t, forms);
    let grid: Vec<bool> = (0..side * side)
        .into_par_iter()
        .map(|i| pred(i / side, i % side))
        .collect();
    let at = |(m, n): Point| grid[(m * side + n) as usize];

    let mut cone_cache: HashMap<Vec<i64>, Vec<Point>> = HashMap::new();
    let mut out = SemiLin2::empty();
    for m in 0..corner {
        for n in 0..corner {
            if !at((m, n)) {
                continue;
            }
            let sig = signature((m, n), t, forms);
            let rs = cone_cache
                .entry(sig.clone())
                .or_insert_with(|| rays(&sig, forms))
                .clone();
            let is_base = rs.iter().all(|&(x, y)| {
                m < l * x || n < l * y || signature((m - l * x, n - l * y), t, forms) != sig
            });
            if is_base {
                out.add_linear(LinSet::new((m, n), rs.iter().map(|&(x, y)| (l * x, l * y))));
            }
        }
    }
    let out = out.simplified();
    let got = out.table(side, side);
    if let Some(i) = (0..got.len()).find(|&i| got[i] != grid[i]) {
        let (m, n) = (i as u64 / side, i as u64 % side);
        return Err(Error::SynthesisFailed {
            m,
            n,
            expected: grid[i],
        });
    }
    Ok(out)
}
