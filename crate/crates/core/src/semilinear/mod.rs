//! Semilinear sets in one and two dimensions.
//!
//! Dimension one uses the canonical [`EPSet1`], which makes equality,
//! complement and eventual periods exact. Dimension two uses finite unions of
//! linear sets ([`SemiLin2`]); complement and exact equality are not offered
//! there, and comparisons go through [`Window`]s and row slices instead.

mod cert;
mod ep1;
mod kernel;
mod synth;
mod window;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

pub use cert::{nonsl_certificate, CertMode, CertRow, NonSLCertificate, RowProvenance};
pub use ep1::EPSet1;
pub use kernel::{
    diagonal, eventual_period, intersect_lin, intersect_lin_with_bound, numerical_semigroup_set,
    slice_row, uniform_period_bound,
};
pub use synth::{synthesis_side, synthesize, Form};
pub use window::{window_enumerate, window_equal, CellError, Window};

pub type Point = (u64, u64);

/// The linear set `base + ℕ·gens`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LinSet {
    pub base: Point,
    pub gens: Vec<Point>,
}

impl LinSet {
    /// Drops zero generators, sorts and deduplicates.
    pub fn new(base: Point, gens: impl IntoIterator<Item = Point>) -> Self {
        let set: BTreeSet<Point> = gens.into_iter().filter(|&g| g != (0, 0)).collect();
        LinSet {
            base,
            gens: set.into_iter().collect(),
        }
    }

    pub fn point(p: Point) -> Self {
        Self::new(p, [])
    }

    /// `ℤ²≥0` shifted to start at `base`.
    pub fn quadrant(base: Point) -> Self {
        Self::new(base, [(1, 0), (0, 1)])
    }

    pub fn contains(&self, p: Point) -> bool {
        member_lin(self, p)
    }

    /// Membership of every point of `[0, w) × [0, h)`, row-major by first coordinate.
    pub fn table(&self, w: u64, h: u64) -> Vec<bool> {
        let (w, h) = (w as usize, h as usize);
        let mut t = vec![false; w * h];
        let (ax, ay) = (self.base.0 as usize, self.base.1 as usize);
        if ax >= w || ay >= h {
            return t;
        }
        t[ax * h + ay] = true;
        for &(gx, gy) in &self.gens {
            let (gx, gy) = (gx as usize, gy as usize);
            for x in ax..w {
                for y in ay..h {
                    if !t[x * h + y] && x >= ax + gx && y >= ay + gy && t[(x - gx) * h + (y - gy)] {
                        t[x * h + y] = true;
                    }
                }
            }
        }
        t
    }
}

/// Whether `p − base` is a nonnegative integer combination of the generators.
pub fn member_lin(l: &LinSet, p: Point) -> bool {
    let (ax, ay) = l.base;
    if p.0 < ax || p.1 < ay {
        return false;
    }
    let (dx, dy) = ((p.0 - ax) as i128, (p.1 - ay) as i128);
    match l.gens.as_slice() {
        [] => dx == 0 && dy == 0,
        [(x, y)] => {
            let (x, y) = (*x as i128, *y as i128);
            let k = if x > 0 { dx / x } else { dy / y };
            k * x == dx && k * y == dy
        }
        [(x1, y1), (x2, y2)] if (*x1 as i128) * (*y2 as i128) != (*x2 as i128) * (*y1 as i128) => {
            let (x1, y1, x2, y2) = (*x1 as i128, *y1 as i128, *x2 as i128, *y2 as i128);
            let det = x1 * y2 - x2 * y1;
            let c1 = dx * y2 - dy * x2;
            let c2 = x1 * dy - y1 * dx;
            c1 % det == 0 && c2 % det == 0 && c1 / det >= 0 && c2 / det >= 0
        }
        _ => {
            let t = LinSet::new((0, 0), l.gens.iter().copied()).table(dx as u64 + 1, dy as u64 + 1);
            t[t.len() - 1]
        }
    }
}

/// A finite union of linear sets plus an explicit finite part.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "SemiLin2Json", try_from = "SemiLin2Json")]
pub struct SemiLin2 {
    sporadic: BTreeSet<Point>,
    linear: Vec<LinSet>,
}

#[derive(Serialize, Deserialize)]
struct SemiLin2Json {
    dim: u8,
    sporadic: Vec<Point>,
    linear: Vec<LinSet>,
}

impl From<SemiLin2> for SemiLin2Json {
    fn from(s: SemiLin2) -> Self {
        SemiLin2Json {
            dim: 2,
            sporadic: s.sporadic.into_iter().collect(),
            linear: s.linear,
        }
    }
}

impl TryFrom<SemiLin2Json> for SemiLin2 {
    type Error = String;
    fn try_from(j: SemiLin2Json) -> std::result::Result<Self, String> {
        if j.dim != 2 {
            return Err(format!("expected dim 2, got {}", j.dim));
        }
        let mut s = SemiLin2::empty();
        for p in j.sporadic {
            s.add_point(p);
        }
        for l in j.linear {
            s.add_linear(LinSet::new(l.base, l.gens));
        }
        Ok(s)
    }
}

impl SemiLin2 {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn full() -> Self {
        Self::from_linear([LinSet::quadrant((0, 0))])
    }

    pub fn from_linear(ls: impl IntoIterator<Item = LinSet>) -> Self {
        let mut s = Self::empty();
        for l in ls {
            s.add_linear(l);
        }
        s
    }

    pub fn from_points(ps: impl IntoIterator<Item = Point>) -> Self {
        SemiLin2 {
            sporadic: ps.into_iter().collect(),
            linear: Vec::new(),
        }
    }

    /// Adds a component; single points go to the sporadic part.
    pub fn add_linear(&mut self, l: LinSet) {
        if l.gens.is_empty() {
            self.sporadic.insert(l.base);
        } else if !self.linear.contains(&l) {
            self.linear.push(l);
        }
    }

    pub fn add_point(&mut self, p: Point) {
        self.sporadic.insert(p);
    }

    pub fn sporadic(&self) -> impl Iterator<Item = &Point> {
        self.sporadic.iter()
    }

    pub fn linear(&self) -> &[LinSet] {
        &self.linear
    }

    pub fn is_empty(&self) -> bool {
        self.sporadic.is_empty() && self.linear.is_empty()
    }

    pub fn contains(&self, p: Point) -> bool {
        self.sporadic.contains(&p) || self.linear.iter().any(|l| member_lin(l, p))
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut s = self.clone();
        for p in &other.sporadic {
            s.add_point(*p);
        }
        for l in &other.linear {
            s.add_linear(l.clone());
        }
        s
    }

    /// Intersection by pairwise [`intersect_lin`]; sporadic points are filtered by membership.
    pub fn intersect(&self, other: &Self) -> crate::Result<Self> {
        let mut s = Self::empty();
        for &p in &self.sporadic {
            if other.contains(p) {
                s.add_point(p);
            }
        }
        for &p in &other.sporadic {
            if self.contains(p) {
                s.add_point(p);
            }
        }
        for a in &self.linear {
            for b in &other.linear {
                s = s.union(&intersect_lin(a, b)?);
            }
        }
        Ok(s.simplified())
    }

    /// Membership of every point of `[0, w) × [0, h)`, row-major by first coordinate.
    pub fn table(&self, w: u64, h: u64) -> Vec<bool> {
        let mut t = vec![false; (w * h) as usize];
        for &(x, y) in &self.sporadic {
            if x < w && y < h {
                t[(x * h + y) as usize] = true;
            }
        }
        for l in &self.linear {
            for (cell, v) in t.iter_mut().zip(l.table(w, h)) {
                *cell |= v;
            }
        }
        t
    }

    /// Removes sporadic points and components contained in other components.
    pub fn simplified(&self) -> Self {
        let mut linear: Vec<LinSet> = Vec::new();
        for (i, l) in self.linear.iter().enumerate() {
            let covered = self
                .linear
                .iter()
                .enumerate()
                .any(|(j, o)| j != i && subsumes(o, l) && (!subsumes(l, o) || j < i));
            if !covered {
                linear.push(l.clone());
            }
        }
        let sporadic = self
            .sporadic
            .iter()
            .copied()
            .filter(|&p| !linear.iter().any(|l| member_lin(l, p)))
            .collect();
        SemiLin2 { sporadic, linear }
    }

    /// Applies `(m, n) ↦ (n, m)`.
    pub fn transpose(&self) -> Self {
        let mut s = Self::from_points(self.sporadic.iter().map(|&(a, b)| (b, a)));
        for l in &self.linear {
            s.add_linear(LinSet::new(
                (l.base.1, l.base.0),
                l.gens.iter().map(|&(a, b)| (b, a)),
            ));
        }
        s
    }
}

/// Sufficient test for `small ⊆ big`: the base and every generator of `small`
/// lie in `big` and the generators lie in the monoid of `big`.
fn subsumes(big: &LinSet, small: &LinSet) -> bool {
    let monoid = LinSet::new((0, 0), big.gens.iter().copied());
    member_lin(big, small.base) && small.gens.iter().all(|&g| member_lin(&monoid, g))
}

impl fmt::Display for LinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self
            .gens
            .iter()
            .map(|(x, y)| format!("({x},{y})"))
            .collect();
        write!(
            f,
            "L(({},{}), {{{}}})",
            self.base.0,
            self.base.1,
            gens.join(",")
        )
    }
}

impl fmt::Display for SemiLin2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.linear.iter().map(|l| l.to_string()).collect();
        if !self.sporadic.is_empty() {
            let pts: Vec<String> = self
                .sporadic
                .iter()
                .map(|(x, y)| format!("({x},{y})"))
                .collect();
            parts.push(format!("{{{}}}", pts.join(",")));
        }
        if parts.is_empty() {
            write!(f, "∅")
        } else {
            write!(f, "{}", parts.join(" ∪ "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn member_lin_examples() {
        let l = LinSet::new((1, 0), [(1, 1), (0, 2)]);
        assert!(member_lin(&l, (3, 4)));
        assert!(!member_lin(&l, (3, 0)));
        assert!(member_lin(&LinSet::point((4, 5)), (4, 5)));
    }

    #[test]
    fn json_round_trip() {
        let mut s = SemiLin2::from_linear([LinSet::new((0, 1), [(1, 1), (0, 2)])]);
        s.add_point((3, 7));
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"dim":2,"sporadic":[[3,7]],"linear":[{"base":[0,1],"gens":[[0,2],[1,1]]}]})
        );
        let back: SemiLin2 = serde_json::from_value(v).unwrap();
        assert_eq!(back, s);
    }

    pub(crate) fn arb_linset(max: u64, max_gens: usize) -> impl Strategy<Value = LinSet> {
        (
            (0..=max, 0..=max),
            proptest::collection::vec((0..=max, 0..=max), 0..=max_gens),
        )
            .prop_map(|(b, g)| LinSet::new(b, g))
    }

    fn brute(l: &LinSet, p: Point) -> bool {
        fn go(gens: &[Point], rem: (i64, i64)) -> bool {
            if rem == (0, 0) {
                return true;
            }
            let Some((&(gx, gy), rest)) = gens.split_first() else {
                return false;
            };
            (0..=12).any(|k| {
                let r = (rem.0 - k * gx as i64, rem.1 - k * gy as i64);
                r.0 >= 0 && r.1 >= 0 && go(rest, r)
            })
        }
        let rem = (p.0 as i64 - l.base.0 as i64, p.1 as i64 - l.base.1 as i64);
        rem.0 >= 0 && rem.1 >= 0 && go(&l.gens, rem)
    }

    proptest! {
        #[test]
        fn member_lin_matches_enumeration(l in arb_linset(6, 4), x in 0u64..13, y in 0u64..13) {
            prop_assert_eq!(member_lin(&l, (x, y)), brute(&l, (x, y)));
        }

        #[test]
        fn table_matches_member(l in arb_linset(5, 3)) {
            let t = l.table(20, 20);
            for x in 0..20 {
                for y in 0..20 {
                    prop_assert_eq!(t[(x * 20 + y) as usize], member_lin(&l, (x, y)));
                }
            }
        }

        #[test]
        fn simplified_keeps_membership(ls in proptest::collection::vec(arb_linset(4, 3), 1..5)) {
            let s = SemiLin2::from_linear(ls);
            let t = s.simplified();
            prop_assert_eq!(s.table(25, 25), t.table(25, 25));
        }
    }
}
