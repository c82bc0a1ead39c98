use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::exactnum::divisors;

/// An eventually periodic subset of `ℤ≥0` in canonical form.
///
/// Members below `threshold` are listed in `exceptions`. From `threshold` on,
/// `x` is a member iff `(x - threshold) mod period` lies in `residues`.
/// `period == 0` marks a finite set. The period is minimal and the threshold
/// is minimal for that period, so structural equality is set equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EPSet1 {
    exceptions: Vec<u64>,
    threshold: u64,
    period: u64,
    residues: Vec<u64>,
}

impl EPSet1 {
    pub fn empty() -> Self {
        EPSet1 {
            exceptions: Vec::new(),
            threshold: 0,
            period: 0,
            residues: Vec::new(),
        }
    }

    pub fn full() -> Self {
        Self::from_parts(Vec::new(), 0, 1, vec![0])
    }

    pub fn finite(xs: impl IntoIterator<Item = u64>) -> Self {
        let mut v: Vec<u64> = xs.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        let threshold = v.last().map_or(0, |&x| x + 1);
        EPSet1 {
            exceptions: v,
            threshold,
            period: 0,
            residues: Vec::new(),
        }
    }

    /// `{a + b k : k ≥ 0}`; a singleton when `b = 0`.
    pub fn progression(a: u64, b: u64) -> Self {
        if b == 0 {
            Self::finite([a])
        } else {
            Self::from_parts(Vec::new(), a, b, vec![0])
        }
    }

    /// `{x ≥ t}`.
    pub fn at_least(t: u64) -> Self {
        Self::progression(t, 1)
    }

    /// Builds and canonicalizes from raw parts. Exceptions at or above the
    /// threshold and residues at or above the period are ignored.
    pub fn from_parts(
        exceptions: Vec<u64>,
        threshold: u64,
        period: u64,
        residues: Vec<u64>,
    ) -> Self {
        let raw = EPSet1 {
            exceptions,
            threshold,
            period,
            residues,
        };
        Self::from_pattern(threshold, period, |x| raw.raw_contains(x))
    }

    /// The set agreeing with `pred` below `t` and, from `t` on, periodic with
    /// period `p` (finite when `p = 0`). `pred` is sampled on `[0, t + p)`.
    pub fn from_pattern(t: u64, p: u64, pred: impl Fn(u64) -> bool) -> Self {
        let exceptions: Vec<u64> = (0..t).filter(|&x| pred(x)).collect();
        let residues: Vec<u64> = (0..p).filter(|&r| pred(t + r)).collect();
        let mut s = EPSet1 {
            exceptions,
            threshold: t,
            period: p,
            residues,
        };
        s.canonicalize();
        s
    }

    fn raw_contains(&self, x: u64) -> bool {
        if x < self.threshold {
            self.exceptions.binary_search(&x).is_ok()
        } else if self.period == 0 {
            false
        } else {
            self.residues
                .binary_search(&((x - self.threshold) % self.period))
                .is_ok()
        }
    }

    fn canonicalize(&mut self) {
        self.exceptions.retain(|&x| x < self.threshold);
        self.exceptions.sort_unstable();
        self.exceptions.dedup();
        if self.period > 0 {
            let p = self.period;
            self.residues.retain(|&r| r < p);
            self.residues.sort_unstable();
            self.residues.dedup();
        }
        if self.residues.is_empty() {
            self.period = 0;
        }
        if self.period == 0 {
            self.residues.clear();
            self.threshold = self.exceptions.last().map_or(0, |&x| x + 1);
            return;
        }
        let p = self.period;
        let member: Vec<bool> = (0..p)
            .map(|r| self.residues.binary_search(&r).is_ok())
            .collect();
        let q = divisors(p)
            .into_iter()
            .find(|&d| (0..p).all(|r| member[r as usize] == member[((r + d) % p) as usize]))
            .unwrap_or(p);
        let mut pattern: Vec<bool> = member[..q as usize].to_vec();
        let mut t = self.threshold;
        // Lower the threshold while the element just below continues the pattern.
        while t > 0 {
            let below = self.exceptions.last() == Some(&(t - 1));
            if below != pattern[(q - 1) as usize] {
                break;
            }
            if below {
                self.exceptions.pop();
            }
            pattern.rotate_right(1);
            t -= 1;
        }
        self.threshold = t;
        self.period = q;
        self.residues = (0..q).filter(|&r| pattern[r as usize]).collect();
    }

    pub fn contains(&self, x: u64) -> bool {
        self.raw_contains(x)
    }

    pub fn exceptions(&self) -> &[u64] {
        &self.exceptions
    }

    pub fn threshold(&self) -> u64 {
        self.threshold
    }

    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    /// Minimal eventual period; `0` for finite sets.
    pub fn eventual_period(&self) -> u64 {
        self.period
    }

    pub fn is_empty(&self) -> bool {
        self.exceptions.is_empty() && self.period == 0
    }

    pub fn is_finite(&self) -> bool {
        self.period == 0
    }

    pub fn is_full(&self) -> bool {
        *self == Self::full()
    }

    pub fn min(&self) -> Option<u64> {
        self.exceptions.first().copied().or_else(|| {
            self.residues
                .first()
                .map(|&r| self.threshold + r)
                .filter(|_| self.period > 0)
        })
    }

    /// Members below `bound`.
    pub fn members_below(&self, bound: u64) -> Vec<u64> {
        (0..bound).filter(|&x| self.contains(x)).collect()
    }

    fn combine(&self, other: &Self, op: impl Fn(bool, bool) -> bool) -> Self {
        let t = self.threshold.max(other.threshold);
        let p = self.period.max(1).lcm(&other.period.max(1));
        Self::from_pattern(t, p, |x| op(self.contains(x), other.contains(x)))
    }

    pub fn union(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersect(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a && !b)
    }

    pub fn complement(&self) -> Self {
        Self::from_pattern(self.threshold, self.period.max(1), |x| !self.contains(x))
    }

    /// `{offset + stride·x : x ∈ self}`.
    pub fn affine_image(&self, offset: u64, stride: u64) -> Self {
        if stride == 0 {
            return if self.is_empty() {
                Self::empty()
            } else {
                Self::finite([offset])
            };
        }
        let t = offset + stride * self.threshold;
        let p = stride * self.period;
        Self::from_pattern(t, p, |y| {
            y >= offset
                && (y - offset).is_multiple_of(stride)
                && self.contains((y - offset) / stride)
        })
    }

    /// `{x : offset + stride·x ∈ self}`.
    pub fn affine_preimage(&self, offset: u64, stride: u64) -> Self {
        if stride == 0 {
            return if self.contains(offset) {
                Self::full()
            } else {
                Self::empty()
            };
        }
        let t = self.threshold.saturating_sub(offset).div_ceil(stride);
        let p = if self.period == 0 {
            1
        } else {
            self.period / self.period.gcd(&stride)
        };
        Self::from_pattern(t, p, |x| self.contains(offset + stride * x))
    }

    /// Generator form: a list of progressions `(a, b)` meaning `{a + b k}`,
    /// with `b = 0` for single points.
    pub fn to_progressions(&self) -> Vec<(u64, u64)> {
        let mut out: Vec<(u64, u64)> = self.exceptions.iter().map(|&x| (x, 0)).collect();
        if self.period > 0 {
            out.extend(
                self.residues
                    .iter()
                    .map(|&r| (self.threshold + r, self.period)),
            );
        }
        out
    }

    pub fn from_progressions(ps: &[(u64, u64)]) -> Self {
        ps.iter().fold(Self::empty(), |acc, &(a, b)| {
            acc.union(&Self::progression(a, b))
        })
    }
}

impl fmt::Display for EPSet1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .to_progressions()
            .into_iter()
            .map(|(a, b)| {
                if b == 0 {
                    a.to_string()
                } else {
                    format!("{a}+{b}k")
                }
            })
            .collect();
        if parts.is_empty() {
            write!(f, "{{}}")
        } else {
            write!(f, "{{{}}}", parts.join(", "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn evens_union_odds() {
        let e = EPSet1::progression(0, 2);
        let o = EPSet1::progression(1, 2);
        assert_eq!(e.union(&o), EPSet1::full());
        assert_eq!(EPSet1::full().period(), 1);
        assert_eq!(EPSet1::full().residues(), &[0]);
    }

    #[test]
    fn tail_union_zero() {
        let s = EPSet1::at_least(3).union(&EPSet1::finite([0]));
        assert_eq!(s.exceptions(), &[0]);
        assert_eq!((s.threshold(), s.period()), (3, 1));
    }

    #[test]
    fn boolean_examples() {
        let evens = EPSet1::progression(0, 2);
        assert_eq!(evens.complement(), EPSet1::progression(1, 2));
        assert_eq!(
            evens.intersect(&EPSet1::progression(0, 3)),
            EPSet1::progression(0, 6)
        );
        let s = EPSet1::progression(1, 2).union(&EPSet1::finite([0]));
        assert_eq!(
            s.difference(&EPSet1::finite([0])),
            EPSet1::progression(1, 2)
        );
    }

    #[test]
    fn eventual_period_examples() {
        assert_eq!(EPSet1::progression(0, 2).eventual_period(), 2);
        assert_eq!(EPSet1::finite([1, 5, 9]).eventual_period(), 0);
    }

    #[test]
    fn threshold_is_lowered() {
        let s = EPSet1::from_parts(vec![1, 3], 5, 2, vec![0]);
        assert_eq!(s, EPSet1::progression(1, 2));
    }

    #[test]
    fn json_shape() {
        let s = EPSet1::progression(1, 2).union(&EPSet1::finite([0]));
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"exceptions":[0],"threshold":1,"period":2,"residues":[0]})
        );
    }

    fn arb_ep() -> impl Strategy<Value = EPSet1> {
        (
            proptest::collection::vec(0u64..12, 0..5),
            0u64..12,
            0u64..7,
            proptest::collection::vec(0u64..7, 0..4),
        )
            .prop_map(|(e, t, p, r)| EPSet1::from_parts(e, t, p, r))
    }

    proptest! {
        #[test]
        fn canonical_form_is_unique(a in arb_ep()) {
            let rebuilt = EPSet1::from_pattern(a.threshold() + 3, a.period().max(1) * 6, |x| a.contains(x));
            prop_assert_eq!(rebuilt, a);
        }

        #[test]
        fn de_morgan_and_involution(a in arb_ep(), b in arb_ep()) {
            prop_assert_eq!(a.complement().complement(), a.clone());
            prop_assert_eq!(
                a.union(&b).complement(),
                a.complement().intersect(&b.complement())
            );
            prop_assert_eq!(
                a.intersect(&b).complement(),
                a.complement().union(&b.complement())
            );
        }

        #[test]
        fn affine_maps_agree_with_membership(a in arb_ep(), off in 0u64..5, stride in 1u64..4) {
            let img = a.affine_image(off, stride);
            let pre = a.affine_preimage(off, stride);
            for x in 0..120 {
                prop_assert_eq!(pre.contains(x), a.contains(off + stride * x));
                let y = x;
                let expect = y >= off && (y - off) % stride == 0 && a.contains((y - off) / stride);
                prop_assert_eq!(img.contains(y), expect);
            }
        }
    }
}
