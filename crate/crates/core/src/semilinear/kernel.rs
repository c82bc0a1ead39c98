use std::collections::BTreeSet;

use num_integer::Integer;

use super::{EPSet1, LinSet, Point, SemiLin2};
use crate::error::{Error, Result};

/// Membership of `seeds + ℕ·gens` on `[0, w) × [0, h)`, row-major by first coordinate.
pub(crate) fn closure_table(seeds: &[Point], gens: &[Point], w: u64, h: u64) -> Vec<bool> {
    let (w, h) = (w as usize, h as usize);
    let mut t = vec![false; w * h];
    for &(x, y) in seeds {
        if (x as usize) < w && (y as usize) < h {
            t[x as usize * h + y as usize] = true;
        }
    }
    for &(gx, gy) in gens {
        let (gx, gy) = (gx as usize, gy as usize);
        for x in gx..w {
            for y in gy..h {
                if !t[x * h + y] && t[(x - gx) * h + (y - gy)] {
                    t[x * h + y] = true;
                }
            }
        }
    }
    t
}

fn default_bound(l1: &LinSet, l2: &LinSet) -> u64 {
    let max_base = [l1.base.0, l1.base.1, l2.base.0, l2.base.1]
        .into_iter()
        .max()
        .unwrap_or(0);
    let gen_sum: u64 = l1.gens.iter().chain(&l2.gens).map(|g| g.0 + g.1).sum();
    let count = (l1.gens.len() + l2.gens.len()).max(1) as u64;
    (2 * (max_base + gen_sum) * count).max(max_base + 1)
}

/// `L1 ∩ L2` with the default saturation bound.
pub fn intersect_lin(l1: &LinSet, l2: &LinSet) -> Result<SemiLin2> {
    intersect_lin_with_bound(l1, l2, default_bound(l1, l2))
}

/// `L1 ∩ L2` as `bases + H`, where `H` is the intersection of the two monoids.
///
/// Irreducible elements of `H` and the bases are searched in `[0, bound]²`;
/// the result is then checked against both inputs on `[0, 2·bound]²`.
pub fn intersect_lin_with_bound(l1: &LinSet, l2: &LinSet, bound: u64) -> Result<SemiLin2> {
    let w = bound + 1;
    let idx = |(x, y): Point| (x * w + y) as usize;
    let in_x: Vec<bool> = l1
        .table(w, w)
        .into_iter()
        .zip(l2.table(w, w))
        .map(|(a, b)| a && b)
        .collect();
    let m1 = closure_table(&[(0, 0)], &l1.gens, w, w);
    let m2 = closure_table(&[(0, 0)], &l2.gens, w, w);
    let in_h: Vec<bool> = m1.into_iter().zip(m2).map(|(a, b)| a && b).collect();

    let mut by_sum: Vec<Point> = (0..w).flat_map(|x| (0..w).map(move |y| (x, y))).collect();
    by_sum.sort_by_key(|&(x, y)| (x + y, x));
    let mut irr: Vec<Point> = Vec::new();
    for &p in by_sum.iter().skip(1) {
        if in_h[idx(p)]
            && !irr
                .iter()
                .any(|&g| g.0 <= p.0 && g.1 <= p.1 && in_h[idx((p.0 - g.0, p.1 - g.1))])
        {
            irr.push(p);
        }
    }
    let bases: Vec<Point> = by_sum
        .iter()
        .copied()
        .filter(|&p| {
            in_x[idx(p)]
                && !irr
                    .iter()
                    .any(|&g| g.0 <= p.0 && g.1 <= p.1 && in_x[idx((p.0 - g.0, p.1 - g.1))])
        })
        .collect();

    let big = 2 * bound + 1;
    let got = closure_table(&bases, &irr, big, big);
    let want1 = l1.table(big, big);
    let want2 = l2.table(big, big);
    if let Some(i) = (0..got.len()).find(|&i| got[i] != (want1[i] && want2[i])) {
        let (x, y) = (i as u64 / big, i as u64 % big);
        return Err(Error::SaturationBound(format!(
            "intersection of {l1} and {l2} disagrees at ({x},{y}) with bound {bound}"
        )));
    }
    Ok(SemiLin2::from_linear(
        bases
            .into_iter()
            .map(|b| LinSet::new(b, irr.iter().copied())),
    ))
}

/// `{offset + Σ cᵢ gᵢ : cᵢ ≥ 0}`.
pub fn numerical_semigroup_set(gens: &[u64], offset: u64) -> EPSet1 {
    let mut norm: Vec<u64> = gens.iter().copied().filter(|&g| g > 0).collect();
    if norm.is_empty() {
        return EPSet1::finite([offset]);
    }
    let g = norm.iter().fold(0u64, |acc, &x| acc.gcd(&x));
    for x in norm.iter_mut() {
        *x /= g;
    }
    norm.sort_unstable();
    norm.dedup();
    if norm[0] == 1 {
        return EPSet1::progression(offset, g);
    }
    if norm.len() == 1 {
        return EPSet1::progression(offset, g * norm[0]);
    }
    // The Frobenius number is below the product of the two smallest generators.
    let bound = norm[0] * norm[1];
    let mut reach = vec![false; bound as usize + 1];
    reach[0] = true;
    for &a in &norm {
        for x in a as usize..=bound as usize {
            if reach[x - a as usize] {
                reach[x] = true;
            }
        }
    }
    EPSet1::from_pattern(offset + g * bound, g, |x| {
        x >= offset && (x - offset).is_multiple_of(g) && {
            let y = (x - offset) / g;
            y >= bound || reach[y as usize]
        }
    })
}

/// The row `{n : (m, n) ∈ S}`.
pub fn slice_row(s: &SemiLin2, m: u64) -> EPSet1 {
    let mut out = EPSet1::finite(s.sporadic().filter(|p| p.0 == m).map(|p| p.1));
    for l in s.linear() {
        if l.base.0 > m {
            continue;
        }
        let r = (m - l.base.0) as usize;
        let vertical: Vec<u64> = l.gens.iter().filter(|g| g.0 == 0).map(|g| g.1).collect();
        let sideways: Vec<Point> = l.gens.iter().copied().filter(|g| g.0 > 0).collect();
        // reach[x] holds the y-sums of combinations of sideways generators with x-sum x.
        let mut reach: Vec<BTreeSet<u64>> = vec![BTreeSet::new(); r + 1];
        reach[0].insert(0);
        for &(gx, gy) in &sideways {
            let gx = gx as usize;
            for x in gx..=r {
                let add: Vec<u64> = reach[x - gx].iter().map(|y| y + gy).collect();
                reach[x].extend(add);
            }
        }
        let semigroup = numerical_semigroup_set(&vertical, 0);
        for &y0 in &reach[r] {
            out = out.union(&semigroup.affine_image(l.base.1 + y0, 1));
        }
    }
    out
}

pub fn eventual_period(a: &EPSet1) -> u64 {
    a.eventual_period()
}

/// The lcm over components of the gcd of their vertical generators; every
/// infinite row slice has an eventual period dividing it.
pub fn uniform_period_bound(s: &SemiLin2) -> u64 {
    s.linear().iter().fold(1u64, |acc, l| {
        let d = l
            .gens
            .iter()
            .filter(|g| g.0 == 0)
            .fold(0u64, |d, g| d.gcd(&g.1));
        if d == 0 {
            acc
        } else {
            acc.lcm(&d)
        }
    })
}

/// Values `a_x + Σ cᵢ xᵢ` over combinations with `Σ cᵢ (yᵢ − xᵢ) = target`,
/// for values up to `limit`. Paths are kept inside a band of differences,
/// which loses nothing once the band is wider than the target plus twice
/// the largest single difference.
fn diagonal_values(gens: &[Point], target: i64, limit: u64) -> Vec<bool> {
    let delta = gens
        .iter()
        .map(|&(x, y)| (y as i64 - x as i64).abs())
        .max()
        .unwrap_or(0);
    let lo = target.min(0) - delta;
    let hi = target.max(0) + delta;
    let width = (hi - lo + 1) as usize;
    let n = limit as usize + 1;
    let mut t = vec![false; n * width];
    t[(-lo) as usize] = true;
    let (flat, steep): (Vec<Point>, Vec<Point>) = gens.iter().partition(|g| g.0 == 0);
    for x in 0..n {
        for &(gx, gy) in &steep {
            let gx = gx as usize;
            if gx > x {
                continue;
            }
            let shift = gy as i64 - gx as i64;
            for e in 0..width as i64 {
                let src = e - shift;
                if (0..width as i64).contains(&src) && t[(x - gx) * width + src as usize] {
                    t[x * width + e as usize] = true;
                }
            }
        }
        for &(_, gy) in &flat {
            for e in gy as usize..width {
                if t[x * width + e - gy as usize] {
                    t[x * width + e] = true;
                }
            }
        }
    }
    let col = (target - lo) as usize;
    (0..n).map(|x| t[x * width + col]).collect()
}

fn diagonal_lin(l: &LinSet) -> Result<EPSet1> {
    let (ax, ay) = l.base;
    let target = ax as i64 - ay as i64;
    let delta = l
        .gens
        .iter()
        .map(|&(x, y)| (y as i64 - x as i64).unsigned_abs())
        .max()
        .unwrap_or(0);
    let max_x = l.gens.iter().map(|g| g.0).max().unwrap_or(0).max(1);
    // Minimal solutions use at most |target| + 2Δ + 1 generators.
    let bound = ax + (target.unsigned_abs() + 2 * delta + 2) * max_x;
    let limit = 2 * bound + 1;
    let hom = diagonal_values(&l.gens, 0, limit);
    let inh = diagonal_values(&l.gens, target, limit);
    let member = |n: u64| n >= ax && inh[(n - ax) as usize];
    let mut irr: Vec<u64> = Vec::new();
    for h in 1..=bound {
        if hom[h as usize] && !irr.iter().any(|&g| hom[(h - g) as usize]) {
            irr.push(h);
        }
    }
    let semigroup = numerical_semigroup_set(&irr, 0);
    let mut out = EPSet1::empty();
    for n in 0..=bound {
        if member(n) && !irr.iter().any(|&g| g <= n && member(n - g)) {
            out = out.union(&semigroup.affine_image(n, 1));
        }
    }
    if let Some(n) = (0..=limit).find(|&n| out.contains(n) != member(n)) {
        return Err(Error::SaturationBound(format!(
            "diagonal of {l} disagrees at {n} with bound {bound}"
        )));
    }
    Ok(out)
}

/// `{n : (n, n) ∈ S}`.
pub fn diagonal(s: &SemiLin2) -> Result<EPSet1> {
    let mut out = EPSet1::finite(s.sporadic().filter(|p| p.0 == p.1).map(|p| p.0));
    for l in s.linear() {
        out = out.union(&diagonal_lin(l)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::tests::arb_linset;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn intersect_examples() {
        let a = LinSet::new((0, 0), [(1, 1)]);
        let b = LinSet::new((0, 0), [(2, 2)]);
        assert_eq!(
            intersect_lin(&a, &b).unwrap(),
            SemiLin2::from_linear([b.clone()])
        );
        let x = LinSet::new((0, 0), [(1, 0)]);
        let y = LinSet::new((0, 0), [(0, 1)]);
        assert_eq!(
            intersect_lin(&x, &y).unwrap(),
            SemiLin2::from_points([(0, 0)])
        );
        let l = LinSet::new((1, 2), [(1, 1), (0, 3)]);
        let s = intersect_lin(&l, &l).unwrap();
        let t = s.table(30, 30);
        assert_eq!(t, l.table(30, 30));
    }

    #[test]
    fn semigroup_examples() {
        let s = numerical_semigroup_set(&[3, 5], 0);
        assert_eq!(s.exceptions(), &[0, 3, 5, 6]);
        assert_eq!((s.threshold(), s.period()), (8, 1));
        assert_eq!(numerical_semigroup_set(&[2], 1), EPSet1::progression(1, 2));
        assert_eq!(numerical_semigroup_set(&[1], 0), EPSet1::full());
    }

    #[test]
    fn slice_examples() {
        let s = SemiLin2::from_linear([LinSet::new((0, 0), [(1, 1)])]);
        assert_eq!(slice_row(&s, 4), EPSet1::finite([4]));
        let s = SemiLin2::from_linear([LinSet::new((0, 0), [(1, 0), (0, 2)])]);
        assert_eq!(slice_row(&s, 1), EPSet1::progression(0, 2));
        let s = SemiLin2::from_points([(3, 7)]);
        assert_eq!(slice_row(&s, 3), EPSet1::finite([7]));
    }

    #[test]
    fn period_bound_example() {
        let s = SemiLin2::from_linear([LinSet::new((0, 0), [(1, 0), (0, 4), (0, 6)])]);
        assert_eq!(uniform_period_bound(&s), 2);
        assert_eq!(eventual_period(&EPSet1::progression(0, 2)), 2);
    }

    #[test]
    fn diagonal_examples() {
        assert_eq!(diagonal(&SemiLin2::full()).unwrap(), EPSet1::full());
        let s = SemiLin2::from_linear([LinSet::new((1, 0), [(1, 1)])]);
        assert_eq!(diagonal(&s).unwrap(), EPSet1::empty());
        let s = SemiLin2::from_linear([LinSet::new((0, 0), [(2, 2)])]);
        assert_eq!(diagonal(&s).unwrap(), EPSet1::progression(0, 2));
    }

    fn arb_semilin() -> impl Strategy<Value = SemiLin2> {
        (
            proptest::collection::vec(arb_linset(5, 3), 0..4),
            proptest::collection::vec((0u64..15, 0u64..15), 0..4),
        )
            .prop_map(|(ls, ps)| {
                let mut s = SemiLin2::from_linear(ls);
                for p in ps {
                    s.add_point(p);
                }
                s
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn intersect_is_conjunction(a in arb_linset(5, 3), b in arb_linset(5, 3)) {
            let s = intersect_lin(&a, &b).unwrap();
            let t = s.table(30, 30);
            let (ta, tb) = (a.table(30, 30), b.table(30, 30));
            for i in 0..900 {
                prop_assert_eq!(t[i], ta[i] && tb[i]);
            }
        }

        #[test]
        fn slices_match_membership(s in arb_semilin()) {
            for m in 0..=20u64 {
                let row = slice_row(&s, m);
                for n in 0..=50u64 {
                    prop_assert_eq!(row.contains(n), s.contains((m, n)));
                }
            }
        }

        #[test]
        fn slice_periods_divide_bound(s in arb_semilin()) {
            let d = uniform_period_bound(&s);
            for m in 0..=20u64 {
                let ep = slice_row(&s, m).eventual_period();
                prop_assert!(ep == 0 || d.is_multiple_of(ep));
            }
        }

        #[test]
        fn diagonal_matches_membership(s in arb_semilin()) {
            let d = diagonal(&s).unwrap();
            for n in 0..=100u64 {
                prop_assert_eq!(d.contains(n), s.contains((n, n)));
            }
        }

        #[test]
        fn semigroup_matches_dp(gens in proptest::collection::vec(1u64..12, 1..4), off in 0u64..5) {
            let s = numerical_semigroup_set(&gens, off);
            let mut reach = [false; 200];
            reach[off as usize] = true;
            for &g in &gens {
                for x in (off + g) as usize..200 {
                    if reach[x - g as usize] { reach[x] = true; }
                }
            }
            for x in 0..200u64 {
                prop_assert_eq!(s.contains(x), reach[x as usize]);
            }
        }
    }
}
