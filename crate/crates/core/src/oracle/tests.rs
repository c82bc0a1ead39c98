use proptest::prelude::*;

use super::*;
use num_integer::Integer;
use num_traits::Zero;

use crate::exactnum::{rat, CycRat, Int, Rat};
use crate::polyfield::DEFAULT_DEGREE_CAP;
use crate::semilinear::window_equal;

fn p(c: &[i64]) -> Poly<Rat> {
    Poly::new(c.iter().map(|&x| rat(x, 1)).collect())
}

fn lin(a: Rat, b: Rat) -> Poly<Rat> {
    Poly::new(vec![b, a])
}

#[test]
fn counter_example_window() {
    let t = PolyTriple::new(lin(rat(1, 2), rat(0, 1)), p(&[-1, 1]), p(&[1]));
    let w = recurrence_window(&t, 4, 8, DEFAULT_DEGREE_CAP);
    assert_eq!(w.true_cells(), vec![(0, 0), (1, 1), (2, 3), (3, 7)]);
    assert!(w.errors.is_empty());
    let a = affine_window(
        &rat(1, 2),
        &rat(0, 1),
        &rat(1, 1),
        &rat(-1, 1),
        &rat(0, 1),
        &rat(1, 1),
        4,
        8,
    )
    .unwrap();
    assert_eq!(window_equal(&a, &w), (true, None));
}

#[test]
fn common_fixed_points() {
    let t = PolyTriple::new(p(&[0, 0, 1]), p(&[0, 0, 0, 1]), p(&[0, 1]));
    let w = recurrence_window(&t, 3, 3, DEFAULT_DEGREE_CAP);
    assert!(w.get(1, 1));
    assert_eq!(w.true_cells().len(), 9);
}

#[test]
fn doubling_against_shift() {
    let t = PolyTriple::new(p(&[0, 2]), p(&[1, 1]), p(&[0, 0, 1]));
    let w = recurrence_window(&t, 2, 3, DEFAULT_DEGREE_CAP);
    assert_eq!(w.to_string(), "100\n101\n");
}

#[test]
fn shifts_only_meet_at_origin() {
    let one = rat(1, 1);
    let w = affine_window(&one, &one, &one, &one, &one, &rat(0, 1), 6, 6).unwrap();
    assert_eq!(w.true_cells(), vec![(0, 0)]);
    assert!(affine_window(&rat(0, 1), &one, &one, &one, &one, &one, 2, 2).is_err());
}

#[test]
fn degree_cap_is_reported_per_cell() {
    let t = PolyTriple::new(p(&[0, 0, 1]), p(&[1, 1]), p(&[0]));
    let w = recurrence_window(&t, 5, 2, 4);
    assert_eq!(w.errors.len(), 4);
    assert!(w.errors.iter().all(|e| e.m >= 3));
    assert!(w.get(0, 0));
}

#[test]
fn torsion_examples() {
    let w = torsion_window(&TorsionSpec::new(2, 3, 2, 1, 0).unwrap(), 6, 6);
    for m in 0..6 {
        for n in 0..6 {
            assert_eq!(w.get(m, n), m == 0, "({m},{n})");
        }
    }
    let w = torsion_window(&TorsionSpec::new(2, 5, 1, 0, 0).unwrap(), 5, 5);
    assert_eq!(w.true_cells().len(), 25);
    let modified = TorsionSpec::new(3, 3, 1, 0, 0).unwrap().with_shifts(1, 1);
    assert!(modified.cell(2, 2));
    assert!(TorsionSpec::new(1, 3, 2, 0, 0).is_err());
    assert!(TorsionSpec::new(2, 3, 2, 2, 0).is_err());
}

#[test]
fn torsion_enumeration_matches_coset_test() {
    // Exponents above the enumeration limit take the coset path.
    let big: Int = num_traits::pow(Int::from(3), 20);
    let k = 6u64;
    let divisibility = |e1: &Int, a1: &Int, e2: &Int, a2: &Int| {
        let g = e1.gcd(e2);
        ((a2 * e1 - a1 * e2) % (Int::from(k) * g)).is_zero()
    };
    for a1 in 0..6i64 {
        for a2 in 0..6i64 {
            let (a1, a2) = (Int::from(a1), Int::from(a2));
            let e1 = Int::from(4);
            assert_eq!(
                torsion_solvable(&e1, &a1, &big, &a2, k),
                divisibility(&e1, &a1, &big, &a2)
            );
            let e1 = &big * 4;
            let e2 = &big * 6 + 4;
            assert_eq!(
                torsion_solvable(&e1, &a1, &e2, &a2, k),
                divisibility(&e1, &a1, &e2, &a2)
            );
        }
    }
}

#[test]
fn row_sets() {
    // f = z², g = z² − 2, c = 2: roots ±√2 map to 0, −2, 2, 2, …
    let t = PolyTriple::new(p(&[0, 0, 1]), p(&[-2, 0, 1]), p(&[2]));
    let w = recurrence_window(&t, 3, 10, DEFAULT_DEGREE_CAP);
    for m in 0..2 {
        let r = row_set(&t, m, 100, DEFAULT_DEGREE_CAP).unwrap();
        for n in 0..10 {
            assert_eq!(r.contains(n), w.get(m, n), "({m},{n})");
        }
    }
    assert_eq!(
        row_set(&t, 1, 100, DEFAULT_DEGREE_CAP).unwrap(),
        EPSet1::at_least(3)
    );
    // The fourth roots of 2 escape under g, so their row is out of reach.
    assert!(row_set(&t, 2, 100, DEFAULT_DEGREE_CAP)
        .unwrap_err()
        .is_budget());
    // λ^{2^m} = λ^{2^n} = −1 pins λ to a primitive 2^{m+1}-th root, so m = n.
    let t = PolyTriple::new(p(&[0, 0, 1]), p(&[0, 0, 1]), p(&[-1]));
    let w = recurrence_window(&t, 5, 5, DEFAULT_DEGREE_CAP);
    let col = col_set(&t, 2, 100, DEFAULT_DEGREE_CAP).unwrap();
    assert_eq!(col, EPSet1::finite([2]));
    for m in 0..5 {
        assert_eq!(col.contains(m), w.get(m, 2));
    }
}

#[test]
fn row_set_of_identity_row() {
    // f^∘1 = c, so the row only asks for roots of g^∘n − c.
    let t = PolyTriple::new(p(&[0, 0, 1]), p(&[1, 0, 1]), p(&[0, 0, 1]));
    let expect = EPSet1::full().difference(&EPSet1::finite([1]));
    assert_eq!(row_set(&t, 1, 100, DEFAULT_DEGREE_CAP).unwrap(), expect);
    let t = PolyTriple::new(p(&[0, 0, 1]), p(&[0, 0, 1]), p(&[0, 0, 1]));
    assert_eq!(
        row_set(&t, 1, 100, DEFAULT_DEGREE_CAP).unwrap(),
        EPSet1::full()
    );
}

#[test]
fn row_set_budget() {
    // 1/2 is not preperiodic for z², so the algebra state never repeats.
    let t = PolyTriple::new(lin(rat(2, 1), rat(0, 1)), p(&[0, 0, 1]), p(&[1]));
    assert!(row_set(&t, 1, 12, DEFAULT_DEGREE_CAP)
        .unwrap_err()
        .is_budget());
}

fn cyc_power_triple(d1: u64, d2: u64, k: u64, a: u64, e: u64) -> PolyTriple<CycRat> {
    let f = Poly::monomial(CycRat::one(), d1 as usize);
    let g = Poly::monomial(CycRat::zeta(k, e), d2 as usize);
    let c = Poly::constant(CycRat::zeta(k, a));
    PolyTriple::new(f, g, c).excluding_zero()
}

#[test]
fn torsion_matches_exact_oracle() {
    for (d1, d2, k, a, e) in [
        (2, 3, 2, 1, 0),
        (3, 2, 6, 5, 1),
        (2, 2, 4, 1, 3),
        (3, 3, 5, 2, 4),
    ] {
        let exact = recurrence_window(&cyc_power_triple(d1, d2, k, a, e), 8, 8, DEFAULT_DEGREE_CAP);
        let spec = TorsionSpec::new(d1 as i64, d2 as i64, k, a, e).unwrap();
        assert_eq!(
            window_equal(&exact, &torsion_window(&spec, 8, 8)),
            (true, None)
        );
    }
}

fn small_rat() -> impl Strategy<Value = Rat> {
    (-4i64..=4, 1i64..=3).prop_map(|(a, b)| rat(a, b))
}

fn nonzero_rat() -> impl Strategy<Value = Rat> {
    small_rat().prop_filter("nonzero", |x| *x != rat(0, 1))
}

fn small_poly() -> impl Strategy<Value = Poly<Rat>> {
    proptest::collection::vec(-2i64..=2, 1..=3).prop_map(|c| p(&c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn affine_oracle_agrees_with_gcd_oracle(
        a1 in nonzero_rat(), b1 in small_rat(), a2 in nonzero_rat(), b2 in small_rat(),
        c in small_rat(), d in small_rat(),
    ) {
        let t = PolyTriple::new(lin(a1.clone(), b1.clone()), lin(a2.clone(), b2.clone()), lin(c.clone(), d.clone()));
        let w1 = recurrence_window(&t, 7, 7, DEFAULT_DEGREE_CAP);
        let w2 = affine_window(&a1, &b1, &a2, &b2, &c, &d, 7, 7).unwrap();
        prop_assert_eq!(window_equal(&w1, &w2), (true, None));
    }

    #[test]
    fn swapping_transposes(f in small_poly(), g in small_poly(), c in small_poly(), ez in any::<bool>()) {
        prop_assume!(!f.is_constant() && !g.is_constant());
        let mut t = PolyTriple::new(f, g, c);
        t.exclude_zero = ez;
        let w = recurrence_window(&t, 4, 3, DEFAULT_DEGREE_CAP);
        let s = recurrence_window(&t.swapped(), 3, 4, DEFAULT_DEGREE_CAP);
        prop_assert_eq!(window_equal(&w.transpose(), &s), (true, None));
    }

    #[test]
    fn torsion_solvability_is_lemma_divisibility(
        d1 in -5i64..=5, m in 0u64..12, d2 in -5i64..=5, n in 0u64..12,
        k in 1u64..=8, a in 0u64..8, e in 0u64..8,
    ) {
        prop_assume!(d1.abs() >= 2 && d2.abs() >= 2 && a < k && e < k);
        let spec = TorsionSpec::new(d1, d2, k, a, e).unwrap();
        let (e1, a1, e2, a2) = spec.exponents(m, n);
        let g = e1.gcd(&e2);
        let expect = ((&a2 * &e1 - &a1 * &e2) % (Int::from(k) * g)).is_zero();
        prop_assert_eq!(spec.cell(m, n), expect);
    }
}
