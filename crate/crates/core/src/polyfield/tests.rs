use proptest::prelude::*;

use super::*;
use crate::exactnum::rat;

fn p(c: &[i64]) -> Poly<Rat> {
    Poly::new(c.iter().map(|&x| rat(x, 1)).collect())
}

#[test]
fn composition() {
    assert_eq!(compose(&p(&[0, 0, 1]), &p(&[1, 1])), p(&[1, 2, 1]));
    let q = p(&[3, -1, 4, 1]);
    assert_eq!(compose(&Poly::z(), &q), q);
    assert_eq!(compose(&p(&[0, 2]), &p(&[-1, 1])), p(&[-2, 2]));
}

#[test]
fn iteration() {
    assert_eq!(
        iterate(&p(&[0, 0, 1]), 3, DEFAULT_DEGREE_CAP).unwrap(),
        Poly::monomial(rat(1, 1), 8)
    );
    assert_eq!(
        iterate(&p(&[-1, 1]), 4, DEFAULT_DEGREE_CAP).unwrap(),
        p(&[-4, 1])
    );
    let half = Poly::new(vec![rat(0, 1), rat(1, 2)]);
    assert_eq!(
        iterate(&half, 5, DEFAULT_DEGREE_CAP).unwrap(),
        Poly::new(vec![rat(0, 1), rat(1, 32)])
    );
    assert_eq!(iterate(&p(&[0, 0, 1]), 0, 1).unwrap(), Poly::z());
    assert!(matches!(
        iterate(&p(&[0, 0, 1]), 30, DEFAULT_DEGREE_CAP),
        Err(Error::DegreeCapExceeded { .. })
    ));
    let its = iterates(&p(&[0, 0, 0, 1]), 10, 100);
    assert_eq!(its.len(), 5);
}

#[test]
fn gcd_examples() {
    assert_eq!(
        poly_gcd(&p(&[-1, 0, 1]), &p(&[-1, 1])).unwrap(),
        p(&[-1, 1])
    );
    assert_eq!(
        poly_gcd(&p(&[1, 0, 1]), &p(&[-1, 0, 1])).unwrap(),
        Poly::one()
    );
    assert_eq!(
        poly_gcd(&p(&[0, -1, 0, 1]), &p(&[0, 0, 1])).unwrap(),
        p(&[0, 1])
    );
    assert!(poly_gcd(&Poly::<Rat>::zero(), &Poly::zero()).is_err());
}

#[test]
fn common_root_examples() {
    assert!(common_root_exists(&p(&[-1, 0, 1]), &p(&[-1, 1]), false));
    assert!(!common_root_exists(&p(&[0, 0, 1]), &p(&[0, 0, 0, 1]), true));
    assert!(common_root_exists(&p(&[0, 0, 1]), &p(&[0, 0, 0, 1]), false));
    let mut a = vec![0i64; 9];
    a[8] = 1;
    a[1] = -1;
    let mut b = vec![0i64; 10];
    b[9] = 1;
    b[1] = -1;
    assert!(common_root_exists(&p(&a), &p(&b), true));
}

#[test]
fn common_root_high_degree() {
    // f^5(λ) = 3 forces f^6(λ) = f(3) = 10.
    let f = p(&[1, 0, 1]);
    let f5 = &iterate(&f, 5, DEFAULT_DEGREE_CAP).unwrap() - &p(&[3]);
    let f6 = &iterate(&f, 6, DEFAULT_DEGREE_CAP).unwrap() - &p(&[3]);
    assert!(!common_root_exists(&f5, &f6, false));
    let g = &f5 * &p(&[-7, 1]);
    let h = &f6 * &p(&[-7, 1]);
    assert!(common_root_exists(&g, &h, false));
}

#[test]
fn common_root_cyclotomic() {
    let i = CycRat::zeta(4, 1);
    let lin = Poly::new(vec![i.negate(), CycRat::one()]);
    let sq = Poly::new(vec![CycRat::one(), CycRat::zero(), CycRat::one()]);
    assert!(common_root_exists(&lin, &sq, false));
    let other = Poly::new(vec![CycRat::from_int(-2), CycRat::one()]);
    assert!(!common_root_exists(&other, &sq, false));
}

fn from_roots(roots: &[i64], scale: i64) -> Poly<Rat> {
    roots
        .iter()
        .fold(Poly::constant(rat(scale, 1)), |acc, &r| &acc * &p(&[-r, 1]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn iterate_splits(c in proptest::collection::vec(-3i64..4, 1..4), a in 0u64..3, b in 0u64..3) {
        let q = p(&c);
        prop_assume!(!q.is_zero());
        let lhs = iterate(&q, a + b, DEFAULT_DEGREE_CAP).unwrap();
        let rhs = compose(&iterate(&q, a, DEFAULT_DEGREE_CAP).unwrap(), &iterate(&q, b, DEFAULT_DEGREE_CAP).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn common_roots_of_split_polys(
        r1 in proptest::collection::vec(-4i64..5, 1..=4),
        r2 in proptest::collection::vec(-4i64..5, 1..=4),
        s1 in 1i64..4,
        s2 in -3i64..0,
        exclude in any::<bool>(),
    ) {
        let expect = r1.iter().any(|x| r2.contains(x) && !(exclude && *x == 0));
        prop_assert_eq!(common_root_exists(&from_roots(&r1, s1), &from_roots(&r2, s2), exclude), expect);
    }

    #[test]
    fn orbit_matches_iteration(c in proptest::collection::vec(-2i64..3, 3..4), lam in -3i64..4, target in -3i64..4) {
        let h = p(&c);
        let r = orbit_progression(&h, &rat(lam, 1), &rat(target, 1), 64).unwrap();
        let s = &r.progression;
        let horizon = 2 * (s.threshold() + s.period().max(1)) + 8;
        let mut x = rat(lam, 1);
        for m in 0..horizon {
            prop_assert_eq!(s.contains(m), x == rat(target, 1));
            x = h.eval(&x);
            if x.numer().bits() > 4000 { break; }
        }
    }
}
