use proptest::prelude::*;

use super::power::h_by_gcd;
use super::*;
use crate::exactnum::{int_pow, nu_p_int, pow_mod, rat, root_of_unity_order, CycRat, Int, Rat};
use crate::oracle::{affine_window, recurrence_window, torsion_window, PolyTriple, TorsionSpec};
use crate::polyfield::{Poly, DEFAULT_DEGREE_CAP};
use crate::semilinear::{window_equal, CertMode, EPSet1, NonSLCertificate};

fn p(c: &[i64]) -> Poly<Rat> {
    Poly::new(c.iter().map(|&x| rat(x, 1)).collect())
}

fn chebyshev(d: u64) -> Poly<Rat> {
    let (mut prev, mut cur) = (p(&[1]), p(&[0, 1]));
    for _ in 1..d {
        let next = &(&p(&[0, 2]) * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

fn signed(e: i8, q: Poly<Rat>) -> Poly<Rat> {
    q.scale(&rat(e as i64, 1))
}

#[test]
fn lemma41_examples() {
    assert!(lemma41_check(2, 1, 1, 3, 3, 1, 1, 2, 2).unwrap());
    assert!(!lemma41_check(2, 1, 1, 2, 3, 0, 0, 1, 1).unwrap());
    assert!(lemma41_check(5, 0, 0, 2, 3, 1, 2, 3, 4).unwrap());
    assert!(lemma41_check(2, 1, 1, 2, 3, 4, 0, 2, 1).is_err());
}

#[test]
fn lte_examples() {
    let i = Int::from;
    assert_eq!(lte_nu2(&i(3), &i(1), 2, false).unwrap(), 3);
    assert_eq!(lte_nu2(&i(3), &i(1), 3, false).unwrap(), 1);
    assert_eq!(lte_nu2(&i(1), &i(1), 5, true).unwrap(), 1);
    assert!(lte_nu2(&i(2), &i(1), 2, false).is_err());
}

#[test]
fn lte_matches_direct_valuation() {
    let two = Int::from(2);
    for x in (-15i64..=15).step_by(2) {
        for y in (-15i64..=15).step_by(2) {
            for n in 1..=8u64 {
                for plus in [false, true] {
                    let direct = if plus {
                        int_pow(x, n) + int_pow(y, n)
                    } else {
                        int_pow(x, n) - int_pow(y, n)
                    };
                    let got = lte_nu2(&Int::from(x), &Int::from(y), n, plus);
                    match nu_p_int(&direct, &two) {
                        Ok(v) => assert_eq!(got.unwrap(), v, "x={x} y={y} n={n} plus={plus}"),
                        Err(_) => assert!(got.is_err()),
                    }
                }
            }
        }
    }
}

#[test]
fn power_examples() {
    let trivial = power_engine(&PowerSpec::new(2, 3, (1, 0), (1, 0)).unwrap()).unwrap();
    assert_eq!(trivial.set.table(12, 12), vec![true; 144]);
    let minus = power_engine(&PowerSpec::new(2, 3, (1, 0), (2, 1)).unwrap()).unwrap();
    for m in 0..12 {
        for n in 0..12 {
            assert_eq!(minus.set.contains((m, n)), m == 0, "({m}, {n})");
        }
    }
}

#[test]
fn power_gcd_identity() {
    for (d1, d2) in [(2, 3), (4, 2), (6, 4), (-2, 3), (12, 18)] {
        let spec = PowerSpec::new(d1, d2, (3, 1), (4, 3)).unwrap();
        for m in 0..8 {
            for n in 0..8 {
                assert_eq!(spec.h(m, n), h_by_gcd(&spec, m, n));
            }
        }
    }
}

#[test]
fn power_engine_matches_torsion_oracle() {
    for (d1, d2, zeta, c) in [
        (2, 3, (1, 0), (2, 1)),
        (3, 2, (6, 1), (6, 5)),
        (2, 2, (4, 3), (4, 1)),
        (4, 6, (3, 1), (2, 1)),
        (5, 3, (5, 2), (5, 4)),
        (-2, 3, (2, 1), (3, 1)),
    ] {
        let spec = PowerSpec::new(d1, d2, zeta, c).unwrap();
        let out = power_engine(&spec).unwrap();
        let oracle = TorsionSpec::new(d1, d2, spec.k(), spec.a(), spec.e()).unwrap();
        let (eq, at) = window_equal(&out.window(10, 10), &torsion_window(&oracle, 10, 10));
        assert!(eq, "{spec:?} differs at {at:?}");
    }
}

#[test]
fn power_row0_is_the_boundary_condition() {
    let spec = PowerSpec::new(3, 2, (1, 0), (10, 3)).unwrap();
    let row = power_row0(&spec).unwrap();
    let ord = Int::from(root_of_unity_order(&spec.c_value()).unwrap().unwrap());
    for m in 0..40 {
        assert_eq!(
            row.contains(m),
            pow_mod(&Int::from(3), m, &ord) == Int::from(1)
        );
    }
    let full = power_row0(&PowerSpec::new(3, 2, (1, 0), (1, 0)).unwrap()).unwrap();
    assert!(full.is_full());
}

#[test]
fn v_classify_examples() {
    assert_eq!(
        v_classify(2, 3, 1, 1, -1).unwrap(),
        VClass {
            full: false,
            m0: 2,
            n0: 1
        }
    );
    assert!(v_classify(4, 5, 3, 1, 1).unwrap().full);
    assert!(v_classify(3, 3, 1, -1, -1).unwrap().full);
}

#[test]
fn v_classify_is_constant_on_the_quadrant() {
    for r in 2..=5 {
        for s in 2..=5 {
            for t in 1..=4 {
                for (e1, e2) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                    let v = v_classify(r, s, t, e1, e2).unwrap();
                    for m in v.m0..v.m0 + 4 {
                        for n in v.n0..v.n0 + 4 {
                            assert_eq!(
                                v_member(r, s, t, e1, e2, m, n).unwrap(),
                                v.full,
                                "V({r},{s},{t},{e1},{e2}) at ({m},{n})"
                            );
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn chebyshev_trivial_signs_give_everything() {
    let out = chebyshev_engine(&ChebSpec::new(2, 3, 1, (1, 1, 1)).unwrap()).unwrap();
    assert_eq!(out.set.table(10, 10), vec![true; 100]);
}

#[test]
fn chebyshev_matches_gcd_oracle() {
    for (r, s, t) in [(2, 3, 1), (3, 2, 2), (2, 2, 3), (3, 3, 1)] {
        for e in [(1, 1, -1), (1, -1, 1), (-1, -1, 1), (-1, 1, -1)] {
            let spec = ChebSpec::new(r, s, t, e).unwrap();
            let out = chebyshev_engine(&spec).unwrap();
            let triple = PolyTriple::new(
                signed(e.0, chebyshev(r)),
                signed(e.1, chebyshev(s)),
                signed(e.2, chebyshev(t)),
            );
            let oracle = recurrence_window(&triple, 4, 4, DEFAULT_DEGREE_CAP);
            let (eq, at) = window_equal(&out.window(4, 4), &oracle);
            assert!(eq, "{spec:?} differs at {at:?}");
        }
    }
}

fn q(x: i64) -> CycRat {
    CycRat::from_int(x)
}

fn affine_agrees(spec: &AffineSpec, side: u64) {
    let out = affine_engine(spec).unwrap();
    let out = out.semilinear().expect("semilinear");
    let oracle = affine_window(
        &spec.a1, &spec.b1, &spec.a2, &spec.b2, &spec.c, &spec.d, side, side,
    )
    .unwrap();
    let (eq, at) = window_equal(&out.window(side, side), &oracle);
    assert!(eq, "{spec:?} differs at {at:?}");
}

#[test]
fn affine_examples() {
    let spec = AffineSpec::new(q(1), q(1), q(1), q(1), q(1), q(0)).unwrap();
    let out = affine_engine(&spec).unwrap();
    assert_eq!(
        out.semilinear()
            .unwrap()
            .set
            .table(6, 6)
            .iter()
            .filter(|&&b| b)
            .count(),
        1
    );
    assert!(out.semilinear().unwrap().set.contains((0, 0)));
    affine_agrees(
        &AffineSpec::new(q(2), q(0), q(4), q(0), q(2), q(0)).unwrap(),
        10,
    );
}

#[test]
fn affine_counter_shape_is_certified() {
    let spec = AffineSpec::rational(
        rat(1, 2),
        rat(0, 1),
        rat(1, 1),
        rat(-1, 1),
        rat(0, 1),
        rat(1, 1),
    )
    .unwrap();
    let res = affine_engine(&spec).unwrap();
    match res.certificate().expect("certificate") {
        NonSLCertificate::ProjectionGaps {
            coordinate, values, ..
        } => {
            assert_eq!(*coordinate, 1);
            assert_eq!(&values[..4], &[0, 1, 3, 7]);
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn affine_cases_match_oracle() {
    let r = |a, b| CycRat::from_rat(rat(a, b));
    let cases = [
        // both slopes one
        (r(1, 1), r(2, 1), r(1, 1), r(3, 1), r(2, 1), r(1, 1)),
        (r(1, 1), r(0, 1), r(1, 1), r(3, 1), r(2, 1), r(0, 1)),
        // one slope one
        (r(1, 1), r(1, 1), r(2, 1), r(1, 1), r(3, 1), r(0, 1)),
        (r(2, 1), r(1, 1), r(1, 1), r(1, 1), r(1, 1), r(0, 1)),
        (r(1, 1), r(1, 1), r(-1, 1), r(2, 1), r(2, 1), r(1, 1)),
        (r(1, 1), r(2, 1), r(1, 3), r(1, 1), r(2, 1), r(1, 1)),
        // neither
        (r(2, 1), r(1, 1), r(3, 1), r(2, 1), r(1, 1), r(0, 1)),
        (r(2, 1), r(-1, 1), r(2, 1), r(-1, 1), r(5, 1), r(-3, 1)),
        (r(-1, 1), r(1, 1), r(3, 1), r(0, 1), r(1, 1), r(0, 1)),
        (r(-2, 1), r(0, 1), r(4, 1), r(0, 1), r(3, 1), r(0, 1)),
        (r(1, 2), r(1, 1), r(3, 1), r(1, 1), r(2, 1), r(1, 1)),
    ];
    for (a1, b1, a2, b2, c, d) in cases {
        affine_agrees(&AffineSpec::new(a1, b1, a2, b2, c, d).unwrap(), 12);
    }
}

#[test]
fn affine_cyclotomic_slopes() {
    let i = CycRat::zeta(4, 1);
    let w = CycRat::zeta(3, 1);
    affine_agrees(
        &AffineSpec::new(i.clone(), q(1), w.clone(), q(0), q(2), q(1)).unwrap(),
        12,
    );
    affine_agrees(
        &AffineSpec::new(q(1), q(1), i.clone(), q(1), q(0), q(0)).unwrap(),
        12,
    );
    affine_agrees(&AffineSpec::new(w, i, q(2), q(1), q(1), q(0)).unwrap(), 12);
}

fn zrat(c: &[i64]) -> Poly<CycRat> {
    p(c).to_cyc()
}

fn decomposed_agrees(spec: &DecompSpec, side: u64) {
    let out = decomposed_engine(spec, DEFAULT_DEGREE_CAP).unwrap();
    let oracle = recurrence_window(
        &spec.triple(DEFAULT_DEGREE_CAP).unwrap(),
        side,
        side,
        DEFAULT_DEGREE_CAP,
    );
    let (eq, at) = window_equal(&out.window(side, side), &oracle);
    assert!(eq, "{spec:?} differs at {at:?}");
}

#[test]
fn decomposed_shape() {
    let spec = DecompSpec::new(zrat(&[0, 1, 0, 1]), 1, 1, 0, 1, CSpec::Constant(q(0))).unwrap();
    assert_eq!(spec.shape(), (1, 2));
    let spec = DecompSpec::new(zrat(&[-1, 0, 1]), 1, 1, 0, 1, CSpec::Constant(q(1))).unwrap();
    assert_eq!(spec.shape(), (0, 2));
    assert!(DecompSpec::new(zrat(&[0, 1, 1]), 1, 1, 0, 0, CSpec::Constant(q(0))).is_err());
}

#[test]
fn decomposed_constant_matches_oracle() {
    let h = zrat(&[-1, 0, 1]);
    for (z1, z2, c) in [(0, 1, 1), (1, 0, 0), (1, 1, -1), (0, 0, 1)] {
        decomposed_agrees(
            &DecompSpec::new(h.clone(), 1, 1, z1, z2, CSpec::Constant(q(c))).unwrap(),
            6,
        );
    }
    decomposed_agrees(
        &DecompSpec::new(h, 1, 2, 0, 1, CSpec::Constant(q(1))).unwrap(),
        4,
    );
    decomposed_agrees(
        &DecompSpec::new(zrat(&[0, 1, 0, 1]), 1, 1, 0, 1, CSpec::Constant(q(0))).unwrap(),
        5,
    );
    decomposed_agrees(
        &DecompSpec::new(zrat(&[-2, 0, 1]), 1, 1, 1, 0, CSpec::Constant(q(2))).unwrap(),
        6,
    );
}

#[test]
fn decomposed_needs_preperiodic_constant() {
    let spec = DecompSpec::new(zrat(&[-1, 0, 1]), 1, 1, 0, 1, CSpec::Constant(q(3))).unwrap();
    assert!(matches!(
        decomposed_engine(&spec, DEFAULT_DEGREE_CAP),
        Err(crate::Error::Precondition(_))
    ));
}

#[test]
fn decomposed_twisted_matches_oracle() {
    let h = zrat(&[-1, 0, 1]);
    decomposed_agrees(
        &DecompSpec::new(h.clone(), 1, 1, 0, 1, CSpec::Twisted { z3: 0, k3: 0 }).unwrap(),
        5,
    );
    decomposed_agrees(
        &DecompSpec::new(h.clone(), 1, 1, 1, 1, CSpec::Twisted { z3: 0, k3: 1 }).unwrap(),
        5,
    );
    let full = DecompSpec::new(
        zrat(&[0, 1, 0, 1]),
        1,
        1,
        0,
        1,
        CSpec::Twisted { z3: 1, k3: 0 },
    )
    .unwrap();
    assert_eq!(
        decomposed_engine(&full, DEFAULT_DEGREE_CAP)
            .unwrap()
            .set
            .table(6, 6),
        vec![true; 36]
    );
}

#[test]
fn powertil_matches_torsion_oracle() {
    for (r, s) in [(3, 3), (3, 5), (5, 7), (7, 3)] {
        let entry = Gallery::PowerTil { r, s };
        let oracle = TorsionSpec::new(r as i64, s as i64, 2, 1, 0)
            .unwrap()
            .with_shifts(1, 1);
        let w = torsion_window(&oracle, 16, 16);
        for m in 0..16 {
            for n in 0..16 {
                assert_eq!(entry.member(m, n), w.get(m, n), "({r},{s}) at ({m},{n})");
            }
        }
    }
}

#[test]
fn powertil_certificate_periods() {
    assert_eq!(powertil_offset(3, 3), 0);
    assert_eq!(powertil_offset(3, 5), 0);
    assert_eq!(powertil_offset(7, 3), 1);
    let cert = Gallery::PowerTil { r: 3, s: 3 }.certificate().unwrap();
    assert_eq!(cert.mode(), CertMode::Proved);
    match cert {
        NonSLCertificate::RowPeriods { rows, .. } => {
            assert_eq!(rows.iter().map(|r| r.m).collect::<Vec<_>>(), [4, 8, 16, 32]);
            assert_eq!(
                rows.iter().map(|r| r.ep).collect::<Vec<_>>(),
                [4, 8, 16, 32]
            );
        }
        other => panic!("unexpected {other:?}"),
    }
    assert_eq!(
        powertil_halved_row(3, 3, 2).unwrap(),
        EPSet1::progression(4, 8)
    );
}

#[test]
fn counters_match_oracle() {
    let c1 = PolyTriple::new(Poly::new(vec![rat(0, 1), rat(1, 2)]), p(&[-1, 1]), p(&[1]));
    let w = recurrence_window(&c1, 7, 70, DEFAULT_DEGREE_CAP);
    let c2 = PolyTriple::new(p(&[0, 2]), p(&[1, 1]), p(&[0, 0, 1]));
    let w2 = recurrence_window(&c2, 5, 14, DEFAULT_DEGREE_CAP);
    for m in 0..7 {
        for n in 0..70 {
            assert_eq!(Gallery::Deg1Counter1.member(m, n), w.get(m, n));
        }
    }
    for m in 0..5 {
        for n in 0..14 {
            assert_eq!(
                Gallery::Deg1Counter2 { k: 2 }.member(m, n),
                w2.get(m, n),
                "({m},{n})"
            );
        }
    }
    assert_eq!(
        gallery(&Gallery::Deg1Counter1)
            .unwrap()
            .certificate()
            .unwrap()
            .mode(),
        CertMode::Proved
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn power_engine_random(d1 in 2i64..=5, d2 in 2i64..=5, zo in 1u64..=6, ze in 0u64..6, co in 1u64..=6, ce in 0u64..6) {
        let spec = PowerSpec::new(d1, d2, (zo, ze % zo), (co, ce % co)).unwrap();
        let out = power_engine(&spec).unwrap();
        let oracle = TorsionSpec::new(d1, d2, spec.k(), spec.a(), spec.e()).unwrap();
        prop_assert!(window_equal(&out.window(10, 10), &torsion_window(&oracle, 10, 10)).0);
    }

    #[test]
    fn affine_engine_random(
        a1 in -3i64..=3, a1d in 1i64..=2, b1 in -2i64..=2,
        a2 in -3i64..=3, a2d in 1i64..=2, b2 in -2i64..=2,
        c in -2i64..=2, d in -2i64..=2,
    ) {
        prop_assume!(a1 != 0 && a2 != 0);
        let spec = AffineSpec::rational(rat(a1, a1d), rat(b1, 1), rat(a2, a2d), rat(b2, 1), rat(c, 1), rat(d, 1)).unwrap();
        match affine_engine(&spec) {
            Ok(EngineResult::SemiLinear(out)) => {
                let oracle = affine_window(&spec.a1, &spec.b1, &spec.a2, &spec.b2, &spec.c, &spec.d, 12, 12).unwrap();
                prop_assert!(window_equal(&out.window(12, 12), &oracle).0);
            }
            Ok(EngineResult::NonSemilinear { certificate, .. }) => {
                prop_assert_eq!(certificate.mode(), CertMode::Proved);
            }
            Err(e) => prop_assert!(false, "{spec:?}: {e}"),
        }
    }
}
