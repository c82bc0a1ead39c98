//! Seeded engine/oracle agreement runs over every family.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use slrec_core::engines::{AffineSpec, CSpec, ChebSpec, DecompSpec, PowerSpec};
use slrec_core::exactnum::rat;
use slrec_core::{CycRat, Field, Poly};

use crate::cmd::Family;
use crate::verify::verify;

#[derive(Clone, Debug, Default, Serialize)]
pub struct FamilyReport {
    pub family: String,
    pub specs: usize,
    /// Cells compared across all specs.
    pub cells: u64,
    pub failures: Vec<String>,
}

impl FamilyReport {
    fn new(family: &str) -> Self {
        FamilyReport {
            family: family.into(),
            ..Default::default()
        }
    }

    /// Runs the engine on one spec and records any disagreement.
    pub fn check(&mut self, family: Family, side: u64, cap: u64) {
        self.specs += 1;
        let cfg = crate::RunConfig {
            degree_cap: cap,
            ..Default::default()
        };
        let outcome = family
            .run(&cfg)
            .and_then(|res| verify(&family, &res, side, side, cap, false));
        match outcome {
            Ok(cmps) => {
                for c in cmps {
                    self.cells += c.m * c.n - c.skipped.len() as u64;
                    if let Some(p) = c.first_difference {
                        self.failures
                            .push(format!("{family:?}: differs from {} at {p:?}", c.oracle));
                    } else if !c.skipped.is_empty() {
                        self.failures.push(format!(
                            "{family:?}: {} cells beyond the degree cap",
                            c.skipped.len()
                        ));
                    }
                }
            }
            Err(e) => self.failures.push(format!("{family:?}: {e}")),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BatteryReport {
    pub seed: u64,
    pub families: Vec<FamilyReport>,
}

impl BatteryReport {
    pub fn passed(&self) -> bool {
        self.families.iter().all(|f| f.failures.is_empty())
    }
}

/// Random `(z^d₁, ζ z^d₂, c)` with `d_i ∈ {2, …, 5}` and root orders up to 6, on 10×10.
pub fn power_battery<R: Rng + ?Sized>(rng: &mut R, count: usize, cap: u64) -> FamilyReport {
    let mut rep = FamilyReport::new("power");
    for _ in 0..count {
        let (zo, co) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let spec = PowerSpec::new(
            rng.gen_range(2..=5),
            rng.gen_range(2..=5),
            (zo, rng.gen_range(0..zo)),
            (co, rng.gen_range(0..co)),
        )
        .expect("valid power spec");
        rep.check(Family::Power(spec), 10, cap);
    }
    rep
}

/// Every `r, s ≤ 5`, `t ≤ 4` and sign choice, on 10×10.
pub fn chebyshev_battery(cap: u64) -> FamilyReport {
    let mut rep = FamilyReport::new("chebyshev");
    let signs = [1i8, -1];
    for r in 2..=5 {
        for s in 2..=5 {
            for t in 1..=4 {
                for e1 in signs {
                    for e2 in signs {
                        for e3 in signs {
                            let spec = ChebSpec::new(r, s, t, (e1, e2, e3)).expect("valid");
                            rep.check(Family::Chebyshev(spec), 10, cap);
                        }
                    }
                }
            }
        }
    }
    rep
}

fn small_rat<R: Rng + ?Sized>(rng: &mut R, lo: i64, hi: i64) -> CycRat {
    CycRat::from_rat(rat(rng.gen_range(lo..=hi), 1))
}

fn small_cyc<R: Rng + ?Sized>(rng: &mut R, k: u64) -> CycRat {
    let a = CycRat::from_int(rng.gen_range(-2..=2));
    let b = CycRat::from_int(rng.gen_range(-2..=2));
    a.plus(&b.times(&CycRat::zeta(k, 1)))
}

fn nonzero<R: Rng + ?Sized>(rng: &mut R, mut draw: impl FnMut(&mut R) -> CycRat) -> CycRat {
    loop {
        let x = draw(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Random affine triples with `C ≠ 0` on 12×12: rational slopes with
/// denominators up to 2, then slopes among the roots of unity of order 3, 4, 6.
pub fn affine_battery<R: Rng + ?Sized>(
    rng: &mut R,
    rational: usize,
    cyclotomic: usize,
    horizon: u64,
    cap: u64,
) -> FamilyReport {
    let mut rep = FamilyReport::new("affine");
    for _ in 0..rational {
        let a1 = nonzero(rng, slope);
        let a2 = nonzero(rng, slope);
        let b1 = small_rat(rng, -2, 2);
        let b2 = small_rat(rng, -2, 2);
        let c = nonzero(rng, |r| small_rat(r, -2, 2));
        let d = small_rat(rng, -2, 2);
        let spec = AffineSpec::new(a1, b1, a2, b2, c, d).expect("nonzero slopes");
        rep.check(Family::Affine(spec.with_horizon(horizon)), 12, cap);
    }
    let rational_slopes = [2, -2, 3, -1, 1];
    for _ in 0..cyclotomic {
        let k = [3u64, 4, 6][rng.gen_range(0..3)];
        let a1 = CycRat::zeta(k, rng.gen_range(1..k));
        let a2 = if rng.gen_bool(0.5) {
            CycRat::from_int(rational_slopes[rng.gen_range(0..rational_slopes.len())])
        } else {
            CycRat::zeta(k, rng.gen_range(0..k))
        };
        let (a1, a2) = if rng.gen_bool(0.5) {
            (a1, a2)
        } else {
            (a2, a1)
        };
        let b1 = small_cyc(rng, k);
        let b2 = small_cyc(rng, k);
        let c = nonzero(rng, |r| small_cyc(r, k));
        let d = small_cyc(rng, k);
        let spec = AffineSpec::new(a1, b1, a2, b2, c, d).expect("nonzero slopes");
        rep.check(Family::Affine(spec.with_horizon(horizon)), 12, cap);
    }
    rep
}

fn slope<R: Rng + ?Sized>(rng: &mut R) -> CycRat {
    let num = rng.gen_range(-3..=3);
    CycRat::from_rat(rat(num, rng.gen_range(1..=2)))
}

fn zpoly(c: &[i64]) -> Poly<CycRat> {
    Poly::new(c.iter().map(|&x| CycRat::from_int(x)).collect())
}

/// The structured instances: constant and twisted third polynomials, with
/// `h` of both odd and even shape, on 8×8.
pub fn decomposed_instances() -> Vec<DecompSpec> {
    let q = CycRat::from_int;
    let quad = zpoly(&[-1, 0, 1]);
    vec![
        DecompSpec::new(quad.clone(), 1, 1, 1, 1, CSpec::Constant(q(-1))),
        DecompSpec::new(zpoly(&[-2, 0, 1]), 1, 1, 1, 0, CSpec::Constant(q(2))),
        DecompSpec::new(quad.clone(), 1, 1, 0, 1, CSpec::Constant(q(0))),
        DecompSpec::new(quad.clone(), 1, 1, 0, 1, CSpec::Twisted { z3: 0, k3: 0 }),
        DecompSpec::new(quad, 1, 1, 1, 1, CSpec::Twisted { z3: 0, k3: 1 }),
    ]
    .into_iter()
    .map(|s| s.expect("valid instance"))
    .collect()
}

pub fn decomposed_battery(cap: u64) -> FamilyReport {
    let mut rep = FamilyReport::new("decomposed");
    for spec in decomposed_instances() {
        rep.check(Family::Decomposed(spec), 8, cap);
    }
    rep
}

/// The full battery with the default sizes.
pub fn battery(seed: u64, horizon: u64, cap: u64) -> BatteryReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    BatteryReport {
        seed,
        families: vec![
            power_battery(&mut rng, 50, cap),
            chebyshev_battery(cap),
            affine_battery(&mut rng, 100, 20, horizon, cap),
            decomposed_battery(cap),
        ],
    }
}
