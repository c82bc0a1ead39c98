use num_integer::Integer;

use super::{cycle_at, cycle_of, EngineOutput};
use crate::error::{Error, Result};
use crate::exactnum::{lcm_u64, CycRat, Field};
use crate::oracle::{col_set, row_set, PolyTriple};
use crate::polyfield::{iterate, orbit_progression, Poly};
use crate::semilinear::{synthesis_side, synthesize, EPSet1, Form, LinSet, SemiLin2};

const ORBIT_BUDGET: u64 = 64;

/// The constant term of the triple.
#[derive(Clone, Debug, PartialEq)]
pub enum CSpec {
    Constant(CycRat),
    /// `c = ζ_s^{z3} · h^∘k3`.
    Twisted {
        z3: u64,
        k3: u64,
    },
}

/// `f = ζ_s^{z1} h^∘k1`, `g = ζ_s^{z2} h^∘k2` with `h = z^r R(z^s)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DecompSpec {
    pub h: Poly<CycRat>,
    pub k1: u64,
    pub k2: u64,
    pub z1: u64,
    pub z2: u64,
    pub c: CSpec,
}

impl DecompSpec {
    pub fn new(h: Poly<CycRat>, k1: u64, k2: u64, z1: u64, z2: u64, c: CSpec) -> Result<Self> {
        let spec = DecompSpec {
            h,
            k1,
            k2,
            z1,
            z2,
            c,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let d = self.h.degree().unwrap_or(0);
        if d < 2 {
            return Err(Error::Precondition("h must have degree ≥ 2".into()));
        }
        if !self.h.lead().is_some_and(|c| c.is_one()) {
            return Err(Error::Precondition("h must be monic".into()));
        }
        if !self.h.coeff(d - 1).is_zero() {
            return Err(Error::Precondition("h must be centered".into()));
        }
        if self.k1 == 0 || self.k2 == 0 {
            return Err(Error::Precondition("need k₁, k₂ ≥ 1".into()));
        }
        Ok(())
    }

    pub fn degree(&self) -> u64 {
        self.h.degree().unwrap_or(0) as u64
    }

    /// `(r, s)` with `h = z^r R(z^s)`, `R(0) ≠ 0` and `s` maximal.
    pub fn shape(&self) -> (u64, u64) {
        let r = self.h.zero_multiplicity();
        let s = self.h.coeffs()[r..]
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(0u64, |g, (i, _)| g.gcd(&(i as u64)));
        (r as u64, s.max(1))
    }

    fn root(&self, e: u64) -> CycRat {
        let (_, s) = self.shape();
        CycRat::zeta(s, e % s)
    }

    /// The explicit polynomials `f, g, c`.
    pub fn triple(&self, cap: u64) -> Result<PolyTriple<CycRat>> {
        let f = iterate(&self.h, self.k1, cap)?.scale(&self.root(self.z1));
        let g = iterate(&self.h, self.k2, cap)?.scale(&self.root(self.z2));
        let c = match &self.c {
            CSpec::Constant(c) => Poly::constant(c.clone()),
            CSpec::Twisted { z3, k3 } => iterate(&self.h, *k3, cap)?.scale(&self.root(*z3)),
        };
        Ok(PolyTriple::new(f, g, c))
    }
}

/// `(D^m − 1)/(D − 1) mod s` as an eventually periodic sequence.
fn twist_sequence(big_d: u64, s: u64) -> (Vec<u64>, usize) {
    cycle_of(0u64, |x| (x * (big_d % s) + 1) % s)
}

fn constant_case(spec: &DecompSpec, c: &CycRat) -> Result<EngineOutput> {
    let (_, s) = spec.shape();
    let d = spec.degree();
    // Points beyond this modulus escape to infinity under a monic `h`.
    let radius = 1.0
        + spec
            .h
            .coeffs()
            .iter()
            .map(|a| {
                let (re, im) = a.to_complex();
                re.hypot(im)
            })
            .sum::<f64>();
    let mut orbit = vec![c.clone()];
    let start = loop {
        let next = spec.h.eval(orbit.last().expect("nonempty"));
        if let Some(i) = orbit.iter().position(|y| *y == next) {
            break i;
        }
        let (re, im) = next.to_complex();
        if orbit.len() as u64 > ORBIT_BUDGET || re.hypot(im) > radius {
            return Err(Error::Precondition(format!(
                "constant {c} is not preperiodic for h (checked {} steps)",
                orbit.len()
            )));
        }
        orbit.push(next);
    };
    let (a, b) = (spec.z1 % s, spec.z2 % s);
    let pow_d = |k: u64| (0..k).fold(1u64, |x, _| x * (d % s) % s);
    let (sig1, st1) = twist_sequence(pow_d(spec.k1), s);
    let (sig2, st2) = twist_sequence(pow_d(spec.k2), s);
    let (dpow, std) = cycle_of(1 % s, |x| x * (d % s) % s);
    let xi = CycRat::zeta(s, 1);
    let orb = |j: u64| cycle_at(&orbit, start, j);
    let twist = |e: u64| xi.pow_u64(e % s);
    let (k1, k2) = (spec.k1, spec.k2);
    let member = |m: u64, n: u64| -> bool {
        let s1 = cycle_at(&sig1, st1, m);
        let s2 = cycle_at(&sig2, st2, n);
        if m == 0 {
            return twist(b * s2).times(&orb(k2 * n)) == *c;
        }
        if n == 0 {
            return twist(a * s1).times(&orb(k1 * m)) == *c;
        }
        let (x, y) = (k1 * m, k2 * n);
        let phi = if x >= y {
            let dd = cycle_at(&dpow, std, x - y);
            (s - a * s1 % s + b * s2 % s * dd) % s
        } else {
            let dd = cycle_at(&dpow, std, y - x);
            (s - b * s2 % s + a * s1 % s * dd) % s
        };
        orb(x.abs_diff(y)) == twist(phi).times(c)
    };
    let per = |seq: &Vec<u64>, st: usize| (seq.len() - st) as u64;
    let l = [
        (orbit.len() - start) as u64,
        per(&sig1, st1),
        per(&sig2, st2),
        per(&dpow, std),
    ]
    .into_iter()
    .fold(1, lcm_u64);
    let t = [start, st1, st2, std].into_iter().max().unwrap_or(0) as u64 + 1;
    let forms = [Form::new(k1, k2)];
    let set = synthesize(member, l, t, &forms)?;
    Ok(EngineOutput {
        formula: "decomposed constant".into(),
        set,
        verified_side: synthesis_side(l, t, &forms),
        notes: vec![format!(
            "s = {s}, orbit of c has preperiod {start} and period {}",
            orbit.len() - start
        )],
    })
}

/// `{m ≥ m₀ : k·m − k₃ ∈ S}` for `m₀` minimal with `k·m₀ > k₃`.
fn shifted(s0: &EPSet1, k: u64, k3: u64) -> (u64, EPSet1) {
    let m0 = k3 / k + 1;
    let part = s0.affine_preimage(k * m0 - k3, k).affine_image(m0, 1);
    (m0, part)
}

fn twisted_case(spec: &DecompSpec, k3: u64, cap: u64) -> Result<EngineOutput> {
    let (r, s) = spec.shape();
    if r > 0 {
        return Ok(EngineOutput {
            formula: "decomposed twisted".into(),
            set: SemiLin2::full(),
            verified_side: 0,
            notes: vec!["h(0) = 0, so λ = 0 works everywhere".into()],
        });
    }
    let (m0, n0) = (k3 / spec.k1 + 1, k3 / spec.k2 + 1);
    let quadrant = if spec.z1 % s == spec.z2 % s {
        SemiLin2::from_linear([LinSet::quadrant((m0, n0))])
    } else {
        let zero = CycRat::zero();
        let s0 = orbit_progression(&spec.h, &zero, &zero, ORBIT_BUDGET)?.progression;
        let (_, rows) = shifted(&s0, spec.k1, k3);
        let (_, cols) = shifted(&s0, spec.k2, k3);
        let mut q = SemiLin2::empty();
        for (a, p) in rows.to_progressions() {
            for &(b, q2) in &cols.to_progressions() {
                q.add_linear(LinSet::new((a, b), [(p, 0), (0, q2)]));
            }
        }
        q
    };
    let triple = spec.triple(cap)?;
    let mut set = quadrant;
    for m in 0..m0 {
        for (b, q) in row_set(&triple, m, ORBIT_BUDGET, cap)?.to_progressions() {
            set.add_linear(LinSet::new((m, b), [(0, q)]));
        }
    }
    for n in 0..n0 {
        for (a, p) in col_set(&triple, n, ORBIT_BUDGET, cap)?.to_progressions() {
            set.add_linear(LinSet::new((a, n), [(p, 0)]));
        }
    }
    Ok(EngineOutput {
        formula: "decomposed twisted".into(),
        set: set.simplified(),
        verified_side: 0,
        notes: vec![format!(
            "quadrant from ({m0}, {n0}); strips from exact row and column sets"
        )],
    })
}

/// Builds the recurrence set of `(ζ₁h^∘k₁, ζ₂h^∘k₂, c)`.
///
/// For constant `c` the cell `(m, n)` with `k₁m ≥ k₂n` holds iff
/// `h^∘(k₁m − k₂n)(c) = ξ^φ c` where `ξ = ζ_s` and
/// `φ = −aσ₁(m) + bσ₂(n)d^{k₁m − k₂n}`, `σ_i(m) = (d^{k_i m} − 1)/(d^{k_i} − 1)`;
/// the other cone is symmetric. `cap` bounds the degrees in the strip computations.
pub fn decomposed_engine(spec: &DecompSpec, cap: u64) -> Result<EngineOutput> {
    spec.validate()?;
    match &spec.c {
        CSpec::Constant(c) => constant_case(spec, c),
        CSpec::Twisted { k3, .. } => twisted_case(spec, *k3, cap),
    }
}
