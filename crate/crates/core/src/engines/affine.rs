use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{cycle_at, cycle_of, EngineOutput, EngineResult};
use crate::error::{Error, Result};
use crate::exactnum::{factorize, lcm_u64, nu_p, root_of_unity_order, CycRat, Field, Int, Rat};
use crate::polyfield::power_equation_set;
use crate::semilinear::{EPSet1, LinSet, NonSLCertificate, SemiLin2};

/// Search horizon for the sporadic solutions no valuation argument bounds.
pub const DEFAULT_HORIZON: u64 = 256;

const VERIFY_SIDE: u64 = 24;
const SCAN_CAP: u64 = 100_000;

/// `f = A₁z + B₁`, `g = A₂z + B₂`, `c = Cz + D` over a cyclotomic field.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineSpec {
    pub a1: CycRat,
    pub b1: CycRat,
    pub a2: CycRat,
    pub b2: CycRat,
    pub c: CycRat,
    pub d: CycRat,
    pub horizon: u64,
}

impl AffineSpec {
    pub fn new(
        a1: CycRat,
        b1: CycRat,
        a2: CycRat,
        b2: CycRat,
        c: CycRat,
        d: CycRat,
    ) -> Result<Self> {
        let spec = AffineSpec {
            a1,
            b1,
            a2,
            b2,
            c,
            d,
            horizon: DEFAULT_HORIZON,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn rational(a1: Rat, b1: Rat, a2: Rat, b2: Rat, c: Rat, d: Rat) -> Result<Self> {
        Self::new(
            CycRat::from_rat(a1),
            CycRat::from_rat(b1),
            CycRat::from_rat(a2),
            CycRat::from_rat(b2),
            CycRat::from_rat(c),
            CycRat::from_rat(d),
        )
    }

    pub fn with_horizon(mut self, horizon: u64) -> Self {
        self.horizon = horizon;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.a1.is_zero() || self.a2.is_zero() {
            return Err(Error::Precondition("affine maps need A₁, A₂ ≠ 0".into()));
        }
        Ok(())
    }

    fn swapped(&self) -> Self {
        AffineSpec {
            a1: self.a2.clone(),
            b1: self.b2.clone(),
            a2: self.a1.clone(),
            b2: self.b1.clone(),
            ..self.clone()
        }
    }

    /// `(A^k, β_k)` for the first map when `first`, else the second.
    fn iterate(&self, first: bool, k: u64) -> (CycRat, CycRat) {
        let (a, b) = if first {
            (&self.a1, &self.b1)
        } else {
            (&self.a2, &self.b2)
        };
        let x = a.pow_u64(k);
        let beta = if a.is_one() {
            b.times(&CycRat::from_int(k as i64))
        } else {
            b.times(&x.minus(&CycRat::one()))
                .times(&a.minus(&CycRat::one()).inverse().expect("A ≠ 1"))
        };
        (x, beta)
    }

    /// Exact membership of `(m, n)`.
    pub fn member(&self, m: u64, n: u64) -> bool {
        let (x, beta) = self.iterate(true, m);
        let (y, delta) = self.iterate(false, n);
        let u1 = x.minus(&self.c);
        let v1 = beta.minus(&self.d);
        let u2 = y.minus(&self.c);
        let v2 = delta.minus(&self.d);
        (!u1.is_zero() || v1.is_zero())
            && (!u2.is_zero() || v2.is_zero())
            && u1.times(&v2) == u2.times(&v1)
    }
}

fn one() -> CycRat {
    CycRat::one()
}

fn abs_c(x: &CycRat) -> f64 {
    let (re, im) = x.to_complex();
    re.hypot(im)
}

fn nonneg_int(x: &CycRat) -> Option<u64> {
    let q = x.as_rational()?;
    if q.is_integer() && !q.is_negative() {
        q.to_integer().to_u64()
    } else {
        None
    }
}

fn product(xs: &EPSet1, ys: &EPSet1) -> SemiLin2 {
    let mut s = SemiLin2::empty();
    for (a, b) in xs.to_progressions() {
        for &(c, d) in &ys.to_progressions() {
            s.add_linear(LinSet::new((a, c), [(b, 0), (0, d)]));
        }
    }
    s
}

fn pset(alpha: &CycRat, gamma: &CycRat, mu: &CycRat) -> Result<EPSet1> {
    power_equation_set(alpha, gamma, mu)
}

/// Rows on which the first side condition holds.
fn side_set(a: &CycRat, b: &CycRat, c: &CycRat, d: &CycRat) -> Result<EPSet1> {
    let z = pset(&one(), c, a)?.complement();
    let w = if a.is_one() {
        if b.is_zero() {
            if d.is_zero() {
                EPSet1::full()
            } else {
                EPSet1::empty()
            }
        } else {
            match nonneg_int(&d.times(&b.inverse()?)) {
                Some(k) => EPSet1::finite([k]),
                None => EPSet1::empty(),
            }
        }
    } else {
        let u = b.times(&a.minus(&one()).inverse()?);
        pset(&u, &u.plus(d), a)?
    };
    Ok(z.union(&w))
}

/// Splits every generator by parity and keeps the pieces whose parity class passes.
fn filter_parity(s: &SemiLin2, ok: impl Fn(u64, u64) -> bool) -> SemiLin2 {
    let mut out = SemiLin2::from_points(s.sporadic().copied().filter(|&(m, n)| ok(m % 2, n % 2)));
    for l in s.linear() {
        let k = l.gens.len();
        for mask in 0..(1u32 << k) {
            let mut base = l.base;
            for (i, g) in l.gens.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    base = (base.0 + g.0, base.1 + g.1);
                }
            }
            if ok(base.0 % 2, base.1 % 2) {
                out.add_linear(LinSet::new(base, l.gens.iter().map(|g| (2 * g.0, 2 * g.1))));
            }
        }
    }
    out
}

enum Piece {
    Set(SemiLin2),
    /// The projection onto the given coordinate takes these values with growing gaps.
    Gaps(u8, Vec<u64>, String),
}

/// Both slopes equal to one.
fn both_unit(spec: &AffineSpec) -> SemiLin2 {
    if spec.c.is_one() {
        return SemiLin2::full();
    }
    let (b1, b2) = (&spec.b1, &spec.b2);
    match (b1.is_zero(), b2.is_zero()) {
        (true, true) => SemiLin2::full(),
        (true, false) => product(&EPSet1::full(), &EPSet1::finite([0])),
        (false, true) => product(&EPSet1::finite([0]), &EPSet1::full()),
        (false, false) => {
            let ratio = b2.times(&b1.inverse().expect("nonzero"));
            match ratio.as_rational().filter(|q| q.is_positive()) {
                Some(q) => {
                    let (p, q) = (q.numer().to_u64(), q.denom().to_u64());
                    match (p, q) {
                        (Some(p), Some(q)) => {
                            SemiLin2::from_linear([LinSet::new((0, 0), [(p, q)])])
                        }
                        _ => SemiLin2::from_points([(0, 0)]),
                    }
                }
                None => SemiLin2::from_points([(0, 0)]),
            }
        }
    }
}

/// `A₁ = 1 ≠ A₂`. Returns the third condition's set in these coordinates.
fn one_unit(spec: &AffineSpec, notes: &mut Vec<String>) -> Result<Piece> {
    let (a2, b1, b2, c, d) = (&spec.a2, &spec.b1, &spec.b2, &spec.c, &spec.d);
    let e = a2.times(d).minus(&b2.times(c)).plus(b2).minus(d);
    if b1.is_zero() {
        return Ok(Piece::Set(product(&EPSet1::full(), &pset(&e, &e, a2)?)));
    }
    let poles = pset(&one(), c, a2)?;
    let one_c = one().minus(c);
    let s31 = poles.intersect(&pset(
        &b2.times(&one_c),
        &one_c.times(&a2.times(d).plus(b2).minus(d)),
        a2,
    )?);
    let mut set = product(&EPSet1::full(), &s31);
    let k = e.times(&b1.times(&a2.minus(&one())).inverse()?);
    let r = |z: &CycRat| -> Result<CycRat> {
        Ok(k.times(&z.minus(&one())).times(&z.minus(c).inverse()?))
    };
    let allowed = poles.complement();

    if e.is_zero() || c.is_one() {
        let rc = if e.is_zero() {
            CycRat::zero()
        } else {
            k.clone()
        };
        if let Some(m) = nonneg_int(&rc) {
            set = set.union(&product(&EPSet1::finite([m]), &allowed));
        }
        return Ok(Piece::Set(set));
    }

    let mut points = Vec::new();
    if let Some(s) = root_of_unity_order(a2)? {
        for j in 0..s {
            let z = a2.pow_u64(j);
            if z == *c {
                continue;
            }
            if let Some(m) = nonneg_int(&r(&z)?) {
                let ns = EPSet1::progression(j, s).intersect(&allowed);
                set = set.union(&product(&EPSet1::finite([m]), &ns));
            }
        }
        return Ok(Piece::Set(set));
    }
    if a2.times(&a2.conj()).is_one() {
        let mut z = one();
        for n in 0..spec.horizon {
            if z != *c {
                if let Some(m) = nonneg_int(&r(&z)?) {
                    points.push((m, n));
                }
            }
            z = z.times(a2);
        }
        notes.push(format!(
            "slope of modulus one and infinite order: points searched for n < {}",
            spec.horizon
        ));
        set = set.union(&SemiLin2::from_points(points));
        return Ok(Piece::Set(set));
    }
    let grow = abs_c(a2) > 1.0;
    if c.is_zero() && !grow {
        return counter_shape(&k, a2, notes);
    }

    let limit = if grow {
        k.clone()
    } else {
        k.times(&c.inverse()?)
    };
    let (lre, lim) = limit.to_complex();
    let dist = if nonneg_int(&limit).is_some() {
        1.0
    } else {
        let nearest = lre.round().max(0.0);
        (lre - nearest).hypot(lim)
    };
    if dist < 1e-9 {
        return Err(Error::BudgetExhausted(
            "limit too close to an integer to bound the scan".into(),
        ));
    }
    let (ka, ca, cm1, am) = (abs_c(&k), abs_c(c), abs_c(&c.minus(&one())), abs_c(a2));
    let bound = |n: u64| -> f64 {
        let x = am.powf(n as f64);
        if grow {
            if x > ca {
                ka * cm1 / (x - ca)
            } else {
                f64::INFINITY
            }
        } else if x < ca {
            ka * cm1 * x / (ca * (ca - x))
        } else {
            f64::INFINITY
        }
    };
    let mut z = one();
    let mut n = 0;
    while bound(n) >= dist / 2.0 {
        if n >= SCAN_CAP {
            return Err(Error::BudgetExhausted(format!(
                "no convergence bound after {SCAN_CAP} terms"
            )));
        }
        if z != *c {
            if let Some(m) = nonneg_int(&r(&z)?) {
                points.push((m, n));
            }
        }
        z = z.times(a2);
        n += 1;
    }
    Ok(Piece::Set(set.union(&SemiLin2::from_points(points))))
}

/// `A₁ = 1`, `C = 0`, `|A₂| < 1`: the first coordinate is `K(1 − w^n)` with `w = 1/A₂`.
fn counter_shape(k: &CycRat, a2: &CycRat, notes: &mut Vec<String>) -> Result<Piece> {
    let w = a2.inverse()?;
    let origin = Piece::Set(SemiLin2::from_points([(0, 0)]));
    let wq = w
        .as_rational()
        .ok_or_else(|| Error::Unsupported("C = 0 with a non-rational contracting slope".into()))?;
    let Some(kq) = k.as_rational() else {
        return Ok(origin);
    };
    if !wq.is_integer() {
        // Some prime of the denominator of w eventually dominates.
        let den = wq.denom().clone();
        let mut top = 0u64;
        for p in factorize(&den)?.primes() {
            let e = nu_p(&wq, p)?.unsigned_abs();
            let vk = nu_p(&kq, p)?.max(0) as u64;
            top = top.max(vk / e + 1);
        }
        let mut points = Vec::new();
        for n in 0..=top {
            let v = &kq * (<Rat as One>::one() - num_traits::pow(wq.clone(), n as usize));
            if let Some(m) = nonneg_int(&CycRat::from_rat(v)) {
                points.push((m, n));
            }
        }
        return Ok(Piece::Set(SemiLin2::from_points(points)));
    }
    let wi = wq.to_integer();
    let kappa = &kq * (<Rat as One>::one() - &wq);
    let q = kappa.denom().clone();
    let (seq, start) = cycle_of(Int::zero(), |g: &Int| -> Int {
        (&wi * g + Int::from(1)).mod_floor(&q)
    });
    let pre = start as u64;
    let per = lcm_u64((seq.len() - start) as u64, 2);
    let positive = kappa.is_positive();
    let member = |n: u64| {
        if n == 0 {
            return true;
        }
        let sign_ok = if wi.is_positive() {
            positive
        } else {
            positive == (n % 2 == 1)
        };
        sign_ok && cycle_at(&seq, start, n).is_zero()
    };
    let ns = EPSet1::from_pattern(pre + 1, per, member);
    let value = |n: u64| -> Int {
        let g = (num_traits::pow(wi.clone(), n as usize) - 1) / (&wi - 1);
        (&kappa * Rat::from_integer(g)).to_integer()
    };
    if ns.is_finite() {
        let pts = ns
            .members_below(ns.threshold())
            .into_iter()
            .filter_map(|n| value(n).to_u64().map(|m| (m, n)))
            .collect::<Vec<_>>();
        return Ok(Piece::Set(SemiLin2::from_points(pts)));
    }
    let cap = Int::from(1u64 << 62);
    let mut values = Vec::new();
    let mut n = 0;
    while values.len() < 12 {
        if ns.contains(n) {
            let v = value(n);
            if v > cap {
                break;
            }
            values.push(v.to_u64().expect("below cap"));
        }
        n += 1;
    }
    // Keep the longest tail whose gaps strictly increase.
    let mut from = values.len().saturating_sub(2);
    while from > 0 && {
        let g0 = values[from] - values[from - 1];
        let g1 = values[from + 1] - values[from];
        g0 < g1
    } {
        from -= 1;
    }
    notes.push(format!(
        "first coordinate {kappa}·(w^n − 1)/(w − 1) with w = {wi}"
    ));
    Ok(Piece::Gaps(
        0,
        values[from..].to_vec(),
        format!("{kappa}*({wi}^n - 1)/({wi} - 1)"),
    ))
}

mod rational {
    use num_integer::Integer;
    use num_traits::{One, Signed, ToPrimitive, Zero};

    use super::{filter_parity, one, product, pset};
    use crate::error::Result;
    use crate::exactnum::{factorize, nu_p, CycRat, Int, Rat};
    use crate::semilinear::{EPSet1, LinSet, SemiLin2};

    /// Solutions `m, n ≥ 0` of `αm + βn = γ`.
    fn lin_solutions(alpha: i64, beta: i64, gamma: i64) -> SemiLin2 {
        let nonneg_div = |g: i64, a: i64| (g % a == 0 && g / a >= 0).then(|| (g / a) as u64);
        match (alpha, beta) {
            (0, 0) => {
                if gamma == 0 {
                    SemiLin2::full()
                } else {
                    SemiLin2::empty()
                }
            }
            (a, 0) => nonneg_div(gamma, a).map_or_else(SemiLin2::empty, |m| {
                product(&EPSet1::finite([m]), &EPSet1::full())
            }),
            (0, b) => nonneg_div(gamma, b).map_or_else(SemiLin2::empty, |n| {
                product(&EPSet1::full(), &EPSet1::finite([n]))
            }),
            (a, b) if (a > 0) == (b > 0) => {
                let mut pts = Vec::new();
                let top = if (gamma >= 0) == (a > 0) {
                    gamma / a
                } else {
                    -1
                };
                for m in 0..=top {
                    if let Some(n) = nonneg_div(gamma - a * m, b) {
                        pts.push((m as u64, n));
                    }
                }
                SemiLin2::from_points(pts)
            }
            (a, b) => {
                let g = a.gcd(&b);
                if gamma % g != 0 {
                    return SemiLin2::empty();
                }
                let (sm, sn) = ((b / g).abs(), (a / g).abs());
                let Some(mut m0) = (0..sm).find(|m| (gamma - a * m) % b == 0) else {
                    return SemiLin2::empty();
                };
                let mut n0 = (gamma - a * m0) / b;
                if n0 < 0 {
                    let k = (-n0 + sn - 1) / sn;
                    m0 += k * sm;
                    n0 += k * sn;
                }
                SemiLin2::from_linear([LinSet::new(
                    (m0 as u64, n0 as u64),
                    [(sm as u64, sn as u64)],
                )])
            }
        }
    }

    fn primes_of(qs: &[&Rat]) -> Result<Vec<Int>> {
        let mut ps = Vec::new();
        for q in qs {
            for x in [q.numer().abs(), q.denom().clone()] {
                if x > Int::one() {
                    ps.extend(factorize(&x)?.primes().cloned());
                }
            }
        }
        ps.sort();
        ps.dedup();
        Ok(ps)
    }

    fn pow_signed(q: &Rat, e: i64) -> Rat {
        let p = num_traits::pow(q.clone(), e.unsigned_abs() as usize);
        if e < 0 {
            p.recip()
        } else {
            p
        }
    }

    /// `A₁^m A₂^{σn} = K` over `m, n ≥ 0`, for rational slopes of infinite order.
    fn binomial(a1: &Rat, a2: &Rat, sigma: i64, k: &Rat) -> Result<SemiLin2> {
        if k.is_zero() {
            return Ok(SemiLin2::empty());
        }
        let mut rows = Vec::new();
        for p in primes_of(&[a1, a2, k])? {
            rows.push((nu_p(a1, &p)?, sigma * nu_p(a2, &p)?, nu_p(k, &p)?));
        }
        if rows.iter().any(|&(a, b, g)| a == 0 && b == 0 && g != 0) {
            return Ok(SemiLin2::empty());
        }
        let Some(&(a0, b0, g0)) = rows.iter().find(|r| r.0 != 0 || r.1 != 0) else {
            return Ok(SemiLin2::full());
        };
        for &(a, b, g) in &rows {
            let det = a0 * b - b0 * a;
            if det != 0 {
                let (mn, nn) = (g0 * b - b0 * g, a0 * g - g0 * a);
                if mn % det != 0 || nn % det != 0 || mn / det < 0 || nn / det < 0 {
                    return Ok(SemiLin2::empty());
                }
                let (m, n) = (mn / det, nn / det);
                let hit = pow_signed(a1, m) * pow_signed(a2, sigma * n) == *k;
                return Ok(if hit {
                    SemiLin2::from_points([(m as u64, n as u64)])
                } else {
                    SemiLin2::empty()
                });
            }
            if a * g0 != a0 * g || b * g0 != b0 * g {
                return Ok(SemiLin2::empty());
            }
        }
        let s1 = a1.is_negative() as u64;
        let s2 = a2.is_negative() as u64;
        let sk = k.is_negative() as u64;
        Ok(filter_parity(&lin_solutions(a0, b0, g0), |pm, pn| {
            (pm * s1 + pn * s2) % 2 == sk
        }))
    }

    /// `{m : A^m = x}` for rational `A` of infinite order.
    fn rational_log(a: &Rat, x: &Rat) -> Result<Option<u64>> {
        let set = pset(
            &one(),
            &CycRat::from_rat(x.clone()),
            &CycRat::from_rat(a.clone()),
        )?;
        Ok(set.min())
    }

    /// A threshold `M` and the only second coordinates possible for `m ≥ M`,
    /// from the dominant terms of `y = −(bx + d)/(ax + c)` at a prime of `A₁`.
    fn valuation_bound(q: [&Rat; 4], a1: &Rat, a2: &Rat) -> Result<Option<(u64, Vec<u64>)>> {
        let [a, b, c, d] = q;
        if b.is_zero() && d.is_zero() {
            return Ok(Some((0, Vec::new())));
        }
        if a.is_zero() && c.is_zero() {
            return Ok(None);
        }
        for p in primes_of(&[a1])? {
            let alpha = nu_p(a1, &p)?;
            let beta = nu_p(a2, &p)?;
            // (valuation, power of x, threshold) of the dominant term of `coef1·x + coef0`.
            let dominant = |c1: &Rat, c0: &Rat| -> Result<(i64, i64, i64)> {
                if c1.is_zero() {
                    return Ok((nu_p(c0, &p)?, 0, 0));
                }
                if c0.is_zero() {
                    return Ok((nu_p(c1, &p)?, 1, 0));
                }
                let (v1, v0) = (nu_p(c1, &p)?, nu_p(c0, &p)?);
                Ok(if alpha > 0 {
                    (v0, 0, Integer::div_floor(&(v0 - v1), &alpha) + 1)
                } else {
                    (v1, 1, Integer::div_floor(&(v1 - v0), &-alpha) + 1)
                })
            };
            let (vn, en, mn) = dominant(b, d)?;
            let (vd, ed, md) = dominant(a, c)?;
            let m0 = mn.max(md).max(0) as u64;
            let konst = vn - vd;
            let slope = alpha * (en - ed);
            match (slope == 0, beta == 0) {
                (true, false) => {
                    let ns = (konst % beta == 0 && konst / beta >= 0)
                        .then(|| (konst / beta) as u64)
                        .into_iter()
                        .collect();
                    return Ok(Some((m0, ns)));
                }
                (true, true) if konst != 0 => return Ok(Some((m0, Vec::new()))),
                (false, true) => {
                    let m1 = (konst % slope == 0 && -konst / slope >= 0)
                        .then(|| (-konst / slope) as u64);
                    return Ok(Some((m1.map_or(m0, |m1| m0.max(m1 + 1)), Vec::new())));
                }
                _ => {}
            }
        }
        Ok(None)
    }

    /// For `|A₁|, |A₂| > 1` and `a ≠ 0`: beyond `M`, `|y|` stays below a bound `Y`.
    fn archimedean_bound(q: [&Rat; 4], a1: &Rat, a2: &Rat) -> Option<(u64, u64)> {
        let f = |x: &Rat| x.to_f64().unwrap_or(f64::INFINITY).abs();
        let [a, b, c, d] = q;
        let (g1, g2) = (f(a1), f(a2));
        if a.is_zero() || g1 <= 1.0 || g2 <= 1.0 {
            return None;
        }
        let xmin = (2.0 * f(c) / f(a)).max(1.0);
        let m0 = (xmin.ln() / g1.ln()).ceil().max(0.0) as u64 + 1;
        let ymax = 2.0 * (f(b) + f(d)) / f(a);
        let n0 = (ymax.max(1.0).ln() / g2.ln()).floor() as u64 + 1;
        Some((m0, n0))
    }

    /// Finitely many solutions of `axy + bx + cy + d = 0` with `x = A₁^m`, `y = A₂^n`.
    fn sporadic(
        q: [&Rat; 4],
        a1: &Rat,
        a2: &Rat,
        horizon: u64,
        notes: &mut Vec<String>,
    ) -> Result<SemiLin2> {
        let [a, b, c, d] = q;
        let solve_n = |m: u64| -> Result<Option<(u64, u64)>> {
            let x = num_traits::pow(a1.clone(), m as usize);
            let den = a * &x + c;
            if den.is_zero() {
                return Ok(None);
            }
            let y = -(b * &x + d) / den;
            Ok(if y.is_zero() {
                None
            } else {
                rational_log(a2, &y)?.map(|n| (m, n))
            })
        };
        let solve_m = |n: u64| -> Result<Option<(u64, u64)>> {
            let y = num_traits::pow(a2.clone(), n as usize);
            let den = a * &y + b;
            if den.is_zero() {
                return Ok(None);
            }
            let x = -(c * &y + d) / den;
            Ok(if x.is_zero() {
                None
            } else {
                rational_log(a1, &x)?.map(|m| (m, n))
            })
        };
        let mut pts = Vec::new();
        if let Some((m0, ns)) = valuation_bound([a, b, c, d], a1, a2)? {
            for m in 0..m0 {
                pts.extend(solve_n(m)?);
            }
            for n in ns {
                pts.extend(solve_m(n)?);
            }
        } else if let Some((n0, ms)) = valuation_bound([a, c, b, d], a2, a1)? {
            for n in 0..n0 {
                pts.extend(solve_m(n)?);
            }
            for m in ms {
                pts.extend(solve_n(m)?);
            }
        } else if let Some((m0, n0)) = archimedean_bound([a, b, c, d], a1, a2) {
            for m in 0..m0 {
                pts.extend(solve_n(m)?);
            }
            for n in 0..n0 {
                pts.extend(solve_m(n)?);
            }
        } else {
            for k in 0..horizon {
                pts.extend(solve_n(k)?);
                pts.extend(solve_m(k)?);
            }
            notes.push(format!(
                "sporadic solutions of {a}xy + {b}x + {c}y + {d} = 0 searched below {horizon}"
            ));
        }
        Ok(SemiLin2::from_points(pts))
    }

    /// `axy + bx + cy + d = 0` with `x = A₁^m`, `y = A₂^n` rational of infinite order.
    pub(super) fn solve_rational(
        q: [&Rat; 4],
        a1: &Rat,
        a2: &Rat,
        horizon: u64,
        notes: &mut Vec<String>,
    ) -> Result<SemiLin2> {
        let [a, b, c, d] = q;
        let logs = |base: &Rat, x: Rat| -> Result<EPSet1> {
            pset(
                &one(),
                &CycRat::from_rat(x),
                &CycRat::from_rat(base.clone()),
            )
        };
        let full = EPSet1::full();
        let kappa = a * d - b * c;
        if !a.is_zero() {
            if kappa.is_zero() {
                // a(x + c/a)(y + b/a) = 0.
                let xs = logs(a1, -(c / a))?;
                let ys = logs(a2, -(b / a))?;
                return Ok(product(&xs, &full).union(&product(&full, &ys)));
            }
            if b.is_zero() && c.is_zero() {
                return binomial(a1, a2, 1, &(-(d / a)));
            }
            return sporadic(q, a1, a2, horizon, notes);
        }
        match (b.is_zero(), c.is_zero(), d.is_zero()) {
            (true, true, true) => Ok(SemiLin2::full()),
            (true, true, false) => Ok(SemiLin2::empty()),
            (true, false, _) => Ok(product(&full, &logs(a2, -(d / c))?)),
            (false, true, _) => Ok(product(&logs(a1, -(d / b))?, &full)),
            (false, false, true) => binomial(a1, a2, -1, &(-(c / b))),
            (false, false, false) => sporadic(q, a1, a2, horizon, notes),
        }
    }
}

use rational::solve_rational;

/// Neither slope equal to one: the curve `axy + bx + c'y + d' = 0` in `x = A₁^m`, `y = A₂^n`.
fn no_unit(spec: &AffineSpec, notes: &mut Vec<String>) -> Result<SemiLin2> {
    let (a1, a2, c, d) = (&spec.a1, &spec.a2, &spec.c, &spec.d);
    let u = spec.b1.times(&a1.minus(&one()).inverse()?);
    let v = spec.b2.times(&a2.minus(&one()).inverse()?);
    let ca = u.minus(&v);
    let cb = d.plus(&v).minus(&c.times(&u));
    let cc = d.plus(&u).minus(&c.times(&v)).negate();
    let cd = c.times(&ca);
    if [&ca, &cb, &cc, &cd].iter().all(|x| x.is_zero()) {
        return Ok(SemiLin2::full());
    }
    if let Some(s) = root_of_unity_order(a1)? {
        let mut set = SemiLin2::empty();
        for j in 0..s {
            let x = a1.pow_u64(j);
            let ns = pset(
                &ca.times(&x).plus(&cc),
                &cb.times(&x).plus(&cd).negate(),
                a2,
            )?;
            set = set.union(&product(&EPSet1::progression(j, s), &ns));
        }
        return Ok(set);
    }
    if let Some(s) = root_of_unity_order(a2)? {
        let mut set = SemiLin2::empty();
        for j in 0..s {
            let y = a2.pow_u64(j);
            let ms = pset(
                &ca.times(&y).plus(&cb),
                &cc.times(&y).plus(&cd).negate(),
                a1,
            )?;
            set = set.union(&product(&ms, &EPSet1::progression(j, s)));
        }
        return Ok(set);
    }
    let (Some(q1), Some(q2)) = (a1.as_rational(), a2.as_rational()) else {
        return Err(Error::Unsupported(
            "both slopes of infinite order and not rational".into(),
        ));
    };
    let big = [&ca, &cb, &cc, &cd]
        .iter()
        .fold(1, |acc, x| lcm_u64(acc, x.conductor()));
    let lifted: Vec<CycRat> = [&ca, &cb, &cc, &cd].iter().map(|x| x.lift(big)).collect();
    let dim = lifted[0].coeffs().len();
    let mut set = SemiLin2::full();
    let mut seen = Vec::new();
    for i in 0..dim {
        let eq: Vec<Rat> = lifted.iter().map(|x| x.coeffs()[i].clone()).collect();
        if eq.iter().all(Zero::is_zero) || seen.contains(&eq) {
            continue;
        }
        let part = solve_rational(
            [&eq[0], &eq[1], &eq[2], &eq[3]],
            &q1,
            &q2,
            spec.horizon,
            notes,
        )?;
        set = set.intersect(&part)?;
        seen.push(eq);
    }
    Ok(set)
}

/// Builds the recurrence set of an affine triple, or a certificate when the
/// set is a graph `(K(1 − w^n), n)` with integer `|w| ≥ 2`.
pub fn affine_engine(spec: &AffineSpec) -> Result<EngineResult> {
    spec.validate()?;
    let mut notes = Vec::new();
    let s3 = match (spec.a1.is_one(), spec.a2.is_one()) {
        (true, true) => Piece::Set(both_unit(spec)),
        (true, false) => one_unit(spec, &mut notes)?,
        (false, true) => match one_unit(&spec.swapped(), &mut notes)? {
            Piece::Set(s) => Piece::Set(s.transpose()),
            Piece::Gaps(coord, values, formula) => Piece::Gaps(1 - coord, values, formula),
        },
        (false, false) => Piece::Set(no_unit(spec, &mut notes)?),
    };
    let s3 = match s3 {
        Piece::Set(s) => s,
        Piece::Gaps(coord, values, formula) => {
            return Ok(EngineResult::NonSemilinear {
                certificate: NonSLCertificate::projection_gaps(coord, values, &formula)?,
                formula,
            })
        }
    };
    let rows = side_set(&spec.a1, &spec.b1, &spec.c, &spec.d)?;
    let cols = side_set(&spec.a2, &spec.b2, &spec.c, &spec.d)?;
    let set = s3.intersect(&product(&rows, &cols))?;
    for m in 0..VERIFY_SIDE {
        for n in 0..VERIFY_SIDE {
            let expected = spec.member(m, n);
            if set.contains((m, n)) != expected {
                return Err(Error::SynthesisFailed { m, n, expected });
            }
        }
    }
    Ok(EngineResult::SemiLinear(EngineOutput {
        formula: "affine".into(),
        set,
        verified_side: VERIFY_SIDE,
        notes,
    }))
}
