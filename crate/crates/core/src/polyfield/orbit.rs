use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::Poly;
use crate::error::{Error, Result};
use crate::exactnum::{euler_phi, factorize, lcm_u64, nu_p, root_of_unity_order, CycRat, Field};
use crate::semilinear::EPSet1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrbitClass {
    Empty,
    FiniteSingleton,
    InfiniteProgression,
}

/// `{m ≥ 0 : h^∘m(λ) = target}` with its shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitResult {
    pub progression: EPSet1,
    pub classification: OrbitClass,
    /// Set when emptiness beyond the explored prefix rests on an escape witness.
    pub escaped: bool,
}

impl OrbitResult {
    fn from_set(progression: EPSet1, escaped: bool) -> Self {
        let classification = if progression.is_empty() {
            OrbitClass::Empty
        } else if progression.is_finite() {
            OrbitClass::FiniteSingleton
        } else {
            OrbitClass::InfiniteProgression
        };
        OrbitResult {
            progression,
            classification,
            escaped,
        }
    }
}

fn modulus(x: &impl Field) -> f64 {
    let (re, im) = x.to_complex();
    re.hypot(im)
}

/// Computes `{m ≥ 0 : h^∘m(λ) = target}` exactly.
///
/// Affine maps are solved in closed form. Otherwise the orbit is followed for
/// at most `budget` steps until it repeats or provably escapes to infinity.
pub fn orbit_progression<F: Field>(
    h: &Poly<F>,
    lambda: &F,
    target: &F,
    budget: u64,
) -> Result<OrbitResult> {
    if h.degree() == Some(1) {
        return affine_orbit(h, lambda, target);
    }
    let d = h.degree().unwrap_or(0);
    // |h(x)| ≥ |x|^{d-1} (|a||x| - B) for |x| ≥ 1.
    let lead = h.lead().map(modulus).unwrap_or(0.0);
    let tail: f64 = h.coeffs()[..h.coeffs().len().saturating_sub(1)]
        .iter()
        .map(modulus)
        .sum();
    let target_abs = modulus(target);
    let mut orbit: Vec<F> = Vec::new();
    let mut x = lambda.clone();
    for _ in 0..=budget {
        if let Some(i) = orbit.iter().position(|y| *y == x) {
            let j = orbit.len() as u64;
            let i = i as u64;
            let hits: Vec<u64> = (0..j).filter(|&t| orbit[t as usize] == *target).collect();
            let set = EPSet1::from_pattern(i, j - i, |t| {
                if t < i {
                    hits.contains(&t)
                } else {
                    hits.contains(&(i + (t - i) % (j - i)))
                }
            });
            return Ok(OrbitResult::from_set(set, false));
        }
        if d >= 2 {
            let a = modulus(&x);
            if a >= 1.0 && lead * a - tail > 2.0 + 1e-6 * tail && a > 2.0 * target_abs + 1.0 {
                let hits: Vec<u64> = (0..orbit.len() as u64)
                    .filter(|&t| orbit[t as usize] == *target)
                    .collect();
                return Ok(OrbitResult::from_set(EPSet1::finite(hits), true));
            }
        }
        let next = h.eval(&x);
        orbit.push(std::mem::replace(&mut x, next));
    }
    Err(Error::BudgetExhausted(format!(
        "orbit of {lambda} under {h} not resolved after {budget} steps"
    )))
}

fn affine_orbit<F: Field>(h: &Poly<F>, lambda: &F, target: &F) -> Result<OrbitResult> {
    let (b, a) = (h.coeff(0).to_cyc(), h.coeff(1).to_cyc());
    let (lambda, target) = (lambda.to_cyc(), target.to_cyc());
    let set = if a.is_one() {
        if b.is_zero() {
            if lambda == target {
                EPSet1::full()
            } else {
                EPSet1::empty()
            }
        } else {
            let steps = target.minus(&lambda).times(&b.inverse()?);
            match steps.as_rational() {
                Some(q) if q.is_integer() && !q.is_negative() => EPSet1::finite([q
                    .to_integer()
                    .to_u64()
                    .ok_or_else(|| Error::Unsupported("orbit hit index exceeds u64".into()))?]),
                _ => EPSet1::empty(),
            }
        }
    } else {
        let u = b.times(&CycRat::one().minus(&a).inverse()?);
        power_equation_set(&lambda.minus(&u), &target.minus(&u), &a)?
    };
    Ok(OrbitResult::from_set(set, false))
}

/// The set `{m ≥ 0 : α μ^m = γ}`.
///
/// Torsion `μ` gives a periodic set. Otherwise there is at most one solution:
/// it is pinned down by a prime valuation of the norm when `|N(μ)| ≠ 1`, or
/// bounded by the denominator of `γ/α` when `μ` is not integral. Integral
/// units of infinite order are not handled.
pub fn power_equation_set(alpha: &CycRat, gamma: &CycRat, mu: &CycRat) -> Result<EPSet1> {
    if alpha.is_zero() {
        return Ok(if gamma.is_zero() {
            EPSet1::full()
        } else {
            EPSet1::empty()
        });
    }
    if gamma.is_zero() {
        return Ok(EPSet1::empty());
    }
    if mu.is_zero() {
        return Ok(if alpha == gamma {
            EPSet1::finite([0])
        } else {
            EPSet1::empty()
        });
    }
    if let Some(k) = root_of_unity_order(mu)? {
        let mut hits = Vec::new();
        let mut x = alpha.clone();
        for m in 0..k {
            if x == *gamma {
                hits.push(m);
            }
            x = x.times(mu);
        }
        return Ok(EPSet1::from_pattern(0, k, |m| hits.contains(&(m % k))));
    }
    let rho = gamma.times(&alpha.inverse()?);
    let n = lcm_u64(rho.conductor(), mu.conductor());
    let (rho, mu) = (rho.lift(n), mu.lift(n));
    let norm_mu = mu.norm();
    if !One::is_one(&norm_mu.abs()) {
        let witness = if norm_mu.numer().abs().is_one() {
            norm_mu.denom().clone()
        } else {
            norm_mu.numer().abs()
        };
        let p = factorize(&witness)?.factors[0].0.clone();
        let v_mu = nu_p(&norm_mu, &p)?;
        let v_rho = nu_p(&rho.norm(), &p)?;
        if v_rho % v_mu != 0 || v_rho / v_mu < 0 {
            return Ok(EPSet1::empty());
        }
        let m = (v_rho / v_mu) as u64;
        return Ok(if mu.pow_u64(m) == rho {
            EPSet1::finite([m])
        } else {
            EPSet1::empty()
        });
    }
    if mu.denominator().is_one() {
        return Err(Error::Unsupported(format!(
            "{mu} is a unit of infinite order"
        )));
    }
    let bits = rho.denominator().bits().max(1);
    let bound = euler_phi(n) * bits;
    let mut hits = Vec::new();
    let mut x = CycRat::one();
    for m in 0..=bound {
        if x == rho {
            hits.push(m);
        }
        x = x.times(&mu);
    }
    Ok(EPSet1::finite(hits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, Rat};

    fn p(c: &[i64]) -> Poly<Rat> {
        Poly::new(c.iter().map(|&x| rat(x, 1)).collect())
    }

    #[test]
    fn squaring_minus_one_hits_one_forever() {
        let r = orbit_progression(&p(&[0, 0, 1]), &rat(-1, 1), &rat(1, 1), 50).unwrap();
        assert_eq!(r.classification, OrbitClass::InfiniteProgression);
        assert_eq!(r.progression, EPSet1::at_least(1));
        assert!(!r.progression.contains(0));
    }

    #[test]
    fn translation_hits_once() {
        let r = orbit_progression(&p(&[1, 1]), &rat(0, 1), &rat(5, 1), 50).unwrap();
        assert_eq!(r.classification, OrbitClass::FiniteSingleton);
        assert_eq!(r.progression, EPSet1::finite([5]));
    }

    #[test]
    fn escaping_orbit_is_empty() {
        let r = orbit_progression(&p(&[0, 0, 1]), &rat(2, 1), &rat(3, 1), 50).unwrap();
        assert_eq!(r.classification, OrbitClass::Empty);
        assert!(r.escaped);
    }

    #[test]
    fn halving_orbit_is_solved_exactly() {
        let h = Poly::new(vec![rat(0, 1), rat(1, 2)]);
        let r = orbit_progression(&h, &rat(1, 1), &rat(1, 1024), 5).unwrap();
        assert_eq!(r.progression, EPSet1::finite([10]));
    }

    #[test]
    fn rotation_orbit_is_periodic() {
        let h = Poly::new(vec![CycRat::zero(), CycRat::zeta(3, 1)]);
        let r = orbit_progression(&h, &CycRat::one(), &CycRat::zeta(3, 2), 5).unwrap();
        assert_eq!(r.progression, EPSet1::from_pattern(0, 3, |m| m % 3 == 2));
    }

    #[test]
    fn budget_is_enforced() {
        // z^2 - 2 on [−2, 2] is bounded but 1/3 is not preperiodic.
        let r = orbit_progression(&p(&[-2, 0, 1]), &rat(1, 3), &rat(5, 1), 12);
        assert!(matches!(r, Err(Error::BudgetExhausted(_))));
    }

    #[test]
    fn power_equation_norm_branch() {
        let mu = CycRat::from_rat(rat(3, 2));
        let gamma = CycRat::from_rat(rat(81, 16));
        let s = power_equation_set(&CycRat::one(), &gamma, &mu).unwrap();
        assert_eq!(s, EPSet1::finite([4]));
        let s = power_equation_set(&CycRat::one(), &CycRat::from_int(-1), &mu).unwrap();
        assert!(s.is_empty());
    }

    #[test]
    fn power_equation_unit_circle_non_torsion() {
        let mu = CycRat::new(4, vec![rat(3, 5), rat(4, 5)]);
        let target = mu.pow_u64(3);
        let s = power_equation_set(&CycRat::one(), &target, &mu).unwrap();
        assert_eq!(s, EPSet1::finite([3]));
    }

    #[test]
    fn power_equation_integral_unit_unsupported() {
        let mu = CycRat::new(5, vec![rat(1, 1), rat(1, 1)]);
        assert!(root_of_unity_order(&mu).unwrap().is_none());
        let r = power_equation_set(&CycRat::one(), &CycRat::from_int(2), &mu);
        assert!(matches!(r, Err(Error::Unsupported(_))));
    }
}
