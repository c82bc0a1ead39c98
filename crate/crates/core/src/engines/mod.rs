//! Closed-form constructions for the exceptional families.
//!
//! Every engine has an exact membership predicate valid for all `(m, n)` and
//! turns it into an explicit [`SemiLin2`], either structurally or through
//! [`synthesize`](crate::semilinear::synthesize), which checks the result
//! against the predicate. The oracles in [`crate::oracle`] are the reference
//! the tests compare against.

mod affine;
mod chebyshev;
mod decomposed;
mod gallery;
mod lemmas;
mod power;

use serde::Serialize;

use crate::semilinear::{NonSLCertificate, SemiLin2, Window};

pub use affine::{affine_engine, AffineSpec, DEFAULT_HORIZON};
pub use chebyshev::{chebyshev_engine, v_classify, v_member, ChebSpec, VClass};
pub use decomposed::{decomposed_engine, CSpec, DecompSpec};
pub use gallery::{gallery, powertil_certificate, powertil_halved_row, powertil_offset, Gallery};
pub use lemmas::{lemma41_check, lte_nu2};
pub use power::{power_engine, power_row0, PowerSpec};

/// An explicit set together with how it was obtained.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EngineOutput {
    /// Short identifier of the closed form used.
    pub formula: String,
    pub set: SemiLin2,
    /// Side of the square on which the set was checked against the formula.
    pub verified_side: u64,
    pub notes: Vec<String>,
}

impl EngineOutput {
    pub fn window(&self, m: u64, n: u64) -> Window {
        Window::from_set(&self.set, m, n, self.formula.clone())
    }
}

/// Outcome of an engine that may also prove non-semilinearity.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EngineResult {
    SemiLinear(EngineOutput),
    NonSemilinear {
        formula: String,
        certificate: NonSLCertificate,
    },
}

impl EngineResult {
    pub fn semilinear(&self) -> Option<&EngineOutput> {
        match self {
            EngineResult::SemiLinear(o) => Some(o),
            EngineResult::NonSemilinear { .. } => None,
        }
    }

    pub fn certificate(&self) -> Option<&NonSLCertificate> {
        match self {
            EngineResult::SemiLinear(_) => None,
            EngineResult::NonSemilinear { certificate, .. } => Some(certificate),
        }
    }
}

/// Preperiod and period of `x ↦ step(x)` on a finite state space, from `x0`.
pub(crate) fn cycle_of<T: PartialEq + Clone>(x0: T, step: impl Fn(&T) -> T) -> (Vec<T>, usize) {
    let mut seen = vec![x0];
    loop {
        let next = step(seen.last().expect("nonempty"));
        if let Some(i) = seen.iter().position(|y| *y == next) {
            return (seen, i);
        }
        seen.push(next);
    }
}

/// Value of an eventually periodic sequence given by its prefix and the index where the cycle starts.
pub(crate) fn cycle_at<T: Clone>(seq: &[T], start: usize, i: u64) -> T {
    if (i as usize) < seq.len() {
        return seq[i as usize].clone();
    }
    let per = (seq.len() - start) as u64;
    seq[start + ((i - start as u64) % per) as usize].clone()
}

#[cfg(test)]
mod tests;
