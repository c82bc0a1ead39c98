//! Recurrence sets of polynomial triples.
//!
//! For polynomials `f, g, c` the rank-two recurrence set is the set of pairs
//! `(m, n)` such that `f^m(λ) = g^n(λ) = c(λ)` for some complex `λ`. This crate
//! computes such sets two ways: an exact brute-force oracle working on finite
//! windows ([`oracle`]) and closed-form engines for the exceptional families
//! ([`engines`]). Both produce data for the semilinear-set kernel in
//! [`semilinear`], which handles membership, boolean operations, row slices,
//! eventual periods and non-semilinearity certificates.

pub mod engines;
pub mod error;
pub mod exactnum;
pub mod oracle;
pub mod polyfield;
pub mod semilinear;

pub use error::{Error, Result};
pub use exactnum::{CycRat, Factorization, Field, Int, Rat};
pub use polyfield::{OrbitClass, OrbitResult, Poly};
pub use semilinear::{EPSet1, LinSet, NonSLCertificate, SemiLin2, Window};
