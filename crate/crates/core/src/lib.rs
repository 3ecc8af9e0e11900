//! Numerical toolkit for multiply monotone functions on (0, ∞).
//!
//! The crate certifies m-fold monotonicity at grid resolution, computes
//! V_m and V₀* norms with the constructive two-part decomposition, evaluates
//! the mixed-derivative expansion and weighted-integral reductions for
//! p-norm radial functions f₀(|x|_{p,d}), and renders numerical verdicts on
//! Wiener-algebra A(ℝ^d) membership cross-checked by a discrete Fourier
//! oracle.
//!
//! Everything here is a *numerical* claim at the stated resolution and
//! tolerances, never a proof; reports carry the sampling metadata needed to
//! reproduce them.

pub mod dsl;
pub mod error;
pub mod fitting;
pub mod fourier;
pub mod grid;
pub mod membership;
pub mod profiles;
pub mod quad;
pub mod report;
pub mod radial;
pub mod special;

pub mod monotone;
pub mod vm;

pub use error::{Error, Result};
pub use profiles::{DiscreteMeasure, Profile};
