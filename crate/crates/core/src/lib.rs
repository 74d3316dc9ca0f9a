//! Sharp bounds on the individual treatment harm rate `HR(T→Y)` when a
//! randomised trial records a binary treatment, a binary surrogate and a
//! binary primary outcome.
//!
//! The bounds hold under monotonicity-type premises on the surrogate,
//! relaxed by slack thresholds `c1`, `c2` and optionally `c3`. Every bound can
//! be computed in exact rational arithmetic and checked against a linear
//! program over the 64 potential-outcome cells (see [`lp`]).
//!
//! ```
//! use surrogate_paradox::bounds::sharp_bounds;
//! use surrogate_paradox::{ObservedDist, Rational};
//!
//! // P(Y=y, S=s | T=t) per arm, cells ordered [P00, P01, P10, P11].
//! let control = [2000, 900, 900, 1200].map(|n| Rational::new(n, 5000));
//! let treated = [1900, 800, 700, 1600].map(|n| Rational::new(n, 5000));
//! let obs = ObservedDist::from_arms(control, treated)?;
//!
//! let report = sharp_bounds(&obs, &Rational::new(0, 1))?;
//! assert!(report.compatible);
//! assert_eq!(report.lower, Rational::new(0, 1));
//! assert_eq!(report.upper, Rational::new(17, 50));
//! # Ok::<(), surrogate_paradox::Error>(())
//! ```

pub mod bounds;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod inference;
pub mod lp;
pub mod observed;
pub mod potential;
pub mod rational;
pub mod scalar;

pub use error::{Error, Result};
pub use observed::ObservedDist;
pub use scalar::{Mode, Rational, Scalar};
