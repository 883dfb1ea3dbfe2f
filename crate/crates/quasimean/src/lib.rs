//! Means, quasi-means and their perturbations: exact decimal arithmetic,
//! a catalog of one-sided and generalized means, sampling-based property
//! falsifiers, distance-from-mean measures, Gauss-style iterations, and a
//! small formula language with an addition/multiplication duality rewrite.
//!
//! ```
//! use quasimean::{Catalog, RealTuple};
//! use quasimean::classify::{check_right_mean, ClassifyConfig, VerdictStatus};
//!
//! let entry = Catalog::construct("floor-arith?m=0")?;
//! let t = RealTuple::parse(&["2.1", "3"])?;
//! assert_eq!(entry.mean.eval(&t)?.render(), "2.5");
//!
//! let verdict = check_right_mean(&entry.mean, &entry.default_box, &ClassifyConfig::new(2_000, 0));
//! assert_eq!(verdict.status, VerdictStatus::HoldsOnSample);
//! # Ok::<(), quasimean::MeanError>(())
//! ```

pub mod catalog;
pub mod classify;
pub mod error;
pub mod expr;
pub mod iterate;
pub mod mean;
pub mod measures;
pub mod real;
pub mod rng;
pub mod tuple;

pub use catalog::{Catalog, CatalogEntry, MeanClass, Property};
pub use error::MeanError;
pub use mean::{GeneratorFunction, MeanFunction};
pub use real::{ExactDecimal, Real};
pub use rng::SeededRng;
pub use tuple::{Arity, DomainBox, RealTuple};
