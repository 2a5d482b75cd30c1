//! Evidence fusion over finite label sets, three ways.
//!
//! * [`mass`] — belief states over the power set of a frame, with the
//!   normalized and unnormalized conjunctive combination rules, belief /
//!   plausibility / commonality evaluation, and `O(n · 2^n)` subset-lattice
//!   transforms for dense combination.
//! * [`experts`] — weighted populations of experts holding boolean or
//!   probabilistic opinions, combined over product spaces, with the
//!   projections that carry ensemble combination onto belief-state
//!   combination.
//! * [`logop`] — logarithmic opinions summarized by mean and covariance;
//!   combination is addition of both, so a state costs `O(n²)` scalars
//!   instead of `2^n`.
//!
//! All values are immutable after construction and all operations are pure,
//! so everything can be shared or sent across threads freely.
//!
//! The numeric kernels are generic over a [`Real`] scalar; the `*64`/`*32`
//! aliases below fix the common precisions.
//!
//! ```
//! use evfuse_core::{Frame, MassFunction64};
//!
//! let frame = Frame::new(["a", "b"])?;
//! let m1 = MassFunction64::new(frame.clone(), vec![0.0, 0.6, 0.0, 0.4])?;
//! let m2 = MassFunction64::new(frame.clone(), vec![0.0, 0.0, 0.7, 0.3])?;
//!
//! let fused = m1.combine_normalized(&m2)?;
//! let a = frame.subset_of(["a"])?;
//! assert!((fused.belief(a) - 0.310345).abs() < 1e-6);
//! assert!((fused.plausibility(a) - 0.517241).abs() < 1e-6);
//! # Ok::<(), evfuse_core::Error>(())
//! ```

pub mod error;
pub mod experts;
pub mod frame;
pub mod io;
mod jacobi;
pub mod logop;
pub mod mass;
pub mod scalar;
pub mod transform;

pub use error::{Error, Result};
pub use experts::{
    BooleanEnsemble, BooleanExpert, PriorVector, ProbabilisticEnsemble, ProbabilisticExpert,
    DEFAULT_MAX_PRODUCT_EXPERTS,
};
pub use frame::{Frame, Subset, DEFAULT_MAX_LABELS};
pub use io::EvidenceDocument;
pub use logop::{log_opinion_from_probabilistic, GaussianLogState, LogExpert, LogOpinionEnsemble};
pub use mass::MassFunction;
pub use scalar::Real;

/// Double-precision belief state.
pub type MassFunction64 = MassFunction<f64>;
/// Single-precision belief state.
pub type MassFunction32 = MassFunction<f32>;
/// Double-precision boolean ensemble.
pub type BooleanEnsemble64 = BooleanEnsemble<f64>;
/// Single-precision boolean ensemble.
pub type BooleanEnsemble32 = BooleanEnsemble<f32>;
/// Double-precision probabilistic ensemble.
pub type ProbabilisticEnsemble64 = ProbabilisticEnsemble<f64>;
/// Single-precision probabilistic ensemble.
pub type ProbabilisticEnsemble32 = ProbabilisticEnsemble<f32>;
/// Double-precision logarithmic-opinion ensemble.
pub type LogOpinionEnsemble64 = LogOpinionEnsemble<f64>;
/// Single-precision logarithmic-opinion ensemble.
pub type LogOpinionEnsemble32 = LogOpinionEnsemble<f32>;
/// Double-precision Gaussian log-opinion state.
pub type GaussianLogState64 = GaussianLogState<f64>;
/// Single-precision Gaussian log-opinion state.
pub type GaussianLogState32 = GaussianLogState<f32>;
/// Double-precision prior vector.
pub type PriorVector64 = PriorVector<f64>;
/// Single-precision prior vector.
pub type PriorVector32 = PriorVector<f32>;
