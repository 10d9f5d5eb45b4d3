//! Tsallis extropy and companion discrete information measures, plus an
//! interval-similarity classifier that weights features by their extropy.
//!
//! - [`measures`]: Shannon entropy, extropy, Tsallis entropy and Tsallis
//!   extropy, uniform-distribution closed forms, and checkable identities.
//! - [`intervals`]: interval numbers, class × feature interval models and
//!   similarity-based per-feature distributions.
//! - [`classifier`]: extropy weighting, fusion, decision, evaluation.
//! - [`dataset`]: Iris loading and training-set selection.
//!
//! ```
//! use extropy::measures::{tsallis_extropy, ProbabilityVector, TsallisParam};
//!
//! let p = ProbabilityVector::new(vec![0.5, 0.5]).unwrap();
//! let js = tsallis_extropy(&p, TsallisParam::new(2.0).unwrap());
//! assert!((js.get() - 0.5).abs() < 1e-15);
//! ```

pub mod classifier;
pub mod dataset;
pub mod intervals;
pub mod measures;

pub use classifier::{
    analyze_sample, classify_sample, evaluate, extropy_weights, fuse, ClassificationReport,
    Decision, FeatureWeights,
};
pub use dataset::{load_iris, select_training, IrisClass, LabeledSample, SelectionPolicy};
pub use intervals::{Interval, IntervalModel, SupportCoefficient};
pub use measures::{MeasureValue, ProbabilityVector, TsallisParam};
