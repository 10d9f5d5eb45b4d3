//! Interval numbers, the per-class interval model, and similarity-based
//! probability generation.
//!
//! A class is summarised per feature by the interval `[min, max]` of its
//! training values. A test value `v` is compared to each class interval as the
//! degenerate interval `[v, v]`; the similarities are normalised across
//! classes into one probability distribution per feature.

use crate::measures::{MeasureError, ProbabilityVector};
use serde::Serialize;
use std::collections::HashSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IntervalError {
    #[error("interval bounds must be finite, got [{lo}, {hi}]")]
    NonFinite { lo: f64, hi: f64 },
    #[error("interval lower bound {lo} exceeds upper bound {hi}")]
    Inverted { lo: f64, hi: f64 },
    #[error("support coefficient must be finite and positive, got {0}")]
    InvalidSupport(f64),
    #[error("duplicate {kind} label `{label}`")]
    DuplicateLabel { kind: &'static str, label: String },
    #[error("model has no {0}")]
    EmptyModel(&'static str),
    #[error("interval table is {rows}x{cols}, expected {classes}x{features}")]
    IncompleteTable {
        rows: usize,
        cols: usize,
        classes: usize,
        features: usize,
    },
    #[error("unknown feature `{0}`")]
    UnknownFeature(String),
    #[error("unknown class `{0}`")]
    UnknownClass(String),
    #[error("no training samples for class `{0}`")]
    MissingClass(String),
    #[error("sample {sample} has {got} feature values, expected {expected}")]
    MissingFeature {
        sample: usize,
        got: usize,
        expected: usize,
    },
    #[error("sample value {0} is not finite")]
    NonFiniteSample(f64),
    #[error("similarities sum to zero for feature `{0}`")]
    ZeroSimilarity(String),
    #[error(transparent)]
    Measure(#[from] MeasureError),
}

pub type Result<T> = std::result::Result<T, IntervalError>;

/// Closed interval `[lo, hi]` with finite bounds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !lo.is_finite() || !hi.is_finite() {
            return Err(IntervalError::NonFinite { lo, hi });
        }
        if lo > hi {
            return Err(IntervalError::Inverted { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    /// The degenerate interval `[v, v]`.
    pub fn singleton(v: f64) -> Result<Self> {
        Self::new(v, v)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn half_width(&self) -> f64 {
        0.5 * (self.hi - self.lo)
    }

    /// Smallest interval containing both `self` and `v`.
    fn extend(self, v: f64) -> Self {
        Self {
            lo: self.lo.min(v),
            hi: self.hi.max(v),
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// The coefficient of support γ > 0 in `S = 1 / (1 + γ D)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct SupportCoefficient(f64);

impl SupportCoefficient {
    pub const DEFAULT: f64 = 5.0;

    pub fn new(gamma: f64) -> Result<Self> {
        if gamma.is_finite() && gamma > 0.0 {
            Ok(Self(gamma))
        } else {
            Err(IntervalError::InvalidSupport(gamma))
        }
    }

    pub fn gamma(self) -> f64 {
        self.0
    }
}

impl Default for SupportCoefficient {
    fn default() -> Self {
        Self(Self::DEFAULT)
    }
}

/// Class × feature grid of intervals.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntervalModel {
    classes: Vec<String>,
    features: Vec<String>,
    table: Vec<Vec<Interval>>,
}

impl IntervalModel {
    /// `table[c][f]` is the interval of class `c` for feature `f`.
    pub fn new(
        classes: Vec<String>,
        features: Vec<String>,
        table: Vec<Vec<Interval>>,
    ) -> Result<Self> {
        if classes.is_empty() {
            return Err(IntervalError::EmptyModel("classes"));
        }
        if features.is_empty() {
            return Err(IntervalError::EmptyModel("features"));
        }
        check_unique("class", &classes)?;
        check_unique("feature", &features)?;
        let complete =
            table.len() == classes.len() && table.iter().all(|row| row.len() == features.len());
        if !complete {
            return Err(IntervalError::IncompleteTable {
                rows: table.len(),
                cols: table.iter().map(Vec::len).max().unwrap_or(0),
                classes: classes.len(),
                features: features.len(),
            });
        }
        Ok(Self {
            classes,
            features,
            table,
        })
    }

    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    pub fn features(&self) -> &[String] {
        &self.features
    }

    pub fn class_index(&self, label: &str) -> Option<usize> {
        self.classes.iter().position(|c| c == label)
    }

    pub fn feature_index(&self, label: &str) -> Option<usize> {
        self.features.iter().position(|f| f == label)
    }

    pub fn interval(&self, class: usize, feature: usize) -> Interval {
        self.table[class][feature]
    }

    pub fn rows(&self) -> &[Vec<Interval>] {
        &self.table
    }
}

fn check_unique(kind: &'static str, labels: &[String]) -> Result<()> {
    let mut seen = HashSet::new();
    for label in labels {
        if !seen.insert(label.as_str()) {
            return Err(IntervalError::DuplicateLabel {
                kind,
                label: label.clone(),
            });
        }
    }
    Ok(())
}

/// Distance between interval numbers:
///
/// `D²(A,B) = (mid A - mid B)² + ((halfwidth A)² + (halfwidth B)²) / 3`
///
/// Note that `D(A, A) > 0` whenever `A` has positive width.
pub fn interval_distance(a: &Interval, b: &Interval) -> f64 {
    let dm = a.midpoint() - b.midpoint();
    let (wa, wb) = (a.half_width(), b.half_width());
    (dm * dm + (wa * wa + wb * wb) / 3.0).sqrt()
}

/// `S(A,B) = 1 / (1 + γ D(A,B))`, in `(0, 1]`.
pub fn interval_similarity(a: &Interval, b: &Interval, gamma: SupportCoefficient) -> f64 {
    1.0 / (1.0 + gamma.gamma() * interval_distance(a, b))
}

/// Normalised similarities of `sample_value` to every class interval of
/// `feature`, in model class order.
pub fn feature_distribution(
    model: &IntervalModel,
    feature: &str,
    sample_value: f64,
    gamma: SupportCoefficient,
) -> Result<ProbabilityVector> {
    let f = model
        .feature_index(feature)
        .ok_or_else(|| IntervalError::UnknownFeature(feature.to_owned()))?;
    feature_distribution_at(model, f, sample_value, gamma)
}

pub(crate) fn feature_distribution_at(
    model: &IntervalModel,
    feature: usize,
    sample_value: f64,
    gamma: SupportCoefficient,
) -> Result<ProbabilityVector> {
    if !sample_value.is_finite() {
        return Err(IntervalError::NonFiniteSample(sample_value));
    }
    let point = Interval::singleton(sample_value)?;
    let sims: Vec<f64> = model
        .table
        .iter()
        .map(|row| interval_similarity(&row[feature], &point, gamma))
        .collect();
    let total: f64 = sims.iter().sum();
    if total <= 0.0 {
        return Err(IntervalError::ZeroSimilarity(model.features[feature].clone()));
    }
    Ok(ProbabilityVector::new(
        sims.into_iter().map(|s| s / total).collect(),
    )?)
}

/// Builds the `[min, max]` interval table from labelled training samples.
///
/// `samples` yields `(feature values, class label)` pairs; feature values are
/// read in the order of `features`. Every class must have at least one sample.
pub fn build_interval_model<'a, I>(
    samples: I,
    classes: &[&str],
    features: &[&str],
) -> Result<IntervalModel>
where
    I: IntoIterator<Item = (&'a [f64], &'a str)>,
{
    let mut table: Vec<Option<Vec<Interval>>> = vec![None; classes.len()];
    for (i, (values, label)) in samples.into_iter().enumerate() {
        let c = classes
            .iter()
            .position(|&cl| cl == label)
            .ok_or_else(|| IntervalError::UnknownClass(label.to_owned()))?;
        if values.len() < features.len() {
            return Err(IntervalError::MissingFeature {
                sample: i,
                got: values.len(),
                expected: features.len(),
            });
        }
        let values = &values[..features.len()];
        if let Some(&v) = values.iter().find(|v| !v.is_finite()) {
            return Err(IntervalError::NonFiniteSample(v));
        }
        table[c] = Some(match table[c].take() {
            None => values
                .iter()
                .map(|&v| Interval::singleton(v))
                .collect::<Result<_>>()?,
            Some(row) => row
                .into_iter()
                .zip(values)
                .map(|(iv, &v)| iv.extend(v))
                .collect(),
        });
    }
    let table = table
        .into_iter()
        .zip(classes)
        .map(|(row, &c)| row.ok_or_else(|| IntervalError::MissingClass(c.to_owned())))
        .collect::<Result<Vec<_>>>()?;
    IntervalModel::new(
        classes.iter().map(|s| s.to_string()).collect(),
        features.iter().map(|s| s.to_string()).collect(),
        table,
    )
}
