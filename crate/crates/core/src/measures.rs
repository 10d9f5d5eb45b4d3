//! Discrete information measures: Shannon entropy, extropy, and their Tsallis
//! generalisations.
//!
//! | Function | Formula |
//! |----------|---------|
//! | [`shannon_entropy`] | H(p) = -Σ p_i ln p_i |
//! | [`extropy`] | J(p) = -Σ (1-p_i) ln(1-p_i) |
//! | [`tsallis_entropy`] | S_α(p) = (1 - Σ p_i^α) / (α-1) |
//! | [`tsallis_extropy`] | JS_α(p) = (N - 1 - Σ (1-p_i)^α) / (α-1) |
//!
//! All logarithms are natural. The conventions `0 ln 0 = 0` and `0^α = 0`
//! apply throughout, so degenerate distributions such as `(1, 0, …, 0)` are
//! valid arguments.
//!
//! The order `α = 1` is accepted everywhere and means the limit: the Tsallis
//! entropy becomes Shannon entropy and the Tsallis extropy becomes extropy.
//! Orders within [`SHANNON_LIMIT_BAND`] of 1 use the limit branch as well.
//!
//! Besides the measures, the module exposes closed forms for the uniform
//! distribution and a handful of functions ([`sum_identity_gap`],
//! [`entropy_extropy_difference`], [`ordering_threshold`],
//! [`confronto_bounds`]) that turn the known inequalities and identities
//! between these measures into numbers that can be checked.

use serde::Serialize;
use std::fmt;
use thiserror::Error;

/// Tolerance on `Σ p_i = 1` accepted by [`ProbabilityVector::new`].
pub const SUM_TOLERANCE: f64 = 1e-9;

/// Orders with `|α - 1|` below this value are evaluated with the Shannon
/// (α → 1) branch instead of the `1/(α-1)` form.
pub const SHANNON_LIMIT_BAND: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeasureError {
    #[error("probability vector is empty")]
    Empty,
    #[error("probability p[{index}] = {value} is not finite")]
    NonFinite { index: usize, value: f64 },
    #[error("probability p[{index}] = {value} lies outside [0, 1]")]
    OutOfRange { index: usize, value: f64 },
    #[error("probabilities sum to {sum}, expected 1 within {SUM_TOLERANCE:e}")]
    NotNormalized { sum: f64 },
    #[error("Tsallis order must be a finite positive number, got {0}")]
    InvalidOrder(f64),
    #[error("support size must be at least {min}, got {n}")]
    SupportTooSmall { n: usize, min: usize },
}

pub type Result<T> = std::result::Result<T, MeasureError>;

/// A validated finite probability distribution `p = (p_1, …, p_N)`.
///
/// Values are stored exactly as given; construction checks range and
/// normalisation but never rescales.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ProbabilityVector {
    probs: Vec<f64>,
}

impl ProbabilityVector {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(MeasureError::Empty);
        }
        for (index, &value) in probs.iter().enumerate() {
            if !value.is_finite() {
                return Err(MeasureError::NonFinite { index, value });
            }
            if !(0.0..=1.0).contains(&value) {
                return Err(MeasureError::OutOfRange { index, value });
            }
        }
        let sum = compensated_sum(probs.iter().copied());
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(MeasureError::NotNormalized { sum });
        }
        Ok(Self { probs })
    }

    /// The uniform distribution over `n` outcomes.
    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(MeasureError::Empty);
        }
        Self::new(vec![1.0 / n as f64; n])
    }

    /// Support cardinality N.
    pub fn len(&self) -> usize {
        self.probs.len()
    }

    /// Always false; kept for clippy's `len_without_is_empty`.
    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.probs
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.probs
    }

    /// Index of the largest probability, lowest index on ties.
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (i, &p) in self.probs.iter().enumerate().skip(1) {
            if p > self.probs[best] {
                best = i;
            }
        }
        best
    }
}

impl TryFrom<Vec<f64>> for ProbabilityVector {
    type Error = MeasureError;

    fn try_from(probs: Vec<f64>) -> Result<Self> {
        Self::new(probs)
    }
}

impl AsRef<[f64]> for ProbabilityVector {
    fn as_ref(&self) -> &[f64] {
        &self.probs
    }
}

/// The order α > 0 of the Tsallis family. `α = 1` denotes the Shannon limit.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct TsallisParam(f64);

impl TsallisParam {
    pub fn new(alpha: f64) -> Result<Self> {
        if alpha.is_finite() && alpha > 0.0 {
            Ok(Self(alpha))
        } else {
            Err(MeasureError::InvalidOrder(alpha))
        }
    }

    pub fn alpha(self) -> f64 {
        self.0
    }

    /// True when the measure should be evaluated through its α → 1 limit.
    pub fn is_shannon_limit(self) -> bool {
        (self.0 - 1.0).abs() < SHANNON_LIMIT_BAND
    }
}

impl fmt::Display for TsallisParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Result of a measure. Always finite.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct MeasureValue(f64);

impl MeasureValue {
    fn new(value: f64) -> Self {
        debug_assert!(value.is_finite(), "measure produced {value}");
        // -0.0 -> 0.0
        Self(value + 0.0)
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl From<MeasureValue> for f64 {
    fn from(v: MeasureValue) -> f64 {
        v.0
    }
}

impl fmt::Display for MeasureValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Neumaier summation.
pub(crate) fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0_f64;
    let mut carry = 0.0_f64;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }
    sum + carry
}

/// `-x ln x` with `0 ln 0 = 0`; `ln_x` is `ln x` computed by the caller.
fn entropy_term(x: f64, ln_x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        -x * ln_x
    }
}

/// `x (1 - x^(α-1)) / (α-1)`, given `ln x`. Summing this over `x = p_i`
/// yields S_α, summing over `x = 1 - p_i` yields JS_α. Each term has the
/// sign of the result, so no cancellation occurs in the sum.
fn tsallis_term(x: f64, ln_x: f64, alpha: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let a1 = alpha - 1.0;
    -x * (a1 * ln_x).exp_m1() / a1
}

/// Shannon entropy in nats.
pub fn shannon_entropy(p: &ProbabilityVector) -> MeasureValue {
    let h = compensated_sum(p.probs.iter().map(|&x| entropy_term(x, x.ln())));
    MeasureValue::new(h)
}

/// Extropy `-Σ (1-p_i) ln(1-p_i)` in nats.
pub fn extropy(p: &ProbabilityVector) -> MeasureValue {
    let j = compensated_sum(p.probs.iter().map(|&x| entropy_term(1.0 - x, (-x).ln_1p())));
    MeasureValue::new(j)
}

pub fn tsallis_entropy(p: &ProbabilityVector, alpha: TsallisParam) -> MeasureValue {
    if alpha.is_shannon_limit() {
        return shannon_entropy(p);
    }
    let a = alpha.alpha();
    let s = compensated_sum(p.probs.iter().map(|&x| tsallis_term(x, x.ln(), a)));
    MeasureValue::new(s)
}

/// Tsallis extropy `JS_α(p) = (N - 1 - Σ (1-p_i)^α) / (α-1)`.
///
/// Lies in `[0, 1)` for every distribution and order, attains 0 on point
/// masses and its maximum (see [`uniform_tsallis_extropy`]) on the uniform
/// distribution.
pub fn tsallis_extropy(p: &ProbabilityVector, alpha: TsallisParam) -> MeasureValue {
    if alpha.is_shannon_limit() {
        return extropy(p);
    }
    let a = alpha.alpha();
    let js = compensated_sum(
        p.probs
            .iter()
            .map(|&x| tsallis_term(1.0 - x, (-x).ln_1p(), a)),
    );
    MeasureValue::new(js)
}

/// Tsallis entropy of the two-point distribution `(p, 1-p)`, which equals
/// its Tsallis extropy. Evaluated directly as `(1 - p^α - (1-p)^α)/(α-1)`.
pub fn binary_tsallis(p: f64, alpha: TsallisParam) -> Result<MeasureValue> {
    if !p.is_finite() {
        return Err(MeasureError::NonFinite { index: 0, value: p });
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(MeasureError::OutOfRange { index: 0, value: p });
    }
    let q = 1.0 - p;
    if alpha.is_shannon_limit() {
        return Ok(MeasureValue::new(
            entropy_term(p, p.ln()) + entropy_term(q, q.ln()),
        ));
    }
    let a = alpha.alpha();
    Ok(MeasureValue::new((1.0 - p.powf(a) - q.powf(a)) / (a - 1.0)))
}

/// `S_α(p) + JS_α(p) - Σ_i S_α(p_i, 1-p_i)`.
///
/// The identity makes this zero; the returned value is the numerical residue
/// (below `1e-10` in double precision).
pub fn sum_identity_gap(p: &ProbabilityVector, alpha: TsallisParam) -> MeasureValue {
    let lhs = tsallis_entropy(p, alpha).get() + tsallis_extropy(p, alpha).get();
    let rhs = compensated_sum(p.probs.iter().map(|&x| {
        binary_tsallis(x, alpha)
            .expect("validated probability")
            .get()
    }));
    MeasureValue::new(lhs - rhs)
}

/// Closed-form Tsallis extropy of the uniform distribution over `n` points,
/// `(N-1)/(α-1) · (1 - ((N-1)/N)^(α-1))`, which is the maximum of
/// [`tsallis_extropy`] over all distributions with support size `n`.
///
/// For `α = 1` this is `(N-1) ln(N/(N-1))`. Strictly increasing in `n` with
/// limit 1.
pub fn uniform_tsallis_extropy(n: usize, alpha: TsallisParam) -> Result<MeasureValue> {
    if n == 0 {
        return Err(MeasureError::SupportTooSmall { n, min: 1 });
    }
    if n == 1 {
        return Ok(MeasureValue::new(0.0));
    }
    let n = n as f64;
    // ln((N-1)/N)
    let ln_ratio = (-1.0 / n).ln_1p();
    let value = if alpha.is_shannon_limit() {
        -(n - 1.0) * ln_ratio
    } else {
        let a1 = alpha.alpha() - 1.0;
        -(n - 1.0) * (a1 * ln_ratio).exp_m1() / a1
    };
    Ok(MeasureValue::new(value))
}

/// `S_α(p) - JS_α(p)`.
///
/// For `N >= 3` this is non-negative when `0 < α < 2` and non-positive when
/// `α > 2`; at `α = 2` the two measures coincide. For `N = 2` it is
/// identically zero.
pub fn entropy_extropy_difference(p: &ProbabilityVector, alpha: TsallisParam) -> MeasureValue {
    MeasureValue::new(tsallis_entropy(p, alpha).get() - tsallis_extropy(p, alpha).get())
}

/// The threshold order
/// `G(N) = ln[(N/(N-2)) · (ln(N-1)/ln N)] / ln(N/(N-1))`
/// below which the numerator of the uniform entropy/extropy difference is
/// increasing in α. Lies strictly between 1 and 2 for every `N >= 3`.
pub fn ordering_threshold(n: usize) -> Result<f64> {
    if n < 3 {
        return Err(MeasureError::SupportTooSmall { n, min: 3 });
    }
    let n = n as f64;
    let ln_n = n.ln();
    let ln_ratio = (-1.0 / n).ln_1p(); // ln((N-1)/N)
    // ln(N/(N-2)) + ln(ln(N-1)/ln N), both written as ln(1 + small)
    let numerator = (2.0 / (n - 2.0)).ln_1p() + (ln_ratio / ln_n).ln_1p();
    Ok(numerator / -ln_ratio)
}

/// The three curves `(N-2)/(N-1) < ln(N-1)/ln N < N(N-2)/(N-1)^2` whose
/// ordering is equivalent to `1 < G(N) < 2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConfrontoBounds {
    pub lower: f64,
    pub middle: f64,
    pub upper: f64,
}

impl ConfrontoBounds {
    pub fn is_strictly_increasing(&self) -> bool {
        self.lower < self.middle && self.middle < self.upper
    }
}

pub fn confronto_bounds(n: usize) -> Result<ConfrontoBounds> {
    if n < 3 {
        return Err(MeasureError::SupportTooSmall { n, min: 3 });
    }
    let n = n as f64;
    Ok(ConfrontoBounds {
        lower: (n - 2.0) / (n - 1.0),
        middle: (n - 1.0).ln() / n.ln(),
        upper: n * (n - 2.0) / ((n - 1.0) * (n - 1.0)),
    })
}
