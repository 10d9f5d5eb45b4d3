//! Iris data ingestion and training-set selection.

use crate::intervals::{build_interval_model, Interval, IntervalError, IntervalModel};
use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::fmt;
use std::fs::File;
use std::io::Read;
use std::path::Path;
use thiserror::Error;

/// The bundled UCI `iris.data` file: 150 rows, 50 per class, in UCI order.
pub const CANONICAL_IRIS: &str = include_str!("../data/iris.data");

/// SHA-256 of [`CANONICAL_IRIS`].
pub const CANONICAL_IRIS_SHA256: &str =
    "596ffd580471ca4d4880f8e439c7281f3b50d8249a5960353cb200b1490f63a0";

/// Feature labels in column order: sepal length, sepal width, petal length,
/// petal width (cm).
pub const FEATURES: [&str; 4] = ["SL", "SW", "PL", "PW"];

pub const EXPECTED_SAMPLES: usize = 150;
pub const EXPECTED_PER_CLASS: usize = 50;

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {reason}")]
    Malformed { line: u64, reason: String },
    #[error("line {line}: unknown class token `{token}`")]
    UnknownClass { line: u64, token: String },
    #[error("class {class} has {available} samples, {needed} requested")]
    InsufficientClass {
        class: IrisClass,
        needed: usize,
        available: usize,
    },
    #[error("per-class count must be positive")]
    ZeroCount,
    #[error(transparent)]
    Model(#[from] IntervalError),
}

pub type Result<T> = std::result::Result<T, DatasetError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum IrisClass {
    #[serde(rename = "Se")]
    Setosa,
    #[serde(rename = "Ve")]
    Versicolor,
    #[serde(rename = "Vi")]
    Virginica,
}

impl IrisClass {
    pub const ALL: [IrisClass; 3] = [Self::Setosa, Self::Versicolor, Self::Virginica];

    /// Short code used as the model class label.
    pub fn code(self) -> &'static str {
        match self {
            Self::Setosa => "Se",
            Self::Versicolor => "Ve",
            Self::Virginica => "Vi",
        }
    }

    /// Token used in the data file.
    pub fn token(self) -> &'static str {
        match self {
            Self::Setosa => "Iris-setosa",
            Self::Versicolor => "Iris-versicolor",
            Self::Virginica => "Iris-virginica",
        }
    }

    /// Case-sensitive inverse of [`IrisClass::token`].
    pub fn from_token(token: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.token() == token)
    }

    pub fn from_code(code: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.code() == code)
    }
}

impl fmt::Display for IrisClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LabeledSample {
    /// 0-based row position in the source file.
    pub id: usize,
    pub features: [f64; 4],
    pub label: IrisClass,
}

pub fn load_iris(path: impl AsRef<Path>) -> Result<Vec<LabeledSample>> {
    let path = path.as_ref();
    let io_err = |source| DatasetError::Io {
        path: path.display().to_string(),
        source,
    };
    let mut text = String::new();
    File::open(path)
        .and_then(|mut f| f.read_to_string(&mut text))
        .map_err(io_err)?;
    parse_iris(&text)
}

/// Parses `SL,SW,PL,PW,class` rows (no header, LF or CRLF line endings).
/// Blank lines are skipped; ids count only data rows.
pub fn parse_iris(text: &str) -> Result<Vec<LabeledSample>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut samples = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| DatasetError::Malformed {
            line: e.position().map_or(0, |p| p.line()),
            reason: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != 5 {
            return Err(DatasetError::Malformed {
                line,
                reason: format!("expected 5 fields, found {}", record.len()),
            });
        }
        let mut features = [0.0; 4];
        for (slot, field) in features.iter_mut().zip(record.iter()) {
            let v: f64 = field.parse().map_err(|_| DatasetError::Malformed {
                line,
                reason: format!("`{field}` is not a number"),
            })?;
            if !v.is_finite() || v <= 0.0 {
                return Err(DatasetError::Malformed {
                    line,
                    reason: format!("feature value {v} must be finite and positive"),
                });
            }
            *slot = v;
        }
        let token = &record[4];
        let label = IrisClass::from_token(token).ok_or_else(|| DatasetError::UnknownClass {
            line,
            token: token.to_owned(),
        })?;
        samples.push(LabeledSample {
            id: samples.len(),
            features,
            label,
        });
    }
    if let Some(w) = population_warning(&samples) {
        log::warn!("{w}");
    }
    Ok(samples)
}

/// The bundled fixture, parsed.
pub fn canonical_iris() -> Vec<LabeledSample> {
    parse_iris(CANONICAL_IRIS).expect("bundled iris fixture is well formed")
}

/// A warning when the sample set is not the full 150-row, 50-per-class set.
pub fn population_warning(samples: &[LabeledSample]) -> Option<String> {
    let counts = IrisClass::ALL.map(|c| samples.iter().filter(|s| s.label == c).count());
    if samples.len() == EXPECTED_SAMPLES && counts.iter().all(|&n| n == EXPECTED_PER_CLASS) {
        None
    } else {
        Some(format!(
            "expected {EXPECTED_SAMPLES} samples ({EXPECTED_PER_CLASS} per class), found {} (Se {}, Ve {}, Vi {})",
            samples.len(),
            counts[0],
            counts[1],
            counts[2]
        ))
    }
}

/// Writes samples back in the input format. Values use the shortest
/// representation that parses to the same `f64`.
pub fn serialize_iris(samples: &[LabeledSample]) -> String {
    let mut out = String::new();
    for s in samples {
        let [a, b, c, d] = s.features;
        out.push_str(&format!("{a:?},{b:?},{c:?},{d:?},{}\n", s.label.token()));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SelectionStrategy {
    /// The first `k` samples of each class, in id order.
    FirstK,
    /// `k` samples per class drawn without replacement from a seeded RNG.
    RandomSeeded(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SelectionPolicy {
    pub per_class_count: usize,
    pub strategy: SelectionStrategy,
}

impl Default for SelectionPolicy {
    fn default() -> Self {
        Self {
            per_class_count: 40,
            strategy: SelectionStrategy::FirstK,
        }
    }
}

/// Picks the training samples. The result is grouped by class (Se, Ve, Vi)
/// and ordered by id within each class.
pub fn select_training(
    samples: &[LabeledSample],
    policy: &SelectionPolicy,
) -> Result<Vec<LabeledSample>> {
    let k = policy.per_class_count;
    if k == 0 {
        return Err(DatasetError::ZeroCount);
    }
    let mut rng = match policy.strategy {
        SelectionStrategy::RandomSeeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        SelectionStrategy::FirstK => None,
    };
    let mut selected = Vec::with_capacity(3 * k);
    for class in IrisClass::ALL {
        let members: Vec<&LabeledSample> = samples.iter().filter(|s| s.label == class).collect();
        if members.len() < k {
            return Err(DatasetError::InsufficientClass {
                class,
                needed: k,
                available: members.len(),
            });
        }
        match rng.as_mut() {
            None => selected.extend(members[..k].iter().map(|&s| s.clone())),
            Some(rng) => {
                let mut picks = index::sample(rng, members.len(), k).into_vec();
                picks.sort_unstable();
                selected.extend(picks.into_iter().map(|i| members[i].clone()));
            }
        }
    }
    Ok(selected)
}

/// Interval model (classes Se, Ve, Vi; features SL, SW, PL, PW) from
/// training samples.
pub fn iris_interval_model(training: &[LabeledSample]) -> Result<IntervalModel> {
    let classes = IrisClass::ALL.map(IrisClass::code);
    Ok(build_interval_model(
        training.iter().map(|s| (&s.features[..], s.label.code())),
        &classes,
        &FEATURES,
    )?)
}

/// The Iris interval table widely used as the reference statistical model
/// for interval-evidence classification (40 training samples per class).
pub fn reference_interval_model() -> IntervalModel {
    const TABLE: [[(f64, f64); 4]; 3] = [
        [(4.4, 5.8), (2.3, 4.4), (1.0, 1.9), (0.1, 0.6)],
        [(4.9, 7.0), (2.0, 3.4), (3.0, 5.1), (1.0, 1.7)],
        [(4.9, 7.9), (2.2, 3.8), (4.5, 6.9), (1.4, 2.5)],
    ];
    let table = TABLE
        .iter()
        .map(|row| {
            row.iter()
                .map(|&(lo, hi)| Interval::new(lo, hi).expect("static interval"))
                .collect()
        })
        .collect();
    IntervalModel::new(
        IrisClass::ALL.map(|c| c.code().to_owned()).to_vec(),
        FEATURES.map(str::to_owned).to_vec(),
        table,
    )
    .expect("static model")
}
