//! Command-line front end: `measure`, `classify`, `evaluate`, `verify`.
//!
//! Exit codes: 0 success, 1 validation error, 2 property violation,
//! 3 I/O error.

pub mod output;
pub mod verify;

use clap::{Args, Parser, Subcommand, ValueEnum};
use extropy::classifier::{analyze_sample, evaluate, ClassificationReport, LITERATURE_BASELINES};
use extropy::dataset::{
    canonical_iris, iris_interval_model, load_iris, population_warning, reference_interval_model,
    select_training, DatasetError, LabeledSample, SelectionPolicy, SelectionStrategy,
};
use extropy::intervals::{IntervalModel, SupportCoefficient};
use extropy::measures::{self, ProbabilityVector, TsallisParam};
use output::{write_records, Format, OutputRecord};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use thiserror::Error;

pub const DEFAULT_ALPHAS: [f64; 5] = [0.5, 0.7, 1.0, 1.5, 2.0];

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Validation(String),
    #[error("property violation: {0}")]
    Property(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Property(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

fn invalid(context: &str) -> impl Fn(&dyn std::fmt::Display) -> CliError + '_ {
    move |e| CliError::Validation(format!("{context}: {e}"))
}

impl From<DatasetError> for CliError {
    fn from(e: DatasetError) -> Self {
        match e {
            DatasetError::Io { .. } => CliError::Io(e.to_string()),
            other => CliError::Validation(format!("dataset: {other}")),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "extropy", version, about = "Tsallis extropy measures and extropy-weighted Iris classification")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "text")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate information measures of a distribution.
    Measure(MeasureArgs),
    /// Classify one sample and show every intermediate.
    Classify(ClassifyArgs),
    /// Classify a whole dataset and report recognition rates per order.
    Evaluate(EvaluateArgs),
    /// Numerically check the identities and bounds of the measures.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeasureName {
    ShannonEntropy,
    Extropy,
    TsallisEntropy,
    TsallisExtropy,
    BinaryTsallis,
    SumIdentityGap,
    EntropyExtropyDifference,
    UniformTsallisExtropy,
}

impl MeasureName {
    fn label(self) -> &'static str {
        match self {
            MeasureName::ShannonEntropy => "shannon-entropy",
            MeasureName::Extropy => "extropy",
            MeasureName::TsallisEntropy => "tsallis-entropy",
            MeasureName::TsallisExtropy => "tsallis-extropy",
            MeasureName::BinaryTsallis => "binary-tsallis",
            MeasureName::SumIdentityGap => "sum-identity-gap",
            MeasureName::EntropyExtropyDifference => "entropy-extropy-difference",
            MeasureName::UniformTsallisExtropy => "uniform-tsallis-extropy",
        }
    }

    fn uses_alpha(self) -> bool {
        !matches!(self, MeasureName::ShannonEntropy | MeasureName::Extropy)
    }
}

#[derive(Debug, Args)]
pub struct MeasureArgs {
    /// Probabilities, comma separated.
    #[arg(long = "p", value_delimiter = ',', allow_negative_numbers = true, required_unless_present = "p_file")]
    pub p: Vec<f64>,
    /// File holding the probabilities (comma or whitespace separated).
    #[arg(long, conflicts_with = "p")]
    pub p_file: Option<PathBuf>,
    /// Tsallis orders.
    #[arg(long, value_delimiter = ',', env = "EXTROPY_ALPHA", allow_negative_numbers = true)]
    pub alpha: Vec<f64>,
    #[arg(long, value_enum, value_delimiter = ',', default_values_t = [
        MeasureName::ShannonEntropy,
        MeasureName::Extropy,
        MeasureName::TsallisEntropy,
        MeasureName::TsallisExtropy,
    ])]
    pub measure: Vec<MeasureName>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolicyName {
    /// First k samples of each class.
    First,
    /// k seeded random samples of each class.
    Random,
    /// The fixed reference interval table; ignores --per-class and --seed.
    Reference,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    /// Iris data file; the bundled copy is used when omitted.
    #[arg(long)]
    pub dataset: Option<PathBuf>,
    /// Coefficient of support.
    #[arg(long, env = "EXTROPY_GAMMA", default_value_t = SupportCoefficient::DEFAULT, allow_negative_numbers = true)]
    pub gamma: f64,
    /// Tsallis orders.
    #[arg(long, value_delimiter = ',', env = "EXTROPY_ALPHA", allow_negative_numbers = true)]
    pub alpha: Vec<f64>,
    #[arg(long, value_enum, default_value = "first")]
    pub policy: PolicyName,
    /// Training samples per class.
    #[arg(long, default_value_t = 40)]
    pub per_class: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Feature values SL,SW,PL,PW.
    #[arg(long, value_delimiter = ',', required_unless_present = "id", allow_negative_numbers = true)]
    pub sample: Vec<f64>,
    /// 0-based row of the dataset to classify.
    #[arg(long, conflicts_with = "sample")]
    pub id: Option<usize>,
}

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    /// Also emit one record per classified sample.
    #[arg(long)]
    pub per_sample: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 3)]
    pub n_min: usize,
    #[arg(long, default_value_t = 10_000)]
    pub n_max: usize,
    /// Random simplex points per support size.
    #[arg(long, default_value_t = 10_000)]
    pub points: usize,
    /// Largest support size of the random points.
    #[arg(long, default_value_t = 12)]
    pub support_max: usize,
    #[arg(long, value_delimiter = ',', default_values_t = verify::DEFAULT_ALPHAS, allow_negative_numbers = true)]
    pub alpha: Vec<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Skip the curve data.
    #[arg(long)]
    pub no_curve: bool,
    /// Shift every Tsallis extropy by +1 before checking (exercises the
    /// failure path).
    #[arg(long, hide = true)]
    pub inject_fault: bool,
}

/// Parses `args`, runs the command, writes records to `out` and diagnostics
/// to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    0
                }
                _ => {
                    let _ = write!(err, "{e}");
                    1
                }
            };
        }
    };
    let mut records = Vec::new();
    let result = dispatch(&cli.command, &mut records, err);
    if let Some(key) = records.iter().find_map(|r| r.non_finite()) {
        let _ = writeln!(err, "error: non-finite value in field `{key}`");
        return 1;
    }
    if let Err(e) = write_records(out, &records, cli.format) {
        let _ = writeln!(err, "error: {e}");
        return 3;
    }
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cmd: &Command, records: &mut Vec<OutputRecord>, err: &mut impl Write) -> Result<(), CliError> {
    match cmd {
        Command::Measure(a) => cmd_measure(a, records),
        Command::Classify(a) => cmd_classify(a, records, err),
        Command::Evaluate(a) => cmd_evaluate(a, records, err),
        Command::Verify(a) => cmd_verify(a, records),
    }
}

fn parse_alphas(values: &[f64], default: &[f64]) -> Result<Vec<TsallisParam>, CliError> {
    let values = if values.is_empty() { default } else { values };
    values
        .iter()
        .map(|&a| TsallisParam::new(a).map_err(|e| invalid("--alpha")(&e)))
        .collect()
}

fn read_probabilities(path: &Path) -> Result<Vec<f64>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .map_err(|_| CliError::Validation(format!("{}: `{s}` is not a number", path.display())))
        })
        .collect()
}

pub fn cmd_measure(args: &MeasureArgs, records: &mut Vec<OutputRecord>) -> Result<(), CliError> {
    let raw = match &args.p_file {
        Some(path) => read_probabilities(path)?,
        None => args.p.clone(),
    };
    let p = ProbabilityVector::new(raw).map_err(|e| invalid("invalid distribution")(&e))?;
    let alphas = parse_alphas(&args.alpha, &DEFAULT_ALPHAS)?;
    for &m in &args.measure {
        let orders: Vec<Option<TsallisParam>> = if m.uses_alpha() {
            alphas.iter().copied().map(Some).collect()
        } else {
            vec![None]
        };
        for a in orders {
            let value = evaluate_measure(m, &p, a)?;
            records.push(
                OutputRecord::new("measure")
                    .with("measure", m.label())
                    .with("alpha", a.map(TsallisParam::alpha))
                    .with("n", p.len())
                    .with("value", value),
            );
        }
    }
    Ok(())
}

fn evaluate_measure(m: MeasureName, p: &ProbabilityVector, a: Option<TsallisParam>) -> Result<f64, CliError> {
    let alpha = || a.expect("order-dependent measure");
    Ok(match m {
        MeasureName::ShannonEntropy => measures::shannon_entropy(p).get(),
        MeasureName::Extropy => measures::extropy(p).get(),
        MeasureName::TsallisEntropy => measures::tsallis_entropy(p, alpha()).get(),
        MeasureName::TsallisExtropy => measures::tsallis_extropy(p, alpha()).get(),
        MeasureName::BinaryTsallis => {
            if p.len() != 2 {
                return Err(CliError::Validation(format!(
                    "binary-tsallis needs a two-point distribution, got {} values",
                    p.len()
                )));
            }
            measures::binary_tsallis(p.as_slice()[0], alpha())
                .map_err(|e| invalid("binary-tsallis")(&e))?
                .get()
        }
        MeasureName::SumIdentityGap => measures::sum_identity_gap(p, alpha()).get(),
        MeasureName::EntropyExtropyDifference => measures::entropy_extropy_difference(p, alpha()).get(),
        MeasureName::UniformTsallisExtropy => measures::uniform_tsallis_extropy(p.len(), alpha())
            .map_err(|e| invalid("uniform-tsallis-extropy")(&e))?
            .get(),
    })
}

struct Setup {
    samples: Vec<LabeledSample>,
    model: IntervalModel,
    gamma: SupportCoefficient,
    alphas: Vec<TsallisParam>,
    policy_label: String,
}

fn setup(args: &ModelArgs, err: &mut impl Write) -> Result<Setup, CliError> {
    let samples = match &args.dataset {
        Some(path) => load_iris(path)?,
        None => canonical_iris(),
    };
    if let Some(w) = population_warning(&samples) {
        let _ = writeln!(err, "warning: {w}");
    }
    let gamma = SupportCoefficient::new(args.gamma).map_err(|e| invalid("--gamma")(&e))?;
    let alphas = parse_alphas(&args.alpha, &DEFAULT_ALPHAS)?;
    let (model, policy_label) = match args.policy {
        PolicyName::Reference => (reference_interval_model(), "reference".to_owned()),
        PolicyName::First | PolicyName::Random => {
            let strategy = match args.policy {
                PolicyName::Random => SelectionStrategy::RandomSeeded(args.seed),
                _ => SelectionStrategy::FirstK,
            };
            let policy = SelectionPolicy {
                per_class_count: args.per_class,
                strategy,
            };
            let training = select_training(&samples, &policy)?;
            let label = match strategy {
                SelectionStrategy::FirstK => format!("first-{}", args.per_class),
                SelectionStrategy::RandomSeeded(s) => format!("random-{}-seed-{s}", args.per_class),
            };
            (iris_interval_model(&training)?, label)
        }
    };
    Ok(Setup {
        samples,
        model,
        gamma,
        alphas,
        policy_label,
    })
}

pub fn cmd_classify(args: &ClassifyArgs, records: &mut Vec<OutputRecord>, err: &mut impl Write) -> Result<(), CliError> {
    let s = setup(&args.model, err)?;
    let (values, truth, id) = match args.id {
        Some(id) => {
            let sample = s.samples.get(id).ok_or_else(|| {
                CliError::Validation(format!("sample id {id} out of range (dataset has {} rows)", s.samples.len()))
            })?;
            (sample.features.to_vec(), Some(sample.label.code()), Some(id))
        }
        None => (args.sample.clone(), None, None),
    };
    let features = s.model.features();
    let classes = s.model.classes();
    for &a in &s.alphas {
        let r = analyze_sample(&s.model, &values, s.gamma, a).map_err(|e| invalid("classify")(&e))?;
        let mut rec = OutputRecord::new("classify")
            .with("alpha", a.alpha())
            .with("gamma", s.gamma.gamma())
            .with("policy", s.policy_label.as_str())
            .with("id", id)
            .with("sample", values.as_slice());
        for (f, d) in features.iter().zip(&r.distributions) {
            rec = rec.with(format!("p_{f}"), d.as_slice());
        }
        for (f, js) in features.iter().zip(&r.extropies) {
            rec = rec.with(format!("js_{f}"), *js);
        }
        for (f, w) in features.iter().zip(r.weights.as_slice()) {
            rec = rec.with(format!("w_{f}"), *w);
        }
        rec = rec
            .with("fused", r.decision.fused.as_slice())
            .with("predicted", classes[r.decision.predicted].as_str())
            .with("tie", r.decision.tie)
            .with("truth", truth);
        records.push(rec);
    }
    Ok(())
}

fn report_record(r: &ClassificationReport, gamma: f64, policy: &str) -> OutputRecord {
    let mut rec = OutputRecord::new("evaluate")
        .with("alpha", r.alpha)
        .with("gamma", gamma)
        .with("policy", policy)
        .with("correct", r.correct)
        .with("total", r.total)
        .with("overall_rate", r.overall_rate);
    for c in &r.per_class {
        rec = rec.with(format!("rate_{}", c.class), c.rate);
    }
    let missed: Vec<i64> = r
        .per_sample
        .iter()
        .filter(|o| o.truth != o.predicted)
        .map(|o| o.id as i64)
        .collect();
    rec.with("ties", r.ties).with("misclassified", output::Field::Ints(missed))
}

pub fn cmd_evaluate(args: &EvaluateArgs, records: &mut Vec<OutputRecord>, err: &mut impl Write) -> Result<(), CliError> {
    let s = setup(&args.model, err)?;
    let mut reports = Vec::with_capacity(s.alphas.len());
    for &a in &s.alphas {
        let r = evaluate(&s.model, &s.samples, s.gamma, a).map_err(|e| invalid("evaluate")(&e))?;
        records.push(report_record(&r, s.gamma.gamma(), &s.policy_label));
        if args.per_sample {
            for o in &r.per_sample {
                records.push(
                    OutputRecord::new("sample")
                        .with("alpha", r.alpha)
                        .with("id", o.id)
                        .with("truth", o.truth.as_str())
                        .with("predicted", o.predicted.as_str())
                        .with("tie", o.tie),
                );
            }
        }
        reports.push(r);
    }
    for b in LITERATURE_BASELINES {
        records.push(
            OutputRecord::new("comparison")
                .with("method", b.method)
                .with("source", "literature")
                .with("Se", b.per_class_percent[0])
                .with("Ve", b.per_class_percent[1])
                .with("Vi", b.per_class_percent[2])
                .with("overall", b.overall_percent),
        );
    }
    // first order with the highest count
    if let Some(best) = reports.iter().reduce(|best, r| if r.correct > best.correct { r } else { best }) {
        let pct = |c: &str| best.class_rate(c).map(|x| 100.0 * x);
        records.push(
            OutputRecord::new("comparison")
                .with("method", format!("Tsallis extropy weighting (alpha={})", best.alpha))
                .with("source", format!("this run, {}", s.policy_label))
                .with("Se", pct("Se"))
                .with("Ve", pct("Ve"))
                .with("Vi", pct("Vi"))
                .with("overall", 100.0 * best.overall_rate),
        );
    }
    Ok(())
}

pub fn cmd_verify(args: &VerifyArgs, records: &mut Vec<OutputRecord>) -> Result<(), CliError> {
    for &a in &args.alpha {
        TsallisParam::new(a).map_err(|e| invalid("--alpha")(&e))?;
    }
    if args.support_max < 2 {
        return Err(CliError::Validation("--support-max must be at least 2".into()));
    }
    let cfg = verify::SweepConfig {
        points: args.points,
        support_min: 2,
        support_max: args.support_max,
        alphas: args.alpha.clone(),
        n_min: args.n_min,
        n_max: args.n_max,
        seed: args.seed,
    };
    let measures = if args.inject_fault {
        verify::MeasureSet::with_extropy_offset(1.0)
    } else {
        verify::MeasureSet::default()
    };
    let results = verify::run_sweep(&cfg, &measures);
    let mut failures = Vec::new();
    for r in &results {
        records.push(
            OutputRecord::new("property")
                .with("property", r.name)
                .with("checked", r.checked)
                .with("violations", r.violations)
                .with("passed", r.passed())
                .with("counterexample", r.counterexample.clone()),
        );
        if let Some(c) = &r.counterexample {
            failures.push(format!("{}: {c}", r.name));
        }
    }
    if !args.no_curve {
        for (n, b) in verify::confronto_curve(args.n_min, args.n_max) {
            records.push(
                OutputRecord::new("curve")
                    .with("n", n)
                    .with("lower", b.lower)
                    .with("middle", b.middle)
                    .with("upper", b.upper),
            );
        }
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Property(failures.join("; ")))
    }
}
