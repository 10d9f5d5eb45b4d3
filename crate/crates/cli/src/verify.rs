//! Numerical sweeps over the identities and inequalities satisfied by the
//! Tsallis measures.

use extropy::measures::{
    binary_tsallis, confronto_bounds, extropy, ordering_threshold, shannon_entropy,
    tsallis_entropy, tsallis_extropy, uniform_tsallis_extropy, ConfrontoBounds,
    ProbabilityVector, TsallisParam,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;

pub const DEFAULT_ALPHAS: [f64; 8] = [0.1, 0.5, 0.9, 1.0, 1.1, 2.0, 3.0, 10.0];

#[derive(Debug, Clone)]
pub struct SweepConfig {
    /// Random simplex points per support size.
    pub points: usize,
    pub support_min: usize,
    pub support_max: usize,
    pub alphas: Vec<f64>,
    /// N range for the threshold and curve checks; also bounds the
    /// monotonicity sweep of the uniform closed form.
    pub n_min: usize,
    pub n_max: usize,
    pub seed: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            points: 10_000,
            support_min: 2,
            support_max: 12,
            alphas: DEFAULT_ALPHAS.to_vec(),
            n_min: 3,
            n_max: 10_000,
            seed: 0,
        }
    }
}

type Measure = Box<dyn Fn(&ProbabilityVector, TsallisParam) -> f64>;

/// The measure implementations under test. Replaceable so the failure path
/// of the sweep can be exercised.
pub struct MeasureSet {
    pub tsallis_entropy: Measure,
    pub tsallis_extropy: Measure,
}

impl Default for MeasureSet {
    fn default() -> Self {
        Self {
            tsallis_entropy: Box::new(|p, a| tsallis_entropy(p, a).get()),
            tsallis_extropy: Box::new(|p, a| tsallis_extropy(p, a).get()),
        }
    }
}

impl MeasureSet {
    /// Shifts every Tsallis extropy by `offset`.
    pub fn with_extropy_offset(offset: f64) -> Self {
        Self {
            tsallis_extropy: Box::new(move |p, a| tsallis_extropy(p, a).get() + offset),
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyResult {
    pub name: &'static str,
    pub checked: usize,
    pub violations: usize,
    pub counterexample: Option<String>,
}

impl PropertyResult {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            checked: 0,
            violations: 0,
            counterexample: None,
        }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(detail());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Dirichlet(1) draw of size `n`; every fourth draw gets some entries zeroed.
pub fn random_simplex(rng: &mut impl Rng, n: usize, sparse: bool) -> ProbabilityVector {
    loop {
        let mut w: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(Exp1)).collect();
        if sparse {
            for x in w.iter_mut() {
                if rng.gen_bool(0.3) {
                    *x = 0.0;
                }
            }
        }
        let total: f64 = w.iter().sum();
        if total > 0.0 {
            return ProbabilityVector::new(w.iter().map(|x| x / total).collect())
                .expect("normalised draw");
        }
    }
}

pub fn run_sweep(cfg: &SweepConfig, m: &MeasureSet) -> Vec<PropertyResult> {
    let mut nonneg = PropertyResult::new("nonnegativity");
    let mut bound = PropertyResult::new("upper_bound");
    let mut sum_id = PropertyResult::new("sum_identity");
    let mut order_two = PropertyResult::new("order_two_coincidence");
    let mut binary = PropertyResult::new("binary_equality");
    let mut ordering = PropertyResult::new("ordering");
    let mut maximal = PropertyResult::new("maximality");
    let mut limit = PropertyResult::new("limit_continuity");

    let params: Vec<TsallisParam> = cfg
        .alphas
        .iter()
        .map(|&a| TsallisParam::new(a).expect("validated by caller"))
        .collect();
    let two = TsallisParam::new(2.0).unwrap();
    let near_one = [1.0 - 1e-6, 1.0 + 1e-6].map(|a| TsallisParam::new(a).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);

    for n in cfg.support_min..=cfg.support_max {
        for i in 0..cfg.points {
            let p = random_simplex(&mut rng, n, i % 4 == 3);
            let show = |a: f64| format!("p={:?} alpha={a}", p.as_slice());
            for &a in &params {
                let alpha = a.alpha();
                let js = (m.tsallis_extropy)(&p, a);
                let s = (m.tsallis_entropy)(&p, a);
                nonneg.check(js >= -1e-12, || format!("{} JS={js}", show(alpha)));
                bound.check(js < 1.0, || format!("{} JS={js}", show(alpha)));
                let rhs: f64 = p
                    .as_slice()
                    .iter()
                    .map(|&x| binary_tsallis(x, a).expect("probability").get())
                    .sum();
                let gap = s + js - rhs;
                sum_id.check(gap.abs() <= 1e-10, || format!("{} gap={gap}", show(alpha)));
                if n == 2 {
                    binary.check((s - js).abs() <= 1e-12, || format!("{} S-JS={}", show(alpha), s - js));
                } else {
                    let d = s - js;
                    let ok = if alpha < 2.0 {
                        d >= -1e-12
                    } else if alpha > 2.0 {
                        d <= 1e-12
                    } else {
                        d.abs() <= 1e-12
                    };
                    ordering.check(ok, || format!("{} S-JS={d}", show(alpha)));
                }
                let max = uniform_tsallis_extropy(n, a).expect("n >= 1").get();
                maximal.check(js <= max + 1e-12, || format!("{} JS={js} max={max}", show(alpha)));
            }
            let d2 = (m.tsallis_entropy)(&p, two) - (m.tsallis_extropy)(&p, two);
            order_two.check(d2.abs() <= 1e-12, || format!("{} S2-JS2={d2}", show(2.0)));
            let (j, h) = (extropy(&p).get(), shannon_entropy(&p).get());
            for a in near_one {
                let dj = ((m.tsallis_extropy)(&p, a) - j).abs();
                let dh = ((m.tsallis_entropy)(&p, a) - h).abs();
                limit.check(dj <= 1e-4 && dh <= 1e-4, || {
                    format!("{} |JS-J|={dj} |S-H|={dh}", show(a.alpha()))
                });
            }
        }
    }

    let mut mono = PropertyResult::new("uniform_monotone");
    let mut closed = PropertyResult::new("closed_form_agreement");
    for &a in &params {
        let mut prev = 0.0;
        for n in 1..=cfg.n_max.max(1) {
            let cur = uniform_tsallis_extropy(n, a).unwrap().get();
            if n > 1 {
                mono.check(cur > prev, || format!("alpha={a} N={n}: {cur} <= {prev}"));
            }
            prev = cur;
            if n <= 1000 {
                let direct = (m.tsallis_extropy)(&ProbabilityVector::uniform(n).unwrap(), a);
                closed.check((cur - direct).abs() <= 1e-12, || {
                    format!("alpha={a} N={n}: closed={cur} direct={direct}")
                });
            }
        }
        let far = uniform_tsallis_extropy(1_000_000, a).unwrap().get();
        mono.check(far > 0.999, || format!("alpha={a} N=1e6: {far}"));
    }

    let mut threshold = PropertyResult::new("threshold_range");
    let mut confronto = PropertyResult::new("confronto_order");
    for n in cfg.n_min.max(3)..=cfg.n_max {
        let g = ordering_threshold(n).unwrap();
        threshold.check(g > 1.0 && g < 2.0, || format!("N={n}: G={g}"));
        let b = confronto_bounds(n).unwrap();
        confronto.check(b.is_strictly_increasing(), || format!("N={n}: {b:?}"));
    }

    vec![
        nonneg, bound, sum_id, order_two, binary, ordering, maximal, limit, mono, closed,
        threshold, confronto,
    ]
}

/// The three curves over `n_min..=n_max`.
pub fn confronto_curve(n_min: usize, n_max: usize) -> Vec<(usize, ConfrontoBounds)> {
    (n_min.max(3)..=n_max)
        .map(|n| (n, confronto_bounds(n).expect("n >= 3")))
        .collect()
}
