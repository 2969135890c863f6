//! Batch evaluation of many sequences and the step-length sweep of the rank
//! test.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{run_tests, BitSequence, Status, TestOutcome, TestSpec};
use crate::error::{Error, Result};
use crate::keystream::{generate, SecretKey};

/// Initial conditions are drawn from `x, y ~ U[-10, 10]`, `z ~ U[0, 30]`.
pub const X_RANGE: (f64, f64) = (-10.0, 10.0);
pub const Y_RANGE: (f64, f64) = (-10.0, 10.0);
pub const Z_RANGE: (f64, f64) = (0.0, 30.0);

const MAX_REDRAWS: usize = 1000;

/// Seed of the harness RNG. Sequence `i` uses ChaCha20 stream `i` of this
/// seed, so results do not depend on scheduling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SeedPolicy {
    pub seed: u64,
}

impl SeedPolicy {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    fn rng_for(&self, index: usize) -> ChaCha20Rng {
        let mut rng = ChaCha20Rng::seed_from_u64(self.seed);
        rng.set_stream(index as u64);
        rng
    }
}

pub fn draw_key<R: Rng + ?Sized>(rng: &mut R, h: f64) -> Result<SecretKey> {
    SecretKey::new(
        rng.gen_range(X_RANGE.0..=X_RANGE.1),
        rng.gen_range(Y_RANGE.0..=Y_RANGE.1),
        rng.gen_range(Z_RANGE.0..=Z_RANGE.1),
        h,
    )
}

/// Where the battery's sequences come from.
#[derive(Debug, Clone)]
pub enum SequenceSource {
    /// Complemented `w` weights of the cipher under random keys with step `h`.
    Keystream { h: f64 },
    /// Uniform bits from ChaCha20, for calibrating the battery itself.
    Reference,
    /// Caller-supplied sequences, evaluated as-is.
    Injected(Vec<BitSequence>),
}

impl SequenceSource {
    fn label(&self) -> &'static str {
        match self {
            SequenceSource::Keystream { .. } => "keystream",
            SequenceSource::Reference => "reference_chacha20",
            SequenceSource::Injected(_) => "injected",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SequenceRecord {
    pub sequence: usize,
    pub key: Option<String>,
    pub redraws: usize,
    pub outcomes: Vec<TestOutcome>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TestTally {
    pub spec: TestSpec,
    pub passed: usize,
    pub failed: usize,
    pub not_applicable: usize,
}

impl TestTally {
    pub fn applicable(&self) -> usize {
        self.passed + self.failed
    }

    /// Pass fraction over applicable sequences; `None` if none applied.
    pub fn pass_rate(&self) -> Option<f64> {
        (self.applicable() > 0).then(|| self.passed as f64 / self.applicable() as f64)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatteryReport {
    pub source: &'static str,
    pub h: Option<f64>,
    pub seed: u64,
    pub count: usize,
    pub len: usize,
    pub specs: Vec<TestSpec>,
    pub sequences: Vec<SequenceRecord>,
}

impl BatteryReport {
    pub fn tallies(&self) -> Vec<TestTally> {
        self.specs
            .iter()
            .enumerate()
            .map(|(t, spec)| {
                let mut tally = TestTally { spec: spec.clone(), passed: 0, failed: 0, not_applicable: 0 };
                for s in &self.sequences {
                    match s.outcomes[t].status {
                        Status::Pass => tally.passed += 1,
                        Status::Fail => tally.failed += 1,
                        Status::NotApplicable => tally.not_applicable += 1,
                    }
                }
                tally
            })
            .collect()
    }

    pub fn tally(&self, id: &str) -> Option<TestTally> {
        self.tallies().into_iter().find(|t| t.spec.id() == id)
    }

    /// Human-readable table: test name, passed count, and sequences for which
    /// the test was not applicable.
    pub fn table(&self) -> String {
        let mut out = String::new();
        let h = self.h.map_or_else(|| "-".to_string(), |h| format!("{h}"));
        out.push_str(&format!(
            "source={} h={} seed={} sequences={} bits={} significance={}\n",
            self.source,
            h,
            self.seed,
            self.count,
            self.len,
            super::SIGNIFICANCE
        ));
        out.push_str(&format!("{:<46}| {:<27}| {}\n", "Name of Test", "Number of Passed Sequences", "Not Applicable"));
        out.push_str(&format!("{:-<46}+{:-<28}+{:-<15}\n", "", "", ""));
        for t in self.tallies() {
            out.push_str(&format!("{:<46}| {:<27}| {}\n", t.spec.to_string(), t.passed, t.not_applicable));
        }
        out
    }

    /// One JSON object per sequence per test.
    pub fn jsonl(&self) -> String {
        #[derive(Serialize)]
        struct Line<'a> {
            sequence: usize,
            key: &'a Option<String>,
            name: String,
            params: &'a TestSpec,
            p_values: &'a [f64],
            status: Status,
            #[serde(skip_serializing_if = "Option::is_none")]
            note: &'a Option<String>,
        }
        let mut out = String::new();
        for s in &self.sequences {
            for o in &s.outcomes {
                let line = Line {
                    sequence: s.sequence,
                    key: &s.key,
                    name: o.spec.to_string(),
                    params: &o.spec,
                    p_values: &o.p_values,
                    status: o.status,
                    note: &o.note,
                };
                out.push_str(&serde_json::to_string(&line).expect("serializable"));
                out.push('\n');
            }
        }
        out
    }
}

fn keystream_sequence(policy: &SeedPolicy, index: usize, h: f64, len: usize) -> Result<(BitSequence, String, usize)> {
    let mut rng = policy.rng_for(index);
    for redraws in 0..MAX_REDRAWS {
        let key = draw_key(&mut rng, h)?;
        match generate(&key, len.div_ceil(8)) {
            Ok(ks) => {
                let mut bits = ks.to_bits();
                bits.truncate(len);
                return Ok((bits, key.to_string(), redraws));
            }
            Err(Error::Divergence { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::Divergence { step: 0, block: None })
}

/// Evaluates `count` sequences of `len` bits from `source` on every test in
/// `specs`. `workers = None` uses the global thread pool.
pub fn run_battery_with(
    source: &SequenceSource,
    policy: &SeedPolicy,
    count: usize,
    len: usize,
    specs: &[TestSpec],
    workers: Option<usize>,
) -> Result<BatteryReport> {
    if count == 0 || len == 0 {
        return Err(Error::OutOfRange("battery needs count >= 1 and len >= 1".into()));
    }
    if let SequenceSource::Injected(seqs) = source {
        if seqs.len() < count {
            return Err(Error::SizeMismatch { expected: count, actual: seqs.len() });
        }
    }
    let evaluate = |i: usize| -> Result<SequenceRecord> {
        let (bits, key, redraws) = match source {
            SequenceSource::Keystream { h } => {
                let (b, k, r) = keystream_sequence(policy, i, *h, len)?;
                (b, Some(k), r)
            }
            SequenceSource::Reference => (BitSequence::random(&mut policy.rng_for(i), len), None, 0),
            SequenceSource::Injected(seqs) => (seqs[i].clone(), None, 0),
        };
        Ok(SequenceRecord { sequence: i, key, redraws, outcomes: run_tests(&bits, specs)? })
    };
    let run = || (0..count).into_par_iter().map(evaluate).collect::<Result<Vec<_>>>();
    let sequences = match workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Io(e.to_string()))?
            .install(run)?,
        None => run()?,
    };
    Ok(BatteryReport {
        source: source.label(),
        h: match source {
            SequenceSource::Keystream { h } => Some(*h),
            _ => None,
        },
        seed: policy.seed,
        count,
        len,
        specs: specs.to_vec(),
        sequences,
    })
}

/// All eleven tests on `count` keystream sequences under step length `h`.
pub fn run_battery(policy: &SeedPolicy, count: usize, len: usize, h: f64) -> Result<BatteryReport> {
    run_battery_with(&SequenceSource::Keystream { h }, policy, count, len, &TestSpec::table(), None)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepPoint {
    pub h: f64,
    pub passed: usize,
    pub applicable: usize,
    pub pass_rate: f64,
}

/// Rank-test pass rate for each step length. The same seed, hence the same
/// initial conditions, is used at every `h`.
pub fn rank_sweep(
    h_values: &[f64],
    policy: &SeedPolicy,
    count: usize,
    len: usize,
    workers: Option<usize>,
) -> Result<Vec<SweepPoint>> {
    h_values
        .iter()
        .map(|&h| {
            let rep = run_battery_with(&SequenceSource::Keystream { h }, policy, count, len, &[TestSpec::Rank], workers)?;
            let t = &rep.tallies()[0];
            Ok(SweepPoint {
                h,
                passed: t.passed,
                applicable: t.applicable(),
                pass_rate: t.pass_rate().unwrap_or(0.0),
            })
        })
        .collect()
}

/// `h,pass_rate` CSV with a header row.
pub fn sweep_csv(points: &[SweepPoint]) -> String {
    let mut out = String::from("h,pass_rate\n");
    for p in points {
        out.push_str(&format!("{},{}\n", p.h, p.pass_rate));
    }
    out
}
