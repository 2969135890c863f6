//! The statistical battery: eleven tests from the NIST SP 800-22 suite with
//! fixed parameters, evaluated at significance level 0.01.
//!
//! Statistics, reference constants and applicability minima follow the
//! suite's published definitions. Each test yields one or more p-values and
//! passes only when all of them are at least [`SIGNIFICANCE`].

mod battery;
mod excursions;
mod frequency;
mod patterns;
mod rank;
mod runs;
mod spectral;
mod special;

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use battery::{
    draw_key, rank_sweep, run_battery, run_battery_with, sweep_csv, BatteryReport, SeedPolicy,
    SequenceSource, SweepPoint, TestTally,
};
pub use rank::{category_probabilities, gf2_rank, rank_probability};

pub const SIGNIFICANCE: f64 = 0.01;

/// A finite sequence of bits, one bit per element (values 0 or 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitSequence {
    bits: Vec<u8>,
}

impl BitSequence {
    /// Any nonzero element is taken as a 1.
    pub fn from_bits(bits: Vec<u8>) -> Self {
        let bits = bits.into_iter().map(|b| u8::from(b != 0)).collect();
        Self { bits }
    }

    /// Unpacks `len` bits from bytes filled MSB-first.
    pub fn from_msb_first_bytes(bytes: &[u8], len: usize) -> Result<Self> {
        if len > bytes.len() * 8 {
            return Err(Error::SizeMismatch { expected: len.div_ceil(8), actual: bytes.len() });
        }
        Ok(Self {
            bits: (0..len).map(|k| (bytes[k / 8] >> (7 - k % 8)) & 1).collect(),
        })
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, len: usize) -> Self {
        let mut bits = Vec::with_capacity(len);
        while bits.len() < len {
            let word: u64 = rng.gen();
            bits.extend((0..64).map(|i| ((word >> i) & 1) as u8).take(len - bits.len()));
        }
        Self { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.bits
    }

    pub fn truncate(&mut self, len: usize) {
        self.bits.truncate(len);
    }
}

/// One test of the battery together with its parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "test", rename_all = "snake_case")]
pub enum TestSpec {
    Frequency,
    BlockFrequency { m: usize },
    CumulativeSumsForward,
    Runs,
    Rank,
    Serial { m: usize },
    Spectral,
    RandomExcursions { x: i64 },
    ApproximateEntropy { m: usize },
    LongestRunOfOnes { m: usize },
    /// `template` is written as a bit string, e.g. `"000000001"`.
    NonOverlappingTemplate { template: String },
}

impl TestSpec {
    /// The eleven tests in table order with their fixed parameters.
    pub fn table() -> Vec<TestSpec> {
        vec![
            TestSpec::Frequency,
            TestSpec::BlockFrequency { m: 128 },
            TestSpec::CumulativeSumsForward,
            TestSpec::Runs,
            TestSpec::Rank,
            TestSpec::Serial { m: 16 },
            TestSpec::Spectral,
            TestSpec::RandomExcursions { x: 1 },
            TestSpec::ApproximateEntropy { m: 10 },
            TestSpec::LongestRunOfOnes { m: 10_000 },
            TestSpec::NonOverlappingTemplate { template: "000000001".into() },
        ]
    }

    /// Short machine name.
    pub fn id(&self) -> &'static str {
        match self {
            TestSpec::Frequency => "frequency",
            TestSpec::BlockFrequency { .. } => "block_frequency",
            TestSpec::CumulativeSumsForward => "cumulative_sums_forward",
            TestSpec::Runs => "runs",
            TestSpec::Rank => "rank",
            TestSpec::Serial { .. } => "serial",
            TestSpec::Spectral => "spectral",
            TestSpec::RandomExcursions { .. } => "random_excursions",
            TestSpec::ApproximateEntropy { .. } => "approximate_entropy",
            TestSpec::LongestRunOfOnes { .. } => "longest_run_of_ones",
            TestSpec::NonOverlappingTemplate { .. } => "non_overlapping_template",
        }
    }

    /// Minimum sequence length in bits.
    pub fn min_len(&self) -> usize {
        match self {
            TestSpec::Frequency | TestSpec::CumulativeSumsForward | TestSpec::Runs => 100,
            TestSpec::BlockFrequency { m } => (*m).max(100),
            TestSpec::Rank => 38 * rank::DIM * rank::DIM,
            TestSpec::Serial { m } => 1 << (m + 3),
            TestSpec::Spectral => 1000,
            TestSpec::RandomExcursions { .. } => 1_000_000,
            TestSpec::ApproximateEntropy { m } => 1 << (m + 6),
            TestSpec::LongestRunOfOnes { m } => runs::longest_run_table(*m).map_or(usize::MAX, |t| t.min_n),
            TestSpec::NonOverlappingTemplate { template } => TEMPLATE_BLOCKS * template.len(),
        }
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::OutOfRange(msg));
        match self {
            TestSpec::BlockFrequency { m: 0 } => bad("block frequency needs m >= 1".into()),
            TestSpec::Serial { m } if !(2..=24).contains(m) => bad(format!("serial m = {m} not in 2..=24")),
            TestSpec::ApproximateEntropy { m } if !(1..=24).contains(m) => {
                bad(format!("approximate entropy m = {m} not in 1..=24"))
            }
            TestSpec::RandomExcursions { x } if *x == 0 || x.abs() > 4 => {
                bad(format!("random excursion state {x} not in -4..=4 without 0"))
            }
            TestSpec::LongestRunOfOnes { m } if runs::longest_run_table(*m).is_none() => {
                bad(format!("longest run block length {m} not one of 8, 128, 10000"))
            }
            TestSpec::NonOverlappingTemplate { template }
                if template.is_empty() || template.len() > 21 || !template.bytes().all(|c| c == b'0' || c == b'1') =>
            {
                bad(format!("template `{template}` is not a bit string of length 1..=21"))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for TestSpec {
    /// Table-style label.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TestSpec::Frequency => write!(f, "Frequency"),
            TestSpec::BlockFrequency { m } => write!(f, "Block Frequency (m={m})"),
            TestSpec::CumulativeSumsForward => write!(f, "Cumulative Sums-Forward"),
            TestSpec::Runs => write!(f, "Runs"),
            TestSpec::Rank => write!(f, "Rank"),
            TestSpec::Serial { m } => write!(f, "Serial (m={m})"),
            TestSpec::Spectral => write!(f, "Spectral Test"),
            TestSpec::RandomExcursions { x } => write!(f, "Random Excursions(x={x})"),
            TestSpec::ApproximateEntropy { m } => write!(f, "Approximate Entropy (m={m})"),
            TestSpec::LongestRunOfOnes { m } => write!(f, "Longest Runs of Ones (m={m})"),
            TestSpec::NonOverlappingTemplate { template } => {
                write!(f, "Non-overlapping Template (m={}, B={template})", template.len())
            }
        }
    }
}

const TEMPLATE_BLOCKS: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestOutcome {
    pub spec: TestSpec,
    pub p_values: Vec<f64>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl TestOutcome {
    fn from_p_values(spec: TestSpec, p_values: Vec<f64>) -> Self {
        let p_values: Vec<f64> = p_values.into_iter().map(special::clamp_p).collect();
        let status = if p_values.iter().all(|&p| p >= SIGNIFICANCE) {
            Status::Pass
        } else {
            Status::Fail
        };
        Self { spec, p_values, status, note: None }
    }

    pub fn not_applicable(spec: TestSpec, note: String) -> Self {
        Self { spec, p_values: Vec::new(), status: Status::NotApplicable, note: Some(note) }
    }
}

/// Runs one test. Sequences shorter than [`TestSpec::min_len`] are an
/// [`Error::InsufficientLength`]; a random-excursions run with too few cycles
/// is reported as [`Status::NotApplicable`].
pub fn run_test(seq: &BitSequence, spec: &TestSpec) -> Result<TestOutcome> {
    spec.validate()?;
    let n = seq.len();
    if n < spec.min_len() {
        return Err(Error::InsufficientLength { test: spec.id(), required: spec.min_len(), actual: n });
    }
    let bits = seq.as_slice();
    let p_values = match spec {
        TestSpec::Frequency => vec![frequency::frequency(bits)],
        TestSpec::BlockFrequency { m } => vec![frequency::block_frequency(bits, *m)],
        TestSpec::CumulativeSumsForward => vec![frequency::cumulative_sums_forward(bits)],
        TestSpec::Runs => vec![runs::runs(bits)],
        TestSpec::Rank => vec![rank::rank_test(bits)],
        TestSpec::Serial { m } => patterns::serial(bits, *m).to_vec(),
        TestSpec::Spectral => vec![spectral::spectral(bits)],
        TestSpec::RandomExcursions { x } => match excursions::random_excursion(bits, *x, true) {
            Some(p) => vec![p],
            None => {
                let (j, _) = excursions::cycle_visits(bits, *x);
                return Ok(TestOutcome::not_applicable(
                    spec.clone(),
                    format!("{j} cycles, fewer than the required {}", excursions::min_cycles(n)),
                ));
            }
        },
        TestSpec::ApproximateEntropy { m } => vec![patterns::approximate_entropy(bits, *m)],
        TestSpec::LongestRunOfOnes { m } => {
            let table = runs::longest_run_table(*m).expect("validated");
            vec![runs::longest_run_of_ones(bits, &table)]
        }
        TestSpec::NonOverlappingTemplate { template } => {
            let t: Vec<u8> = template.bytes().map(|c| c - b'0').collect();
            vec![patterns::non_overlapping_template(bits, &t, TEMPLATE_BLOCKS)]
        }
    };
    Ok(TestOutcome::from_p_values(spec.clone(), p_values))
}

/// Runs every test in `specs`, mapping length shortfalls to
/// [`Status::NotApplicable`].
pub fn run_tests(seq: &BitSequence, specs: &[TestSpec]) -> Result<Vec<TestOutcome>> {
    specs
        .iter()
        .map(|spec| match run_test(seq, spec) {
            Err(e @ Error::InsufficientLength { .. }) => Ok(TestOutcome::not_applicable(spec.clone(), e.to_string())),
            other => other,
        })
        .collect()
}
