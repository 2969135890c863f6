//! Weight-sequence generation: transient warm-up, per-block quantization of
//! eight trajectory points into signed weights, and the nonlinear reseeding
//! that chains one block into the next.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lorenz::{iterate, LorenzState, SolverConfig};
use crate::randomness::BitSequence;

/// Number of RK4 steps discarded before the first block.
pub const WARMUP_STEPS: usize = 3001;

/// A signed perceptron weight, always exactly `-1` or `+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[repr(i8)]
pub enum Weight {
    Neg = -1,
    Pos = 1,
}

impl Weight {
    pub fn as_f64(self) -> f64 {
        self as i8 as f64
    }

    /// `(w + 1) / 2` as a bit.
    pub fn to_unit(self) -> u8 {
        match self {
            Weight::Neg => 0,
            Weight::Pos => 1,
        }
    }
}

/// The secret key: initial Lorenz state and RK4 step length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SecretKey {
    pub x0: f64,
    pub y0: f64,
    pub z0: f64,
    h: f64,
}

impl SecretKey {
    pub fn new(x0: f64, y0: f64, z0: f64, h: f64) -> Result<Self> {
        if !(x0.is_finite() && y0.is_finite() && z0.is_finite()) {
            return Err(Error::InvalidKey(format!(
                "initial state ({x0}, {y0}, {z0}) is not finite"
            )));
        }
        SolverConfig::new(h)?;
        Ok(Self { x0, y0, z0, h })
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn initial_state(&self) -> LorenzState {
        LorenzState::new(self.x0, self.y0, self.z0)
    }

    pub fn solver(&self) -> SolverConfig {
        SolverConfig::unchecked(self.h)
    }
}

/// Key file syntax: `x0 y0 z0 h`, four decimal literals separated by single
/// spaces. Surrounding whitespace (such as a trailing newline) is ignored.
impl FromStr for SecretKey {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let fields: Vec<&str> = s.trim().split(' ').collect();
        if fields.len() != 4 {
            return Err(Error::InvalidKey(format!(
                "expected 4 space-separated numbers, found {}",
                fields.len()
            )));
        }
        let mut v = [0.0f64; 4];
        for (slot, field) in v.iter_mut().zip(&fields) {
            *slot = field
                .parse()
                .map_err(|_| Error::InvalidKey(format!("`{field}` is not a number")))?;
        }
        SecretKey::new(v[0], v[1], v[2], v[3])
    }
}

impl fmt::Display for SecretKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} {:?} {:?} {:?}", self.x0, self.y0, self.z0, self.h)
    }
}

/// Eight weights of each sequence together with the reseeding data that
/// produced the next block's initial state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightBlock {
    pub w: [Weight; 8],
    pub wt: [Weight; 8],
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
    pub r: u8,
}

impl WeightBlock {
    /// Integer whose bit `j` is `(w_j + 1) / 2`.
    pub fn w_packed(&self) -> u8 {
        pack_weights(&self.w)
    }

    pub fn wt_packed(&self) -> u8 {
        pack_weights(&self.wt)
    }
}

/// `sum_j (w_j + 1) * 2^(j-1)`, i.e. bit `j` set iff `w_j = +1`.
pub fn pack_weights(w: &[Weight; 8]) -> u8 {
    w.iter()
        .enumerate()
        .fold(0u8, |acc, (j, wj)| acc | (wj.to_unit() << j))
}

/// `floor(frac(z) * 256)`.
///
/// For tiny negative `z` the fractional part rounds to exactly `1.0` in
/// double precision; the result is clamped to 255 so it stays a byte.
pub fn reseed_byte(z: f64) -> u8 {
    let frac = z - z.floor();
    ((frac * 256.0).floor() as i64).clamp(0, 255) as u8
}

fn quantize(values: &[f64; 8]) -> ([Weight; 8], f64, f64) {
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let range = hi - lo;
    let mut w = [Weight::Pos; 8];
    // degenerate range leaves every weight at +1
    if range > 0.0 {
        for (wj, &v) in w.iter_mut().zip(values) {
            if (v - lo) / range < 0.5 {
                *wj = Weight::Neg;
            }
        }
    }
    (w, lo, hi)
}

/// One block: states `s0..s7` give the weights, `s8` (one more step after
/// `s7`) feeds the reseed.
pub fn next_block(s0: LorenzState, cfg: SolverConfig) -> Result<(WeightBlock, LorenzState)> {
    let mut xs = [0.0; 8];
    let mut ys = [0.0; 8];
    let mut s = s0;
    xs[0] = s.x;
    ys[0] = s.y;
    for j in 1..8 {
        s = iterate(s, cfg, 1).map_err(|_| Error::Divergence { step: j - 1, block: None })?;
        xs[j] = s.x;
        ys[j] = s.y;
    }
    let s8 = iterate(s, cfg, 1).map_err(|_| Error::Divergence { step: 7, block: None })?;

    let (w, x_min, x_max) = quantize(&xs);
    let (wt, y_min, y_max) = quantize(&ys);
    let r = reseed_byte(s8.z);
    let block = WeightBlock { w, wt, x_min, x_max, y_min, y_max, r };

    let fx = f64::from(block.w_packed() ^ r) / 256.0;
    let fy = f64::from(block.wt_packed() ^ r) / 256.0;
    let next = LorenzState::new(x_min + (s8.x - x_min) * fx, y_min + (s8.y - y_min) * fy, s8.z);
    Ok((block, next))
}

pub fn warmup(key: &SecretKey) -> Result<LorenzState> {
    iterate(key.initial_state(), key.solver(), WARMUP_STEPS)
}

/// Lazily produces the chain of weight blocks for a key.
#[derive(Debug, Clone)]
pub struct BlockGenerator {
    state: LorenzState,
    cfg: SolverConfig,
    index: usize,
}

impl BlockGenerator {
    pub fn new(key: &SecretKey) -> Result<Self> {
        Ok(Self {
            state: warmup(key)?,
            cfg: key.solver(),
            index: 0,
        })
    }

    pub fn next_block(&mut self) -> Result<WeightBlock> {
        let (block, next) = next_block(self.state, self.cfg).map_err(|e| match e {
            Error::Divergence { step, .. } => Error::Divergence { step, block: Some(self.index) },
            other => other,
        })?;
        self.state = next;
        self.index += 1;
        Ok(block)
    }

    /// Seed state of the next block.
    pub fn state(&self) -> LorenzState {
        self.state
    }
}

/// The two weight sequences `w` and `w~`, each of length `8N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Keystream {
    w: Vec<Weight>,
    wt: Vec<Weight>,
}

impl Keystream {
    pub fn from_weights(w: Vec<Weight>, wt: Vec<Weight>) -> Result<Self> {
        if w.len() != wt.len() || !w.len().is_multiple_of(8) {
            return Err(Error::SizeMismatch { expected: w.len(), actual: wt.len() });
        }
        Ok(Self { w, wt })
    }

    /// Number of bytes this keystream covers.
    pub fn byte_len(&self) -> usize {
        self.w.len() / 8
    }

    pub fn w(&self) -> &[Weight] {
        &self.w
    }

    pub fn wt(&self) -> &[Weight] {
        &self.wt
    }

    /// Bit `k` is 1 iff `w_k = -1`.
    pub fn to_bits(&self) -> BitSequence {
        BitSequence::from_bits(self.w.iter().map(|w| 1 - w.to_unit()).collect())
    }

    /// Per-byte XOR mask: bit `i` of byte `n` is the complement of
    /// `(w_{8n+i} + 1) / 2`.
    pub fn mask_bytes(&self) -> Vec<u8> {
        self.w
            .chunks_exact(8)
            .map(|c| !pack_weights(c.try_into().expect("chunk of 8")))
            .collect()
    }
}

/// Generates `n_bytes` consecutive blocks (8 weights per byte) for `key`.
pub fn generate(key: &SecretKey, n_bytes: usize) -> Result<Keystream> {
    let mut gen = BlockGenerator::new(key)?;
    let mut w = Vec::with_capacity(8 * n_bytes);
    let mut wt = Vec::with_capacity(8 * n_bytes);
    for _ in 0..n_bytes {
        let b = gen.next_block()?;
        w.extend_from_slice(&b.w);
        wt.extend_from_slice(&b.wt);
    }
    Ok(Keystream { w, wt })
}

/// Writes `bits` packed MSB-first into bytes; a trailing partial byte is
/// zero-padded.
pub fn dump_bits_msb_first(bits: &BitSequence) -> Vec<u8> {
    bits.as_slice()
        .chunks(8)
        .map(|c| c.iter().enumerate().fold(0u8, |acc, (i, &b)| acc | (b << (7 - i))))
        .collect()
}
