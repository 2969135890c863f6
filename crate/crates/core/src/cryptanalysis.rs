//! One-pair known-plaintext attack and the avalanche analyzer.

use serde::Serialize;

use crate::cipher::encrypt;
use crate::error::{Error, Result};
use crate::keystream::SecretKey;

/// Byte-wise XOR mask that decrypts any ciphertext produced under the same
/// key, up to the mask's length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalentKeyMask(Vec<u8>);

impl EquivalentKeyMask {
    pub fn from_bytes(eta: Vec<u8>) -> Self {
        Self(eta)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// `eta_n = p_n xor p'_n`.
pub fn extract_mask(plain: &[u8], cipher: &[u8]) -> Result<EquivalentKeyMask> {
    if plain.len() != cipher.len() {
        return Err(Error::SizeMismatch { expected: plain.len(), actual: cipher.len() });
    }
    Ok(EquivalentKeyMask(plain.iter().zip(cipher).map(|(p, c)| p ^ c).collect()))
}

/// `q_n = q'_n xor eta_n`. A mask longer than the ciphertext is truncated.
pub fn apply_mask(cipher: &[u8], mask: &EquivalentKeyMask) -> Result<Vec<u8>> {
    if mask.len() < cipher.len() {
        return Err(Error::SizeMismatch { expected: cipher.len(), actual: mask.len() });
    }
    Ok(cipher.iter().zip(&mask.0).map(|(c, m)| c ^ m).collect())
}

/// Outcome of checking that `P xor E(P)` does not depend on `P`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MaskIndependenceRecord {
    pub check: &'static str,
    pub key: String,
    pub plaintexts: usize,
    /// Indices of plaintexts whose mask differs from plaintext 0's.
    pub mismatches: Vec<usize>,
    pub error: Option<String>,
    pub pass: bool,
}

impl MaskIndependenceRecord {
    pub fn to_line(&self) -> String {
        let status = if self.pass { "PASS" } else { "FAIL" };
        match &self.error {
            Some(e) => format!("{status} {} key=[{}] error: {e}", self.check, self.key),
            None => format!(
                "{status} {} key=[{}] plaintexts={} mismatches={:?}",
                self.check, self.key, self.plaintexts, self.mismatches
            ),
        }
    }
}

pub fn mask_key_independence_check(
    keys: &[SecretKey],
    plaintexts: &[Vec<u8>],
) -> Vec<MaskIndependenceRecord> {
    keys.iter()
        .map(|key| {
            let mut rec = MaskIndependenceRecord {
                check: "mask_key_independence",
                key: key.to_string(),
                plaintexts: plaintexts.len(),
                mismatches: Vec::new(),
                error: None,
                pass: false,
            };
            if plaintexts.len() < 2 {
                rec.error = Some("need at least two plaintexts".into());
                return rec;
            }
            if plaintexts.iter().any(|p| p.len() != plaintexts[0].len()) {
                rec.error = Some("plaintexts differ in length".into());
                return rec;
            }
            let masks: Result<Vec<_>> = plaintexts
                .iter()
                .map(|p| encrypt(p, key).and_then(|c| extract_mask(p, &c)))
                .collect();
            match masks {
                Ok(masks) => {
                    rec.mismatches = (1..masks.len()).filter(|&i| masks[i] != masks[0]).collect();
                    rec.pass = rec.mismatches.is_empty();
                }
                Err(e) => rec.error = Some(e.to_string()),
            }
            rec
        })
        .collect()
}

/// Bit `bit` (weight `2^bit`) of byte `byte`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BitPosition {
    pub byte: usize,
    pub bit: u8,
}

impl BitPosition {
    pub fn new(byte: usize, bit: u8) -> Self {
        Self { byte, bit }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AvalancheRecord {
    pub flipped: Vec<BitPosition>,
    pub changed: Vec<BitPosition>,
    pub hamming: usize,
    /// The changed set equals the flipped set.
    pub confined: bool,
}

impl AvalancheRecord {
    pub fn to_line(&self) -> String {
        let fmt = |v: &[BitPosition]| {
            v.iter().map(|p| format!("({},{})", p.byte, p.bit)).collect::<Vec<_>>().join(" ")
        };
        format!(
            "{} flipped=[{}] changed=[{}] hamming={}",
            if self.confined { "CONFINED" } else { "SPREAD" },
            fmt(&self.flipped),
            fmt(&self.changed),
            self.hamming
        )
    }
}

/// Encrypts `plain` and, for every flip set, the plaintext with those bits
/// inverted; reports which ciphertext bits differ.
pub fn avalanche_profile(
    key: &SecretKey,
    plain: &[u8],
    flips: &[Vec<BitPosition>],
) -> Result<Vec<AvalancheRecord>> {
    for pos in flips.iter().flatten() {
        if pos.byte >= plain.len() || pos.bit > 7 {
            return Err(Error::OutOfRange(format!(
                "bit ({}, {}) of a {}-byte plaintext",
                pos.byte,
                pos.bit,
                plain.len()
            )));
        }
    }
    let base = encrypt(plain, key)?;
    flips
        .iter()
        .map(|set| {
            let mut modified = plain.to_vec();
            for p in set {
                modified[p.byte] ^= 1 << p.bit;
            }
            let cipher = encrypt(&modified, key)?;
            let changed: Vec<BitPosition> = base
                .iter()
                .zip(&cipher)
                .enumerate()
                .filter(|(_, (a, b))| a != b)
                .flat_map(|(n, (a, b))| {
                    let diff = a ^ b;
                    (0..8u8).filter(move |i| diff >> i & 1 == 1).map(move |i| BitPosition::new(n, i))
                })
                .collect();
            let mut flipped = set.clone();
            flipped.sort();
            flipped.dedup();
            Ok(AvalancheRecord {
                hamming: changed.len(),
                confined: changed == flipped,
                flipped,
                changed,
            })
        })
        .collect()
}
