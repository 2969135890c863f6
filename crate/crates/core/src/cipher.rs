//! The perceptron-model image cipher and its XOR-stream reduction.
//!
//! Plain and cipher data are byte slices; bit `i` of byte `n` has weight
//! `2^i` and is driven by weight index `k = 8n + i`.
//!
//! [`encrypt_bit`] evaluates the threshold-neuron formula in real arithmetic.
//! [`xor_oracle_encrypt`] is the closed form `p ^ !w'` it reduces to. The two
//! share no code beyond the keystream, so agreement between them is a check
//! of the reduction rather than a restatement of it.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::keystream::{generate, Keystream, SecretKey, Weight};

/// `f(x) = 1` if `x >= 0`, else `0`.
pub fn threshold_f(x: f64) -> u8 {
    u8::from(x >= 0.0)
}

/// Single-neuron update with bias `c = -w/2` and threshold
/// `theta = ((w+1)/2) xor ((wt+1)/2)`.
pub fn encrypt_bit(p: u8, w: Weight, wt: Weight) -> u8 {
    debug_assert!(p <= 1);
    let wv = w.as_f64();
    let wtv = wt.as_f64();
    let c = -wv / 2.0;
    let theta = f64::from(w.to_unit() ^ wt.to_unit());
    let p = f64::from(p);
    let activation = if w == Weight::Pos {
        p * wv + c * wtv - theta
    } else {
        p * wv - c * wtv + theta
    };
    threshold_f(activation)
}

/// Decryption swaps the roles of plain and cipher bit in the same formula.
pub fn decrypt_bit(c: u8, w: Weight, wt: Weight) -> u8 {
    encrypt_bit(c, w, wt)
}

fn check_len(ks: &Keystream, n: usize) -> Result<()> {
    if ks.byte_len() < n {
        Err(Error::SizeMismatch { expected: n, actual: ks.byte_len() })
    } else {
        Ok(())
    }
}

fn perceptron_map(data: &[u8], ks: &Keystream, bit_fn: fn(u8, Weight, Weight) -> u8) -> Result<Vec<u8>> {
    check_len(ks, data.len())?;
    let (w, wt) = (ks.w(), ks.wt());
    Ok(data
        .par_iter()
        .enumerate()
        .map(|(n, &byte)| {
            (0..8).fold(0u8, |out, i| {
                let k = 8 * n + i;
                out | (bit_fn((byte >> i) & 1, w[k], wt[k]) << i)
            })
        })
        .collect())
}

/// Streaming variant: encrypts with a precomputed keystream covering at least
/// `plain.len()` bytes.
pub fn encrypt_with(plain: &[u8], ks: &Keystream) -> Result<Vec<u8>> {
    perceptron_map(plain, ks, encrypt_bit)
}

pub fn decrypt_with(cipher: &[u8], ks: &Keystream) -> Result<Vec<u8>> {
    perceptron_map(cipher, ks, decrypt_bit)
}

pub fn encrypt(plain: &[u8], key: &SecretKey) -> Result<Vec<u8>> {
    encrypt_with(plain, &generate(key, plain.len())?)
}

pub fn decrypt(cipher: &[u8], key: &SecretKey) -> Result<Vec<u8>> {
    decrypt_with(cipher, &generate(key, cipher.len())?)
}

/// `p_n xor eta_n` where bit `i` of `eta_n` is set iff `w_{8n+i} = -1`.
/// The keystream must cover exactly `plain.len()` bytes.
pub fn xor_oracle_encrypt(plain: &[u8], ks: &Keystream) -> Result<Vec<u8>> {
    if ks.byte_len() != plain.len() {
        return Err(Error::SizeMismatch { expected: plain.len(), actual: ks.byte_len() });
    }
    Ok(plain.iter().zip(ks.mask_bytes()).map(|(p, eta)| p ^ eta).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use Weight::{Neg, Pos};

    #[test]
    fn threshold_examples() {
        assert_eq!(threshold_f(0.0), 1);
        assert_eq!(threshold_f(0.5), 1);
        assert_eq!(threshold_f(-0.5), 0);
        assert_eq!(threshold_f(-3.7), 0);
    }

    #[test]
    fn proof_cases() {
        for wt in [Pos, Neg] {
            assert_eq!(encrypt_bit(1, Pos, wt), 1);
            assert_eq!(encrypt_bit(0, Pos, wt), 0);
            assert_eq!(encrypt_bit(1, Neg, wt), 0);
            assert_eq!(encrypt_bit(0, Neg, wt), 1);
            assert_eq!(decrypt_bit(1, Pos, wt), 1);
            assert_eq!(decrypt_bit(0, Neg, wt), 1);
        }
    }

    #[test]
    fn bit_roundtrip_all_cases() {
        for w in [Pos, Neg] {
            for wt in [Pos, Neg] {
                for p in 0..=1 {
                    assert_eq!(decrypt_bit(encrypt_bit(p, w, wt), w, wt), p);
                }
            }
        }
    }

    #[test]
    fn oracle_constant_masks() {
        let data = [0x00, 0x5a, 0xff];
        let ks = Keystream::from_weights(vec![Pos; 24], vec![Neg; 24]).unwrap();
        assert_eq!(xor_oracle_encrypt(&data, &ks).unwrap(), data);
        let ks = Keystream::from_weights(vec![Neg; 24], vec![Pos; 24]).unwrap();
        assert_eq!(xor_oracle_encrypt(&data, &ks).unwrap(), vec![0xff, 0xa5, 0x00]);
    }

    #[test]
    fn short_keystream_rejected() {
        let ks = Keystream::from_weights(vec![Pos; 8], vec![Pos; 8]).unwrap();
        assert_eq!(
            encrypt_with(&[1, 2], &ks).unwrap_err(),
            Error::SizeMismatch { expected: 2, actual: 1 }
        );
        assert!(xor_oracle_encrypt(&[1, 2], &ks).is_err());
        assert_eq!(encrypt_with(&[7], &ks).unwrap(), vec![7]);
    }

    #[test]
    fn zero_plaintext_yields_mask() {
        let key = SecretKey::new(1.0, 1.0, 0.0, 0.1).unwrap();
        let ks = generate(&key, 32).unwrap();
        assert_eq!(encrypt_with(&[0u8; 32], &ks).unwrap(), ks.mask_bytes());
    }
}
