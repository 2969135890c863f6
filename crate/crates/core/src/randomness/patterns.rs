//! Tests over m-bit patterns: serial, approximate entropy and the
//! non-overlapping template matching test.

use super::special::igamc;

/// Occurrence counts of every overlapping `m`-bit pattern, the sequence being
/// extended cyclically by its first `m - 1` bits.
pub(crate) fn cyclic_pattern_counts(bits: &[u8], m: usize) -> Vec<u64> {
    let n = bits.len();
    if m == 0 {
        return vec![n as u64];
    }
    let mask = (1usize << m) - 1;
    let mut counts = vec![0u64; 1 << m];
    let mut v = 0usize;
    for &b in bits.iter().cycle().take(m - 1) {
        v = (v << 1) | usize::from(b);
    }
    // the window starting at position i ends at i + m - 1
    for &b in bits.iter().cycle().skip(m - 1).take(n) {
        v = ((v << 1) | usize::from(b)) & mask;
        counts[v] += 1;
    }
    counts
}

fn psi_squared(bits: &[u8], m: usize) -> f64 {
    if m == 0 {
        return 0.0;
    }
    let n = bits.len() as f64;
    let sum_sq: f64 = cyclic_pattern_counts(bits, m).iter().map(|&c| (c * c) as f64).sum();
    sum_sq * (m as f64).exp2() / n - n
}

/// Returns the two serial p-values for block length `m`.
pub(crate) fn serial(bits: &[u8], m: usize) -> [f64; 2] {
    let psi_m = psi_squared(bits, m);
    let psi_m1 = psi_squared(bits, m - 1);
    let psi_m2 = if m >= 2 { psi_squared(bits, m - 2) } else { 0.0 };
    let del1 = psi_m - psi_m1;
    let del2 = psi_m - 2.0 * psi_m1 + psi_m2;
    let mf = m as f64;
    [igamc((mf - 2.0).exp2(), del1 / 2.0), igamc((mf - 3.0).exp2(), del2 / 2.0)]
}

fn phi(bits: &[u8], m: usize) -> f64 {
    if m == 0 {
        return 0.0;
    }
    let n = bits.len() as f64;
    cyclic_pattern_counts(bits, m)
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            p * p.ln()
        })
        .sum()
}

pub(crate) fn approximate_entropy(bits: &[u8], m: usize) -> f64 {
    let n = bits.len() as f64;
    let apen = phi(bits, m) - phi(bits, m + 1);
    let chi2 = 2.0 * n * (std::f64::consts::LN_2 - apen);
    igamc((m as f64 - 1.0).exp2(), chi2 / 2.0)
}

/// Non-overlapping matches of `template` in each of `blocks` equal blocks.
pub(crate) fn non_overlapping_template(bits: &[u8], template: &[u8], blocks: usize) -> f64 {
    let m = template.len();
    let block_len = bits.len() / blocks;
    let counts: Vec<f64> = bits
        .chunks_exact(block_len)
        .take(blocks)
        .map(|block| {
            let mut hits = 0usize;
            let mut j = 0;
            while j + m <= block_len {
                if &block[j..j + m] == template {
                    hits += 1;
                    j += m;
                } else {
                    j += 1;
                }
            }
            hits as f64
        })
        .collect();
    let mf = m as f64;
    let mu = (block_len as f64 - mf + 1.0) / mf.exp2();
    let var = block_len as f64 * (1.0 / mf.exp2() - (2.0 * mf - 1.0) / (2.0 * mf).exp2());
    let chi2: f64 = counts.iter().map(|w| (w - mu) * (w - mu) / var).sum();
    igamc(blocks as f64 / 2.0, chi2 / 2.0)
}
