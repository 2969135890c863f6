//! Runs and longest-run-of-ones.

use super::special::{erfc, igamc};

pub(crate) fn runs(bits: &[u8]) -> f64 {
    let n = bits.len() as f64;
    let pi = bits.iter().filter(|&&b| b == 1).count() as f64 / n;
    // frequency prerequisite: a grossly biased sequence is not run-tested
    if (pi - 0.5).abs() >= 2.0 / n.sqrt() {
        return 0.0;
    }
    let v_obs = 1 + bits.windows(2).filter(|w| w[0] != w[1]).count();
    let num = (v_obs as f64 - 2.0 * n * pi * (1.0 - pi)).abs();
    let den = 2.0 * (2.0 * n).sqrt() * pi * (1.0 - pi);
    erfc(num / den)
}

/// Class boundaries and probabilities for the three block sizes the suite
/// tabulates.
pub(crate) struct LongestRunTable {
    pub block_len: usize,
    pub min_n: usize,
    pub lowest: usize,
    pub probs: &'static [f64],
}

pub(crate) fn longest_run_table(block_len: usize) -> Option<LongestRunTable> {
    match block_len {
        8 => Some(LongestRunTable {
            block_len,
            min_n: 128,
            lowest: 1,
            probs: &[0.2148, 0.3672, 0.2305, 0.1875],
        }),
        128 => Some(LongestRunTable {
            block_len,
            min_n: 6272,
            lowest: 4,
            probs: &[0.1174, 0.2430, 0.2493, 0.1752, 0.1027, 0.1124],
        }),
        10_000 => Some(LongestRunTable {
            block_len,
            min_n: 750_000,
            lowest: 10,
            probs: &[0.0882, 0.2092, 0.2483, 0.1933, 0.1208, 0.0675, 0.0727],
        }),
        _ => None,
    }
}

pub(crate) fn longest_run_of_ones(bits: &[u8], table: &LongestRunTable) -> f64 {
    let classes = table.probs.len();
    let mut nu = vec![0usize; classes];
    let blocks = bits.len() / table.block_len;
    for block in bits.chunks_exact(table.block_len) {
        let mut longest = 0usize;
        let mut cur = 0;
        for &b in block {
            if b == 1 {
                cur += 1;
                longest = longest.max(cur);
            } else {
                cur = 0;
            }
        }
        let class = longest.saturating_sub(table.lowest).min(classes - 1);
        nu[class] += 1;
    }
    let nf = blocks as f64;
    let chi2: f64 = nu
        .iter()
        .zip(table.probs)
        .map(|(&v, &p)| {
            let e = nf * p;
            (v as f64 - e) * (v as f64 - e) / e
        })
        .sum();
    igamc((classes - 1) as f64 / 2.0, chi2 / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::randomness::test_support::{assert_close, bits_from_str, NIST_100};

    #[test]
    fn runs_worked_examples() {
        assert_close!(runs(&bits_from_str("1001101011")), 0.147232, 1e-6);
        assert_close!(runs(&bits_from_str(NIST_100)), 0.500798, 1e-6);
    }

    #[test]
    fn runs_alternating_fails() {
        let alt: Vec<u8> = (0..1 << 20).map(|i| (i & 1) as u8).collect();
        assert_eq!(runs(&alt), 0.0);
    }

    #[test]
    fn longest_run_worked_example() {
        let eps = bits_from_str(
            "11001100000101010110110001001100111000000000001001001101010100010001001111010110100000001101011111001100111001101101100010110010",
        );
        let t = longest_run_table(8).unwrap();
        assert_close!(longest_run_of_ones(&eps, &t), 0.180609, 2e-5);
    }

    #[test]
    fn longest_run_probabilities_sum_to_one() {
        for m in [8, 128, 10_000] {
            let s: f64 = longest_run_table(m).unwrap().probs.iter().sum();
            assert_close!(s, 1.0, 1e-3);
        }
        assert!(longest_run_table(100).is_none());
    }
}
