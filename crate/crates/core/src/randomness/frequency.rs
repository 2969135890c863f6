//! Frequency (monobit), block frequency and forward cumulative sums.

use std::f64::consts::FRAC_1_SQRT_2;

use super::special::{erfc, igamc, normal_cdf};

/// Sum of the bits mapped to `+1 / -1`.
fn signed_sum(bits: &[u8]) -> i64 {
    let ones = bits.iter().filter(|&&b| b == 1).count() as i64;
    2 * ones - bits.len() as i64
}

pub(crate) fn frequency(bits: &[u8]) -> f64 {
    let n = bits.len() as f64;
    let s_obs = signed_sum(bits).abs() as f64 / n.sqrt();
    erfc(s_obs * FRAC_1_SQRT_2)
}

pub(crate) fn block_frequency(bits: &[u8], m: usize) -> f64 {
    let blocks = bits.len() / m;
    let chi2: f64 = bits
        .chunks_exact(m)
        .map(|b| {
            let pi = b.iter().filter(|&&x| x == 1).count() as f64 / m as f64;
            (pi - 0.5) * (pi - 0.5)
        })
        .sum::<f64>()
        * 4.0
        * m as f64;
    igamc(blocks as f64 / 2.0, chi2 / 2.0)
}

/// Forward-mode cumulative sums. The summation bounds use truncating integer
/// division, matching the reference implementation of the suite.
pub(crate) fn cumulative_sums_forward(bits: &[u8]) -> f64 {
    let n = bits.len() as i64;
    let mut s = 0i64;
    let mut z = 0i64;
    for &b in bits {
        s += if b == 1 { 1 } else { -1 };
        z = z.max(s.abs());
    }
    let nf = n as f64;
    let zf = z as f64;
    let sqrt_n = nf.sqrt();

    let mut sum1 = 0.0;
    let mut k = (-n / z + 1) / 4;
    while k <= (n / z - 1) / 4 {
        let kf = k as f64;
        sum1 += normal_cdf((4.0 * kf + 1.0) * zf / sqrt_n) - normal_cdf((4.0 * kf - 1.0) * zf / sqrt_n);
        k += 1;
    }
    let mut sum2 = 0.0;
    let mut k = (-n / z - 3) / 4;
    while k <= (n / z - 1) / 4 {
        let kf = k as f64;
        sum2 += normal_cdf((4.0 * kf + 3.0) * zf / sqrt_n) - normal_cdf((4.0 * kf + 1.0) * zf / sqrt_n);
        k += 1;
    }
    1.0 - sum1 + sum2
}
