//! Discrete Fourier transform (spectral) test.

use std::f64::consts::FRAC_1_SQRT_2;

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use super::special::erfc;

pub(crate) fn spectral(bits: &[u8]) -> f64 {
    let n = bits.len();
    let mut buf: Vec<Complex<f64>> = bits
        .iter()
        .map(|&b| Complex::new(if b == 1 { 1.0 } else { -1.0 }, 0.0))
        .collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);

    let nf = n as f64;
    let threshold = ((1.0f64 / 0.05).ln() * nf).sqrt();
    let below = buf[..n / 2].iter().filter(|c| c.norm() < threshold).count() as f64;
    let expected = 0.95 * nf / 2.0;
    let d = (below - expected) / (nf * 0.95 * 0.05 / 4.0).sqrt();
    erfc(d.abs() * FRAC_1_SQRT_2)
}
