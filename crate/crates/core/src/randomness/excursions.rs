//! Random excursions test for a single state of the cumulative-sum walk.

use super::special::igamc;

/// Minimum number of zero-returning cycles for the test to apply.
pub(crate) fn min_cycles(n: usize) -> usize {
    ((0.005 * (n as f64).sqrt()) as usize).max(500)
}

/// Number of cycles `J` and, for `state`, how many cycles visit it exactly
/// `k = 0..=4` times or at least 5 times.
pub(crate) fn cycle_visits(bits: &[u8], state: i64) -> (usize, [u64; 6]) {
    let mut visits = [0u64; 6];
    let mut cycles = 0;
    let mut in_cycle = 0u64;
    let mut s = 0i64;
    for &b in bits {
        s += if b == 1 { 1 } else { -1 };
        if s == state {
            in_cycle += 1;
        }
        if s == 0 {
            visits[in_cycle.min(5) as usize] += 1;
            cycles += 1;
            in_cycle = 0;
        }
    }
    if s != 0 {
        visits[in_cycle.min(5) as usize] += 1;
        cycles += 1;
    }
    (cycles, visits)
}

/// Probability that a cycle visits `state` exactly `k` times (`k = 5`
/// meaning five or more).
pub(crate) fn visit_probabilities(state: i64) -> [f64; 6] {
    let x = state.unsigned_abs() as f64;
    let q = 1.0 - 1.0 / (2.0 * x);
    let mut p = [0.0; 6];
    p[0] = q;
    for (k, pk) in p.iter_mut().enumerate().take(5).skip(1) {
        *pk = 1.0 / (4.0 * x * x) * q.powi(k as i32 - 1);
    }
    p[5] = 1.0 / (2.0 * x) * q.powi(4);
    p
}

/// `None` when there are too few cycles for the chi-square approximation.
pub(crate) fn random_excursion(bits: &[u8], state: i64, enforce_min_cycles: bool) -> Option<f64> {
    let (j, visits) = cycle_visits(bits, state);
    if j == 0 || (enforce_min_cycles && j < min_cycles(bits.len())) {
        return None;
    }
    let jf = j as f64;
    let chi2: f64 = visits
        .iter()
        .zip(visit_probabilities(state))
        .map(|(&v, p)| (v as f64 - jf * p).powi(2) / (jf * p))
        .sum();
    Some(igamc(2.5, chi2 / 2.0))
}
