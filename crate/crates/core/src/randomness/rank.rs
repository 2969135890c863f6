//! Binary matrix rank over GF(2) on disjoint 32x32 matrices.

use super::special::igamc;

pub(crate) const DIM: usize = 32;

/// Rank over GF(2) of a matrix whose rows are the low `ncols` bits of each
/// word. The rows are reduced in place.
pub fn gf2_rank(rows: &mut [u64], ncols: usize) -> usize {
    let mut rank = 0;
    for col in 0..ncols {
        let bit = 1u64 << col;
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r] & bit != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank];
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && *row & bit != 0 {
                *row ^= pivot_row;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Probability that a uniformly random `m x q` binary matrix has rank `r`.
pub fn rank_probability(r: usize, m: usize, q: usize) -> f64 {
    if r > m.min(q) {
        return 0.0;
    }
    let (rf, mf, qf) = (r as f64, m as f64, q as f64);
    let mut p = (rf * (qf + mf - rf) - mf * qf).exp2();
    for i in 0..r {
        let i = i as f64;
        p *= (1.0 - (i - qf).exp2()) * (1.0 - (i - mf).exp2()) / (1.0 - (i - rf).exp2());
    }
    p
}

/// Category probabilities `(full rank, full - 1, lower)` for 32x32 matrices.
pub fn category_probabilities() -> [f64; 3] {
    let full = rank_probability(DIM, DIM, DIM);
    let minus_one = rank_probability(DIM - 1, DIM, DIM);
    [full, minus_one, 1.0 - full - minus_one]
}

/// Rank of each disjoint 32x32 matrix, rows filled from consecutive 32-bit
/// runs of the sequence.
pub(crate) fn matrix_ranks(bits: &[u8]) -> Vec<usize> {
    bits.chunks_exact(DIM * DIM)
        .map(|m| {
            let mut rows: Vec<u64> = m
                .chunks_exact(DIM)
                .map(|r| r.iter().enumerate().fold(0u64, |acc, (j, &b)| acc | (u64::from(b) << j)))
                .collect();
            gf2_rank(&mut rows, DIM)
        })
        .collect()
}

/// Chi-square statistic of the rank counts against the category
/// probabilities.
pub(crate) fn rank_chi_square(ranks: &[usize]) -> f64 {
    let n = ranks.len() as f64;
    let full = ranks.iter().filter(|&&r| r == DIM).count() as f64;
    let minus_one = ranks.iter().filter(|&&r| r == DIM - 1).count() as f64;
    let rest = n - full - minus_one;
    category_probabilities()
        .iter()
        .zip([full, minus_one, rest])
        .map(|(&p, obs)| (obs - p * n) * (obs - p * n) / (p * n))
        .sum()
}

pub(crate) fn rank_test(bits: &[u8]) -> f64 {
    let chi2 = rank_chi_square(&matrix_ranks(bits));
    igamc(1.0, chi2 / 2.0)
}
