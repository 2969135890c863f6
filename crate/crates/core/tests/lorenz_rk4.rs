//! RK4 integrator against frozen reference values from
//! `tests/oracles/lorenz_oracle.py`.

use perceptron_kpa::lorenz::{iterate, rk4_step, LorenzState, SolverConfig};
use proptest::prelude::*;

/// Distance in units in the last place between two finite doubles.
fn ulps(a: f64, b: f64) -> u64 {
    let key = |x: f64| {
        let bits = x.to_bits() as i64;
        if bits < 0 { i64::MIN - bits } else { bits }
    };
    key(a).abs_diff(key(b))
}

fn start() -> LorenzState {
    LorenzState::new(1.0, 1.0, 0.0)
}

fn cfg() -> SolverConfig {
    SolverConfig::new(0.1).unwrap()
}

// 60-digit RK4 with exact b = 8/3
const MP_STEP_1: [&str; 3] = [
    "2.29140590277777794211071546757",
    "4.43332933472222248034122613224",
    "0.337955848013117325853479892665",
];
const MP_STEP_10: [&str; 3] = [
    "-9.52820006591075902035018966202",
    "-8.76677894730206684211295241045",
    "29.2591312087268145777028310749",
];

fn components(s: LorenzState) -> [f64; 3] {
    [s.x, s.y, s.z]
}

#[test]
fn one_step_within_one_ulp_of_extended_precision() {
    let got = components(rk4_step(start(), cfg()).unwrap());
    for (g, r) in got.iter().zip(MP_STEP_1) {
        let r: f64 = r.parse().unwrap();
        assert!(ulps(*g, r) <= 1, "{g} vs {r}");
    }
}

#[test]
fn ten_steps_relative_error() {
    let got = components(iterate(start(), cfg(), 10).unwrap());
    for (g, r) in got.iter().zip(MP_STEP_10) {
        let r: f64 = r.parse().unwrap();
        assert!(((g - r) / r).abs() <= 1e-9, "{g} vs {r}");
    }
}

#[test]
fn bit_exact_against_straight_line_double_oracle() {
    let cases: [(usize, [f64; 3]); 3] = [
        (1, [2.291405902777778, 4.433329334722222, 0.33795584801311734]),
        (10, [-9.52820006591076, -8.766778947302061, 29.25913120872682]),
        (3001, [4.474741446175092, 7.142985935117684, 15.253643745755772]),
    ];
    for (n, want) in cases {
        assert_eq!(components(iterate(start(), cfg(), n).unwrap()), want, "n = {n}");
    }
}

#[test]
fn repeated_runs_are_bit_identical() {
    let a = iterate(start(), cfg(), 3001).unwrap();
    let b = iterate(start(), cfg(), 3001).unwrap();
    assert_eq!(components(a).map(f64::to_bits), components(b).map(f64::to_bits));
}

proptest! {
    #[test]
    fn iterate_splits_exactly(m in 0usize..200, n in 0usize..200,
                              x in -15.0f64..15.0, y in -15.0f64..15.0, z in 5.0f64..40.0,
                              h in 0.001f64..0.1) {
        let cfg = SolverConfig::new(h).unwrap();
        let s = LorenzState::new(x, y, z);
        let whole = iterate(s, cfg, m + n).unwrap();
        let split = iterate(iterate(s, cfg, m).unwrap(), cfg, n).unwrap();
        prop_assert_eq!(whole, split);
    }

    #[test]
    fn origin_fixed_for_any_h(n in 0usize..100, h in 1e-4f64..=1.0) {
        let cfg = SolverConfig::new(h).unwrap();
        prop_assert_eq!(iterate(LorenzState::ORIGIN, cfg, n).unwrap(), LorenzState::ORIGIN);
    }
}
