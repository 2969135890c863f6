//! Rank-test pass rate of keystream sequences as a function of step length,
//! printed as `h,pass_rate` CSV.
//!
//! ```bash
//! cargo run --release -p perceptron-kpa --example rank_sweep -- [count] [len]
//! ```

use perceptron_kpa::randomness::{rank_sweep, sweep_csv, SeedPolicy};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let count: usize = args.next().map_or(Ok(20), |s| s.parse())?;
    let len: usize = args.next().map_or(Ok(2_097_152), |s| s.parse())?;
    let hs = [0.001, 0.002, 0.005, 0.01, 0.02, 0.05, 0.1];
    let points = rank_sweep(&hs, &SeedPolicy::new(0), count, len, None)?;
    print!("{}", sweep_csv(&points));
    Ok(())
}
