//! Runs the eleven-test battery on keystream bits at a given step length and
//! prints the pass-count table.
//!
//! ```bash
//! cargo run --release -p perceptron-kpa --example randomness_battery -- [count] [h] [seed]
//! ```
//!
//! Defaults: 100 sequences, h = 0.1, seed 7, 2,097,152 bits per sequence
//! (the bit count needed to encrypt a 512x512 grayscale image).

use std::time::Instant;

use perceptron_kpa::randomness::{run_battery, SeedPolicy};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let count: usize = args.next().map_or(Ok(100), |s| s.parse())?;
    let h: f64 = args.next().map_or(Ok(0.1), |s| s.parse())?;
    let seed: u64 = args.next().map_or(Ok(7), |s| s.parse())?;
    let len = 512 * 512 * 8;

    let start = Instant::now();
    let report = run_battery(&SeedPolicy::new(seed), count, len, h)?;
    print!("{}", report.table());
    println!("elapsed: {:.1?}", start.elapsed());
    Ok(())
}
