//! Runs the battery on ChaCha20 output. Every test should pass on roughly 99%
//! of sequences; a lower rate points at the battery, not the generator.
//!
//! ```bash
//! cargo run --release -p perceptron-kpa --example calibration -- [count] [len]
//! ```

use perceptron_kpa::randomness::{run_battery_with, SeedPolicy, SequenceSource, TestSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let count: usize = args.next().map_or(Ok(20), |s| s.parse())?;
    let len: usize = args.next().map_or(Ok(2_097_152), |s| s.parse())?;
    let rep = run_battery_with(&SequenceSource::Reference, &SeedPolicy::new(0), count, len, &TestSpec::table(), None)?;
    print!("{}", rep.table());
    for t in rep.tallies() {
        if let Some(rate) = t.pass_rate() {
            println!("{:<28} {:.3}", t.spec.id(), rate);
        }
    }
    Ok(())
}
