//! Prints the first weight blocks for a key, then how far the chained state
//! has drifted from the nearest non-trivial equilibrium.
//!
//! ```bash
//! cargo run -p perceptron-kpa --example keystream_blocks -- "1 1 0 0.1" [blocks]
//! ```

use perceptron_kpa::keystream::{BlockGenerator, SecretKey};
use perceptron_kpa::lorenz::{BETA, RHO};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let key: SecretKey = args.next().as_deref().unwrap_or("1 1 0 0.1").parse()?;
    let blocks: usize = args.next().map_or(Ok(40), |s| s.parse())?;

    let eq = (BETA * (RHO - 1.0)).sqrt();
    let mut gen = BlockGenerator::new(&key)?;
    println!("block  W         Wt        r    state                                   dist_to_equilibrium");
    for i in 0..blocks {
        let b = gen.next_block()?;
        let s = gen.state();
        let sign = s.x.signum();
        let dist = ((s.x - sign * eq).powi(2) + (s.y - sign * eq).powi(2) + (s.z - (RHO - 1.0)).powi(2)).sqrt();
        println!(
            "{i:<6} {:08b}  {:08b}  {:<4} ({:>9.4}, {:>9.4}, {:>8.4})  {dist:.3e}",
            b.w_packed(),
            b.wt_packed(),
            b.r,
            s.x,
            s.y,
            s.z
        );
    }
    Ok(())
}
