//! Flips single plaintext bits and counts how many ciphertext bits change.
//! A diffusing cipher changes about half; this one changes exactly one.
//!
//! ```bash
//! cargo run -p perceptron-kpa --example avalanche -- [flips]
//! ```

use perceptron_kpa::cryptanalysis::{avalanche_profile, BitPosition};
use perceptron_kpa::keystream::SecretKey;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let flips: usize = std::env::args().nth(1).map_or(Ok(20), |s| s.parse())?;
    let key = SecretKey::new(-4.0, 6.5, 21.0, 0.02)?;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let plain: Vec<u8> = (0..64 * 64).map(|_| rng.gen()).collect();
    let sets: Vec<Vec<BitPosition>> =
        (0..flips).map(|_| vec![BitPosition::new(rng.gen_range(0..plain.len()), rng.gen_range(0..8))]).collect();

    let records = avalanche_profile(&key, &plain, &sets)?;
    for r in &records {
        println!("{}", r.to_line());
    }
    let total_bits = plain.len() * 8;
    let mean = records.iter().map(|r| r.hamming).sum::<usize>() as f64 / records.len().max(1) as f64;
    println!("mean changed bits: {mean} of {total_bits} (ideal diffusion: {})", total_bits / 2);
    Ok(())
}
