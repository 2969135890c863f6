//! Shows that the perceptron encryption of a bit is `p xor [w = -1]`
//! regardless of the second weight, then checks whole-image encryption
//! against the plain XOR keystream.
//!
//! ```bash
//! cargo run -p perceptron-kpa --example xor_equivalence
//! ```

use perceptron_kpa::cipher::{encrypt_bit, encrypt_with, xor_oracle_encrypt};
use perceptron_kpa::keystream::{generate, SecretKey, Weight};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!(" w  wt  p | perceptron  p^[w=-1]");
    for w in [Weight::Neg, Weight::Pos] {
        for wt in [Weight::Neg, Weight::Pos] {
            for p in 0..2u8 {
                let xor = p ^ u8::from(w == Weight::Neg);
                println!("{:>2} {:>3} {:>2} | {:>10} {:>9}", w as i8, wt as i8, p, encrypt_bit(p, w, wt), xor);
            }
        }
    }

    let key: SecretKey = "3.5 -2.25 17 0.05".parse()?;
    let plain: Vec<u8> = (0..65_536u32).map(|i| (i.wrapping_mul(2_654_435_761) >> 24) as u8).collect();
    let ks = generate(&key, plain.len())?;
    let same = encrypt_with(&plain, &ks)? == xor_oracle_encrypt(&plain, &ks)?;
    println!("65536-byte plaintext, perceptron path == xor path: {same}");
    Ok(())
}
