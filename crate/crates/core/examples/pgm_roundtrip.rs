//! Reads a binary PGM, encrypts and decrypts it, and writes both results next
//! to the input.
//!
//! ```bash
//! cargo run -p perceptron-kpa --example pgm_roundtrip -- image.pgm "1 1 0 0.1"
//! ```

use std::fs;
use std::path::Path;

use perceptron_kpa::cipher::{decrypt, encrypt};
use perceptron_kpa::image::{read_pgm, write_pgm};
use perceptron_kpa::keystream::SecretKey;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let path = args.next().ok_or("usage: pgm_roundtrip <image.pgm> [key]")?;
    let key: SecretKey = args.next().as_deref().unwrap_or("1 1 0 0.1").parse()?;

    let img = read_pgm(&fs::read(&path)?)?;
    let enc = img.with_pixels(encrypt(img.as_bytes(), &key)?)?;
    let dec = enc.with_pixels(decrypt(enc.as_bytes(), &key)?)?;

    let stem = Path::new(&path).with_extension("");
    fs::write(stem.with_extension("enc.pgm"), write_pgm(&enc))?;
    fs::write(stem.with_extension("dec.pgm"), write_pgm(&dec))?;
    println!("{}x{} image, roundtrip exact: {}", img.width(), img.height(), dec == img);
    Ok(())
}
