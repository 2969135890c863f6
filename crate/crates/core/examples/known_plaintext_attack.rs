//! One known plain/cipher image pair yields a mask that decrypts every other
//! image encrypted under the same key. Writes the images as PGM files.
//!
//! ```bash
//! cargo run -p perceptron-kpa --example known_plaintext_attack -- [out_dir] [size]
//! ```

use std::fs;
use std::path::PathBuf;

use perceptron_kpa::cipher::encrypt;
use perceptron_kpa::cryptanalysis::{apply_mask, extract_mask};
use perceptron_kpa::image::{write_pgm, GrayImage};
use perceptron_kpa::keystream::SecretKey;

fn image(size: usize, f: impl Fn(usize, usize) -> u8) -> GrayImage {
    let pixels = (0..size * size).map(|i| f(i % size, i / size)).collect();
    GrayImage::from_bytes(pixels, size, size).expect("size matches")
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let out = PathBuf::from(args.next().unwrap_or_else(|| "attack_out".into()));
    let size: usize = args.next().map_or(Ok(256), |s| s.parse())?;
    fs::create_dir_all(&out)?;

    // the attacker never sees this
    let key = SecretKey::new(1.0, 1.0, 0.0, 0.1)?;

    let known = image(size, |x, y| ((x + y) * 255 / (2 * size - 2).max(1)) as u8);
    let secret = image(size, |x, y| {
        let (cx, cy, r) = (size as i64 / 2, size as i64 / 2, size as i64 / 3);
        let (dx, dy) = (x as i64 - cx, y as i64 - cy);
        if dx * dx + dy * dy < r * r { 230 } else if (x / 16 + y / 16) % 2 == 0 { 40 } else { 120 }
    });

    let known_cipher = known.with_pixels(encrypt(known.as_bytes(), &key)?)?;
    let secret_cipher = secret.with_pixels(encrypt(secret.as_bytes(), &key)?)?;

    let mask = extract_mask(known.as_bytes(), known_cipher.as_bytes())?;
    let recovered = secret_cipher.with_pixels(apply_mask(secret_cipher.as_bytes(), &mask)?)?;

    for (name, img) in [
        ("known_plain.pgm", &known),
        ("known_cipher.pgm", &known_cipher),
        ("secret_plain.pgm", &secret),
        ("secret_cipher.pgm", &secret_cipher),
        ("recovered.pgm", &recovered),
    ] {
        fs::write(out.join(name), write_pgm(img))?;
    }
    fs::write(out.join("mask.bin"), mask.as_bytes())?;
    println!("recovered == secret: {}", recovered == secret);
    println!("distinct mask bytes: {}", {
        let mut v = mask.as_bytes().to_vec();
        v.sort_unstable();
        v.dedup();
        v.len()
    });
    println!("wrote {}", out.display());
    Ok(())
}
