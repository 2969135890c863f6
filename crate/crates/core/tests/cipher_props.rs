//! Cipher laws: the perceptron path is a keyed XOR, and that XOR inverts itself.

use perceptron_kpa::cipher::{decrypt, decrypt_with, encrypt, encrypt_with, xor_oracle_encrypt};
use perceptron_kpa::cryptanalysis::{apply_mask, avalanche_profile, extract_mask, BitPosition};
use perceptron_kpa::image::{read_pgm, write_pgm, GrayImage};
use perceptron_kpa::keystream::{generate, SecretKey};
use proptest::prelude::*;

fn arb_key() -> impl Strategy<Value = SecretKey> {
    (-10.0f64..10.0, -10.0f64..10.0, 0.0f64..30.0, 0.01f64..0.1)
        .prop_map(|(x, y, z, h)| SecretKey::new(x, y, z, h).unwrap())
}

#[test]
fn roundtrip_at_edge_sizes() {
    let key = SecretKey::new(1.0, 1.0, 0.0, 0.1).unwrap();
    for n in [1usize, 17, 4096] {
        let plain: Vec<u8> = (0..n).map(|i| (i * 37 + 11) as u8).collect();
        let c = encrypt(&plain, &key).unwrap();
        assert_eq!(c.len(), n);
        assert_eq!(decrypt(&c, &key).unwrap(), plain, "n = {n}");
    }
}

#[test]
fn streaming_accepts_longer_keystream() {
    let key = SecretKey::new(2.0, -3.0, 5.0, 0.05).unwrap();
    let ks = generate(&key, 64).unwrap();
    let plain = vec![0xa5u8; 40];
    let c = encrypt_with(&plain, &ks).unwrap();
    assert_eq!(c, encrypt(&plain, &key).unwrap());
    assert_eq!(decrypt_with(&c, &ks).unwrap(), plain);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn perceptron_path_equals_xor(key in arb_key(), plain in prop::collection::vec(any::<u8>(), 1..512)) {
        let ks = generate(&key, plain.len()).unwrap();
        prop_assert_eq!(encrypt_with(&plain, &ks).unwrap(), xor_oracle_encrypt(&plain, &ks).unwrap());
    }

    #[test]
    fn encryption_is_an_involution(key in arb_key(), plain in prop::collection::vec(any::<u8>(), 1..512)) {
        let c = encrypt(&plain, &key).unwrap();
        prop_assert_eq!(encrypt(&c, &key).unwrap(), plain.clone());
        prop_assert_eq!(decrypt(&c, &key).unwrap(), plain);
    }

    #[test]
    fn one_pair_recovers_any_other(key in arb_key(),
                                   pair in (1usize..256).prop_flat_map(|n| (
                                       prop::collection::vec(any::<u8>(), n),
                                       prop::collection::vec(any::<u8>(), n)))) {
        let (known, target) = pair;
        let mask = extract_mask(&known, &encrypt(&known, &key).unwrap()).unwrap();
        prop_assert_eq!(apply_mask(&encrypt(&target, &key).unwrap(), &mask).unwrap(), target);
    }

    #[test]
    fn flips_only_change_themselves(key in arb_key(),
                                    plain in prop::collection::vec(any::<u8>(), 8..128),
                                    picks in prop::collection::vec((any::<prop::sample::Index>(), 0u8..8), 1..4)) {
        let mut set: Vec<BitPosition> = picks.iter().map(|(i, b)| BitPosition::new(i.index(plain.len()), *b)).collect();
        set.sort();
        set.dedup();
        let rec = avalanche_profile(&key, &plain, &[set.clone()]).unwrap().remove(0);
        prop_assert!(rec.confined);
        prop_assert_eq!(rec.changed, set.clone());
        prop_assert_eq!(rec.hamming, set.len());
    }

    #[test]
    fn pgm_roundtrip(w in 1usize..40, h in 1usize..40, seed in any::<u64>()) {
        let pixels: Vec<u8> = (0..w * h).map(|i| (seed.wrapping_mul(i as u64 + 1) >> 13) as u8).collect();
        let img = GrayImage::from_bytes(pixels, w, h).unwrap();
        prop_assert_eq!(read_pgm(&write_pgm(&img)).unwrap(), img);
    }
}
