//! End-to-end runs of the `perceptron-kpa` binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use perceptron_kpa::image::{read_pgm, write_pgm, GrayImage};

const KEY: &str = "1 1 0 0.1";

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_perceptron-kpa"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn write_image(dir: &Path, name: &str, f: impl Fn(usize, usize) -> u8) -> PathBuf {
    let pixels = (0..64 * 64).map(|i| f(i % 64, i / 64)).collect();
    let path = dir.join(name);
    fs::write(&path, write_pgm(&GrayImage::from_bytes(pixels, 64, 64).unwrap())).unwrap();
    path
}

fn load(path: &Path) -> GrayImage {
    read_pgm(&fs::read(path).unwrap()).unwrap()
}

#[test]
fn encrypt_decrypt_roundtrip() {
    let dir = tempfile::tempdir().unwrap();
    let plain = write_image(dir.path(), "p.pgm", |x, y| ((x * 4) ^ (y * 3)) as u8);
    let enc = dir.path().join("c.pgm");
    let dec = dir.path().join("d.pgm");
    assert_eq!(run(&["encrypt", "--key", KEY, "--input", p(&plain), "--output", p(&enc)]).status.code(), Some(0));
    assert_ne!(load(&enc), load(&plain));
    assert_eq!(run(&["decrypt", "--key", KEY, "--input", p(&enc), "--output", p(&dec)]).status.code(), Some(0));
    assert_eq!(load(&dec), load(&plain));
}

#[test]
fn zero_image_ciphertext_is_the_golden_mask() {
    let dir = tempfile::tempdir().unwrap();
    let plain = write_image(dir.path(), "zero.pgm", |_, _| 0);
    let enc = dir.path().join("c.pgm");
    let key_file = dir.path().join("key.txt");
    fs::write(&key_file, format!("{KEY}\n")).unwrap();
    let out = run(&["encrypt", "--key-file", p(&key_file), "--input", p(&plain), "--output", p(&enc)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(load(&enc).as_bytes(), include_bytes!("data/mask_1_1_0_h0.1_4096.bin"));
}

#[test]
fn invalid_keys_and_usage() {
    let dir = tempfile::tempdir().unwrap();
    let plain = write_image(dir.path(), "p.pgm", |x, _| x as u8);
    let enc = dir.path().join("c.pgm");
    let code = |k: &str| run(&["encrypt", "--key", k, "--input", p(&plain), "--output", p(&enc)]).status.code();
    assert_eq!(code("1 1 0 0"), Some(3));
    assert_eq!(code("1 1 0 1.5"), Some(3));
    assert_eq!(code("1 1 0"), Some(3));
    assert!(!enc.exists());
    assert_eq!(run(&["encrypt", "--input", p(&plain), "--output", p(&enc)]).status.code(), Some(3));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn malformed_input_is_reported() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.pgm");
    fs::write(&bad, b"P2\n2 2\n255\n0 0 0 0\n").unwrap();
    let out = dir.path().join("o.pgm");
    let r = run(&["encrypt", "--key", KEY, "--input", p(&bad), "--output", p(&out)]);
    assert_eq!(r.status.code(), Some(7));
    let missing = dir.path().join("missing.pgm");
    assert_eq!(run(&["encrypt", "--key", KEY, "--input", p(&missing), "--output", p(&out)]).status.code(), Some(6));
}

#[test]
fn attack_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let known = write_image(d, "known.pgm", |x, y| (x + 2 * y) as u8);
    let target = write_image(d, "target.pgm", |x, y| if (x / 8 + y / 8) % 2 == 0 { 30 } else { 220 });
    for (plain, cipher) in [(&known, "known.c.pgm"), (&target, "target.c.pgm")] {
        let r = run(&["encrypt", "--key", KEY, "--input", p(plain), "--output", p(&d.join(cipher))]);
        assert_eq!(r.status.code(), Some(0));
    }
    let mask = d.join("mask.bin");
    let r = run(&["attack-extract", "--plain", p(&known), "--cipher", p(&d.join("known.c.pgm")), "--mask", p(&mask)]);
    assert_eq!(r.status.code(), Some(0));
    assert_eq!(fs::read(&mask).unwrap(), include_bytes!("data/mask_1_1_0_h0.1_4096.bin"));

    let recovered = d.join("recovered.pgm");
    let r = run(&["attack-apply", "--mask", p(&mask), "--cipher", p(&d.join("target.c.pgm")), "--output", p(&recovered)]);
    assert_eq!(r.status.code(), Some(0));
    assert_eq!(load(&recovered), load(&target));

    // a short mask cannot cover the image
    let short = d.join("short.bin");
    fs::write(&short, &fs::read(&mask).unwrap()[..100]).unwrap();
    let r = run(&["attack-apply", "--mask", p(&short), "--cipher", p(&d.join("target.c.pgm")), "--output", p(&recovered)]);
    assert_eq!(r.status.code(), Some(4));

    // decrypting under the wrong key succeeds but yields the wrong image
    let wrong = d.join("wrong.pgm");
    let r = run(&["decrypt", "--key", "1 1 0 0.05", "--input", p(&d.join("target.c.pgm")), "--output", p(&wrong)]);
    assert_eq!(r.status.code(), Some(0));
    assert_ne!(load(&wrong), load(&target));
}

#[test]
fn avalanche_report() {
    let dir = tempfile::tempdir().unwrap();
    let plain = write_image(dir.path(), "p.pgm", |x, y| (x ^ y) as u8);
    let json = dir.path().join("av.jsonl");
    let r = run(&["avalanche", "--key", KEY, "--input", p(&plain), "--flip", "0:0", "--flip", "10:3+4000:7", "--json", p(&json)]);
    assert_eq!(r.status.code(), Some(0));
    let stdout = String::from_utf8(r.stdout).unwrap();
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines, [
        "CONFINED flipped=[(0,0)] changed=[(0,0)] hamming=1",
        "CONFINED flipped=[(10,3) (4000,7)] changed=[(10,3) (4000,7)] hamming=2",
    ]);
    let records: Vec<serde_json::Value> =
        fs::read_to_string(&json).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(records.len(), 2);
    assert_eq!(records[1]["hamming"], 2);
    assert_eq!(records[1]["confined"], true);

    let r = run(&["avalanche", "--key", KEY, "--input", p(&plain), "--flip", "4096:0"]);
    assert_eq!(r.status.code(), Some(8));
}

#[test]
fn randomness_outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut reports = Vec::new();
    for i in 0..2 {
        let table = dir.path().join(format!("t{i}.txt"));
        let report = dir.path().join(format!("r{i}.jsonl"));
        let r = run(&["randomness", "--count", "3", "--len", "1048576", "--seed", "5", "--workers", "2",
                      "--table", p(&table), "--report", p(&report)]);
        assert_eq!(r.status.code(), Some(0));
        assert_eq!(String::from_utf8(r.stdout).unwrap(), fs::read_to_string(&table).unwrap());
        reports.push((fs::read_to_string(&table).unwrap(), fs::read_to_string(&report).unwrap()));
    }
    assert_eq!(reports[0], reports[1]);
    assert_eq!(reports[0].1.lines().count(), 3 * 11);
    assert!(reports[0].0.contains("Non-overlapping Template (m=9, B=000000001)"));
}

#[test]
fn rank_sweep_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("sweep.csv");
    let args = ["rank-sweep", "--h", "0.01,0.1", "--count", "2", "--len", "65536", "--seed", "1", "--csv", p(&csv)];
    let r = run(&args);
    assert_eq!(r.status.code(), Some(0));
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(String::from_utf8(r.stdout).unwrap(), text);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert_eq!(lines[0], "h,pass_rate");
    assert!(lines[1].starts_with("0.01,") && lines[2].starts_with("0.1,"));
    assert_eq!(fs::read_to_string(&csv).unwrap(), { run(&args); fs::read_to_string(&csv).unwrap() });

    assert_eq!(run(&["rank-sweep", "--h", "0.1,2", "--count", "1", "--len", "65536"]).status.code(), Some(3));
}

#[test]
fn keystream_dump_feeds_input_bits() {
    let dir = tempfile::tempdir().unwrap();
    let bits = dir.path().join("ks.bin");
    let r = run(&["keystream", "--key", KEY, "--bytes", "4096", "--output", p(&bits)]);
    assert_eq!(r.status.code(), Some(0));
    // mask bits are LSB-first per byte; the dump is MSB-first
    let reversed: Vec<u8> = include_bytes!("data/mask_1_1_0_h0.1_4096.bin").iter().map(|b| b.reverse_bits()).collect();
    assert_eq!(fs::read(&bits).unwrap(), reversed);

    // an MSB-first file of 10^6 bits of e passes every test
    let r = run(&["randomness", "--input-bits", "tests/data/e_1e6_msb.bin", "--len", "1000000"]);
    assert_eq!(r.status.code(), Some(0));
    let table = String::from_utf8(r.stdout).unwrap();
    assert!(table.contains("Rank"), "{table}");
}
