//! Command-line front end.
//!
//! Exit codes: 0 success, 2 usage error, 3 invalid key, 4 size mismatch,
//! 5 divergence, 6 I/O error, 7 malformed input file, 8 out-of-range
//! argument.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::cipher;
use crate::cryptanalysis::{self, BitPosition, EquivalentKeyMask};
use crate::error::{Error, Result};
use crate::image::{read_pgm, write_pgm, GrayImage};
use crate::keystream::{self, SecretKey};
use crate::randomness::{self, BitSequence, SeedPolicy, SequenceSource, TestSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INVALID_KEY: i32 = 3;
pub const EXIT_SIZE_MISMATCH: i32 = 4;
pub const EXIT_DIVERGENCE: i32 = 5;
pub const EXIT_IO: i32 = 6;
pub const EXIT_MALFORMED: i32 = 7;
pub const EXIT_OUT_OF_RANGE: i32 = 8;

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InvalidKey(_) => EXIT_INVALID_KEY,
        Error::SizeMismatch { .. } => EXIT_SIZE_MISMATCH,
        Error::Divergence { .. } => EXIT_DIVERGENCE,
        Error::Io(_) => EXIT_IO,
        Error::MalformedHeader(_) | Error::TruncatedData { .. } | Error::UnsupportedMaxval(_) => EXIT_MALFORMED,
        Error::OutOfRange(_) | Error::InsufficientLength { .. } => EXIT_OUT_OF_RANGE,
    }
}

#[derive(Debug, Parser)]
#[command(name = "perceptron-kpa", version, about = "Perceptron/Lorenz image cipher: encryption, known-plaintext attack and randomness analysis")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct KeyArgs {
    /// Inline key "x0 y0 z0 h".
    #[arg(long)]
    pub key: Option<String>,
    /// File holding one line "x0 y0 z0 h".
    #[arg(long)]
    pub key_file: Option<PathBuf>,
}

impl KeyArgs {
    pub fn resolve(&self) -> Result<SecretKey> {
        match (&self.key, &self.key_file) {
            (Some(_), Some(_)) => Err(Error::InvalidKey("give either --key or --key-file, not both".into())),
            (None, None) => Err(Error::InvalidKey("a key is required (--key or --key-file)".into())),
            (Some(k), None) => k.parse(),
            (None, Some(path)) => read_text(path)?.parse(),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Encrypt a binary PGM image.
    Encrypt {
        #[command(flatten)]
        key: KeyArgs,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
    /// Decrypt a binary PGM image.
    Decrypt {
        #[command(flatten)]
        key: KeyArgs,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
    /// Derive the equivalent-key mask from one known plain/cipher image pair.
    /// The mask file is raw bytes, one per pixel, no header.
    AttackExtract {
        #[arg(long)]
        plain: PathBuf,
        #[arg(long)]
        cipher: PathBuf,
        #[arg(long)]
        mask: PathBuf,
    },
    /// Decrypt a cipher image with a previously extracted mask. The mask must
    /// be at least as long as the image; extra mask bytes are ignored.
    AttackApply {
        #[arg(long)]
        mask: PathBuf,
        #[arg(long)]
        cipher: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
    /// Flip plaintext bits and report which ciphertext bits change.
    Avalanche {
        #[command(flatten)]
        key: KeyArgs,
        #[arg(long)]
        input: PathBuf,
        /// Flip set "byte:bit", several positions joined by '+'. Repeatable.
        #[arg(long = "flip", required = true)]
        flips: Vec<String>,
        /// Also write one JSON record per flip set.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Run the eleven-test battery on keystream sequences.
    Randomness {
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 2_097_152)]
        len: usize,
        #[arg(long, default_value_t = 0.1)]
        h: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        workers: Option<usize>,
        /// Test a single MSB-first packed bit file instead of keystreams.
        #[arg(long)]
        input_bits: Option<PathBuf>,
        /// Write the human-readable table here as well as to stdout.
        #[arg(long)]
        table: Option<PathBuf>,
        /// JSON-lines report, one record per sequence per test.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Rank-test pass rate as a function of step length; emits "h,pass_rate".
    RankSweep {
        /// Comma-separated step lengths.
        #[arg(long, value_delimiter = ',', required = true)]
        h: Vec<f64>,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 2_097_152)]
        len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Dump the keystream bits (complemented w weights) packed MSB-first.
    Keystream {
        #[command(flatten)]
        key: KeyArgs,
        /// Number of cipher bytes to cover (8 bits each).
        #[arg(long)]
        bytes: usize,
        #[arg(long)]
        output: PathBuf,
    },
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn read_bytes(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write_bytes(path: &Path, data: &[u8]) -> Result<()> {
    fs::write(path, data).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn read_image(path: &Path) -> Result<GrayImage> {
    read_pgm(&read_bytes(path)?)
}

pub fn parse_flip_set(s: &str) -> Result<Vec<BitPosition>> {
    s.split('+')
        .map(|item| {
            let bad = || Error::OutOfRange(format!("flip `{item}` is not byte:bit"));
            let (byte, bit) = item.split_once(':').ok_or_else(bad)?;
            Ok(BitPosition::new(byte.trim().parse().map_err(|_| bad())?, bit.trim().parse().map_err(|_| bad())?))
        })
        .collect()
}

/// Executes a parsed command, returning what it printed to stdout.
pub fn execute(cmd: &Command) -> Result<String> {
    match cmd {
        Command::Encrypt { key, input, output } | Command::Decrypt { key, input, output } => {
            let key = key.resolve()?;
            let img = read_image(input)?;
            let data = if matches!(cmd, Command::Encrypt { .. }) {
                cipher::encrypt(img.as_bytes(), &key)?
            } else {
                cipher::decrypt(img.as_bytes(), &key)?
            };
            write_bytes(output, &write_pgm(&img.with_pixels(data)?))?;
            Ok(String::new())
        }
        Command::AttackExtract { plain, cipher, mask } => {
            let p = read_image(plain)?;
            let c = read_image(cipher)?;
            if (p.width(), p.height()) != (c.width(), c.height()) {
                return Err(Error::SizeMismatch { expected: p.as_bytes().len(), actual: c.as_bytes().len() });
            }
            let m = cryptanalysis::extract_mask(p.as_bytes(), c.as_bytes())?;
            write_bytes(mask, m.as_bytes())?;
            Ok(format!("mask: {} bytes\n", m.len()))
        }
        Command::AttackApply { mask, cipher, output } => {
            let m = EquivalentKeyMask::from_bytes(read_bytes(mask)?);
            let c = read_image(cipher)?;
            let plain = cryptanalysis::apply_mask(c.as_bytes(), &m)?;
            write_bytes(output, &write_pgm(&c.with_pixels(plain)?))?;
            Ok(String::new())
        }
        Command::Avalanche { key, input, flips, json } => {
            let key = key.resolve()?;
            let img = read_image(input)?;
            let sets = flips.iter().map(|f| parse_flip_set(f)).collect::<Result<Vec<_>>>()?;
            let records = cryptanalysis::avalanche_profile(&key, img.as_bytes(), &sets)?;
            if let Some(path) = json {
                let body: String = records
                    .iter()
                    .map(|r| serde_json::to_string(r).expect("serializable") + "\n")
                    .collect();
                write_bytes(path, body.as_bytes())?;
            }
            Ok(records.iter().map(|r| r.to_line() + "\n").collect())
        }
        Command::Randomness { count, len, h, seed, workers, input_bits, table, report } => {
            let policy = SeedPolicy::new(*seed);
            let rep = match input_bits {
                Some(path) => {
                    let bytes = read_bytes(path)?;
                    let n = (*len).min(bytes.len() * 8);
                    let seq = BitSequence::from_msb_first_bytes(&bytes, n)?;
                    randomness::run_battery_with(&SequenceSource::Injected(vec![seq]), &policy, 1, n, &TestSpec::table(), *workers)?
                }
                None => {
                    keystream::SecretKey::new(0.0, 0.0, 0.0, *h)?;
                    randomness::run_battery_with(&SequenceSource::Keystream { h: *h }, &policy, *count, *len, &TestSpec::table(), *workers)?
                }
            };
            let text = rep.table();
            if let Some(path) = table {
                write_bytes(path, text.as_bytes())?;
            }
            if let Some(path) = report {
                write_bytes(path, rep.jsonl().as_bytes())?;
            }
            Ok(text)
        }
        Command::RankSweep { h, count, len, seed, workers, csv } => {
            for &hv in h {
                keystream::SecretKey::new(0.0, 0.0, 0.0, hv)?;
            }
            let points = randomness::rank_sweep(h, &SeedPolicy::new(*seed), *count, *len, *workers)?;
            let text = randomness::sweep_csv(&points);
            if let Some(path) = csv {
                write_bytes(path, text.as_bytes())?;
            }
            Ok(text)
        }
        Command::Keystream { key, bytes, output } => {
            let key = key.resolve()?;
            let ks = keystream::generate(&key, *bytes)?;
            write_bytes(output, &keystream::dump_bits_msb_first(&ks.to_bits()))?;
            Ok(format!("{} bits\n", 8 * bytes))
        }
    }
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(&cli.command) {
        Ok(out) => {
            print!("{out}");
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
