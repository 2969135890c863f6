//! Cryptanalysis workbench for a chaotic image cipher built from a Lorenz
//! trajectory and a threshold-neuron ("perceptron") bit transform.
//!
//! The cipher reduces to an XOR stream cipher, so one known plain/cipher
//! image pair yields an equivalent key that decrypts every other image of the
//! same size under the same secret key. The crate provides:
//!
//! - [`lorenz`]: fixed-step RK4 integration of the Lorenz system
//! - [`keystream`]: warm-up, weight quantization and reseeding
//! - [`cipher`]: the bitwise neuron cipher and its XOR closed form
//! - [`cryptanalysis`]: mask extraction/application and avalanche profiling
//! - [`randomness`]: an eleven-test statistical battery and rank-test sweep
//! - [`image`]: binary PGM I/O
//! - [`cli`]: the command-line front end used by the `perceptron-kpa` binary

pub mod cipher;
pub mod cli;
pub mod cryptanalysis;
pub mod error;
pub mod image;
pub mod keystream;
pub mod lorenz;
pub mod randomness;

pub use error::{Error, Result};
