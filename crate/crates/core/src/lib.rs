//! Dunkl-deformed parametric amplifier on a truncated Fock space.
//!
//! Operators, algebra checks, the amplifier spectrum, the squeezing
//! transforms and photon statistics are generic over [`Real`] (`f32` or
//! `f64`). The `*64` and `*32` aliases below fix the scalar.

mod error;
mod scalar;

pub mod amplifier;
pub mod expm;
pub mod fock;
pub mod matrix;
pub mod params;
pub mod stats;
pub mod transforms;
pub mod tridiag;
pub mod verify;

pub use error::{DunklError, Result};
pub use matrix::{FockMatrix, StateVector};
pub use params::{ModelParams, DEFAULT_DIM};
pub use scalar::Real;
pub use stats::{Provenance, StatRecord};

pub type C64 = num_complex::Complex<f64>;
pub type C32 = num_complex::Complex<f32>;

pub type FockMatrix64 = FockMatrix<f64>;
pub type FockMatrix32 = FockMatrix<f32>;
pub type StateVector64 = StateVector<f64>;
pub type StateVector32 = StateVector<f32>;
pub type ModelParams64 = ModelParams<f64>;
pub type ModelParams32 = ModelParams<f32>;
pub type SpectrumResult64 = amplifier::SpectrumResult<f64>;
pub type SqueezeParams64 = transforms::SqueezeParams<f64>;
pub type StatRecord64 = StatRecord<f64>;
pub type StatRecord32 = StatRecord<f32>;
