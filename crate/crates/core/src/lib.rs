//! Closed-system decoherence laboratory.
//!
//! * [`qcore`]: operators on tensor-product spaces, partial traces, unitary evolution.
//! * [`spinbath`]: central spin coupled to `N` bath spins by `σ_z σ_z` terms.
//! * [`gtfd`]: relevant observables, expectation series, equilibrium detection
//!   and pointer-basis extraction.
//! * [`mhi`]: Hamiltonian-selected preferred contexts and composite-system checks.
//!
//! Everything numeric is generic over [`Real`] (`f32` or `f64`); the `*64`
//! aliases below are what most callers want.

pub mod error;
pub mod gtfd;
pub mod mhi;
pub mod qcore;
pub mod scalar;
pub mod spinbath;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Operator64 = qcore::Operator<f64>;
pub type DensityMatrix64 = qcore::DensityMatrix<f64>;
pub type SpectralDecomposition64 = qcore::SpectralDecomposition<f64>;
pub type SpinBathModel64 = spinbath::SpinBathModel<f64>;
pub type ProductState64 = spinbath::ProductState<f64>;
pub type ExpectationSeries64 = gtfd::ExpectationSeries<f64>;
pub type PreferredContext64 = mhi::PreferredContext<f64>;

pub type Operator32 = qcore::Operator<f32>;
pub type DensityMatrix32 = qcore::DensityMatrix<f32>;
