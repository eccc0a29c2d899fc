//! Dense complex linear algebra on tensor-product Hilbert spaces.

mod density;
mod dims;
pub mod io;
mod operator;
mod pauli;
pub mod random;
mod spectral;
mod statevec;

pub use density::{evolve, expectation, DensityMatrix, Propagator};
pub use dims::DimSignature;
pub use operator::{commutator, tensor_product, Operator};
pub use pauli::PauliString;
pub use spectral::{
    hermitian_eigen, spectral_projectors, unitary_exp, Eigensystem, SpectralDecomposition,
    SpectralGroup, SpectrumSummary,
};
pub use statevec::{DiagonalHamiltonian, PureState};
