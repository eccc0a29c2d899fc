//! Exact Lie-algebra kernel.
//!
//! Structure constants are Laurent polynomials in a formal `ε` whose
//! coefficients are Gaussian numbers over a field `R` (exact rationals for
//! the [`ExactAlgebra`] alias). On top of that: central extension, basis
//! change, `ε`-rescaling and contraction, PBW normal ordering in the
//! enveloping algebra and Casimir checks.
//!
//! ```
//! use decohere_liealg::{builtins, same_structure, ExactAlgebra};
//!
//! let stages = builtins::contraction_stages::<decohere_liealg::Rational>().unwrap();
//! let galilei: ExactAlgebra = builtins::extended_galilei();
//! let map = builtins::primed_to_galilei();
//! let pairs: Vec<(&str, &str)> = map.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
//! assert!(same_structure(&stages.contracted, &galilei, &pairs).unwrap());
//! ```

pub mod algebra;
pub mod builtins;
pub mod error;
pub mod json;
pub mod poly;
pub mod scalar;

pub use algebra::{same_structure, BasisMap, BracketSpec, LieAlgebra, LinComb};
pub use error::{Error, Result};
pub use poly::{commutator_with, contract_casimir, is_casimir, NcPoly, RewriteOrder};
pub use scalar::{Field, Laurent};

pub type Rational = num_rational::BigRational;
pub type GaussianRational = num_complex::Complex<Rational>;
pub type Scalar = Laurent<Rational>;
pub type ExactAlgebra = LieAlgebra<Rational>;
pub type ExactPoly = NcPoly<Rational>;
