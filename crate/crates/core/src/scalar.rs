//! Real scalar abstraction shared by every numeric routine in the crate.
//!
//! Operators are matrices over `Complex<T>` where `T: Real`. The trait pins the
//! default numerical tolerances per precision so generic code never hard-codes
//! an `f64` epsilon.

use nalgebra::RealField;
use num_complex::Complex;
use num_traits::{FromPrimitive, ToPrimitive};
use std::fmt::{Debug, Display};

/// Floating point type usable as the real part of operator entries: f32 or f64.
pub trait Real: RealField + Copy + FromPrimitive + ToPrimitive + Display + Debug {
    /// Hermiticity / unit-trace tolerance.
    const HERMITIAN_TOL: Self;
    /// Lowest eigenvalue accepted as "non-negative" in a density matrix.
    const POSITIVITY_TOL: Self;
    /// Default gap below which neighbouring eigenvalues are merged.
    const GROUP_TOL: Self;

    /// Converts an `f64` literal, panicking only if the target cannot represent it.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in target precision")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

macro_rules! impl_real {
    ($f:ty, $herm:expr, $pos:expr, $group:expr) => {
        impl Real for $f {
            const HERMITIAN_TOL: Self = $herm;
            const POSITIVITY_TOL: Self = $pos;
            const GROUP_TOL: Self = $group;
        }
    };
}

impl_real!(f64, 1e-10, 1e-10, 1e-8);
impl_real!(f32, 1e-4, 1e-4, 1e-3);

/// Shorthand for `Complex::new(re, im)`.
#[inline]
pub fn c<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

#[inline]
pub fn c_re<T: Real>(re: T) -> Complex<T> {
    Complex::new(re, T::zero())
}

/// `e^{iθ}`
#[inline]
pub fn cis<T: Real>(theta: T) -> Complex<T> {
    Complex::new(theta.cos(), theta.sin())
}

/// `|z|` without requiring `num_traits::Float` on `T`.
#[inline]
pub fn cabs<T: Real>(z: Complex<T>) -> T {
    z.norm_sqr().sqrt()
}
