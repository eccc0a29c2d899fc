//! Pauli strings on qubit registers, stored as X/Z bitmasks.
//!
//! Qubit `k` of an `n`-qubit string corresponds to bit `n-1-k` of a basis
//! index, matching [`DimSignature`](super::DimSignature)'s most-significant
//! first convention.

use super::dims::DimSignature;
use super::operator::Operator;
use crate::error::{Error, Result};
use crate::scalar::{c, c_re, Real};
use nalgebra::DMatrix;
use num_complex::Complex;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    x: u64,
    z: u64,
}

impl PauliString {
    pub const MAX_QUBITS: usize = 64;

    pub fn identity(n: usize) -> Self {
        Self { n, x: 0, z: 0 }
    }

    /// Parses labels like `"XIZY"`.
    pub fn parse(label: &str) -> Result<Self> {
        let n = label.chars().count();
        if n == 0 || n > Self::MAX_QUBITS {
            return Err(Error::InvalidParameter(format!("bad Pauli label {label:?}")));
        }
        let mut p = Self::identity(n);
        for (k, ch) in label.chars().enumerate() {
            let bit = 1u64 << (n - 1 - k);
            match ch {
                'I' => {}
                'X' => p.x |= bit,
                'Z' => p.z |= bit,
                'Y' => {
                    p.x |= bit;
                    p.z |= bit;
                }
                _ => return Err(Error::InvalidParameter(format!("bad Pauli label {label:?}"))),
            }
        }
        Ok(p)
    }

    /// All `4^n` strings in lexicographic order over `I < X < Y < Z`.
    pub fn all(n: usize) -> Vec<Self> {
        let letters = ['I', 'X', 'Y', 'Z'];
        let total = 4usize.pow(n as u32);
        (0..total)
            .map(|mut code| {
                let mut label = vec!['I'; n];
                for k in (0..n).rev() {
                    label[k] = letters[code % 4];
                    code /= 4;
                }
                Self::parse(&label.into_iter().collect::<String>()).unwrap()
            })
            .collect()
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    pub fn label(&self) -> String {
        (0..self.n)
            .map(|k| {
                let bit = 1u64 << (self.n - 1 - k);
                match (self.x & bit != 0, self.z & bit != 0) {
                    (false, false) => 'I',
                    (true, false) => 'X',
                    (true, true) => 'Y',
                    (false, true) => 'Z',
                }
            })
            .collect()
    }

    /// `P|i> = phase(i) |i ^ x>`.
    #[inline]
    pub fn flip_mask(&self) -> usize {
        self.x as usize
    }

    #[inline]
    pub fn phase<T: Real>(&self, index: usize) -> Complex<T> {
        // Y = iXZ on each qubit carrying both masks.
        let ny = (self.x & self.z).count_ones() % 4;
        let sign = if ((index as u64) & self.z).count_ones().is_multiple_of(2) {
            T::one()
        } else {
            -T::one()
        };
        match ny {
            0 => c(sign, T::zero()),
            1 => c(T::zero(), sign),
            2 => c(-sign, T::zero()),
            _ => c(T::zero(), -sign),
        }
    }

    /// Places this string on `positions` of an `n`-qubit register, identity elsewhere.
    pub fn embed(&self, positions: &[usize], n: usize) -> Result<Self> {
        if positions.len() != self.n || positions.iter().any(|&q| q >= n) || n > Self::MAX_QUBITS {
            return Err(Error::DimensionMismatch(format!(
                "cannot place a {}-qubit string on {:?} of {} qubits",
                self.n, positions, n
            )));
        }
        let (mut x, mut z) = (0u64, 0u64);
        for (j, &q) in positions.iter().enumerate() {
            let from = self.n - 1 - j;
            let to = n - 1 - q;
            x |= ((self.x >> from) & 1) << to;
            z |= ((self.z >> from) & 1) << to;
        }
        Ok(Self { n, x, z })
    }

    /// `<ψ|P|ψ>` for an amplitude vector of length `2^n`.
    pub fn expectation_pure<T: Real>(&self, psi: &[Complex<T>]) -> Complex<T> {
        let f = self.flip_mask();
        psi.iter()
            .enumerate()
            .fold(c_re(T::zero()), |acc, (i, a)| {
                acc + psi[i ^ f].conj() * self.phase::<T>(i) * *a
            })
    }

    /// `Tr(ρ P)` reading only the `2^n` entries the string touches.
    pub fn trace_with<T: Real>(&self, rho: &DMatrix<Complex<T>>) -> Complex<T> {
        let f = self.flip_mask();
        (0..rho.nrows()).fold(c_re(T::zero()), |acc, i| {
            acc + rho[(i, i ^ f)] * self.phase::<T>(i)
        })
    }

    pub fn to_operator<T: Real>(&self) -> Operator<T> {
        let d = 1usize << self.n;
        let f = self.flip_mask();
        let mut m = DMatrix::zeros(d, d);
        for i in 0..d {
            m[(i ^ f, i)] = self.phase::<T>(i);
        }
        Operator::from_parts_unchecked(m, DimSignature::qubits(self.n).unwrap())
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}
