use super::dims::DimSignature;
use super::operator::Operator;
use super::spectral::{hermitian_eigen, Eigensystem};
use crate::error::{Error, Result};
use crate::scalar::{cabs, c_re, cis, Real};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex;

/// Hermitian, unit-trace, positive semidefinite operator.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T: Real> {
    op: Operator<T>,
}

impl<T: Real> DensityMatrix<T> {
    /// Validates with the default tolerances of `T`.
    pub fn new(op: Operator<T>) -> Result<Self> {
        Self::new_with_tol(op, T::HERMITIAN_TOL, T::POSITIVITY_TOL)
    }

    pub fn new_with_tol(op: Operator<T>, herm_tol: T, pos_tol: T) -> Result<Self> {
        op.require_hermitian(herm_tol)?;
        let tr = op.trace();
        if cabs(tr - c_re(T::one())) > herm_tol {
            return Err(Error::BadTrace {
                trace: tr.re.to_f64_lossy(),
            });
        }
        let d = op.dim();
        let shifted = op.matrix() + DMatrix::<Complex<T>>::identity(d, d) * c_re(pos_tol);
        if !cholesky_succeeds(&shifted) {
            let eig = hermitian_eigen(&op, herm_tol)?;
            let min = eig.values[0];
            if min < -pos_tol {
                return Err(Error::NotPositive {
                    min_eigenvalue: min.to_f64_lossy(),
                });
            }
        }
        Ok(Self { op })
    }

    /// Projects a nearly valid state back onto the state space: symmetrize,
    /// clamp eigenvalues at zero, renormalize the trace. Eigenvalues below
    /// `-pos_tol` are still rejected.
    pub fn renormalized(op: Operator<T>, pos_tol: T) -> Result<Self> {
        let eig = hermitian_eigen(&op, T::HERMITIAN_TOL)?;
        if eig.values[0] < -pos_tol {
            return Err(Error::NotPositive {
                min_eigenvalue: eig.values[0].to_f64_lossy(),
            });
        }
        let clamped: Vec<T> = eig.values.iter().map(|&v| v.max(T::zero())).collect();
        let total = clamped.iter().fold(T::zero(), |a, &b| a + b);
        if total <= T::zero() {
            return Err(Error::BadTrace { trace: 0.0 });
        }
        let d = DMatrix::from_diagonal(&DVector::from_iterator(
            clamped.len(),
            clamped.iter().map(|&v| c_re(v / total)),
        ));
        let m = &eig.vectors * d * eig.vectors.adjoint();
        Ok(Self {
            op: Operator::from_parts_unchecked(m, op.sig().clone()),
        })
    }

    pub(crate) fn from_op_unchecked(op: Operator<T>) -> Self {
        Self { op }
    }

    /// `|ψ><ψ|` for a normalized amplitude vector.
    pub fn from_pure(amplitudes: &[Complex<T>], sig: DimSignature) -> Result<Self> {
        if amplitudes.len() != sig.total() {
            return Err(Error::SideMismatch {
                side: amplitudes.len(),
                expected: sig.total(),
            });
        }
        let norm = amplitudes.iter().fold(T::zero(), |a, z| a + z.norm_sqr());
        if (norm - T::one()).abs() > T::HERMITIAN_TOL {
            return Err(Error::BadTrace {
                trace: norm.to_f64_lossy(),
            });
        }
        let v = DVector::from_column_slice(amplitudes);
        Ok(Self {
            op: Operator::from_parts_unchecked(&v * v.adjoint(), sig),
        })
    }

    pub fn maximally_mixed(sig: DimSignature) -> Self {
        let d = T::from_usize(sig.total()).unwrap();
        Self {
            op: Operator::identity(sig).scale_re(T::one() / d),
        }
    }

    pub fn op(&self) -> &Operator<T> {
        &self.op
    }

    pub fn into_op(self) -> Operator<T> {
        self.op
    }

    pub fn sig(&self) -> &DimSignature {
        self.op.sig()
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.op.get(i, j)
    }

    pub fn trace(&self) -> T {
        self.op.trace().re
    }

    /// `Tr ρ²`
    pub fn purity(&self) -> T {
        self.op
            .matrix()
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
    }

    /// Reduced state on the kept factors (original relative order preserved).
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        Ok(Self {
            op: self.op.partial_trace(keep)?,
        })
    }

    /// Convex combination `Σ w_k ρ_k` with the first state's signature.
    pub(crate) fn average(states: &[Self]) -> Option<Self> {
        let first = states.first()?;
        let w = T::one() / T::from_usize(states.len()).unwrap();
        let mut m = DMatrix::zeros(first.dim(), first.dim());
        for s in states {
            m += s.op.matrix();
        }
        m *= c_re(w);
        Some(Self {
            op: Operator::from_parts_unchecked(m, first.sig().clone()),
        })
    }
}

/// Hermitian Cholesky factorization with real pivots; succeeds iff the
/// matrix is positive definite.
fn cholesky_succeeds<T: Real>(a: &DMatrix<Complex<T>>) -> bool {
    let n = a.nrows();
    let mut l = DMatrix::<Complex<T>>::zeros(n, n);
    for j in 0..n {
        let mut d = a[(j, j)].re;
        for k in 0..j {
            d -= l[(j, k)].norm_sqr();
        }
        if !(d > T::zero()) {
            return false;
        }
        let djj = d.sqrt();
        l[(j, j)] = c_re(djj);
        for i in (j + 1)..n {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = s / djj;
        }
    }
    true
}

/// `Tr(ρ O)`; real up to rounding when `O` is hermitian.
pub fn expectation<T: Real>(rho: &DensityMatrix<T>, obs: &Operator<T>) -> Result<Complex<T>> {
    if rho.dim() != obs.dim() {
        return Err(Error::DimensionMismatch(format!(
            "state dimension {} vs observable dimension {}",
            rho.dim(),
            obs.dim()
        )));
    }
    let r = rho.op().matrix();
    let o = obs.matrix();
    let n = rho.dim();
    let mut acc = Complex::new(T::zero(), T::zero());
    for i in 0..n {
        for j in 0..n {
            acc += r[(i, j)] * o[(j, i)];
        }
    }
    Ok(acc)
}

/// Precomputed unitary dynamics `ρ(t) = e^{-iHt} ρ e^{iHt}` for one Hamiltonian.
///
/// A Hamiltonian with exactly zero off-diagonal entries takes the per-basis
/// phase path, which involves no diagonalization at all.
#[derive(Debug, Clone)]
pub enum Propagator<T: Real> {
    Diagonal { energies: Vec<T>, sig: DimSignature },
    Spectral { eig: Eigensystem<T>, sig: DimSignature },
}

impl<T: Real> Propagator<T> {
    pub fn new(h: &Operator<T>) -> Result<Self> {
        h.require_hermitian(T::HERMITIAN_TOL)?;
        if h.is_diagonal(T::zero()) {
            Ok(Self::Diagonal {
                energies: h.real_diagonal(),
                sig: h.sig().clone(),
            })
        } else {
            Ok(Self::Spectral {
                eig: hermitian_eigen(h, T::HERMITIAN_TOL)?,
                sig: h.sig().clone(),
            })
        }
    }

    /// Always uses the eigendecomposition route, even for diagonal `H`.
    pub fn spectral(h: &Operator<T>) -> Result<Self> {
        Ok(Self::Spectral {
            eig: hermitian_eigen(h, T::HERMITIAN_TOL)?,
            sig: h.sig().clone(),
        })
    }

    pub fn sig(&self) -> &DimSignature {
        match self {
            Self::Diagonal { sig, .. } | Self::Spectral { sig, .. } => sig,
        }
    }

    pub fn evolve(&self, rho0: &DensityMatrix<T>, t: T) -> Result<DensityMatrix<T>> {
        let mut out = rho0.clone();
        self.evolve_into(rho0, t, &mut out)?;
        Ok(out)
    }

    /// [`evolve`](Self::evolve) writing into `out`, whose storage is reused.
    /// Saves a fresh allocation per call when sweeping many times.
    pub fn evolve_into(&self, rho0: &DensityMatrix<T>, t: T, out: &mut DensityMatrix<T>) -> Result<()> {
        let d = self.sig().total();
        if rho0.dim() != d || out.sig() != rho0.sig() {
            return Err(Error::DimensionMismatch(format!(
                "state signatures {:?} and {:?} vs Hamiltonian dimension {d}",
                rho0.sig().factors(),
                out.sig().factors()
            )));
        }
        let m = rho0.op().matrix();
        match self {
            Self::Diagonal { energies, .. } => {
                let ph: Vec<Complex<T>> = energies.iter().map(|&e| cis(-e * t)).collect();
                let dst = out.op.matrix_mut();
                for ((mut col, src), pj) in dst.column_iter_mut().zip(m.column_iter()).zip(&ph) {
                    let cj = pj.conj();
                    for ((z, &x), pi) in col.iter_mut().zip(src.iter()).zip(&ph) {
                        *z = x * (*pi * cj);
                    }
                }
            }
            Self::Spectral { eig, .. } => {
                let v = &eig.vectors;
                let ph = DMatrix::from_diagonal(&DVector::from_iterator(
                    eig.values.len(),
                    eig.values.iter().map(|&l| cis(-l * t)),
                ));
                let u = v * ph * v.adjoint();
                *out.op.matrix_mut() = &u * m * u.adjoint();
            }
        }
        Ok(())
    }
}

/// `e^{-iHt} ρ0 e^{iHt}`. Build a [`Propagator`] once when evolving to many times.
pub fn evolve<T: Real>(rho0: &DensityMatrix<T>, h: &Operator<T>, t: T) -> Result<DensityMatrix<T>> {
    Propagator::new(h)?.evolve(rho0, t)
}
