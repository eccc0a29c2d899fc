use super::density::DensityMatrix;
use super::dims::DimSignature;
use super::operator::Operator;
use crate::error::{Error, Result};
use crate::scalar::{c_re, cis, Real};
use nalgebra::DMatrix;
use num_complex::Complex;

/// Normalized amplitude vector over a composite space.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState<T: Real> {
    amps: Vec<Complex<T>>,
    sig: DimSignature,
}

impl<T: Real> PureState<T> {
    pub fn new(amps: Vec<Complex<T>>, sig: DimSignature) -> Result<Self> {
        if amps.len() != sig.total() {
            return Err(Error::SideMismatch {
                side: amps.len(),
                expected: sig.total(),
            });
        }
        let norm = amps.iter().fold(T::zero(), |a, z| a + z.norm_sqr());
        if (norm - T::one()).abs() > T::HERMITIAN_TOL {
            return Err(Error::BadTrace {
                trace: norm.to_f64_lossy(),
            });
        }
        Ok(Self { amps, sig })
    }

    pub(crate) fn from_parts_unchecked(amps: Vec<Complex<T>>, sig: DimSignature) -> Self {
        Self { amps, sig }
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn sig(&self) -> &DimSignature {
        &self.sig
    }

    pub fn to_density(&self) -> DensityMatrix<T> {
        DensityMatrix::from_op_unchecked(Operator::from_parts_unchecked(
            {
                let v = nalgebra::DVector::from_column_slice(&self.amps);
                &v * v.adjoint()
            },
            self.sig.clone(),
        ))
    }

    /// `Tr_E |ψ><ψ|` computed as `Ψ Ψ^†` with `Ψ` the amplitudes reshaped to
    /// (kept basis) x (traced basis).
    pub fn reduced_density(&self, keep: &[usize]) -> Result<DensityMatrix<T>> {
        if keep.is_empty() {
            return Err(Error::EmptyKeep);
        }
        let keep = self.sig.normalize_positions(keep)?;
        let env = self.sig.complement(&keep);
        let ok = self.sig.offsets(&keep);
        let oe = self.sig.offsets(&env);
        let psi = DMatrix::from_fn(ok.len(), oe.len(), |a, e| self.amps[ok[a] + oe[e]]);
        let rho = &psi * psi.adjoint();
        Ok(DensityMatrix::from_op_unchecked(Operator::from_parts_unchecked(
            rho,
            self.sig.restrict(&keep).unwrap(),
        )))
    }
}

/// Hamiltonian diagonal in the computational basis, stored as its energies only.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalHamiltonian<T: Real> {
    energies: Vec<T>,
    sig: DimSignature,
}

impl<T: Real> DiagonalHamiltonian<T> {
    pub fn new(energies: Vec<T>, sig: DimSignature) -> Result<Self> {
        if energies.len() != sig.total() {
            return Err(Error::SideMismatch {
                side: energies.len(),
                expected: sig.total(),
            });
        }
        Ok(Self { energies, sig })
    }

    pub fn energies(&self) -> &[T] {
        &self.energies
    }

    pub fn sig(&self) -> &DimSignature {
        &self.sig
    }

    pub fn to_operator(&self) -> Operator<T> {
        Operator::from_real_diagonal(&self.energies, self.sig.clone()).unwrap()
    }

    /// `e^{-iHt}|ψ>` by per-basis-state phases.
    pub fn evolve_pure(&self, psi: &PureState<T>, t: T) -> Result<PureState<T>> {
        if psi.sig.total() != self.sig.total() {
            return Err(Error::DimensionMismatch(format!(
                "state dimension {} vs Hamiltonian dimension {}",
                psi.sig.total(),
                self.sig.total()
            )));
        }
        let amps = psi
            .amps
            .iter()
            .zip(&self.energies)
            .map(|(a, &e)| *a * cis(-e * t))
            .collect();
        Ok(PureState::from_parts_unchecked(amps, psi.sig.clone()))
    }

    pub fn trace(&self) -> T {
        self.energies.iter().fold(T::zero(), |a, &b| a + b)
    }
}

impl<T: Real> From<&DiagonalHamiltonian<T>> for Vec<Complex<T>> {
    fn from(h: &DiagonalHamiltonian<T>) -> Self {
        h.energies.iter().map(|&e| c_re(e)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::c;

    #[test]
    fn reduced_density_matches_dense_partial_trace() {
        let sig = DimSignature::new(vec![2, 3, 2]).unwrap();
        let raw: Vec<Complex<f64>> = (0..12).map(|k| c((k as f64).sin(), (k as f64 * 0.7).cos())).collect();
        let n = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let psi = PureState::new(raw.iter().map(|z| z / n).collect(), sig).unwrap();
        let dense = psi.to_density();
        for keep in [vec![0], vec![1], vec![0, 2], vec![1, 2], vec![0, 1, 2]] {
            let a = psi.reduced_density(&keep).unwrap();
            let b = dense.partial_trace(&keep).unwrap();
            assert!(a.op().max_abs_diff(b.op()) < 1e-14, "keep {keep:?}");
        }
    }

    #[test]
    fn diagonal_evolution_phases() {
        let sig = DimSignature::qubits(1).unwrap();
        let h = DiagonalHamiltonian::new(vec![0.0, 1.0], sig.clone()).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let psi = PureState::new(vec![c(s, 0.0), c(s, 0.0)], sig).unwrap();
        let out = h.evolve_pure(&psi, 2.0).unwrap();
        assert!((out.amplitudes()[1] - cis(-2.0) * s).norm() < 1e-15);
    }
}
