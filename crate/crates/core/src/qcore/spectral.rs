use super::dims::DimSignature;
use super::operator::Operator;
use crate::error::{Error, Result};
use crate::scalar::{c_re, cis, Real};
use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex;
use serde::Serialize;

/// Eigenvalues (ascending) and matching orthonormal eigenvector columns.
#[derive(Debug, Clone)]
pub struct Eigensystem<T: Real> {
    pub values: Vec<T>,
    pub vectors: DMatrix<Complex<T>>,
}

/// Diagonalizes a hermitian operator. Eigenvalues come back sorted.
pub fn hermitian_eigen<T: Real>(op: &Operator<T>, herm_tol: T) -> Result<Eigensystem<T>> {
    op.require_hermitian(herm_tol)?;
    // Symmetrize before handing to the solver, it only reads one triangle.
    let m = op.matrix();
    let sym = (m + m.adjoint()).map(|z| z * c_re(T::lit(0.5)));
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| {
        eig.eigenvalues[a]
            .partial_cmp(&eig.eigenvalues[b])
            .expect("finite eigenvalues")
    });
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let n = m.nrows();
    let vectors = DMatrix::from_fn(n, n, |i, j| eig.eigenvectors[(i, order[j])]);
    Ok(Eigensystem { values, vectors })
}

#[derive(Debug, Clone)]
pub struct SpectralGroup<T: Real> {
    pub eigenvalue: T,
    pub projector: Operator<T>,
    pub multiplicity: usize,
}

/// Eigenvalue-grouped orthogonal projectors of a hermitian operator, with
/// strictly increasing group eigenvalues.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition<T: Real> {
    groups: Vec<SpectralGroup<T>>,
    group_tol: T,
}

impl<T: Real> SpectralDecomposition<T> {
    pub fn groups(&self) -> &[SpectralGroup<T>] {
        &self.groups
    }

    pub fn group_tol(&self) -> T {
        self.group_tol
    }

    pub fn len(&self) -> usize {
        self.groups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn eigenvalues(&self) -> Vec<T> {
        self.groups.iter().map(|g| g.eigenvalue).collect()
    }

    pub fn multiplicities(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.multiplicity).collect()
    }

    pub fn projectors(&self) -> impl Iterator<Item = &Operator<T>> {
        self.groups.iter().map(|g| &g.projector)
    }

    /// True when some eigenvalue group has multiplicity above one.
    pub fn is_degenerate(&self) -> bool {
        self.groups.iter().any(|g| g.multiplicity > 1)
    }

    pub fn sig(&self) -> &DimSignature {
        self.groups[0].projector.sig()
    }

    /// `Σ f(ω_i) P_i`
    pub fn function_of(&self, f: impl Fn(T) -> Complex<T>) -> Operator<T> {
        let d = self.sig().total();
        let mut m = DMatrix::zeros(d, d);
        for g in &self.groups {
            m += g.projector.matrix().map(|z| z * f(g.eigenvalue));
        }
        Operator::from_parts_unchecked(m, self.sig().clone())
    }

    /// `Σ ω_i P_i`
    pub fn reconstruct(&self) -> Operator<T> {
        self.function_of(c_re)
    }

    pub fn summary(&self) -> SpectrumSummary {
        SpectrumSummary {
            eigenvalues: self.eigenvalues().iter().map(|v| v.to_f64_lossy()).collect(),
            multiplicities: self.multiplicities(),
            group_tol: self.group_tol.to_f64_lossy(),
        }
    }
}

/// Serializable eigenvalue/multiplicity listing for reports.
#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct SpectrumSummary {
    pub eigenvalues: Vec<f64>,
    pub multiplicities: Vec<usize>,
    pub group_tol: f64,
}

/// Single-linkage clustering of sorted eigenvalues: neighbours closer than
/// `group_tol` share a projector. Each group reports the mean of its members.
pub fn spectral_projectors<T: Real>(h: &Operator<T>, group_tol: T) -> Result<SpectralDecomposition<T>> {
    if group_tol <= T::zero() {
        return Err(Error::BadTolerance);
    }
    let eig = hermitian_eigen(h, T::HERMITIAN_TOL)?;
    Ok(group_eigensystem(&eig, h.sig(), group_tol))
}

pub(crate) fn group_eigensystem<T: Real>(
    eig: &Eigensystem<T>,
    sig: &DimSignature,
    group_tol: T,
) -> SpectralDecomposition<T> {
    let n = eig.values.len();
    let mut clusters: Vec<Vec<usize>> = Vec::new();
    for k in 0..n {
        match clusters.last_mut() {
            Some(cl) if eig.values[k] - eig.values[k - 1] < group_tol => cl.push(k),
            _ => clusters.push(vec![k]),
        }
    }
    let groups = clusters
        .into_iter()
        .map(|members| {
            let mut p = DMatrix::zeros(n, n);
            let mut sum = T::zero();
            for &k in &members {
                let v = eig.vectors.column(k);
                p += v * v.adjoint();
                sum += eig.values[k];
            }
            let mult = members.len();
            SpectralGroup {
                eigenvalue: sum / T::from_usize(mult).unwrap(),
                projector: Operator::from_parts_unchecked(p, sig.clone()),
                multiplicity: mult,
            }
        })
        .collect();
    SpectralDecomposition { groups, group_tol }
}

/// Unitary `e^{iθG}` of a hermitian generator.
pub fn unitary_exp<T: Real>(g: &Operator<T>, theta: T) -> Result<Operator<T>> {
    let eig = hermitian_eigen(g, T::HERMITIAN_TOL)?;
    let v = &eig.vectors;
    let phases = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        eig.values.len(),
        eig.values.iter().map(|&l| cis(l * theta)),
    ));
    Ok(Operator::from_parts_unchecked(
        v * phases * v.adjoint(),
        g.sig().clone(),
    ))
}
