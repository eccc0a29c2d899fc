use super::dims::DimSignature;
use crate::error::{Error, Result};
use crate::scalar::{c, cabs, c_re, Real};
use nalgebra::DMatrix;
use num_complex::Complex;

/// Dense complex square matrix tagged with the tensor-factor structure of the
/// space it acts on. Used for states, observables and Hamiltonians alike.
#[derive(Debug, Clone, PartialEq)]
pub struct Operator<T: Real> {
    matrix: DMatrix<Complex<T>>,
    sig: DimSignature,
}

impl<T: Real> Operator<T> {
    pub fn new(matrix: DMatrix<Complex<T>>, sig: DimSignature) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        if matrix.nrows() != sig.total() {
            return Err(Error::SideMismatch {
                side: matrix.nrows(),
                expected: sig.total(),
            });
        }
        Ok(Self { matrix, sig })
    }

    /// Single-factor operator; the signature is the matrix side.
    pub fn single(matrix: DMatrix<Complex<T>>) -> Result<Self> {
        let sig = DimSignature::new(vec![matrix.nrows()])?;
        Self::new(matrix, sig)
    }

    pub fn from_rows(rows: &[&[Complex<T>]], sig: DimSignature) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotSquare {
                rows: n,
                cols: rows.first().map_or(0, |r| r.len()),
            });
        }
        Self::new(DMatrix::from_fn(n, n, |i, j| rows[i][j]), sig)
    }

    pub fn identity(sig: DimSignature) -> Self {
        let d = sig.total();
        Self {
            matrix: DMatrix::identity(d, d),
            sig,
        }
    }

    pub fn zeros(sig: DimSignature) -> Self {
        let d = sig.total();
        Self {
            matrix: DMatrix::zeros(d, d),
            sig,
        }
    }

    pub fn from_real_diagonal(diag: &[T], sig: DimSignature) -> Result<Self> {
        let d = sig.total();
        if diag.len() != d {
            return Err(Error::SideMismatch {
                side: diag.len(),
                expected: d,
            });
        }
        let mut m = DMatrix::zeros(d, d);
        for (i, &v) in diag.iter().enumerate() {
            m[(i, i)] = c_re(v);
        }
        Ok(Self { matrix: m, sig })
    }

    pub(crate) fn from_parts_unchecked(matrix: DMatrix<Complex<T>>, sig: DimSignature) -> Self {
        debug_assert_eq!(matrix.nrows(), sig.total());
        Self { matrix, sig }
    }

    pub fn matrix(&self) -> &DMatrix<Complex<T>> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<Complex<T>> {
        self.matrix
    }

    pub fn sig(&self) -> &DimSignature {
        &self.sig
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.matrix[(i, j)]
    }

    pub fn trace(&self) -> Complex<T> {
        self.matrix.trace()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_parts_unchecked(self.matrix.adjoint(), self.sig.clone())
    }

    /// Largest entrywise deviation `|A_ij - conj(A_ji)|`.
    pub fn hermitian_deviation(&self) -> T {
        let n = self.dim();
        let mut worst = T::zero();
        for i in 0..n {
            for j in i..n {
                let d = cabs(self.matrix[(i, j)] - self.matrix[(j, i)].conj());
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        self.hermitian_deviation() <= tol
    }

    pub(crate) fn matrix_mut(&mut self) -> &mut DMatrix<Complex<T>> {
        &mut self.matrix
    }

    pub(crate) fn require_hermitian(&self, tol: T) -> Result<()> {
        let dev = self.hermitian_deviation();
        if dev > tol {
            return Err(Error::NotHermitian {
                deviation: dev.to_f64_lossy(),
            });
        }
        Ok(())
    }

    pub fn is_diagonal(&self, tol: T) -> bool {
        let n = self.dim();
        // Column-major walk; entry k sits at row k % n, column k / n.
        self.matrix
            .iter()
            .enumerate()
            .all(|(k, z)| k % n == k / n || cabs(*z) <= tol)
    }

    /// Real parts of the diagonal.
    pub fn real_diagonal(&self) -> Vec<T> {
        (0..self.dim()).map(|i| self.matrix[(i, i)].re).collect()
    }

    pub fn frobenius_norm(&self) -> T {
        self.matrix
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
            .sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.matrix
            .iter()
            .zip(other.matrix.iter())
            .fold(T::zero(), |acc, (a, b)| {
                let d = cabs(*a - *b);
                if d > acc {
                    d
                } else {
                    acc
                }
            })
    }

    fn check_same_shape(&self, other: &Self, what: &str) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{what}: {} vs {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "add")?;
        Ok(Self::from_parts_unchecked(
            &self.matrix + &other.matrix,
            self.sig.clone(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "sub")?;
        Ok(Self::from_parts_unchecked(
            &self.matrix - &other.matrix,
            self.sig.clone(),
        ))
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "matmul")?;
        Ok(Self::from_parts_unchecked(
            &self.matrix * &other.matrix,
            self.sig.clone(),
        ))
    }

    pub fn scale(&self, z: Complex<T>) -> Self {
        Self::from_parts_unchecked(self.matrix.map(|x| x * z), self.sig.clone())
    }

    pub fn scale_re(&self, x: T) -> Self {
        self.scale(c_re(x))
    }

    /// Frobenius inner product `Tr(A^† B)`.
    pub fn inner(&self, other: &Self) -> Result<Complex<T>> {
        self.check_same_shape(other, "inner")?;
        Ok(self
            .matrix
            .iter()
            .zip(other.matrix.iter())
            .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| {
                acc + a.conj() * *b
            }))
    }

    /// Same matrix, different factor bookkeeping (total dimension must agree).
    pub fn with_sig(&self, sig: DimSignature) -> Result<Self> {
        Self::new(self.matrix.clone(), sig)
    }

    /// Partial trace over every factor not listed in `keep`. The kept factors
    /// stay in their original relative order.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        if keep.is_empty() {
            return Err(Error::EmptyKeep);
        }
        let keep = self.sig.normalize_positions(keep)?;
        let env = self.sig.complement(&keep);
        let kept_sig = self.sig.restrict(&keep).expect("non-empty keep");
        let ok = self.sig.offsets(&keep);
        let oe = self.sig.offsets(&env);
        let ds = ok.len();
        let m = &self.matrix;
        let reduced = DMatrix::from_fn(ds, ds, |a, b| {
            oe.iter().fold(c(T::zero(), T::zero()), |acc, &e| {
                acc + m[(ok[a] + e, ok[b] + e)]
            })
        });
        Ok(Self::from_parts_unchecked(reduced, kept_sig))
    }

    /// Places this operator on `positions` of `full` and the identity on every
    /// other factor. `positions` must be listed in increasing order and match
    /// this operator's factor dimensions.
    pub fn embed(&self, positions: &[usize], full: &DimSignature) -> Result<Self> {
        let sorted = full.normalize_positions(positions)?;
        if sorted.as_slice() != positions {
            return Err(Error::InvalidParameter(
                "embedding positions must be strictly increasing".into(),
            ));
        }
        match full.restrict(positions) {
            Some(s) if &s == self.sig() => {}
            _ => {
                return Err(Error::DimensionMismatch(format!(
                    "operator signature {:?} does not match factors {:?} of {:?}",
                    self.sig.factors(),
                    positions,
                    full.factors()
                )))
            }
        }
        let env = full.complement(positions);
        let ok = full.offsets(positions);
        let oe = full.offsets(&env);
        let d = full.total();
        let mut m = DMatrix::zeros(d, d);
        for &e in &oe {
            for (a, &ia) in ok.iter().enumerate() {
                for (b, &ib) in ok.iter().enumerate() {
                    m[(ia + e, ib + e)] = self.matrix[(a, b)];
                }
            }
        }
        Ok(Self::from_parts_unchecked(m, full.clone()))
    }

    pub fn pauli_x() -> Self {
        let o = c_re(T::zero());
        let l = c_re(T::one());
        Self::from_parts_unchecked(
            DMatrix::from_row_slice(2, 2, &[o, l, l, o]),
            DimSignature::qubits(1).unwrap(),
        )
    }

    pub fn pauli_y() -> Self {
        let o = c_re(T::zero());
        let i = c(T::zero(), T::one());
        Self::from_parts_unchecked(
            DMatrix::from_row_slice(2, 2, &[o, -i, i, o]),
            DimSignature::qubits(1).unwrap(),
        )
    }

    pub fn pauli_z() -> Self {
        Self::from_real_diagonal(&[T::one(), -T::one()], DimSignature::qubits(1).unwrap()).unwrap()
    }
}

/// Kronecker product in sequence order; signatures are concatenated.
pub fn tensor_product<T: Real>(ops: &[Operator<T>]) -> Result<Operator<T>> {
    let (first, rest) = ops.split_first().ok_or(Error::EmptySequence)?;
    let mut acc = first.clone();
    for op in rest {
        acc = Operator::from_parts_unchecked(acc.matrix.kronecker(&op.matrix), acc.sig.concat(&op.sig));
    }
    Ok(acc)
}

/// `AB - BA`
pub fn commutator<T: Real>(a: &Operator<T>, b: &Operator<T>) -> Result<Operator<T>> {
    a.check_same_shape(b, "commutator")?;
    Ok(Operator::from_parts_unchecked(
        &a.matrix * &b.matrix - &b.matrix * &a.matrix,
        a.sig.clone(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(f: &[usize]) -> DimSignature {
        DimSignature::new(f.to_vec()).unwrap()
    }

    #[test]
    fn identity_tensor_identity() {
        let i2 = Operator::<f64>::identity(sig(&[2]));
        let i4 = tensor_product(&[i2.clone(), i2]).unwrap();
        assert_eq!(i4, Operator::identity(sig(&[2, 2])));
    }

    #[test]
    fn zz_is_diag_pm() {
        let z = Operator::<f64>::pauli_z();
        let zz = tensor_product(&[z.clone(), z]).unwrap();
        assert_eq!(zz.real_diagonal(), vec![1.0, -1.0, -1.0, 1.0]);
        assert!(zz.is_diagonal(0.0));
    }

    #[test]
    fn signature_bookkeeping() {
        let a = Operator::<f64>::identity(sig(&[2]));
        let b = Operator::<f64>::identity(sig(&[2, 3]));
        let ab = tensor_product(&[a, b]).unwrap();
        assert_eq!(ab.sig().factors(), &[2, 2, 3]);
        assert_eq!(ab.dim(), 12);
    }

    #[test]
    fn empty_tensor_product_errors() {
        assert_eq!(tensor_product::<f64>(&[]), Err(Error::EmptySequence));
    }

    #[test]
    fn pauli_commutator() {
        let x = Operator::<f64>::pauli_x();
        let y = Operator::<f64>::pauli_y();
        let z = Operator::<f64>::pauli_z();
        let xy = commutator(&x, &y).unwrap();
        assert!(xy.max_abs_diff(&z.scale(c(0.0, 2.0))) < 1e-15);
        assert!(commutator(&x, &x).unwrap().frobenius_norm() == 0.0);
    }

    #[test]
    fn commutator_dimension_mismatch() {
        let a = Operator::<f64>::identity(sig(&[2]));
        let b = Operator::<f64>::identity(sig(&[3]));
        assert!(matches!(commutator(&a, &b), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn embed_matches_kronecker() {
        let x = Operator::<f64>::pauli_x();
        let z = Operator::<f64>::pauli_z();
        let i2 = Operator::<f64>::identity(sig(&[2]));
        let xz = tensor_product(&[x.clone(), z.clone()]).unwrap();
        let full = sig(&[2, 2, 2]);
        let embedded = xz.embed(&[0, 2], &full).unwrap();
        let direct = tensor_product(&[x, i2, z]).unwrap();
        assert_eq!(embedded, direct);
    }

    #[test]
    fn partial_trace_of_embedding_scales_by_env_dim() {
        let y = Operator::<f64>::pauli_y();
        let full = sig(&[2, 3, 2]);
        let e = y.embed(&[1], &full).unwrap_err();
        assert!(matches!(e, Error::DimensionMismatch(_)));
        let e = y.embed(&[2], &full).unwrap();
        let back = e.partial_trace(&[2]).unwrap();
        assert!(back.max_abs_diff(&y.scale_re(6.0)) < 1e-14);
    }

    #[test]
    fn partial_trace_errors() {
        let i = Operator::<f64>::identity(sig(&[2, 2]));
        assert_eq!(i.partial_trace(&[]), Err(Error::EmptyKeep));
        assert!(matches!(
            i.partial_trace(&[2]),
            Err(Error::FactorOutOfRange { index: 2, .. })
        ));
    }
}
