//! Seeded random ensembles for sweeps and property checks.

use super::density::DensityMatrix;
use super::dims::DimSignature;
use super::operator::Operator;
use crate::scalar::{c, c_re, Real};
use nalgebra::DMatrix;
use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;

fn gaussian<T: Real, R: Rng>(rng: &mut R) -> Complex<T> {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    c(T::lit(re), T::lit(im))
}

/// Matrix with i.i.d. standard complex normal entries.
pub fn ginibre<T: Real, R: Rng>(rng: &mut R, rows: usize, cols: usize) -> DMatrix<Complex<T>> {
    DMatrix::from_fn(rows, cols, |_, _| gaussian(rng))
}

/// `(G + G^†)/2` with `G` Ginibre.
pub fn random_hermitian<T: Real, R: Rng>(rng: &mut R, sig: DimSignature) -> Operator<T> {
    let d = sig.total();
    let g = ginibre::<T, R>(rng, d, d);
    let h = (&g + g.adjoint()) * c_re(T::lit(0.5));
    Operator::from_parts_unchecked(h, sig)
}

/// Haar unitary: QR of a Ginibre matrix with the phases of `R`'s diagonal removed.
pub fn random_unitary<T: Real, R: Rng>(rng: &mut R, sig: DimSignature) -> Operator<T> {
    let d = sig.total();
    let qr = ginibre::<T, R>(rng, d, d).qr();
    let (q, r) = (qr.q(), qr.r());
    let mut u = q;
    for j in 0..d {
        let rjj = r[(j, j)];
        let n = rjj.norm_sqr().sqrt();
        let phase = if n > T::zero() { rjj / n } else { c_re(T::one()) };
        for i in 0..d {
            u[(i, j)] *= phase;
        }
    }
    Operator::from_parts_unchecked(u, sig)
}

/// Full-rank mixed state `G G^† / Tr(G G^†)`.
pub fn random_density<T: Real, R: Rng>(rng: &mut R, sig: DimSignature) -> DensityMatrix<T> {
    let d = sig.total();
    let g = ginibre::<T, R>(rng, d, d);
    let m = &g * g.adjoint();
    let tr = m.trace().re;
    DensityMatrix::from_op_unchecked(Operator::from_parts_unchecked(m * c_re(T::one() / tr), sig))
}

/// Normalized Gaussian amplitude vector.
pub fn random_pure<T: Real, R: Rng>(rng: &mut R, d: usize) -> Vec<Complex<T>> {
    let v: Vec<Complex<T>> = (0..d).map(|_| gaussian(rng)).collect();
    let n = v.iter().fold(T::zero(), |a, z| a + z.norm_sqr()).sqrt();
    v.into_iter().map(|z| z / n).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn ensembles_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let sig = DimSignature::new(vec![2, 3]).unwrap();
        let u = random_unitary::<f64, _>(&mut rng, sig.clone());
        let uu = u.matrix() * u.matrix().adjoint();
        assert!((uu - DMatrix::identity(6, 6)).norm() < 1e-12);
        assert!(random_hermitian::<f64, _>(&mut rng, sig.clone()).is_hermitian(1e-15));
        let rho = random_density::<f64, _>(&mut rng, sig);
        assert!(DensityMatrix::new(rho.into_op()).is_ok());
    }
}
