//! Central spin `P` coupled to `N` non-interacting bath spins `P_1..P_N`.
//!
//! Factor order is `[P, P_1, ..., P_N]` and the Hamiltonian is
//! `H = Σ_i (g_i/2) σ_z^(P) σ_z^(i)`, with `|0> = |↑>` the `σ_z = +1` state.
//! Under this convention a product initial state
//! `(a|↑> + b|↓>) ⊗ Π_i (α_i|↑> + β_i|↓>)` gives
//!
//! ```text
//! <↑|ρ_P(t)|↓> = a b* r(t),   r(t) = Π_i [cos(g_i t) - i(|α_i|² - |β_i|²) sin(g_i t)]
//! ```
//!
//! which is what [`coherence_factor`] returns. The dense simulation in the
//! tests pins the sign of the imaginary part.

use crate::error::{Error, Result};
use crate::gtfd::ReducedDynamics;
use crate::qcore::{DensityMatrix, DiagonalHamiltonian, DimSignature, Operator, PureState};
use crate::scalar::{c, c_re, cis, Real};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Largest number of factors (P plus bath) for which dense operators are built.
pub const DENSE_MAX_FACTORS: usize = 13;

#[derive(Debug, Clone, PartialEq)]
pub struct SpinBathModel<T: Real> {
    couplings: Vec<T>,
}

impl<T: Real> SpinBathModel<T> {
    pub fn new(couplings: Vec<T>) -> Result<Self> {
        if couplings.is_empty() {
            return Err(Error::InvalidModel("the bath needs at least one spin".into()));
        }
        if couplings.len() >= PauliLimit::BITS {
            return Err(Error::InvalidModel(format!(
                "{} bath spins exceed the bitmask limit",
                couplings.len()
            )));
        }
        Ok(Self { couplings })
    }

    /// `n` couplings drawn i.i.d. uniform in `[low, high)` from a ChaCha8 stream
    /// seeded with `seed`. The first `k` draws do not depend on `n`.
    pub fn random(n: usize, low: f64, high: f64, seed: u64) -> Result<Self> {
        if !(low < high) {
            return Err(Error::InvalidModel(format!("empty coupling range [{low}, {high})")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::new((0..n).map(|_| T::lit(rng.random_range(low..high))).collect())
    }

    pub fn n_bath(&self) -> usize {
        self.couplings.len()
    }

    pub fn n_factors(&self) -> usize {
        self.couplings.len() + 1
    }

    pub fn couplings(&self) -> &[T] {
        &self.couplings
    }

    pub fn sig(&self) -> DimSignature {
        DimSignature::qubits(self.n_factors()).unwrap()
    }

    /// Bath labels permuted: new bath spin `k` is old bath spin `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self {
            couplings: perm.iter().map(|&k| self.couplings[k]).collect(),
        }
    }

    /// Diagonal of `H` over all `2^(N+1)` basis states.
    pub fn energies(&self) -> Vec<T> {
        let n = self.n_factors();
        let half = T::lit(0.5);
        (0..1usize << n)
            .map(|idx| {
                let sp = spin(idx, 0, n);
                self.couplings
                    .iter()
                    .enumerate()
                    .fold(T::zero(), |acc, (i, &g)| acc + half * g * sp * spin(idx, i + 1, n))
            })
            .collect()
    }

    pub fn diagonal_hamiltonian(&self) -> DiagonalHamiltonian<T> {
        DiagonalHamiltonian::new(self.energies(), self.sig()).unwrap()
    }

    /// Dense `H`; only for models within [`DENSE_MAX_FACTORS`].
    pub fn hamiltonian_operator(&self) -> Result<Operator<T>> {
        self.require_dense()?;
        Operator::from_real_diagonal(&self.energies(), self.sig())
    }

    pub fn require_dense(&self) -> Result<()> {
        if self.n_factors() > DENSE_MAX_FACTORS {
            return Err(Error::DenseCapExceeded {
                qubits: self.n_factors(),
                cap: DENSE_MAX_FACTORS,
            });
        }
        Ok(())
    }
}

/// Bit-width bookkeeping for basis indices.
struct PauliLimit;
impl PauliLimit {
    const BITS: usize = 63;
}

#[inline]
fn spin<T: Real>(idx: usize, factor: usize, n: usize) -> T {
    if (idx >> (n - 1 - factor)) & 1 == 0 {
        T::one()
    } else {
        -T::one()
    }
}

/// The Hamiltonian in whichever representation fits.
#[derive(Debug, Clone)]
pub enum Hamiltonian<T: Real> {
    Dense(Operator<T>),
    Diagonal(DiagonalHamiltonian<T>),
}

impl<T: Real> Hamiltonian<T> {
    pub fn energies(&self) -> Vec<T> {
        match self {
            Self::Dense(op) => op.real_diagonal(),
            Self::Diagonal(d) => d.energies().to_vec(),
        }
    }
}

/// `H = Σ (g_i/2) σ_z^(P) σ_z^(i)`, dense up to 12 bath spins and as a phase
/// vector beyond that.
pub fn build_hamiltonian<T: Real>(model: &SpinBathModel<T>) -> Hamiltonian<T> {
    if model.n_factors() <= DENSE_MAX_FACTORS {
        Hamiltonian::Dense(model.hamiltonian_operator().unwrap())
    } else {
        Hamiltonian::Diagonal(model.diagonal_hamiltonian())
    }
}

/// System/environment split of the factors `0..n_factors`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Partition {
    system: Vec<usize>,
    environment: Vec<usize>,
}

impl Partition {
    pub fn new(system: &[usize], n_factors: usize) -> Result<Self> {
        if system.is_empty() {
            return Err(Error::InvalidPartition("system factor set is empty".into()));
        }
        let mut s = system.to_vec();
        s.sort_unstable();
        s.dedup();
        if let Some(&bad) = s.iter().find(|&&k| k >= n_factors) {
            return Err(Error::FactorOutOfRange {
                index: bad,
                n_factors,
            });
        }
        let environment = (0..n_factors).filter(|k| !s.contains(k)).collect();
        Ok(Self {
            system: s,
            environment,
        })
    }

    pub fn system(&self) -> &[usize] {
        &self.system
    }

    pub fn environment(&self) -> &[usize] {
        &self.environment
    }

    pub fn n_factors(&self) -> usize {
        self.system.len() + self.environment.len()
    }
}

/// The three named decompositions plus a free choice of system factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartitionSpec {
    /// `S = P`
    Dec1,
    /// `S = P_j`
    Dec2(usize),
    /// `S = P_1 ∪ ... ∪ P_p`
    Dec3(usize),
    Custom(Vec<usize>),
}

pub fn make_partition<T: Real>(model: &SpinBathModel<T>, spec: &PartitionSpec) -> Result<Partition> {
    let n = model.n_bath();
    let nf = model.n_factors();
    match *spec {
        PartitionSpec::Dec1 => Partition::new(&[0], nf),
        PartitionSpec::Dec2(j) => {
            if j == 0 || j > n {
                return Err(Error::InvalidPartition(format!("dec2 index {j} outside 1..={n}")));
            }
            Partition::new(&[j], nf)
        }
        PartitionSpec::Dec3(p) => {
            if p == 0 || p > n {
                return Err(Error::InvalidPartition(format!("dec3 size {p} outside 1..={n}")));
            }
            Partition::new(&(1..=p).collect::<Vec<_>>(), nf)
        }
        PartitionSpec::Custom(ref set) => Partition::new(set, nf),
    }
}

/// Amplitude pairs `(↑, ↓)` of an uncorrelated initial state.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductState<T: Real> {
    p: [Complex<T>; 2],
    bath: Vec<[Complex<T>; 2]>,
}

impl<T: Real> ProductState<T> {
    pub fn new(p: [Complex<T>; 2], bath: Vec<[Complex<T>; 2]>) -> Result<Self> {
        let tol = T::lit(1e-12).max(T::default_epsilon() * T::lit(16.0));
        for (k, pair) in std::iter::once(&p).chain(bath.iter()).enumerate() {
            let norm = pair[0].norm_sqr() + pair[1].norm_sqr();
            if (norm - T::one()).abs() > tol {
                return Err(Error::Unnormalized {
                    index: k,
                    norm: norm.to_f64_lossy(),
                });
            }
        }
        Ok(Self { p, bath })
    }

    pub fn up() -> [Complex<T>; 2] {
        [c_re(T::one()), c_re(T::zero())]
    }

    /// `(|↑> + |↓>)/√2`
    pub fn plus() -> [Complex<T>; 2] {
        let s = T::lit(0.5).sqrt();
        [c_re(s), c_re(s)]
    }

    /// Uniformly distributed point on the Bloch sphere.
    pub fn haar_pair<R: Rng>(rng: &mut R) -> [Complex<T>; 2] {
        let z: f64 = rng.random_range(-1.0..1.0);
        let phi: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let up = T::lit(((1.0 + z) / 2.0).sqrt());
        let down = T::lit(((1.0 - z) / 2.0).sqrt());
        [c_re(up), cis(T::lit(phi)) * down]
    }

    /// Every bath spin in `pair`.
    pub fn uniform(p: [Complex<T>; 2], pair: [Complex<T>; 2], n: usize) -> Result<Self> {
        Self::new(p, vec![pair; n])
    }

    /// Bath spins drawn independently from the Bloch sphere (ChaCha8, `seed`).
    pub fn random_bath(p: [Complex<T>; 2], n: usize, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::new(p, (0..n).map(|_| Self::haar_pair(&mut rng)).collect())
    }

    pub fn p(&self) -> [Complex<T>; 2] {
        self.p
    }

    pub fn bath(&self) -> &[[Complex<T>; 2]] {
        &self.bath
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self {
            p: self.p,
            bath: perm.iter().map(|&k| self.bath[k]).collect(),
        }
    }

    fn factor_pairs(&self) -> impl Iterator<Item = &[Complex<T>; 2]> {
        std::iter::once(&self.p).chain(self.bath.iter())
    }

    /// Amplitude vector of the product state, factor 0 most significant.
    pub fn amplitudes(&self) -> Vec<Complex<T>> {
        let mut amps = vec![c_re(T::one())];
        for pair in self.factor_pairs() {
            amps = amps
                .iter()
                .flat_map(|&a| [a * pair[0], a * pair[1]])
                .collect();
        }
        amps
    }
}

fn check_consistent<T: Real>(model: &SpinBathModel<T>, ps: &ProductState<T>) -> Result<()> {
    if ps.bath.len() != model.n_bath() {
        return Err(Error::InvalidModel(format!(
            "{} bath amplitude pairs for {} bath spins",
            ps.bath.len(),
            model.n_bath()
        )));
    }
    Ok(())
}

/// `|ψ0><ψ0|` for the product state; dense, so capped at [`DENSE_MAX_FACTORS`].
pub fn initial_state<T: Real>(model: &SpinBathModel<T>, ps: &ProductState<T>) -> Result<DensityMatrix<T>> {
    check_consistent(model, ps)?;
    model.require_dense()?;
    DensityMatrix::from_pure(&ps.amplitudes(), model.sig())
}

/// `|ψ0>` as an amplitude vector.
pub fn initial_pure<T: Real>(model: &SpinBathModel<T>, ps: &ProductState<T>) -> Result<PureState<T>> {
    check_consistent(model, ps)?;
    PureState::new(ps.amplitudes(), model.sig())
}

/// Multiplies factors in a canonical order so the result does not depend on
/// how the bath is labelled, bit for bit.
fn ordered_product<T: Real>(mut factors: Vec<Complex<T>>) -> Complex<T> {
    factors.sort_by(|a, b| {
        a.re.partial_cmp(&b.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.im.partial_cmp(&b.im).unwrap_or(std::cmp::Ordering::Equal))
    });
    factors.into_iter().fold(c_re(T::one()), |acc, f| acc * f)
}

/// `<φ^↓_i(t)|φ^↑_i(t)> = |α|² e^{-igt} + |β|² e^{igt}`
#[inline]
fn overlap_factor<T: Real>(g: T, pair: &[Complex<T>; 2], t: T) -> Complex<T> {
    let (ca, cb) = (pair[0].norm_sqr(), pair[1].norm_sqr());
    let gt = g * t;
    c(gt.cos() * (ca + cb), -(ca - cb) * gt.sin())
}

/// `r(t)` with `<↑|ρ_P(t)|↓> = a b* r(t)`.
pub fn coherence_factor<T: Real>(model: &SpinBathModel<T>, ps: &ProductState<T>, t: T) -> Result<Complex<T>> {
    check_consistent(model, ps)?;
    Ok(ordered_product(
        model
            .couplings
            .iter()
            .zip(&ps.bath)
            .map(|(&g, pair)| overlap_factor(g, pair, t))
            .collect(),
    ))
}

/// Closed-form reduced dynamics of the spin-bath model for any system choice.
///
/// With `P` in state `s = ±1` each bath spin evolves independently as
/// `φ_i^s(t) = α_i e^{-i g_i s t/2}|↑> + β_i e^{i g_i s t/2}|↓>`, so the global
/// state is `Σ_s c_s |s> ⊗_i |φ_i^s(t)>` and every reduced state is a sum of
/// at most four product operators weighted by environment overlaps.
#[derive(Debug, Clone)]
pub struct AnalyticSpinBath<T: Real> {
    model: SpinBathModel<T>,
    state: ProductState<T>,
}

impl<T: Real> AnalyticSpinBath<T> {
    /// Largest system (in qubits) whose reduced state is materialized.
    pub const MAX_SYSTEM: usize = 12;

    pub fn new(model: SpinBathModel<T>, state: ProductState<T>) -> Result<Self> {
        check_consistent(&model, &state)?;
        Ok(Self { model, state })
    }

    pub fn model(&self) -> &SpinBathModel<T> {
        &self.model
    }

    pub fn state(&self) -> &ProductState<T> {
        &self.state
    }

    fn bath_ket(&self, i: usize, s: T, t: T) -> [Complex<T>; 2] {
        let g = self.model.couplings[i];
        let half = g * s * t * T::lit(0.5);
        let [a, b] = self.state.bath[i];
        [a * cis(-half), b * cis(half)]
    }
}

impl<T: Real> ReducedDynamics<T> for AnalyticSpinBath<T> {
    fn sig(&self) -> DimSignature {
        self.model.sig()
    }

    fn reduced_state(&self, t: T, system: &[usize]) -> Result<DensityMatrix<T>> {
        let part = Partition::new(system, self.model.n_factors())?;
        if part.system().len() > Self::MAX_SYSTEM {
            return Err(Error::DenseCapExceeded {
                qubits: part.system().len(),
                cap: Self::MAX_SYSTEM,
            });
        }
        let p_in_system = part.system()[0] == 0;
        let spins = [T::one(), -T::one()];
        // |Φ_s> restricted to the system, for s = ↑, ↓.
        let kets: Vec<DVector<Complex<T>>> = spins
            .iter()
            .enumerate()
            .map(|(si, &s)| {
                let mut v = vec![c_re(T::one())];
                for &k in part.system() {
                    let pair = if k == 0 {
                        if si == 0 {
                            [c_re(T::one()), c_re(T::zero())]
                        } else {
                            [c_re(T::zero()), c_re(T::one())]
                        }
                    } else {
                        self.bath_ket(k - 1, s, t)
                    };
                    v = v.iter().flat_map(|&a| [a * pair[0], a * pair[1]]).collect();
                }
                DVector::from_vec(v)
            })
            .collect();
        let cp = self.state.p;
        let d = kets[0].len();
        let mut rho = DMatrix::zeros(d, d);
        for si in 0..2 {
            for sj in 0..2 {
                let mut w = cp[si] * cp[sj].conj();
                if si != sj {
                    if !p_in_system {
                        continue;
                    }
                    let env_overlaps: Vec<Complex<T>> = part
                        .environment()
                        .iter()
                        .map(|&k| {
                            let f = overlap_factor(self.model.couplings[k - 1], &self.state.bath[k - 1], t);
                            // <φ^{sj}|φ^{si}>: the ↓/↑ overlap or its conjugate.
                            if si == 0 {
                                f
                            } else {
                                f.conj()
                            }
                        })
                        .collect();
                    w *= ordered_product(env_overlaps);
                }
                rho += (&kets[si] * kets[sj].adjoint()) * w;
            }
        }
        let sig = DimSignature::qubits(d.trailing_zeros() as usize).unwrap();
        Ok(DensityMatrix::from_op_unchecked(Operator::from_parts_unchecked(rho, sig)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{commutator, tensor_product};

    #[test]
    fn single_bath_spin_hamiltonian() {
        let m = SpinBathModel::<f64>::new(vec![1.0]).unwrap();
        let h = m.hamiltonian_operator().unwrap();
        assert_eq!(h.real_diagonal(), vec![0.5, -0.5, -0.5, 0.5]);
        // oracle: (g/2) σz ⊗ σz
        let zz = tensor_product(&[Operator::pauli_z(), Operator::pauli_z()]).unwrap();
        assert!(h.max_abs_diff(&zz.scale_re(0.5)) == 0.0);
    }

    #[test]
    fn hamiltonian_commutes_with_central_sz() {
        let m = SpinBathModel::<f64>::new(vec![0.3, -1.2, 0.8]).unwrap();
        let h = m.hamiltonian_operator().unwrap();
        let sz = Operator::pauli_z().embed(&[0], &m.sig()).unwrap();
        assert_eq!(commutator(&h, &sz).unwrap().frobenius_norm(), 0.0);
        assert!(h.is_diagonal(0.0));
        assert!(h.trace().norm() < 1e-14);
    }

    #[test]
    fn zero_couplings_zero_hamiltonian() {
        let m = SpinBathModel::<f64>::new(vec![0.0; 3]).unwrap();
        assert_eq!(m.hamiltonian_operator().unwrap().frobenius_norm(), 0.0);
        assert!(SpinBathModel::<f64>::new(vec![]).is_err());
    }

    #[test]
    fn large_models_use_the_diagonal_form() {
        let m = SpinBathModel::<f64>::new(vec![0.5; 14]).unwrap();
        assert!(matches!(build_hamiltonian(&m), Hamiltonian::Diagonal(_)));
        assert!(matches!(m.hamiltonian_operator(), Err(Error::DenseCapExceeded { .. })));
        let small = SpinBathModel::<f64>::new(vec![0.5; 12]).unwrap();
        assert!(matches!(build_hamiltonian(&small), Hamiltonian::Dense(_)));
    }

    #[test]
    fn named_partitions() {
        let m = SpinBathModel::<f64>::new(vec![1.0; 4]).unwrap();
        let d1 = make_partition(&m, &PartitionSpec::Dec1).unwrap();
        assert_eq!((d1.system(), d1.environment()), (&[0][..], &[1, 2, 3, 4][..]));
        let d2 = make_partition(&m, &PartitionSpec::Dec2(2)).unwrap();
        assert_eq!((d2.system(), d2.environment()), (&[2][..], &[0, 1, 3, 4][..]));
        let d3 = make_partition(&m, &PartitionSpec::Dec3(2)).unwrap();
        assert_eq!((d3.system(), d3.environment()), (&[1, 2][..], &[0, 3, 4][..]));
        assert!(make_partition(&m, &PartitionSpec::Dec2(0)).is_err());
        assert!(make_partition(&m, &PartitionSpec::Dec2(5)).is_err());
        assert!(make_partition(&m, &PartitionSpec::Dec3(5)).is_err());
        assert!(make_partition(&m, &PartitionSpec::Custom(vec![])).is_err());
        assert!(make_partition(&m, &PartitionSpec::Custom(vec![7])).is_err());
        let c = make_partition(&m, &PartitionSpec::Custom(vec![3, 0])).unwrap();
        assert_eq!(c.system(), &[0, 3]);
    }

    #[test]
    fn initial_states() {
        let m = SpinBathModel::<f64>::new(vec![1.0, 2.0]).unwrap();
        let up = ProductState::uniform(ProductState::up(), ProductState::up(), 2).unwrap();
        let r = initial_state(&m, &up).unwrap();
        assert_eq!(r.get(0, 0), c(1.0, 0.0));
        assert!((r.trace() - 1.0).abs() < 1e-15 && (r.purity() - 1.0).abs() < 1e-12);

        let m1 = SpinBathModel::<f64>::new(vec![1.0]).unwrap();
        let plus = ProductState::uniform(ProductState::plus(), ProductState::plus(), 1).unwrap();
        let r = initial_state(&m1, &plus).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert!((r.get(i, j) - c(0.25, 0.0)).norm() < 1e-15);
            }
        }
        let bad = ProductState::new([c(1.0, 0.0), c(0.1, 0.0)], vec![]);
        assert!(matches!(bad, Err(Error::Unnormalized { index: 0, .. })));
        assert!(initial_state(&m, &plus).is_err());
    }

    #[test]
    fn coherence_factor_basics() {
        let m = SpinBathModel::<f64>::random(6, 0.1, 1.0, 3).unwrap();
        let ps = ProductState::random_bath(ProductState::plus(), 6, 4).unwrap();
        assert!((coherence_factor(&m, &ps, 0.0).unwrap() - c(1.0, 0.0)).norm() < 1e-15);
        for k in 0..100 {
            assert!(coherence_factor(&m, &ps, k as f64 * 0.37).unwrap().norm() <= 1.0 + 1e-15);
        }
    }

    #[test]
    fn random_couplings_are_prefix_stable() {
        let a = SpinBathModel::<f64>::random(5, 0.1, 1.0, 11).unwrap();
        let b = SpinBathModel::<f64>::random(10, 0.1, 1.0, 11).unwrap();
        assert_eq!(a.couplings(), &b.couplings()[..5]);
        assert!(b.couplings().iter().all(|&g| (0.1..1.0).contains(&g)));
    }
}
