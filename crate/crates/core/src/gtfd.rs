//! Three-step decoherence analysis of a closed system.
//!
//! 1. choose relevant observables `O_S ⊗ I_E` ([`RelevantSpace`]),
//! 2. follow their expectation values in the unitarily evolving state
//!    ([`expectation_series`]), computed through the reduced state `ρ_S(t)`,
//! 3. decide whether they settle to equilibrium ([`detect_equilibrium`]) and,
//!    if they do, read off the pointer basis of the time-averaged `ρ_S`.
//!
//! Finite systems recur, so "settles" means: over the trailing part of a
//! finite horizon every tracked expectation stays inside a band of width
//! `band_tol`.

use crate::error::{Error, Result};
use crate::qcore::{
    expectation, spectral_projectors, DensityMatrix, DiagonalHamiltonian, DimSignature, Operator,
    PauliString, Propagator, PureState, SpectralDecomposition, SpectrumSummary,
};
use crate::scalar::Real;
use crate::spinbath::Partition;
use rayon::prelude::*;
use serde::Serialize;
use std::fmt::Write as _;

/// Anything that can produce the reduced state of a factor subset at time `t`.
pub trait ReducedDynamics<T: Real>: Sync {
    fn sig(&self) -> DimSignature;
    fn reduced_state(&self, t: T, system: &[usize]) -> Result<DensityMatrix<T>>;

    /// Every observable of `space` at time `t`.
    fn expectations(&self, t: T, space: &RelevantSpace<T>) -> Result<Vec<T>> {
        let rho_s = self.reduced_state(t, space.partition().system())?;
        space
            .observables()
            .iter()
            .map(|o| o.expectation_reduced(&rho_s))
            .collect()
    }
}

/// Full density-matrix evolution followed by a partial trace.
#[derive(Debug, Clone)]
pub struct DenseDynamics<T: Real> {
    rho0: DensityMatrix<T>,
    propagator: Propagator<T>,
}

impl<T: Real> DenseDynamics<T> {
    pub fn new(rho0: DensityMatrix<T>, h: &Operator<T>) -> Result<Self> {
        if rho0.dim() != h.dim() {
            return Err(Error::DimensionMismatch(format!(
                "state dimension {} vs Hamiltonian dimension {}",
                rho0.dim(),
                h.dim()
            )));
        }
        Ok(Self {
            rho0,
            propagator: Propagator::new(h)?,
        })
    }

    pub fn state_at(&self, t: T) -> Result<DensityMatrix<T>> {
        self.propagator.evolve(&self.rho0, t)
    }
}

impl<T: Real> ReducedDynamics<T> for DenseDynamics<T> {
    fn sig(&self) -> DimSignature {
        self.rho0.sig().clone()
    }

    fn reduced_state(&self, t: T, system: &[usize]) -> Result<DensityMatrix<T>> {
        self.state_at(t)?.partial_trace(system)
    }
}

/// Pure-state evolution under a diagonal Hamiltonian: the full amplitude
/// vector is propagated, then reshaped into the reduced state.
#[derive(Debug, Clone)]
pub struct PureDiagonalDynamics<T: Real> {
    psi0: PureState<T>,
    h: DiagonalHamiltonian<T>,
}

impl<T: Real> PureDiagonalDynamics<T> {
    pub fn new(psi0: PureState<T>, h: DiagonalHamiltonian<T>) -> Result<Self> {
        if psi0.sig().total() != h.sig().total() {
            return Err(Error::DimensionMismatch(format!(
                "state dimension {} vs Hamiltonian dimension {}",
                psi0.sig().total(),
                h.sig().total()
            )));
        }
        Ok(Self { psi0, h })
    }

    pub fn state_at(&self, t: T) -> Result<PureState<T>> {
        self.h.evolve_pure(&self.psi0, t)
    }
}

impl<T: Real> ReducedDynamics<T> for PureDiagonalDynamics<T> {
    fn sig(&self) -> DimSignature {
        self.psi0.sig().clone()
    }

    fn reduced_state(&self, t: T, system: &[usize]) -> Result<DensityMatrix<T>> {
        self.state_at(t)?.reduced_density(system)
    }

    // Pauli observables are read off the amplitudes directly, skipping the
    // 2^|S| x 2^|S| reduced matrix.
    fn expectations(&self, t: T, space: &RelevantSpace<T>) -> Result<Vec<T>> {
        let sig = self.psi0.sig();
        let lifted: Option<Vec<PauliString>> = if sig.is_qubits() {
            space
                .observables()
                .iter()
                .map(|o| match &o.observable {
                    SystemObservable::Pauli(p) => p.embed(space.partition().system(), sig.len()).ok(),
                    SystemObservable::Dense(_) => None,
                })
                .collect()
        } else {
            None
        };
        match lifted {
            Some(strings) => {
                let psi = self.state_at(t)?;
                Ok(strings
                    .iter()
                    .map(|p| p.expectation_pure(psi.amplitudes()).re)
                    .collect())
            }
            None => {
                let rho_s = self.reduced_state(t, space.partition().system())?;
                space
                    .observables()
                    .iter()
                    .map(|o| o.expectation_reduced(&rho_s))
                    .collect()
            }
        }
    }
}

/// System-side part `O_S` of a relevant observable `O_S ⊗ I_E`.
#[derive(Debug, Clone)]
pub enum SystemObservable<T: Real> {
    Pauli(PauliString),
    Dense(Operator<T>),
}

#[derive(Debug, Clone)]
pub struct RelevantObservable<T: Real> {
    pub label: String,
    pub observable: SystemObservable<T>,
}

impl<T: Real> RelevantObservable<T> {
    pub fn system_operator(&self) -> Operator<T> {
        match &self.observable {
            SystemObservable::Pauli(p) => p.to_operator(),
            SystemObservable::Dense(op) => op.clone(),
        }
    }

    /// `<O_S>_{ρ_S}`; real part only, the observable is hermitian.
    pub fn expectation_reduced(&self, rho_s: &DensityMatrix<T>) -> Result<T> {
        match &self.observable {
            SystemObservable::Pauli(p) => {
                if rho_s.dim() != 1usize << p.n_qubits() {
                    return Err(Error::DimensionMismatch(format!(
                        "{}-qubit string against dimension {}",
                        p.n_qubits(),
                        rho_s.dim()
                    )));
                }
                Ok(p.trace_with(rho_s.op().matrix()).re)
            }
            SystemObservable::Dense(op) => Ok(expectation(rho_s, op)?.re),
        }
    }
}

/// Relevant observables of a partition: a generating set of `O_S ⊗ I_E`.
#[derive(Debug, Clone)]
pub struct RelevantSpace<T: Real> {
    partition: Partition,
    full_sig: DimSignature,
    observables: Vec<RelevantObservable<T>>,
}

/// Default largest system for which the full Pauli basis is enumerated.
pub const DEFAULT_PAULI_CAP: usize = 4;

fn system_qubits(partition: &Partition, full_sig: &DimSignature) -> Result<usize> {
    if partition.n_factors() != full_sig.len() {
        return Err(Error::InvalidPartition(format!(
            "partition covers {} factors, signature has {}",
            partition.n_factors(),
            full_sig.len()
        )));
    }
    for &k in partition.system() {
        let d = full_sig.factors()[k];
        if d != 2 {
            return Err(Error::NotQubit(d));
        }
    }
    Ok(partition.system().len())
}

impl<T: Real> RelevantSpace<T> {
    /// All `4^|S|` Pauli strings on the system qubits, identity first.
    pub fn pauli_basis(partition: &Partition, full_sig: &DimSignature, cap: usize) -> Result<Self> {
        let n = system_qubits(partition, full_sig)?;
        if n > cap {
            return Err(Error::SystemTooLarge { size: n, cap });
        }
        Ok(Self::from_strings(partition, full_sig, PauliString::all(n)))
    }

    /// Identity plus the uniform products `X^⊗S`, `Y^⊗S`, `Z^⊗S`.
    pub fn collective(partition: &Partition, full_sig: &DimSignature) -> Result<Self> {
        let n = system_qubits(partition, full_sig)?;
        let strings = ["I", "X", "Y", "Z"]
            .iter()
            .map(|l| PauliString::parse(&l.repeat(n)).unwrap())
            .collect();
        Ok(Self::from_strings(partition, full_sig, strings))
    }

    pub fn from_pauli_labels(partition: &Partition, full_sig: &DimSignature, labels: &[String]) -> Result<Self> {
        let n = system_qubits(partition, full_sig)?;
        let strings = labels
            .iter()
            .map(|l| {
                let p = PauliString::parse(l)?;
                if p.n_qubits() != n {
                    return Err(Error::DimensionMismatch(format!(
                        "label {l:?} has {} qubits, system has {n}",
                        p.n_qubits()
                    )));
                }
                Ok(p)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_strings(partition, full_sig, strings))
    }

    /// Arbitrary hermitian system operators.
    pub fn from_operators(
        partition: &Partition,
        full_sig: &DimSignature,
        ops: Vec<(String, Operator<T>)>,
    ) -> Result<Self> {
        if partition.n_factors() != full_sig.len() {
            return Err(Error::InvalidPartition("partition/signature size mismatch".into()));
        }
        let system_sig = full_sig.restrict(partition.system()).unwrap();
        let mut observables = Vec::with_capacity(ops.len());
        for (label, op) in ops {
            op.require_hermitian(T::HERMITIAN_TOL)?;
            if op.sig() != &system_sig {
                return Err(Error::DimensionMismatch(format!(
                    "observable {label:?} acts on {:?}, system is {:?}",
                    op.sig().factors(),
                    system_sig.factors()
                )));
            }
            observables.push(RelevantObservable {
                label,
                observable: SystemObservable::Dense(op),
            });
        }
        Ok(Self {
            partition: partition.clone(),
            full_sig: full_sig.clone(),
            observables,
        })
    }

    fn from_strings(partition: &Partition, full_sig: &DimSignature, strings: Vec<PauliString>) -> Self {
        Self {
            partition: partition.clone(),
            full_sig: full_sig.clone(),
            observables: strings
                .into_iter()
                .map(|p| RelevantObservable {
                    label: p.label(),
                    observable: SystemObservable::Pauli(p),
                })
                .collect(),
        }
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn full_sig(&self) -> &DimSignature {
        &self.full_sig
    }

    pub fn observables(&self) -> &[RelevantObservable<T>] {
        &self.observables
    }

    pub fn labels(&self) -> Vec<String> {
        self.observables.iter().map(|o| o.label.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.observables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observables.is_empty()
    }

    /// `O_S ⊗ I_E` on the full space, factors in their original positions.
    pub fn embedded(&self, index: usize) -> Result<Operator<T>> {
        self.observables[index]
            .system_operator()
            .embed(self.partition.system(), &self.full_sig)
    }
}

/// Pauli-basis relevant space with the default cap.
pub fn relevant_space<T: Real>(partition: &Partition, full_sig: &DimSignature) -> Result<RelevantSpace<T>> {
    RelevantSpace::pauli_basis(partition, full_sig, DEFAULT_PAULI_CAP)
}

/// Expectation values of labelled observables on a time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpectationSeries<T: Real> {
    times: Vec<T>,
    labels: Vec<String>,
    values: Vec<Vec<T>>,
}

impl<T: Real> ExpectationSeries<T> {
    /// `values[k]` is the series of observable `labels[k]`.
    pub fn new(times: Vec<T>, labels: Vec<String>, values: Vec<Vec<T>>) -> Result<Self> {
        check_times(&times)?;
        if labels.len() != values.len() {
            return Err(Error::InvalidSeries(format!(
                "{} labels for {} columns",
                labels.len(),
                values.len()
            )));
        }
        if let Some(bad) = values.iter().position(|v| v.len() != times.len()) {
            return Err(Error::InvalidSeries(format!(
                "column {} has {} samples, expected {}",
                labels[bad],
                values[bad].len(),
                times.len()
            )));
        }
        Ok(Self { times, labels, values })
    }

    pub fn times(&self) -> &[T] {
        &self.times
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn values(&self) -> &[Vec<T>] {
        &self.values
    }

    pub fn column(&self, label: &str) -> Option<&[T]> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|k| self.values[k].as_slice())
    }

    /// Reorders columns: new column `k` is old column `perm[k]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self {
            times: self.times.clone(),
            labels: perm.iter().map(|&k| self.labels[k].clone()).collect(),
            values: perm.iter().map(|&k| self.values[k].clone()).collect(),
        }
    }

    /// `t,<label>...` header, one row per time, 17 significant digits.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t");
        for l in &self.labels {
            out.push(',');
            out.push_str(l);
        }
        out.push('\n');
        for (i, t) in self.times.iter().enumerate() {
            write!(out, "{:.16e}", t.to_f64_lossy()).unwrap();
            for col in &self.values {
                write!(out, ",{:.16e}", col[i].to_f64_lossy()).unwrap();
            }
            out.push('\n');
        }
        out
    }
}

fn check_times<T: Real>(times: &[T]) -> Result<()> {
    if times.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidSeries("times must be strictly increasing".into()));
    }
    Ok(())
}

/// `count` equally spaced times from `start` to `end` inclusive.
pub fn time_grid<T: Real>(start: T, end: T, count: usize) -> Result<Vec<T>> {
    if count < 2 || !(start < end) {
        return Err(Error::InvalidParameter(format!(
            "time grid needs count >= 2 and start < end (count {count})"
        )));
    }
    let step = (end - start) / T::from_usize(count - 1).unwrap();
    Ok((0..count)
        .map(|k| {
            if k == count - 1 {
                end
            } else {
                start + step * T::from_usize(k).unwrap()
            }
        })
        .collect())
}

/// Reduced states `ρ_S(t)` along a time grid, computed in parallel.
pub fn reduced_trajectory<T: Real, D: ReducedDynamics<T>>(
    dynamics: &D,
    system: &[usize],
    times: &[T],
) -> Result<Vec<DensityMatrix<T>>> {
    times
        .par_iter()
        .map(|&t| dynamics.reduced_state(t, system))
        .collect()
}

/// `<O_S ⊗ I_E>_{ρ(t)}` for every generator, evaluated as `<O_S>_{ρ_S(t)}`.
pub fn expectation_series<T: Real, D: ReducedDynamics<T>>(
    dynamics: &D,
    space: &RelevantSpace<T>,
    times: &[T],
) -> Result<ExpectationSeries<T>> {
    check_times(times)?;
    if dynamics.sig() != *space.full_sig() {
        return Err(Error::DimensionMismatch(format!(
            "dynamics on {:?}, relevant space on {:?}",
            dynamics.sig().factors(),
            space.full_sig().factors()
        )));
    }
    let rows: Vec<Vec<T>> = times
        .par_iter()
        .map(|&t| dynamics.expectations(t, space))
        .collect::<Result<_>>()?;
    let values = (0..space.len())
        .map(|k| rows.iter().map(|r| r[k]).collect())
        .collect();
    ExpectationSeries::new(times.to_vec(), space.labels(), values)
}

/// `ρ_G = Tr_E(ρ) ⊗ I_E / d_E`: the maximally-mixed-environment representative
/// of the states agreeing with `ρ` on every `O_S ⊗ I_E`.
pub fn coarse_grained_state<T: Real>(rho: &DensityMatrix<T>, partition: &Partition) -> Result<DensityMatrix<T>> {
    if partition.n_factors() != rho.sig().len() {
        return Err(Error::InvalidPartition(format!(
            "partition covers {} factors, state has {}",
            partition.n_factors(),
            rho.sig().len()
        )));
    }
    let rho_s = rho.partial_trace(partition.system())?;
    let d_env: usize = partition
        .environment()
        .iter()
        .map(|&k| rho.sig().factors()[k])
        .product();
    let embedded = rho_s
        .op()
        .embed(partition.system(), rho.sig())?
        .scale_re(T::one() / T::from_usize(d_env).unwrap());
    Ok(DensityMatrix::from_op_unchecked(embedded))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EquilibriumParams<T: Real> {
    /// Fraction of the horizon, at its end, examined for equilibrium.
    pub window_fraction: T,
    /// Largest peak-to-peak spread still counted as equilibrated.
    pub band_tol: T,
    /// Trailing spread above this multiple of the initial spread means the
    /// observable is still oscillating as strongly as it started.
    pub recurrence_guard: T,
}

impl<T: Real> Default for EquilibriumParams<T> {
    fn default() -> Self {
        Self {
            window_fraction: T::lit(0.5),
            band_tol: T::lit(0.05),
            recurrence_guard: T::lit(0.5),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictStatus {
    Decoheres,
    NoDecoherence,
    Undecided,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumVerdict<T: Real> {
    pub status: VerdictStatus,
    pub labels: Vec<String>,
    /// Trailing-window means, present exactly when the status is `Decoheres`.
    pub equilibrium_values: Option<Vec<T>>,
    pub window: (T, T),
    /// Largest trailing-window peak-to-peak spread.
    pub residual: T,
    pub trailing_spreads: Vec<T>,
    pub initial_spreads: Vec<T>,
}

impl<T: Real> EquilibriumVerdict<T> {
    pub fn decoheres(&self) -> bool {
        self.status == VerdictStatus::Decoheres
    }
}

/// Minimum number of samples accepted by [`detect_equilibrium`].
pub const MIN_SERIES_LEN: usize = 16;

fn spread<T: Real>(xs: impl Iterator<Item = T>) -> T {
    let (lo, hi) = xs.fold((None::<T>, None::<T>), |(lo, hi), x| {
        (
            Some(lo.map_or(x, |l: T| l.min(x))),
            Some(hi.map_or(x, |h: T| h.max(x))),
        )
    });
    match (lo, hi) {
        (Some(l), Some(h)) => h - l,
        _ => T::zero(),
    }
}

/// Classifies a series by the peak-to-peak spread of each observable over the
/// trailing window `[t_end - f·span, t_end]` and, for comparison, over the
/// leading window `[t_start, t_start + f·span]`:
///
/// * `Decoheres` when every trailing spread is within `band_tol`,
/// * `NoDecoherence` when some trailing spread exceeds `recurrence_guard`
///   times that observable's leading spread,
/// * `Undecided` otherwise.
pub fn detect_equilibrium<T: Real>(
    series: &ExpectationSeries<T>,
    params: &EquilibriumParams<T>,
) -> Result<EquilibriumVerdict<T>> {
    let n = series.times.len();
    if n < MIN_SERIES_LEN {
        return Err(Error::SeriesTooShort {
            len: n,
            min: MIN_SERIES_LEN,
        });
    }
    let f = params.window_fraction;
    if !(f > T::zero() && f < T::one()) {
        return Err(Error::InvalidParameter("window_fraction must lie in (0, 1)".into()));
    }
    if params.band_tol < T::zero() || params.recurrence_guard < T::zero() {
        return Err(Error::InvalidParameter("band_tol and recurrence_guard must be >= 0".into()));
    }
    let t0 = series.times[0];
    let t1 = series.times[n - 1];
    let span = t1 - t0;
    let w_start = t1 - f * span;
    let lead_end = t0 + f * span;
    let trailing: Vec<usize> = (0..n).filter(|&i| series.times[i] >= w_start).collect();
    let leading: Vec<usize> = (0..n).filter(|&i| series.times[i] <= lead_end).collect();

    let trailing_spreads: Vec<T> = series
        .values
        .iter()
        .map(|col| spread(trailing.iter().map(|&i| col[i])))
        .collect();
    let initial_spreads: Vec<T> = series
        .values
        .iter()
        .map(|col| spread(leading.iter().map(|&i| col[i])))
        .collect();
    let residual = trailing_spreads.iter().fold(T::zero(), |a, &b| a.max(b));

    let status = if residual <= params.band_tol {
        VerdictStatus::Decoheres
    } else if trailing_spreads
        .iter()
        .zip(&initial_spreads)
        .any(|(&tr, &init)| tr > params.recurrence_guard * init)
    {
        VerdictStatus::NoDecoherence
    } else {
        VerdictStatus::Undecided
    };

    let equilibrium_values = (status == VerdictStatus::Decoheres).then(|| {
        let m = T::from_usize(trailing.len()).unwrap();
        series
            .values
            .iter()
            .map(|col| trailing.iter().fold(T::zero(), |a, &i| a + col[i]) / m)
            .collect()
    });

    Ok(EquilibriumVerdict {
        status,
        labels: series.labels.clone(),
        equilibrium_values,
        window: (series.times[trailing[0]], t1),
        residual,
        trailing_spreads,
        initial_spreads,
    })
}

/// Time average of `ρ_S(t)` over the grid points inside `window`.
pub fn equilibrium_state_estimate<T: Real, D: ReducedDynamics<T>>(
    dynamics: &D,
    partition: &Partition,
    times: &[T],
    window: (T, T),
) -> Result<DensityMatrix<T>> {
    let inside: Vec<T> = times
        .iter()
        .copied()
        .filter(|&t| t >= window.0 && t <= window.1)
        .collect();
    let states = reduced_trajectory(dynamics, partition.system(), &inside)?;
    DensityMatrix::average(&states)
        .ok_or_else(|| Error::InvalidParameter("no grid point inside the window".into()))
}

#[derive(Debug, Clone)]
pub struct PointerBasis<T: Real> {
    pub decomposition: SpectralDecomposition<T>,
    /// Some eigenvalue group of `ρ*` is degenerate, so the basis inside that
    /// eigenspace is not determined by the state.
    pub degenerate: bool,
}

/// Eigenprojectors of the equilibrium system state. Eigenvalues closer than
/// `group_tol` are treated as one degenerate group.
pub fn pointer_basis<T: Real>(
    verdict: &EquilibriumVerdict<T>,
    rho_star: &DensityMatrix<T>,
    group_tol: T,
) -> Result<PointerBasis<T>> {
    if !verdict.decoheres() {
        return Err(Error::NotDecohering);
    }
    let decomposition = spectral_projectors(rho_star.op(), group_tol)?;
    let degenerate = decomposition.is_degenerate();
    Ok(PointerBasis {
        decomposition,
        degenerate,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct PointerBasisReport {
    #[serde(flatten)]
    pub spectrum: SpectrumSummary,
    pub degenerate: bool,
}

/// Verdict file contents: `{status, window, residual, equilibrium_values, pointer_basis}`.
#[derive(Debug, Clone, Serialize)]
pub struct VerdictReport {
    pub status: VerdictStatus,
    pub window: [f64; 2],
    pub residual: f64,
    pub equilibrium_values: Option<std::collections::BTreeMap<String, f64>>,
    pub pointer_basis: Option<PointerBasisReport>,
}

impl VerdictReport {
    pub fn new<T: Real>(verdict: &EquilibriumVerdict<T>, pointer: Option<&PointerBasis<T>>) -> Self {
        Self {
            status: verdict.status,
            window: [verdict.window.0.to_f64_lossy(), verdict.window.1.to_f64_lossy()],
            residual: verdict.residual.to_f64_lossy(),
            equilibrium_values: verdict.equilibrium_values.as_ref().map(|vals| {
                verdict
                    .labels
                    .iter()
                    .cloned()
                    .zip(vals.iter().map(|v| v.to_f64_lossy()))
                    .collect()
            }),
            pointer_basis: pointer.map(|p| PointerBasisReport {
                spectrum: p.decomposition.summary(),
                degenerate: p.degenerate,
            }),
        }
    }
}

/// Series, verdict and (when decohering) pointer basis of one run.
#[derive(Debug, Clone)]
pub struct Analysis<T: Real> {
    pub series: ExpectationSeries<T>,
    pub verdict: EquilibriumVerdict<T>,
    pub pointer: Option<PointerBasis<T>>,
}

impl<T: Real> Analysis<T> {
    pub fn report(&self) -> VerdictReport {
        VerdictReport::new(&self.verdict, self.pointer.as_ref())
    }
}

/// Largest system dimension for which [`analyze`] extracts a pointer basis.
pub const POINTER_BASIS_MAX_DIM: usize = 64;

/// Runs the three steps end to end. The pointer basis groups eigenvalues of
/// the time-averaged `ρ_S` closer than `band_tol`, the same resolution the
/// verdict itself works at. Systems above [`POINTER_BASIS_MAX_DIM`] get the
/// verdict only.
pub fn analyze<T: Real, D: ReducedDynamics<T>>(
    dynamics: &D,
    space: &RelevantSpace<T>,
    times: &[T],
    params: &EquilibriumParams<T>,
) -> Result<Analysis<T>> {
    let series = expectation_series(dynamics, space, times)?;
    let verdict = detect_equilibrium(&series, params)?;
    let d_sys: usize = space
        .partition()
        .system()
        .iter()
        .map(|&k| space.full_sig().factors()[k])
        .product();
    let pointer = if verdict.decoheres() && d_sys <= POINTER_BASIS_MAX_DIM {
        let rho_star = equilibrium_state_estimate(dynamics, space.partition(), times, verdict.window)?;
        Some(pointer_basis(&verdict, &rho_star, params.band_tol.max(T::GROUP_TOL))?)
    } else {
        None
    };
    Ok(Analysis {
        series,
        verdict,
        pointer,
    })
}
