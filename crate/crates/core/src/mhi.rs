//! Hamiltonian-selected preferred contexts.
//!
//! The actual-valued observables of a system are taken to be `H` together with
//! every observable that commutes with `H` without splitting any of its
//! degenerate eigenspaces, i.e. the real functions of `H`'s eigenprojectors.
//! That set is the commutative algebra spanned by the projectors, which is
//! what [`PreferredContext`] stores.

use crate::error::{Error, Result};
use crate::qcore::{spectral_projectors, unitary_exp, DimSignature, Operator, SpectralDecomposition};
use crate::scalar::{c_re, Real};
use serde::Serialize;

#[derive(Debug, Clone)]
pub struct PreferredContext<T: Real> {
    decomposition: SpectralDecomposition<T>,
}

impl<T: Real> PreferredContext<T> {
    pub fn decomposition(&self) -> &SpectralDecomposition<T> {
        &self.decomposition
    }

    /// Dimension of the commutative algebra `{Σ c_i P_i}`.
    pub fn algebra_dimension(&self) -> usize {
        self.decomposition.len()
    }

    pub fn sig(&self) -> &DimSignature {
        self.decomposition.sig()
    }

    /// `Σ f(ω_i) P_i` for a real function of the energy.
    pub fn function_of_h(&self, f: impl Fn(T) -> T) -> Operator<T> {
        self.decomposition.function_of(|w| c_re(f(w)))
    }
}

pub fn preferred_context<T: Real>(h: &Operator<T>, group_tol: T) -> Result<PreferredContext<T>> {
    Ok(PreferredContext {
        decomposition: spectral_projectors(h, group_tol)?,
    })
}

fn check_dim<T: Real>(a: &Operator<T>, b: &DimSignature, what: &str) -> Result<()> {
    if a.dim() != b.total() {
        return Err(Error::DimensionMismatch(format!(
            "{what}: dimension {} vs context dimension {}",
            a.dim(),
            b.total()
        )));
    }
    Ok(())
}

/// `O` is block diagonal in `H`'s eigenspaces and a multiple of the identity
/// on each block, both to within `tol` in Frobenius norm.
pub fn is_actual_valued<T: Real>(obs: &Operator<T>, ctx: &PreferredContext<T>, tol: T) -> Result<bool> {
    check_dim(obs, ctx.sig(), "observable")?;
    obs.require_hermitian(T::HERMITIAN_TOL)?;
    let o = obs.matrix();
    let mut block_sum = o.clone() * c_re(T::zero());
    for g in ctx.decomposition.groups() {
        let p = g.projector.matrix();
        let compression = p * o * p;
        let mean = (p * o).trace() / c_re(T::from_usize(g.multiplicity).unwrap());
        let off_scalar = (&compression - p * mean).norm();
        if off_scalar > tol {
            return Ok(false);
        }
        block_sum += compression;
    }
    Ok((o - block_sum).norm() <= tol)
}

/// Outcome of splitting `H` across a factor bipartition.
#[derive(Debug, Clone)]
pub struct CspReport<T: Real> {
    pub decomposable: bool,
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    /// Local part on the first factor group (carries the trace of `H`).
    pub h1: Operator<T>,
    /// Local part on the second factor group, traceless.
    pub h2: Operator<T>,
    /// Frobenius norm of `H - (H1 ⊗ I + I ⊗ H2)`.
    pub interaction_norm: T,
}

#[derive(Debug, Clone, Serialize)]
pub struct CspSummary {
    pub decomposable: bool,
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    pub interaction_norm: f64,
}

impl<T: Real> CspReport<T> {
    pub fn summary(&self) -> CspSummary {
        CspSummary {
            decomposable: self.decomposable,
            first: self.first.clone(),
            second: self.second.clone(),
            interaction_norm: self.interaction_norm.to_f64_lossy(),
        }
    }
}

/// Orthogonal (Frobenius) projection of `H` onto `span{A ⊗ I, I ⊗ B}`:
///
/// ```text
/// H1 = Tr_2(H)/d2,   H2 = Tr_1(H)/d1 - Tr(H)/(d1 d2) I
/// ```
///
/// The residual is the interaction term; the split satisfies the
/// composite-system condition iff it vanishes (within `tol`).
pub fn csp_check<T: Real>(h: &Operator<T>, first: &[usize], tol: T) -> Result<CspReport<T>> {
    h.require_hermitian(T::HERMITIAN_TOL)?;
    let sig = h.sig();
    let first = sig.normalize_positions(first)?;
    let second = sig.complement(&first);
    if first.is_empty() || second.is_empty() {
        return Err(Error::InvalidPartition(
            "both sides of the bipartition must be non-empty".into(),
        ));
    }
    let d1: usize = first.iter().map(|&k| sig.factors()[k]).product();
    let d2: usize = second.iter().map(|&k| sig.factors()[k]).product();
    let tr = h.trace().re;
    let h1 = h.partial_trace(&first)?.scale_re(T::one() / T::from_usize(d2).unwrap());
    let tr1 = h.partial_trace(&second)?.scale_re(T::one() / T::from_usize(d1).unwrap());
    let shift = tr / T::from_usize(d1 * d2).unwrap();
    let h2 = tr1.sub(&Operator::identity(tr1.sig().clone()).scale_re(shift))?;
    let local = h1.embed(&first, sig)?.add(&h2.embed(&second, sig)?)?;
    let interaction_norm = h.sub(&local)?.frobenius_norm();
    Ok(CspReport {
        decomposable: interaction_norm <= tol,
        first,
        second,
        h1,
        h2,
        interaction_norm,
    })
}

/// Default tolerance for projector comparisons in [`context_invariance`].
pub const INVARIANCE_TOL: f64 = 1e-10;

/// Whether every context projector of `H` is unchanged by `e^{iGθ} P e^{-iGθ}`
/// for each `θ` in `params`.
pub fn context_invariance<T: Real>(h: &Operator<T>, g: &Operator<T>, params: &[T]) -> Result<bool> {
    let ctx = preferred_context(h, T::GROUP_TOL)?;
    context_invariance_with(&ctx, g, params, T::lit(INVARIANCE_TOL).max(T::HERMITIAN_TOL))
}

pub fn context_invariance_with<T: Real>(
    ctx: &PreferredContext<T>,
    g: &Operator<T>,
    params: &[T],
    tol: T,
) -> Result<bool> {
    check_dim(g, ctx.sig(), "generator")?;
    for &theta in params {
        let u = unitary_exp(g, theta)?;
        let um = u.matrix();
        for p in ctx.decomposition.projectors() {
            let rotated = um * p.matrix() * um.adjoint();
            let diff = (rotated - p.matrix()).iter().fold(T::zero(), |a, z| a.max(z.norm_sqr().sqrt()));
            if diff > tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
