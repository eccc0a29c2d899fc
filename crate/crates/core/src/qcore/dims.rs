use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Ordered tensor-factor dimensions of a composite Hilbert space.
///
/// Factor 0 is the most significant digit of a basis index, so for
/// `[2, 2, 2]` the basis state `|q0 q1 q2>` has index `4*q0 + 2*q1 + q2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct DimSignature(Vec<usize>);

impl DimSignature {
    pub fn new(factors: Vec<usize>) -> Result<Self> {
        if factors.is_empty() || factors.iter().any(|&d| d < 2) {
            return Err(Error::InvalidSignature(factors));
        }
        Ok(Self(factors))
    }

    /// `n` qubit factors.
    pub fn qubits(n: usize) -> Result<Self> {
        Self::new(vec![2; n])
    }

    pub fn factors(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> usize {
        self.0.iter().product()
    }

    pub fn is_qubits(&self) -> bool {
        self.0.iter().all(|&d| d == 2)
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut f = self.0.clone();
        f.extend_from_slice(&other.0);
        Self(f)
    }

    /// Stride of each factor in the flattened basis index.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.0.len()];
        for k in (0..self.0.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * self.0[k + 1];
        }
        strides
    }

    /// Sorted, deduplicated copy of `positions`, checked against the factor count.
    pub fn normalize_positions(&self, positions: &[usize]) -> Result<Vec<usize>> {
        let mut p = positions.to_vec();
        p.sort_unstable();
        p.dedup();
        if let Some(&bad) = p.iter().find(|&&k| k >= self.len()) {
            return Err(Error::FactorOutOfRange {
                index: bad,
                n_factors: self.len(),
            });
        }
        Ok(p)
    }

    /// Factor positions not contained in (sorted) `positions`.
    pub fn complement(&self, positions: &[usize]) -> Vec<usize> {
        (0..self.len()).filter(|k| !positions.contains(k)).collect()
    }

    /// Signature restricted to `positions` (in the given order). `None` if empty.
    pub fn restrict(&self, positions: &[usize]) -> Option<Self> {
        if positions.is_empty() {
            return None;
        }
        Some(Self(positions.iter().map(|&k| self.0[k]).collect()))
    }

    /// Full-space offsets of every basis state of the subsystem on `positions`,
    /// enumerated with the first listed position as the most significant digit.
    pub fn offsets(&self, positions: &[usize]) -> Vec<usize> {
        let strides = self.strides();
        let mut out = vec![0usize];
        for &k in positions {
            let d = self.0[k];
            let s = strides[k];
            let mut next = Vec::with_capacity(out.len() * d);
            for &base in &out {
                for digit in 0..d {
                    next.push(base + digit * s);
                }
            }
            out = next;
        }
        out
    }
}

impl TryFrom<Vec<usize>> for DimSignature {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<DimSignature> for Vec<usize> {
    fn from(s: DimSignature) -> Self {
        s.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_signatures() {
        assert!(DimSignature::new(vec![]).is_err());
        assert!(DimSignature::new(vec![2, 1]).is_err());
        assert_eq!(DimSignature::new(vec![2, 3]).unwrap().total(), 6);
    }

    #[test]
    fn offsets_enumerate_subsystem() {
        let s = DimSignature::new(vec![2, 3, 2]).unwrap();
        assert_eq!(s.strides(), vec![6, 2, 1]);
        assert_eq!(s.offsets(&[0, 2]), vec![0, 1, 6, 7]);
        assert_eq!(s.offsets(&[]), vec![0]);
        let mut all = s.offsets(&[0, 1, 2]);
        all.sort();
        assert_eq!(all, (0..12).collect::<Vec<_>>());
    }
}
