//! Matrix exchange format: `{"sig": [2, 2], "matrix": [[[re, im], ...], ...]}`
//! with one inner array per row.

use super::dims::DimSignature;
use super::operator::Operator;
use crate::error::{Error, Result};
use crate::scalar::{c, Real};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub sig: Vec<usize>,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

impl MatrixJson {
    pub fn to_operator<T: Real>(&self) -> Result<Operator<T>> {
        let sig = DimSignature::new(self.sig.clone())?;
        let n = self.matrix.len();
        if let Some(bad) = self.matrix.iter().position(|r| r.len() != n) {
            return Err(Error::Json(format!(
                "row {bad} has {} entries, expected {n}",
                self.matrix[bad].len()
            )));
        }
        let m = DMatrix::from_fn(n, n, |i, j| {
            let [re, im] = self.matrix[i][j];
            c(T::lit(re), T::lit(im))
        });
        Operator::new(m, sig)
    }

    pub fn from_operator<T: Real>(op: &Operator<T>) -> Self {
        let m = op.matrix();
        Self {
            sig: op.sig().factors().to_vec(),
            matrix: (0..m.nrows())
                .map(|i| {
                    (0..m.ncols())
                        .map(|j| [m[(i, j)].re.to_f64_lossy(), m[(i, j)].im.to_f64_lossy()])
                        .collect()
                })
                .collect(),
        }
    }
}

pub fn operator_from_json<T: Real>(text: &str) -> Result<Operator<T>> {
    let mj: MatrixJson = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    mj.to_operator()
}

pub fn operator_to_json<T: Real>(op: &Operator<T>) -> String {
    serde_json::to_string(&MatrixJson::from_operator(op)).expect("matrix serializes")
}
