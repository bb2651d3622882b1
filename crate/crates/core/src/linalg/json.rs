//! Matrix JSON format: `{"dim": n, "re": [[...]], "im": [[...]]}`.

use serde::{Deserialize, Serialize};

use super::{ComplexMatrix, C64};
use crate::error::{Error, Result};

/// Wire form of a [`ComplexMatrix`].
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixJson {
    pub fn into_matrix(self) -> Result<ComplexMatrix> {
        let n = self.dim;
        if n == 0 {
            return Err(Error::Parse("dim must be at least 1".into()));
        }
        for (name, part) in [("re", &self.re), ("im", &self.im)] {
            if part.len() != n || part.iter().any(|row| row.len() != n) {
                return Err(Error::Parse(format!("{name} is not a {n}x{n} array")));
            }
        }
        let data: Vec<C64> = self
            .re
            .iter()
            .flatten()
            .zip(self.im.iter().flatten())
            .map(|(&re, &im)| C64::new(re, im))
            .collect();
        ComplexMatrix::new(n, data).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl From<&ComplexMatrix> for MatrixJson {
    fn from(m: &ComplexMatrix) -> Self {
        let n = m.dim();
        let re = (0..n).map(|i| m.row(i).iter().map(|z| z.re).collect()).collect();
        let im = (0..n).map(|i| m.row(i).iter().map(|z| z.im).collect()).collect();
        Self { dim: n, re, im }
    }
}

impl ComplexMatrix {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let wire: MatrixJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        wire.into_matrix()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&MatrixJson::from(self)).expect("finite entries serialize")
    }
}
