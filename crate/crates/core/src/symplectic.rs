//! The standard symplectic vector space `R^{2n}` with compatible complex structure.
//!
//! Coordinates are ordered `(e_1, ..., e_n, f_1, ..., f_n)` with `f_j = J e_j`.
//! Real vectors `(x, xi)` are identified with `z = x + i xi` in `C^n`.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::C64;

#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticSpace {
    pub n: usize,
    pub omega: DMatrix<f64>,
    pub complex_structure: DMatrix<f64>,
    pub metric: DMatrix<f64>,
    pub labels: Vec<String>,
}

/// Builds `(R^{2n}, omega, J, g)` in the canonical symplectic basis.
pub fn make_standard_space(n: usize) -> Result<SymplecticSpace> {
    if n == 0 {
        return Err(Error::InvalidArgument("dimension n must be >= 1".into()));
    }
    let dim = 2 * n;
    let mut omega = DMatrix::zeros(dim, dim);
    let mut j = DMatrix::zeros(dim, dim);
    for k in 0..n {
        omega[(k, n + k)] = 1.0;
        omega[(n + k, k)] = -1.0;
        // J e_k = f_k, J f_k = -e_k (columns are images).
        j[(n + k, k)] = 1.0;
        j[(k, n + k)] = -1.0;
    }
    let metric = &omega * &j;
    let labels = (1..=n)
        .map(|k| format!("e{k}"))
        .chain((1..=n).map(|k| format!("f{k}")))
        .collect();
    Ok(SymplecticSpace {
        n,
        omega,
        complex_structure: j,
        metric,
        labels,
    })
}

impl SymplecticSpace {
    pub fn dim(&self) -> usize {
        2 * self.n
    }

    fn check(&self, v: &[f64]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: v.len(),
            });
        }
        Ok(())
    }

    fn bilinear(m: &DMatrix<f64>, v: &[f64], w: &[f64]) -> f64 {
        let mut s = 0.0;
        for i in 0..v.len() {
            for j in 0..w.len() {
                s += v[i] * m[(i, j)] * w[j];
            }
        }
        s
    }

    pub fn omega_form(&self, v: &[f64], w: &[f64]) -> Result<f64> {
        self.check(v)?;
        self.check(w)?;
        Ok(Self::bilinear(&self.omega, v, w))
    }

    pub fn metric_form(&self, v: &[f64], w: &[f64]) -> Result<f64> {
        self.check(v)?;
        self.check(w)?;
        Ok(Self::bilinear(&self.metric, v, w))
    }

    pub fn apply_j(&self, v: &[f64]) -> Result<Vec<f64>> {
        self.check(v)?;
        let d = self.dim();
        Ok((0..d)
            .map(|i| (0..d).map(|k| self.complex_structure[(i, k)] * v[k]).sum())
            .collect())
    }

    /// `h(v, w) = g(v, w) - i omega(v, w)`.
    pub fn hermitian_form(&self, v: &[f64], w: &[f64]) -> Result<C64> {
        Ok(C64::new(self.metric_form(v, w)?, -self.omega_form(v, w)?))
    }

    pub fn basis_vector(&self, label: &str) -> Option<Vec<f64>> {
        let idx = self.labels.iter().position(|l| l == label)?;
        let mut v = vec![0.0; self.dim()];
        v[idx] = 1.0;
        Some(v)
    }
}

/// `(x, xi) -> x + i xi`.
pub fn to_complex(v: &[f64]) -> Vec<C64> {
    let n = v.len() / 2;
    (0..n).map(|j| C64::new(v[j], v[n + j])).collect()
}

pub fn from_complex(z: &[C64]) -> Vec<f64> {
    z.iter().map(|w| w.re).chain(z.iter().map(|w| w.im)).collect()
}
