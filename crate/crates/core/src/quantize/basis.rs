//! Truncated Hermite bases and operators on them.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, C64};

/// Tensor-product Hermite basis `|k_1, ..., k_n⟩`, `0 <= k_j < n_max`, adapted to `λ`.
///
/// The linear index is row-major in `(k_1, ..., k_n)`. When an exterior factor
/// is attached the full index is `hermite_index · 2ⁿ + exterior_index`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HermiteBasisSpec {
    pub n: usize,
    pub lambda: f64,
    pub n_max: usize,
    pub interior_margin: usize,
}

impl HermiteBasisSpec {
    pub fn new(n: usize, lambda: f64, n_max: usize) -> Result<Self> {
        Self::with_margin(n, lambda, n_max, 1)
    }

    pub fn with_margin(n: usize, lambda: f64, n_max: usize, interior_margin: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be >= 1".into()));
        }
        if lambda == 0.0 || !lambda.is_finite() {
            return Err(Error::UnsupportedLambda(lambda));
        }
        if n_max < 2 {
            return Err(Error::InvalidArgument("n_max must be >= 2".into()));
        }
        if interior_margin == 0 || interior_margin >= n_max {
            return Err(Error::InvalidArgument(format!(
                "interior margin must lie in 1..{n_max}, got {interior_margin}"
            )));
        }
        let total = (n_max as f64).powi(n as i32) * (1u64 << n) as f64;
        if total > 4096.0 {
            return Err(Error::InvalidArgument(format!(
                "basis of dimension {total} is too large for dense matrices"
            )));
        }
        Ok(Self {
            n,
            lambda,
            n_max,
            interior_margin,
        })
    }

    pub fn dim(&self) -> usize {
        self.n_max.pow(self.n as u32)
    }

    pub fn exterior_dim(&self) -> usize {
        1 << self.n
    }

    pub fn multi_index(&self, mut i: usize) -> Vec<usize> {
        let mut k = vec![0; self.n];
        for j in (0..self.n).rev() {
            k[j] = i % self.n_max;
            i /= self.n_max;
        }
        k
    }

    pub fn index_of(&self, k: &[usize]) -> usize {
        k.iter().fold(0, |acc, &kj| acc * self.n_max + kj)
    }

    pub fn total_degree(&self, i: usize) -> usize {
        self.multi_index(i).iter().sum()
    }

    /// Hermite indices whose components all lie below `n_max - margin`.
    pub fn interior(&self, margin: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.multi_index(i).iter().all(|&k| k + margin < self.n_max))
            .collect()
    }

    /// Hermite indices of total degree `<= d`.
    pub fn degree_at_most(&self, d: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.total_degree(i) <= d).collect()
    }

    /// Expands Hermite indices to full indices on `Hermite ⊗ Λ`.
    pub fn with_exterior(&self, hermite: &[usize], exterior: &[usize]) -> Vec<usize> {
        let e = self.exterior_dim();
        hermite
            .iter()
            .flat_map(|&h| exterior.iter().map(move |&s| h * e + s))
            .collect()
    }

    /// Index of `|k⟩ ⊗ e_S` in the full basis.
    pub fn full_index(&self, hermite: usize, exterior: usize) -> usize {
        hermite * self.exterior_dim() + exterior
    }

    pub fn same_basis(&self, other: &Self) -> bool {
        self.n == other.n && self.n_max == other.n_max && self.lambda == other.lambda
    }
}

/// A dense operator together with the basis it acts on.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    pub matrix: CMatrix,
    pub spec: HermiteBasisSpec,
    pub exterior: bool,
}

impl OperatorMatrix {
    pub fn new(matrix: CMatrix, spec: HermiteBasisSpec, exterior: bool) -> Result<Self> {
        let dim = spec.dim() * if exterior { spec.exterior_dim() } else { 1 };
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: matrix.nrows(),
            });
        }
        Ok(Self {
            matrix,
            spec,
            exterior,
        })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if !self.spec.same_basis(&other.spec) || self.exterior != other.exterior {
            return Err(Error::BasisMismatch);
        }
        Ok(())
    }

    fn wrap(&self, matrix: CMatrix) -> Self {
        Self {
            matrix,
            spec: self.spec,
            exterior: self.exterior,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.wrap(linalg::mul(&self.matrix, &other.matrix)))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.wrap(&self.matrix + &other.matrix))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.wrap(&self.matrix - &other.matrix))
    }

    pub fn scale(&self, c: C64) -> Self {
        self.wrap(&self.matrix * c)
    }

    pub fn adjoint(&self) -> Self {
        self.wrap(self.matrix.adjoint())
    }

    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn hermitian_residual(&self) -> f64 {
        linalg::hermitian_residual(&self.matrix)
    }

    /// Full indices of the interior mask with the given margin.
    pub fn interior_indices(&self, margin: usize) -> Vec<usize> {
        let h = self.spec.interior(margin);
        if self.exterior {
            let all: Vec<usize> = (0..self.spec.exterior_dim()).collect();
            self.spec.with_exterior(&h, &all)
        } else {
            h
        }
    }

    pub fn interior_block(&self, margin: usize) -> CMatrix {
        let idx = self.interior_indices(margin);
        linalg::select(&self.matrix, &idx, &idx)
    }

    /// Largest entry of `self - other` on the interior block.
    pub fn interior_residual(&self, other: &Self, margin: usize) -> Result<f64> {
        self.check(other)?;
        let idx = self.interior_indices(margin);
        let mut worst: f64 = 0.0;
        for &j in &idx {
            for &i in &idx {
                worst = worst.max((self.matrix[(i, j)] - other.matrix[(i, j)]).norm());
            }
        }
        Ok(worst)
    }

    /// `{dims, basis, data}` with row-major `[re, im]` pairs.
    pub fn to_json(&self) -> serde_json::Value {
        let mut data = Vec::with_capacity(2 * self.matrix.len());
        for i in 0..self.matrix.nrows() {
            for j in 0..self.matrix.ncols() {
                let z = self.matrix[(i, j)];
                data.push(z.re);
                data.push(z.im);
            }
        }
        serde_json::to_value(OperatorJson {
            dims: [self.matrix.nrows(), self.matrix.ncols()],
            basis: BasisJson {
                spec: self.spec,
                exterior: self.exterior,
            },
            data,
        })
        .expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let o: OperatorJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        let [r, c] = o.dims;
        if o.data.len() != 2 * r * c {
            return Err(Error::DimensionMismatch {
                expected: 2 * r * c,
                got: o.data.len(),
            });
        }
        let m = CMatrix::from_fn(r, c, |i, j| {
            let k = 2 * (i * c + j);
            C64::new(o.data[k], o.data[k + 1])
        });
        Self::new(m, o.basis.spec, o.basis.exterior)
    }
}

#[derive(Serialize, Deserialize)]
struct BasisJson {
    #[serde(flatten)]
    spec: HermiteBasisSpec,
    exterior: bool,
}

#[derive(Serialize, Deserialize)]
struct OperatorJson {
    dims: [usize; 2],
    basis: BasisJson,
    data: Vec<f64>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip() {
        let s = HermiteBasisSpec::new(2, 1.0, 5).unwrap();
        for i in 0..s.dim() {
            assert_eq!(s.index_of(&s.multi_index(i)), i);
        }
        assert_eq!(s.multi_index(7), vec![1, 2]);
    }

    #[test]
    fn interior_mask_size() {
        let s = HermiteBasisSpec::new(2, 1.0, 6).unwrap();
        assert_eq!(s.interior(1).len(), 25);
        assert_eq!(s.interior(2).len(), 16);
        assert_eq!(s.degree_at_most(1).len(), 3);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(HermiteBasisSpec::new(0, 1.0, 4).is_err());
        assert!(matches!(
            HermiteBasisSpec::new(1, 0.0, 4),
            Err(Error::UnsupportedLambda(_))
        ));
        assert!(HermiteBasisSpec::with_margin(1, 1.0, 4, 4).is_err());
        assert!(HermiteBasisSpec::new(3, 1.0, 64).is_err());
    }

    #[test]
    fn basis_mismatch_is_an_error() {
        let a = HermiteBasisSpec::new(1, 1.0, 4).unwrap();
        let b = HermiteBasisSpec::new(1, 0.5, 4).unwrap();
        let x = OperatorMatrix::new(linalg::identity(4), a, false).unwrap();
        let y = OperatorMatrix::new(linalg::identity(4), b, false).unwrap();
        assert_eq!(x.mul(&y), Err(Error::BasisMismatch));
    }

    #[test]
    fn json_round_trip() {
        let s = HermiteBasisSpec::new(1, 0.5, 3).unwrap();
        let m = CMatrix::from_fn(6, 6, |i, j| C64::new(i as f64, -(j as f64) / 3.0));
        let op = OperatorMatrix::new(m, s, true).unwrap();
        let v = op.to_json();
        assert_eq!(v["dims"], serde_json::json!([6, 6]));
        assert_eq!(OperatorMatrix::from_json(&v).unwrap(), op);
    }
}
