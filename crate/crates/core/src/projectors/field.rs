use std::fmt;
use std::io::Write;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};

type Evaluator = Arc<dyn Fn(&[f64]) -> CMatrix + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    /// `R^{2n}` compactified by a point at infinity.
    Plane,
    /// Unit sphere in `R^{2n+1}`.
    Sphere,
}

/// A pointwise matrix-valued function with a declared value at infinity.
#[derive(Clone)]
pub struct ProjectionField {
    pub name: String,
    pub n: usize,
    pub domain: Domain,
    pub limit: CMatrix,
    /// Whether the values are claimed to be orthogonal projections.
    pub self_adjoint: bool,
    evaluator: Evaluator,
}

impl fmt::Debug for ProjectionField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProjectionField")
            .field("name", &self.name)
            .field("n", &self.n)
            .field("domain", &self.domain)
            .field("self_adjoint", &self.self_adjoint)
            .finish()
    }
}

/// Pointwise defects of a field value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointCheck {
    pub idempotent: f64,
    pub self_adjoint: f64,
}

impl ProjectionField {
    pub fn new(
        name: impl Into<String>,
        n: usize,
        domain: Domain,
        limit: CMatrix,
        self_adjoint: bool,
        evaluator: impl Fn(&[f64]) -> CMatrix + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            n,
            domain,
            limit,
            self_adjoint,
            evaluator: Arc::new(evaluator),
        }
    }

    pub fn point_dim(&self) -> usize {
        match self.domain {
            Domain::Plane => 2 * self.n,
            Domain::Sphere => 2 * self.n + 1,
        }
    }

    pub fn matrix_dim(&self) -> usize {
        self.limit.nrows()
    }

    pub fn evaluate(&self, p: &[f64]) -> Result<CMatrix> {
        if p.len() != self.point_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.point_dim(),
                got: p.len(),
            });
        }
        if self.domain == Domain::Sphere {
            let deviation = p.iter().map(|x| x * x).sum::<f64>().sqrt() - 1.0;
            if deviation.abs() > 1e-10 {
                return Err(Error::OffSphere { deviation });
            }
        }
        Ok((self.evaluator)(p))
    }

    /// Evaluation without domain checks, for integrators.
    pub(crate) fn eval_unchecked(&self, p: &[f64]) -> CMatrix {
        (self.evaluator)(p)
    }

    pub fn check_point(&self, p: &[f64]) -> Result<PointCheck> {
        let e = self.evaluate(p)?;
        Ok(PointCheck {
            idempotent: linalg::max_abs(&(linalg::mul(&e, &e) - &e)),
            self_adjoint: linalg::hermitian_residual(&e),
        })
    }

    /// The same field conjugated by a constant invertible matrix: `g e g⁻¹`.
    pub fn conjugated(&self, g: &CMatrix) -> Result<Self> {
        let inv = g
            .clone()
            .try_inverse()
            .ok_or_else(|| Error::InvalidArgument("conjugating matrix is singular".into()))?;
        let g = g.clone();
        let inner = self.evaluator.clone();
        let limit = &g * &self.limit * &inv;
        let self_adjoint = self.self_adjoint && linalg::unitarity_residual(&g) < 1e-12;
        Ok(Self {
            name: format!("{} (conjugated)", self.name),
            n: self.n,
            domain: self.domain,
            limit,
            self_adjoint,
            evaluator: Arc::new(move |p| &g * inner(p) * &inv),
        })
    }

    /// Writes one CSV row per point: coordinates, then `re_ij, im_ij` entries.
    pub fn export_csv<W: Write>(&self, points: &[Vec<f64>], out: W) -> Result<()> {
        let d = self.matrix_dim();
        let mut w = csv::Writer::from_writer(out);
        let mut header: Vec<String> = (0..self.point_dim()).map(|k| format!("x{k}")).collect();
        for i in 0..d {
            for j in 0..d {
                header.push(format!("re_{i}_{j}"));
                header.push(format!("im_{i}_{j}"));
            }
        }
        w.write_record(&header).map_err(csv_err)?;
        for p in points {
            let e = self.evaluate(p)?;
            let mut row: Vec<String> = p.iter().map(|x| format!("{x:.17e}")).collect();
            for i in 0..d {
                for j in 0..d {
                    row.push(format!("{:.17e}", e[(i, j)].re));
                    row.push(format!("{:.17e}", e[(i, j)].im));
                }
            }
            w.write_record(&row).map_err(csv_err)?;
        }
        w.flush()?;
        Ok(())
    }
}

pub(crate) fn csv_err(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}
