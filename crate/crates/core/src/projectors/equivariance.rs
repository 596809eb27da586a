use super::field::{Domain, ProjectionField};
use crate::error::{Error, Result};
use crate::exterior::{self, ExteriorBasis};
use crate::linalg::{self, CMatrix, C64};
use crate::symplectic::{from_complex, to_complex};

/// `max_p ‖e(Up) − ΛU e(p) ΛU*‖` over the given points.
///
/// On the sphere `U` acts on the `z` part and fixes `t`.
pub fn equivariance_check(field: &ProjectionField, u: &CMatrix, points: &[Vec<f64>]) -> Result<f64> {
    let n = field.n;
    let basis = ExteriorBasis::new(n)?;
    let lu = exterior::exterior_power_unitary(&basis, u)?;
    let lu_adj = lu.adjoint();
    let mut worst: f64 = 0.0;
    for p in points {
        if p.len() != field.point_dim() {
            return Err(Error::DimensionMismatch {
                expected: field.point_dim(),
                got: p.len(),
            });
        }
        let z = to_complex(&p[..2 * n]);
        let uz: Vec<C64> = (0..n).map(|i| (0..n).map(|j| u[(i, j)] * z[j]).sum()).collect();
        let mut q = from_complex(&uz);
        if field.domain == Domain::Sphere {
            q.push(p[2 * n]);
        }
        let lhs = field.evaluate(&q)?;
        let rhs = &lu * field.evaluate(p)? * &lu_adj;
        worst = worst.max(linalg::max_abs(&(lhs - rhs)));
    }
    Ok(worst)
}
