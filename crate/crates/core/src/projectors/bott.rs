//! The Bott projector, its spherical form and stereographic projection.

use super::field::{Domain, ProjectionField};
use crate::error::{Error, Result};
use crate::exterior::{self, ExteriorBasis};
use crate::linalg::{self, CMatrix};
use crate::symplectic::to_complex;

fn parity_projections(basis: &ExteriorBasis) -> (CMatrix, CMatrix) {
    let g = basis.grading();
    let id = linalg::identity(basis.dim());
    let half = linalg::real(0.5);
    ((&id + &g) * half, (&id - &g) * half)
}

/// `e_β(z) = (1 + |z|²)⁻¹ [[1, c(z)], [c(z), |z|²]]` over `Λ⁺ ⊕ Λ⁻`.
pub fn bott_projector(n: usize) -> Result<ProjectionField> {
    let basis = ExteriorBasis::new(n)?;
    let (plus, minus) = parity_projections(&basis);
    let limit = minus.clone();
    Ok(ProjectionField::new(
        "bott",
        n,
        Domain::Plane,
        limit,
        true,
        move |p| {
            let r2: f64 = p.iter().map(|x| x * x).sum();
            let c = exterior::clifford_c(&basis, &to_complex(p)).expect("dimension checked");
            (&plus + c + &minus * linalg::real(r2)) / linalg::real(1.0 + r2)
        },
    ))
}

/// `e(z, t) = (1 + c(z, t))/2` on the unit sphere of `R^{2n} × R`.
pub fn sphere_projector(n: usize) -> Result<ProjectionField> {
    let basis = ExteriorBasis::new(n)?;
    let (_, minus) = parity_projections(&basis);
    let id = linalg::identity(basis.dim());
    Ok(ProjectionField::new(
        "sphere",
        n,
        Domain::Sphere,
        minus,
        true,
        move |p| {
            let (z, t) = p.split_at(2 * n);
            let c = exterior::clifford_ct(&basis, &to_complex(z), t[0]).expect("dimension checked");
            (&id + c) * linalg::real(0.5)
        },
    ))
}

#[derive(Debug, Clone, PartialEq)]
pub enum PlanePoint {
    Finite(Vec<f64>),
    Infinity,
}

/// `ρ(z, t) = z/(1 + t)`, sending the south pole to infinity.
pub fn stereographic(z: &[f64], t: f64) -> Result<PlanePoint> {
    let norm2: f64 = z.iter().map(|x| x * x).sum::<f64>() + t * t;
    let deviation = norm2.sqrt() - 1.0;
    if deviation.abs() > 1e-10 {
        return Err(Error::OffSphere { deviation });
    }
    if 1.0 + t <= 1e-15 {
        return Ok(PlanePoint::Infinity);
    }
    Ok(PlanePoint::Finite(z.iter().map(|x| x / (1.0 + t)).collect()))
}

/// Inverse of [`stereographic`] on finite points.
pub fn inverse_stereographic(w: &[f64]) -> Vec<f64> {
    let r2: f64 = w.iter().map(|x| x * x).sum();
    let mut p: Vec<f64> = w.iter().map(|x| 2.0 * x / (1.0 + r2)).collect();
    p.push((1.0 - r2) / (1.0 + r2));
    p
}

/// Evaluates a plane field at a plane point, using the declared limit at infinity.
pub fn evaluate_plane(field: &ProjectionField, p: &PlanePoint) -> Result<CMatrix> {
    match p {
        PlanePoint::Finite(z) => field.evaluate(z),
        PlanePoint::Infinity => Ok(field.limit.clone()),
    }
}

/// `max_p ‖e_β(ρ(p)) − e(p)‖` over sphere points.
pub fn pullback_residual(n: usize, points: &[Vec<f64>]) -> Result<f64> {
    let bott = bott_projector(n)?;
    let sphere = sphere_projector(n)?;
    let mut worst: f64 = 0.0;
    for p in points {
        let (z, t) = p.split_at(2 * n);
        let lhs = evaluate_plane(&bott, &stereographic(z, t[0])?)?;
        worst = worst.max(linalg::max_abs(&(lhs - sphere.evaluate(p)?)));
    }
    Ok(worst)
}
