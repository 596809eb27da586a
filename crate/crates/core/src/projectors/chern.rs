//! Chern numbers of idempotent fields on the plane for `n = 1`.

use std::f64::consts::PI;

use rayon::prelude::*;

use super::bott::inverse_stereographic;
use super::field::{Domain, ProjectionField};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, C64};
use crate::quadrature::gauss_legendre_on;

const INTEGRALITY_TOL: f64 = 1e-3;
const REL_STEP: f64 = 1e-5;

fn eval_polar(field: &ProjectionField, r: f64, theta: f64) -> CMatrix {
    let w = [r * theta.cos(), r * theta.sin()];
    match field.domain {
        Domain::Plane => field.eval_unchecked(&w),
        Domain::Sphere => field.eval_unchecked(&inverse_stereographic(&w)),
    }
}

fn trace(m: &CMatrix) -> C64 {
    m.diagonal().sum()
}

/// The raw integral `(2πi)⁻¹ ∫ tr(e [∂_r e, ∂_θ e]) dr dθ` with no integrality check.
///
/// The radius is compactified as `r = tan(πs/2)`; `s` uses Gauss–Legendre and
/// `θ` the trapezoid rule, each with `grid_size` nodes.
pub fn chern_integral(field: &ProjectionField, grid_size: usize) -> Result<f64> {
    if field.n != 1 {
        return Err(Error::InvalidArgument(format!(
            "Chern integral is implemented for n = 1, got n = {}",
            field.n
        )));
    }
    if grid_size < 8 {
        return Err(Error::InvalidArgument("grid_size must be at least 8".into()));
    }
    let (s_nodes, s_weights) = gauss_legendre_on(grid_size, 0.0, 1.0);
    let dtheta = 2.0 * PI / grid_size as f64;
    let rows: Vec<C64> = s_nodes
        .par_iter()
        .zip(s_weights.par_iter())
        .map(|(&s, &ws)| {
            let r = (0.5 * PI * s).tan();
            let jac = 0.5 * PI / (0.5 * PI * s).cos().powi(2);
            let hr = REL_STEP * r.max(1.0);
            let mut acc = C64::new(0.0, 0.0);
            for k in 0..grid_size {
                let th = dtheta * k as f64;
                let e = eval_polar(field, r, th);
                let de_r = (eval_polar(field, r + hr, th) - eval_polar(field, r - hr, th))
                    / C64::new(2.0 * hr, 0.0);
                let de_t = (eval_polar(field, r, th + REL_STEP) - eval_polar(field, r, th - REL_STEP))
                    / C64::new(2.0 * REL_STEP, 0.0);
                acc += trace(&(&e * linalg::commutator(&de_r, &de_t)));
            }
            acc * (ws * jac * dtheta)
        })
        .collect();
    let total: C64 = rows.iter().fold(C64::new(0.0, 0.0), |a, b| a + b);
    Ok((total / C64::new(0.0, 2.0 * PI)).re)
}

/// The Chern number, rejected with [`Error::GridTooCoarse`] if not near an integer.
pub fn chern_number(field: &ProjectionField, grid_size: usize) -> Result<i64> {
    let value = chern_integral(field, grid_size)?;
    let nearest = value.round();
    let distance = (value - nearest).abs();
    if distance > INTEGRALITY_TOL {
        return Err(Error::GridTooCoarse {
            value,
            distance,
            hint: 2 * grid_size,
        });
    }
    Ok(nearest as i64)
}
