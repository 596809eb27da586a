//! Convergence in `τ`, continuity in `λ`, equivariance, and CSV tables.

use std::io::Write;

use serde::Serialize;

use super::family::{DeformationFamily, RELATION_MARGIN};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::projectors::csv_err;
use crate::quantize::{dilation, total_unitary, HermiteBasisSpec};

/// Margin used when comparing operators transported between bases.
pub const TRANSPORT_MARGIN: usize = 4;

/// One row of an exported table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub lambda: f64,
    pub tau: f64,
    pub n: usize,
    #[serde(rename = "N_max")]
    pub n_max: usize,
    pub metric_name: String,
    pub value: f64,
}

pub fn write_table_csv<W: Write>(rows: &[TableRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TauConvergence {
    pub taus: Vec<f64>,
    pub distances: Vec<f64>,
    /// Slope of `ln(distance)` against `τ`.
    pub slope: f64,
    pub monotone: bool,
}

impl TauConvergence {
    pub fn rows(&self, spec: &HermiteBasisSpec) -> Vec<TableRow> {
        self.taus
            .iter()
            .zip(&self.distances)
            .map(|(&tau, &value)| TableRow {
                lambda: spec.lambda,
                tau,
                n: spec.n,
                n_max: spec.n_max,
                metric_name: "tau_limit_distance".into(),
                value,
            })
            .collect()
    }
}

/// Operator-norm distance from `e_λ(τ)` to `diag(P₀ ⊗ p₀, I)` on the interior.
pub fn tau_convergence(spec: HermiteBasisSpec, taus: &[f64]) -> Result<TauConvergence> {
    if taus.len() < 2 {
        return Err(Error::InvalidArgument("need at least two tau values".into()));
    }
    let mut distances = Vec::with_capacity(taus.len());
    for &tau in taus {
        let f = DeformationFamily::new(tau, spec)?;
        let diff = f.e_operator().sub(&f.tau_limit())?;
        distances.push(linalg::op_norm(&diff.interior_block(RELATION_MARGIN)));
    }
    let logs: Vec<f64> = distances.iter().map(|d| d.ln()).collect();
    let (slope, _) = linalg::linear_fit(taus, &logs);
    let monotone = distances.windows(2).all(|w| w[1] < w[0]);
    Ok(TauConvergence {
        taus: taus.to_vec(),
        distances,
        slope,
        monotone,
    })
}

/// `e_λ(τ) − diag(0, I)`, which decays on high modes.
fn compact_part(tau: f64, spec: HermiteBasisSpec) -> Result<CMatrix> {
    let f = DeformationFamily::new(tau, spec)?;
    Ok(f.e_operator().sub(&f.odd_projection())?.matrix)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LambdaContinuity {
    pub lambdas: Vec<f64>,
    /// `increments[i]` compares `lambdas[i]` and `lambdas[i + 1]`.
    pub increments: Vec<f64>,
    /// `max increment / |Δλ|`.
    pub lipschitz: f64,
}

/// Increments `‖E_λ − M E_λ' M*‖` between neighbouring grid points, with `M` the
/// dilation carrying the `λ'` Hermite basis into the `λ` one.
pub fn lambda_continuity(tau: f64, n: usize, n_max: usize, lambdas: &[f64]) -> Result<LambdaContinuity> {
    if lambdas.len() < 2 {
        return Err(Error::InvalidArgument("need at least two lambda values".into()));
    }
    let specs: Vec<HermiteBasisSpec> = lambdas
        .iter()
        .map(|&l| HermiteBasisSpec::new(n, l, n_max))
        .collect::<Result<_>>()?;
    let parts: Vec<CMatrix> = specs.iter().map(|&s| compact_part(tau, s)).collect::<Result<_>>()?;
    let ext = specs[0].exterior_dim();
    let mut increments = Vec::with_capacity(lambdas.len() - 1);
    let mut lipschitz: f64 = 0.0;
    for i in 0..lambdas.len() - 1 {
        let m = dilation(&specs[i], lambdas[i + 1], ext)?;
        let moved = linalg::mul_chain(&[&m, &parts[i + 1], &m.adjoint()]);
        let idx = {
            let h = specs[i].interior(TRANSPORT_MARGIN);
            let all: Vec<usize> = (0..ext).collect();
            specs[i].with_exterior(&h, &all)
        };
        let inc = linalg::op_norm(&linalg::select(&(moved - &parts[i]), &idx, &idx));
        lipschitz = lipschitz.max(inc / (lambdas[i + 1] - lambdas[i]).abs());
        increments.push(inc);
    }
    Ok(LambdaContinuity {
        lambdas: lambdas.to_vec(),
        increments,
        lipschitz,
    })
}

/// `‖[T(U) ⊗ ΛU, e]‖` on total Hermite degree `<= n_max − 1 − margin`.
pub fn family_equivariance(family: &DeformationFamily, u: &CMatrix, margin: usize) -> Result<f64> {
    let spec = family.spec;
    let t = total_unitary(&family.basis, &spec, u)?;
    let c = linalg::commutator(&t.matrix, &family.e_operator().matrix);
    let deg = (spec.n_max - 1).saturating_sub(margin);
    let all: Vec<usize> = (0..spec.exterior_dim()).collect();
    let idx = spec.with_exterior(&spec.degree_at_most(deg), &all);
    Ok(linalg::max_abs(&linalg::select(&c, &idx, &idx)))
}
