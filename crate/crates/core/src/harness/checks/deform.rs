use serde_json::json;

use super::projectors::nonzero_integer_distance;
use super::{max_of, CheckDef, CheckRng};
use crate::deform::{
    boundary_idempotent, family_equivariance, husimi_trend, lambda_continuity,
    parametrix_cross_check, pointwise_family_e0, tau_convergence, DeformationFamily, TableRow,
    RELATION_MARGIN,
};
use crate::error::Result;
use crate::harness::SuiteConfig;
use crate::linalg::{self, CMatrix};
use crate::projectors::{bott_projector, chern_integral};
use crate::quantize::{a_plus_index, HermiteBasisSpec};
use crate::sampling::{random_real_vec, random_unitary};

/// `τ ∈ {1, 1.5, …, 4}`.
pub fn tau_grid() -> Vec<f64> {
    (0..7).map(|k| 1.0 + 0.5 * k as f64).collect()
}

pub fn husimi_points() -> Vec<Vec<f64>> {
    vec![vec![0.0, 0.0], vec![0.5, 0.2], vec![-0.3, 0.7], vec![0.8, 0.0]]
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub n: usize,
    pub lambda: f64,
    pub tau: f64,
    pub n_max: usize,
}

impl Cell {
    pub fn family(&self) -> Result<DeformationFamily> {
        DeformationFamily::new(self.tau, HermiteBasisSpec::new(self.n, self.lambda, self.n_max)?)
    }
}

/// The `(λ, τ, n)` grid in lexicographic order.
pub fn cells(cfg: &SuiteConfig) -> Vec<Cell> {
    let mut out = Vec::new();
    for &lambda in &cfg.lambda_values {
        for &tau in &cfg.tau_values {
            for &n in &cfg.n_values {
                out.push(Cell { n, lambda, tau, n_max: cfg.n_max_for(n) });
            }
        }
    }
    out
}

fn over_cells(cells: &[Cell], f: impl Fn(&DeformationFamily) -> Result<f64>) -> Result<f64> {
    max_of(cells.iter().map(|c| f(&c.family()?)))
}

/// `R̂(τ₁)R̂(τ₂) = R̂(τ₁ + τ₂)` through the Mehler route.
pub fn r_semigroup_residual(cell: &Cell) -> Result<f64> {
    let spec = HermiteBasisSpec::new(cell.n, cell.lambda, cell.n_max)?;
    let r = |t: f64| DeformationFamily::new(t, spec)?.r_from_mehler();
    let lhs = r(cell.tau)?.mul(&r(1.0)?)?;
    lhs.interior_residual(&r(cell.tau + 1.0)?, 0)
}

/// `‖B̂ v₀‖` for the numerically detected kernel vector of `Â⁺`.
pub fn b_zero_mode_residual(f: &DeformationFamily) -> Result<f64> {
    let report = a_plus_index(&f.a, &f.basis, 1e-6)?;
    if report.kernel.dim != 1 {
        return Ok(f64::INFINITY);
    }
    let v = report.kernel_vector(0, f.dim());
    Ok((&f.b_operator().matrix * v).iter().map(|z| z.norm()).fold(0.0, f64::max))
}

/// Scalar cases of the boundary template, then the cross-check against the family.
pub fn boundary_template_residual(cells: &[Cell]) -> Result<f64> {
    let one = linalg::identity(1);
    let zero = CMatrix::zeros(1, 1);
    let mut worst = linalg::max_abs(&(boundary_idempotent(&one, &one)? - linalg::diag_real(&[0.0, 1.0])));
    worst = worst.max(linalg::max_abs(&(boundary_idempotent(&zero, &zero)? - linalg::diag_real(&[1.0, 0.0]))));
    worst = worst.max(over_cells(cells, parametrix_cross_check)?);
    Ok(worst)
}

/// `max_i c_i / (10 max(f_{2i}, f_{2i+1}))` for coarse and fine increments on `[0.25, 1]`.
pub fn lipschitz_consistency(n_max: usize) -> Result<f64> {
    let coarse: Vec<f64> = (0..=15).map(|k| 0.25 + 0.05 * k as f64).collect();
    let fine: Vec<f64> = (0..=30).map(|k| 0.25 + 0.025 * k as f64).collect();
    let c = lambda_continuity(1.0, 1, n_max, &coarse)?;
    let f = lambda_continuity(1.0, 1, n_max, &fine)?;
    let mut worst: f64 = 0.0;
    for (i, &ci) in c.increments.iter().enumerate() {
        let bound = 10.0 * f.increments[2 * i].max(f.increments[2 * i + 1]);
        worst = worst.max(if bound > 0.0 { ci / bound } else { f64::INFINITY });
    }
    Ok(worst)
}

/// Number of times the Husimi distance fails to shrink along `λ = 1, 0.5, 0.25`.
pub fn husimi_violations(n_max: usize) -> Result<f64> {
    let rows = husimi_trend(1.0, 1, n_max, &[1.0, 0.5, 0.25], &husimi_points())?;
    Ok(rows.windows(2).filter(|w| w[1].distance.is_nan() || w[1].distance >= w[0].distance).count() as f64)
}

/// `|C(e₀(1)) − C(e_β)|`, or the distance of either from a nonzero integer if larger.
pub fn e0_chern_defect(grid: usize) -> Result<f64> {
    let a = chern_integral(&pointwise_family_e0(1.0, 1)?, grid)?;
    let b = chern_integral(&bott_projector(1)?, grid)?;
    Ok((a - b).abs().max(nonzero_integer_distance(a)).max(nonzero_integer_distance(b)))
}

pub fn e0_projection_residual(rng: &mut CheckRng, n: usize, samples: usize) -> Result<f64> {
    let f = pointwise_family_e0(1.0, n)?;
    max_of((0..samples).map(|_| {
        let z: Vec<f64> = random_real_vec(rng, 2 * n).iter().map(|x| 2.0 * x).collect();
        Ok(f.check_point(&z)?.idempotent)
    }))
}

/// CSV side tables: τ-convergence, λ-increments and the Husimi trend.
pub fn side_tables(cfg: &SuiteConfig) -> Result<Vec<(&'static str, Vec<TableRow>)>> {
    let spec = HermiteBasisSpec::new(1, 1.0, cfg.n_max)?;
    let tau = tau_convergence(spec, &tau_grid())?.rows(&spec);
    let lambdas: Vec<f64> = (0..=15).map(|k| 0.25 + 0.05 * k as f64).collect();
    let cont = lambda_continuity(1.0, 1, cfg.n_max, &lambdas)?;
    let lam = cont
        .increments
        .iter()
        .zip(&cont.lambdas)
        .map(|(&value, &lambda)| TableRow {
            lambda,
            tau: 1.0,
            n: 1,
            n_max: cfg.n_max,
            metric_name: "lambda_increment".into(),
            value,
        })
        .collect();
    let hus = husimi_trend(1.0, 1, cfg.n_max, &[1.0, 0.5, 0.25], &husimi_points())?
        .into_iter()
        .map(|r| TableRow {
            lambda: r.lambda,
            tau: 1.0,
            n: 1,
            n_max: cfg.n_max,
            metric_name: "husimi_distance".into(),
            value: r.distance,
        })
        .collect();
    Ok(vec![("tau_convergence", tau), ("lambda_continuity", lam), ("husimi_trend", hus)])
}

pub fn register(cfg: &SuiteConfig) -> Vec<CheckDef> {
    let grid = cells(cfg);
    let params = json!({
        "n": cfg.n_values, "lambda": cfg.lambda_values, "tau": cfg.tau_values,
        "N_max": cfg.n_max, "N_max_multi": cfg.n_max_multi, "margin": RELATION_MARGIN,
    });
    let g = || grid.clone();
    let n_max = cfg.n_max;
    let us = cfg.unitary_samples;
    let ns = cfg.n_values.clone();
    let samples = cfg.sphere_samples;
    let chern_grid = cfg.chern_grid;
    let max_n = *cfg.n_values.iter().max().unwrap_or(&1);
    vec![
        CheckDef::at_most("deform.r_mehler_route", "mehler-kernel", params.clone(), 1e-12, {
            let c = g();
            move |_| over_cells(&c, |f| Ok(f.relations()?.r_mehler))
        }),
        CheckDef::at_most("deform.r_commutes_a", "resolvent-family", params.clone(), 1e-10, {
            let c = g();
            move |_| over_cells(&c, |f| Ok(f.relations()?.a_intertwines_r))
        }),
        CheckDef::at_most("deform.r_semigroup", "resolvent-family", params.clone(), 1e-10, {
            let c = g();
            move |_| max_of(c.iter().map(r_semigroup_residual))
        }),
        CheckDef::at_most("deform.r_fixes_vacuum", "resolvent-family", params.clone(), 1e-12, {
            let c = g();
            move |_| {
                over_cells(&c, |f| {
                    let r = f.r_from_mehler()?;
                    let z = f.zero_modes[0];
                    Ok((r.matrix[(z, z)].re - 1.0).abs())
                })
            }
        }),
        CheckDef::at_most("deform.b_identity", "parametrix-family", params.clone(), 1e-9, {
            let c = g();
            move |_| over_cells(&c, |f| Ok(f.relations()?.ab_identity))
        }),
        CheckDef::at_most("deform.b_commutes_a", "parametrix-family", params.clone(), 1e-10, {
            let c = g();
            move |_| {
                over_cells(&c, |f| {
                    let b = f.b_operator();
                    f.a.mul(&b)?.interior_residual(&b.mul(&f.a)?, RELATION_MARGIN)
                })
            }
        }),
        CheckDef::at_most("deform.b_zero_mode", "parametrix-family", params.clone(), 1e-10, {
            let c = g();
            move |_| over_cells(&c, b_zero_mode_residual)
        }),
        CheckDef::at_most("deform.e_idempotent", "idempotent-family", params.clone(), 1e-8, {
            let c = g();
            move |_| over_cells(&c, |f| Ok(f.relations()?.idempotent))
        }),
        CheckDef::at_most("deform.e_block_relations", "idempotent-family", params.clone(), 1e-10, {
            let c = g();
            move |_| over_cells(&c, |f| {
                let r = f.relations()?;
                Ok(r.a_intertwines_r.max(r.b_intertwines_r))
            })
        }),
        CheckDef::at_least(
            "deform.e_not_self_adjoint",
            "idempotent-family",
            json!({ "n": cfg.n_values, "lambda": cfg.lambda_values, "tau": cfg.tau_values, "note": "largest defect over the grid; e is an idempotent, not an orthogonal projection" }),
            1e-3,
            {
                let c = g();
                move |_| over_cells(&c, |f| Ok(f.relations()?.self_adjoint))
            },
        ),
        CheckDef::at_most(
            "deform.lambda_lipschitz",
            "idempotent-family",
            json!({ "n": 1, "tau": 1.0, "lambda_range": [0.25, 1.0], "steps": [0.05, 0.025], "N_max": n_max, "factor": 10 }),
            1.0,
            move |_| lipschitz_consistency(n_max),
        ),
        CheckDef::at_most(
            "deform.e_equivariance",
            "idempotent-equivariance",
            json!({ "n": ns, "lambda": 1.0, "tau": 1.0, "unitaries": us, "margin": 2 }),
            1e-8,
            {
                let ns = ns.clone();
                let cfg = cfg.clone();
                move |rng| {
                    let mut worst: f64 = 0.0;
                    for &n in &ns {
                        let f = DeformationFamily::new(1.0, HermiteBasisSpec::new(n, 1.0, cfg.n_max_for(n))?)?;
                        for _ in 0..us {
                            worst = worst.max(family_equivariance(&f, &random_unitary(rng, n), 2)?);
                        }
                    }
                    Ok(worst)
                }
            },
        ),
        CheckDef::at_most("deform.boundary_template", "boundary-idempotent", params.clone(), 1e-8, {
            let c = g();
            move |_| boundary_template_residual(&c)
        }),
        CheckDef::at_most(
            "deform.tau_monotone",
            "tau-limit",
            json!({ "n": 1, "lambda": 1.0, "tau": tau_grid(), "N_max": n_max }),
            0.5,
            move |_| {
                let t = tau_convergence(HermiteBasisSpec::new(1, 1.0, n_max)?, &tau_grid())?;
                Ok(t.distances.windows(2).filter(|w| w[1].is_nan() || w[1] >= w[0]).count() as f64)
            },
        ),
        CheckDef::at_most(
            "deform.tau_slope",
            "tau-limit",
            json!({ "n": 1, "lambda": 1.0, "tau": tau_grid(), "N_max": n_max, "expected_slope": -2.0 }),
            0.2,
            move |_| {
                let t = tau_convergence(HermiteBasisSpec::new(1, 1.0, n_max)?, &tau_grid())?;
                Ok((t.slope + 2.0).abs())
            },
        ),
        CheckDef::at_most(
            "deform.e0_idempotent",
            "lambda-zero-endpoint",
            json!({ "n": (1..=max_n).collect::<Vec<_>>(), "tau": 1.0, "samples": samples }),
            1e-12,
            move |rng| max_of((1..=max_n).map(|n| e0_projection_residual(rng, n, samples)).collect::<Vec<_>>()),
        ),
        CheckDef::at_most(
            "deform.e0_chern_matches_bott",
            "lambda-zero-endpoint",
            json!({ "n": 1, "tau": 1.0, "grid": chern_grid }),
            1e-3,
            move |_| e0_chern_defect(chern_grid),
        ),
        CheckDef::at_most(
            "deform.husimi_trend",
            "lambda-zero-endpoint",
            json!({ "n": 1, "tau": 1.0, "lambda": [1.0, 0.5, 0.25], "points": husimi_points(), "N_max": n_max }),
            0.5,
            move |_| husimi_violations(n_max),
        ),
    ]
}
