use serde_json::json;

use super::{max_of, CheckDef, CheckRng};
use crate::error::Result;
use crate::projectors::{
    bott_projector, chern_integral, equivariance_check, pullback_residual, sphere_projector,
    ProjectionField,
};
use crate::sampling::{random_real_vec, random_sphere_point, random_unitary};
use crate::harness::SuiteConfig;

/// Largest idempotent or self-adjointness defect over random plane points.
pub fn field_projection_residual(rng: &mut CheckRng, field: &ProjectionField, samples: usize) -> Result<f64> {
    max_of((0..samples).map(|_| {
        let z: Vec<f64> = random_real_vec(rng, field.point_dim()).iter().map(|x| 2.0 * x).collect();
        let c = field.check_point(&z)?;
        Ok(if field.self_adjoint { c.idempotent.max(c.self_adjoint) } else { c.idempotent })
    }))
}

pub fn sphere_points(rng: &mut CheckRng, n: usize, samples: usize) -> Vec<Vec<f64>> {
    let mut pts: Vec<Vec<f64>> = (0..samples).map(|_| random_sphere_point(rng, 2 * n + 1)).collect();
    for t in [1.0, -1.0] {
        let mut pole = vec![0.0; 2 * n + 1];
        pole[2 * n] = t;
        pts.push(pole);
    }
    pts
}

/// Distance from `value` to the nearest nonzero integer.
pub fn nonzero_integer_distance(value: f64) -> f64 {
    let r = value.round();
    if r == 0.0 {
        (value.abs() - 1.0).abs()
    } else {
        (value - r).abs()
    }
}

pub fn register(cfg: &SuiteConfig) -> Vec<CheckDef> {
    let ns = cfg.n_values.clone();
    let us = cfg.unitary_samples;
    let samples = cfg.sphere_samples;
    let grid = cfg.chern_grid;
    let (n1, n2, n3, n4) = (ns.clone(), ns.clone(), ns.clone(), ns.clone());
    vec![
        CheckDef::at_most("projectors.bott_projection", "bott-projector", json!({ "n": ns, "samples": samples }), 1e-12, move |rng| {
            max_of(n1.iter().map(|&n| field_projection_residual(rng, &bott_projector(n)?, samples)).collect::<Vec<_>>())
        }),
        CheckDef::at_most("projectors.bott_chern_integral", "bott-projector", json!({ "n": 1, "grid": grid }), 1e-3, move |_| {
            Ok(nonzero_integer_distance(chern_integral(&bott_projector(1)?, grid)?))
        }),
        CheckDef::at_most("projectors.chern_refinement", "bott-projector", json!({ "n": 1, "grid": [grid, 2 * grid] }), 1e-4, move |_| {
            let e = bott_projector(1)?;
            Ok((chern_integral(&e, grid)? - chern_integral(&e, 2 * grid)?).abs())
        }),
        CheckDef::at_most("projectors.chern_conjugation_invariance", "bott-projector", json!({ "n": 1, "grid": grid / 2 }), 1e-6, move |rng| {
            let e = bott_projector(1)?;
            let g = random_unitary(rng, 2);
            Ok((chern_integral(&e, grid / 2)? - chern_integral(&e.conjugated(&g)?, grid / 2)?).abs())
        }),
        CheckDef::at_most("projectors.sphere_projection", "stereographic-pullback", json!({ "n": ns, "samples": samples }), 1e-12, move |rng| {
            max_of(n2.iter().map(|&n| {
                let s = sphere_projector(n)?;
                max_of(sphere_points(rng, n, samples).iter().map(|p| {
                    let c = s.check_point(p)?;
                    Ok(c.idempotent.max(c.self_adjoint))
                }))
            }).collect::<Vec<_>>())
        }),
        CheckDef::at_most("projectors.stereographic_pullback", "stereographic-pullback", json!({ "n": ns, "samples": samples }), 1e-12, move |rng| {
            max_of(n3.iter().map(|&n| pullback_residual(n, &sphere_points(rng, n, samples))).collect::<Vec<_>>())
        }),
        CheckDef::at_most("projectors.equivariance", "idempotent-equivariance", json!({ "n": ns, "unitaries": us, "points_per_unitary": 10 }), 1e-8, move |rng| {
            let mut worst: f64 = 0.0;
            for &n in &n4 {
                let bott = bott_projector(n)?;
                let sphere = sphere_projector(n)?;
                for _ in 0..us {
                    let u = random_unitary(rng, n);
                    let plane: Vec<Vec<f64>> = (0..10).map(|_| random_real_vec(rng, 2 * n)).collect();
                    let sp: Vec<Vec<f64>> = (0..10).map(|_| random_sphere_point(rng, 2 * n + 1)).collect();
                    worst = worst.max(equivariance_check(&bott, &u, &plane)?);
                    worst = worst.max(equivariance_check(&sphere, &u, &sp)?);
                }
            }
            Ok(worst)
        }),
    ]
}
