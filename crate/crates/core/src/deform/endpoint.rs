//! The `λ = 0` endpoint and its comparison with Husimi functions of `e_λ`.

use super::family::{b_weight, DeformationFamily};
use crate::error::{Error, Result};
use crate::exterior::{self, ExteriorBasis};
use crate::linalg::{self, CMatrix, C64};
use crate::projectors::{Domain, ProjectionField};
use crate::quantize::{coherent_state, HermiteBasisSpec};
use crate::symplectic::to_complex;

/// The pointwise field `e₀(τ)(z)`: `r = e^{−τ|z|²}`, `A = c(z)`,
/// `B = c(z)(e^{−τ|z|²} − e^{−2τ|z|²})/|z|²`.
pub fn pointwise_family_e0(tau: f64, n: usize) -> Result<ProjectionField> {
    if tau < 1.0 {
        return Err(Error::InvalidArgument(format!("tau must be >= 1, got {tau}")));
    }
    let basis = ExteriorBasis::new(n)?;
    let even: Vec<bool> = (0..basis.dim()).map(|s| basis.parity(s) == 0).collect();
    let limit = linalg::diag_real(&even.iter().map(|&e| if e { 0.0 } else { 1.0 }).collect::<Vec<_>>());
    Ok(ProjectionField::new(
        format!("e0(tau={tau})"),
        n,
        Domain::Plane,
        limit,
        false,
        move |p| {
            let q: f64 = p.iter().map(|x| x * x).sum();
            let r = (-tau * q).exp();
            let w = b_weight(tau, q);
            let c = exterior::clifford_c(&basis, &to_complex(p)).expect("dimension checked");
            let d: Vec<f64> = even.iter().map(|&e| if e { r * r } else { 1.0 - r * r }).collect();
            let v: Vec<f64> = even.iter().map(|&e| if e { r } else { w * (1.0 + r) }).collect();
            linalg::diag_real(&d) + c * linalg::diag_real(&v)
        },
    ))
}

/// `⟨α ⊗ e_s | X | α ⊗ e_t⟩` with `α = z/√(2λ)`, a `2ⁿ × 2ⁿ` matrix.
pub fn husimi(x: &CMatrix, spec: &HermiteBasisSpec, z: &[f64]) -> Result<CMatrix> {
    if spec.lambda <= 0.0 {
        return Err(Error::UnsupportedLambda(spec.lambda));
    }
    let scale = (2.0 * spec.lambda).sqrt();
    let alpha: Vec<C64> = to_complex(z).iter().map(|w| w / scale).collect();
    let psi = coherent_state(spec, &alpha)?;
    let ext = spec.exterior_dim();
    let psi = CMatrix::from_column_slice(psi.len(), 1, psi.as_slice());
    let v = linalg::kron(&psi, &linalg::identity(ext));
    Ok(v.adjoint() * x * v)
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct HusimiRow {
    pub lambda: f64,
    pub distance: f64,
}

/// `max_z ‖Husimi(e_λ(τ))(z) − e₀(τ)(z)‖` for each `λ`.
pub fn husimi_trend(
    tau: f64,
    n: usize,
    n_max: usize,
    lambdas: &[f64],
    points: &[Vec<f64>],
) -> Result<Vec<HusimiRow>> {
    let e0 = pointwise_family_e0(tau, n)?;
    lambdas
        .iter()
        .map(|&lambda| {
            let spec = HermiteBasisSpec::new(n, lambda, n_max)?;
            let e = DeformationFamily::new(tau, spec)?.e_operator();
            let mut worst: f64 = 0.0;
            for z in points {
                let h = husimi(&e.matrix, &spec, z)?;
                worst = worst.max(linalg::op_norm(&(h - e0.evaluate(z)?)));
            }
            Ok(HusimiRow { lambda, distance: worst })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projectors::{bott_projector, chern_number};
    use crate::testutil::random_real_vec;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn e0_is_an_idempotent_field() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for n in [1, 2] {
            let f = pointwise_family_e0(1.0, n).unwrap();
            for _ in 0..100 {
                let z = random_real_vec(&mut rng, 2 * n);
                assert!(f.check_point(&z).unwrap().idempotent < 1e-13);
            }
            let at0 = f.evaluate(&vec![0.0; 2 * n]).unwrap();
            let b = ExteriorBasis::new(n).unwrap();
            let d: Vec<f64> = (0..b.dim()).map(|k| if b.parity(k) == 0 { 1.0 } else { 0.0 }).collect();
            assert!(linalg::max_abs(&(at0 - linalg::diag_real(&d))) < 1e-15);
        }
    }

    #[test]
    fn e0_has_the_bott_class() {
        let e0 = pointwise_family_e0(1.0, 1).unwrap();
        let c0 = chern_number(&e0, 96).unwrap();
        assert_eq!(c0, chern_number(&bott_projector(1).unwrap(), 96).unwrap());
        assert_ne!(c0, 0);
    }

    #[test]
    fn husimi_of_identity_is_identity() {
        let spec = HermiteBasisSpec::new(1, 0.5, 30).unwrap();
        let id = linalg::identity(spec.dim() * 2);
        let h = husimi(&id, &spec, &[0.4, -0.3]).unwrap();
        assert!(linalg::max_abs(&(h - linalg::identity(2))) < 1e-12);
    }

    #[test]
    fn husimi_distance_shrinks_with_lambda() {
        let pts = vec![vec![0.0, 0.0], vec![0.5, 0.2], vec![-0.3, 0.7]];
        let rows = husimi_trend(1.0, 1, 32, &[1.0, 0.5, 0.25], &pts).unwrap();
        assert!(rows[0].distance > rows[1].distance && rows[1].distance > rows[2].distance, "{rows:?}");
    }
}
