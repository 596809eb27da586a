//! Change of basis between Hermite bases adapted to different `λ`.
//!
//! The `λ`-adapted functions are `ψ^λ_k(x) = λ^{-1/4} h_k(x/√λ)`, so
//! `ψ^{λ'}_k = D(s) ψ^λ_k` with the unitary dilation `D(s)f(x) = s^{-1/2} f(x/s)`,
//! `s = √(λ'/λ)`. In ladder form `D(e^r) = exp(-r(a² - a†²)/2)`.

use super::basis::HermiteBasisSpec;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};

/// Standard Hermite functions `h_0..h_{count-1}` at `x`.
pub fn hermite_functions(count: usize, x: f64) -> Vec<f64> {
    let mut h = Vec::with_capacity(count);
    let h0 = std::f64::consts::PI.powf(-0.25) * (-0.5 * x * x).exp();
    h.push(h0);
    if count > 1 {
        h.push(std::f64::consts::SQRT_2 * x * h0);
    }
    for k in 2..count {
        let kf = k as f64;
        let next = (2.0 / kf).sqrt() * x * h[k - 1] - ((kf - 1.0) / kf).sqrt() * h[k - 2];
        h.push(next);
    }
    h
}

/// `M` with `M_{jk} = ⟨ψ^{from}_j, ψ^{to}_k⟩` for one coordinate, computed in a
/// basis of size `2 n_max` and cropped.
pub fn dilation_1d(n_max: usize, lambda_from: f64, lambda_to: f64) -> Result<CMatrix> {
    if lambda_from <= 0.0 || lambda_to <= 0.0 {
        return Err(Error::InvalidArgument(
            "dilations are defined between positive lambdas".into(),
        ));
    }
    let r = 0.5 * (lambda_to / lambda_from).ln();
    let big = 2 * n_max;
    let mut a = CMatrix::zeros(big, big);
    for k in 1..big {
        a[(k - 1, k)] = linalg::real((k as f64).sqrt());
    }
    let ad = a.adjoint();
    let gen = (linalg::mul(&a, &a) - linalg::mul(&ad, &ad)) * linalg::real(-0.5 * r);
    Ok(gen.exp().view((0, 0), (n_max, n_max)).into_owned())
}

/// Coefficient map from the `to`-basis into the `from`-basis on the full
/// tensor basis (optionally tensored with an exterior factor of size `ext`).
pub fn dilation(spec: &HermiteBasisSpec, lambda_to: f64, ext: usize) -> Result<CMatrix> {
    let one = dilation_1d(spec.n_max, spec.lambda, lambda_to)?;
    let mut m = linalg::identity(1);
    for _ in 0..spec.n {
        m = linalg::kron(&m, &one);
    }
    Ok(linalg::kron(&m, &linalg::identity(ext)))
}
