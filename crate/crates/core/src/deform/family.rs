//! The family `e_λ(τ)` on `Hermite ⊗ Λ`.
//!
//! All spectral functions are taken of the exact diagonal `M = Q̂ ⊗ I + λ I ⊗ N`.
//! Truncated `Â` maps each eigenspace of `M` into itself, so `R` and `B`
//! commute with `Â` exactly. Only `Â²` (and hence `e²`) is affected by the
//! truncation, on the outermost mode.

use crate::error::{Error, Result};
use crate::exterior::ExteriorBasis;
use crate::linalg::{self, CMatrix};
use crate::quantize::{self, HermiteBasisSpec, OperatorMatrix};
use crate::symbols::mehler;
use crate::symplectic::make_standard_space;

/// Margin used for relations involving one product of `Â` with itself.
pub const RELATION_MARGIN: usize = 2;
const ZERO_MODE_TOL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct DeformationFamily {
    pub tau: f64,
    pub spec: HermiteBasisSpec,
    pub basis: ExteriorBasis,
    pub a: OperatorMatrix,
    /// Diagonal of `M`.
    pub mu: Vec<f64>,
    pub zero_modes: Vec<usize>,
}

/// `(e^{−τμ} − e^{−2τμ})/μ`, continued by `τ` at `μ = 0`.
pub fn b_weight(tau: f64, mu: f64) -> f64 {
    if mu.abs() < ZERO_MODE_TOL {
        tau
    } else {
        ((-tau * mu).exp() - (-2.0 * tau * mu).exp()) / mu
    }
}

/// `(1 − e^{−τμ})/μ`, continued by `τ` at `μ = 0`.
pub fn parametrix_weight(tau: f64, mu: f64) -> f64 {
    if mu.abs() < ZERO_MODE_TOL {
        tau
    } else {
        -(-tau * mu).exp_m1() / mu
    }
}

impl DeformationFamily {
    pub fn new(tau: f64, spec: HermiteBasisSpec) -> Result<Self> {
        if tau < 1.0 || !tau.is_finite() {
            return Err(Error::InvalidArgument(format!("tau must be >= 1, got {tau}")));
        }
        if spec.lambda <= 0.0 {
            return Err(Error::UnsupportedLambda(spec.lambda));
        }
        let space = make_standard_space(spec.n)?;
        let basis = ExteriorBasis::new(spec.n)?;
        let a = quantize::build_a_operator(&space, &basis, &spec)?;
        let mu = quantize::a_square_diagonal(&basis, &spec);
        let zero_modes: Vec<usize> = (0..mu.len()).filter(|&i| mu[i].abs() < ZERO_MODE_TOL).collect();
        let expected = vec![spec.full_index(0, basis.vacuum_index())];
        if zero_modes != expected {
            return Err(Error::InvalidArgument(format!(
                "unexpected zero modes {zero_modes:?}, expected {expected:?}"
            )));
        }
        Ok(Self {
            tau,
            spec,
            basis,
            a,
            mu,
            zero_modes,
        })
    }

    pub fn dim(&self) -> usize {
        self.mu.len()
    }

    fn wrap(&self, m: CMatrix) -> OperatorMatrix {
        OperatorMatrix {
            matrix: m,
            spec: self.spec,
            exterior: true,
        }
    }

    pub fn is_even(&self, i: usize) -> bool {
        self.basis.parity(i % self.spec.exterior_dim()) == 0
    }

    pub fn r_diagonal(&self) -> Vec<f64> {
        self.mu.iter().map(|m| (-self.tau * m).exp()).collect()
    }

    /// `R = exp(−τM)`.
    pub fn r_operator(&self) -> OperatorMatrix {
        self.wrap(linalg::diag_real(&self.r_diagonal()))
    }

    /// `R` assembled as the Mehler quantization tensored with `e^{−λτN}`.
    pub fn r_from_mehler(&self) -> Result<OperatorMatrix> {
        let k = quantize::quantize_gaussian(&mehler(self.tau, self.spec.lambda, self.spec.n)?, &self.spec)?;
        let nf = self.spec.n as f64;
        let ext: Vec<f64> = (0..self.basis.dim())
            .map(|s| (-self.spec.lambda * self.tau * (2.0 * self.basis.degree(s) as f64 - nf)).exp())
            .collect();
        Ok(self.wrap(linalg::kron(&k.matrix, &linalg::diag_real(&ext))))
    }

    pub fn b_operator(&self) -> OperatorMatrix {
        let w: Vec<f64> = self.mu.iter().map(|&m| b_weight(self.tau, m)).collect();
        self.wrap(linalg::mul(&self.a.matrix, &linalg::diag_real(&w)))
    }

    /// `e = R²P⁺ + B(1 + R)P⁻ + ÂRP⁺ + (1 − R²)P⁻`.
    pub fn e_operator(&self) -> OperatorMatrix {
        let r = self.r_diagonal();
        let mut diag = vec![0.0; self.dim()];
        let mut v = vec![0.0; self.dim()];
        for i in 0..self.dim() {
            if self.is_even(i) {
                diag[i] = r[i] * r[i];
                v[i] = r[i];
            } else {
                diag[i] = 1.0 - r[i] * r[i];
                v[i] = b_weight(self.tau, self.mu[i]) * (1.0 + r[i]);
            }
        }
        let m = linalg::diag_real(&diag) + linalg::mul(&self.a.matrix, &linalg::diag_real(&v));
        self.wrap(m)
    }

    /// `diag(0, I)` on `Hermite ⊗ (Λ⁺ ⊕ Λ⁻)`.
    pub fn odd_projection(&self) -> OperatorMatrix {
        let d: Vec<f64> = (0..self.dim()).map(|i| if self.is_even(i) { 0.0 } else { 1.0 }).collect();
        self.wrap(linalg::diag_real(&d))
    }

    /// `diag(P₀ ⊗ p₀, I)`, the `τ → ∞` limit.
    pub fn tau_limit(&self) -> OperatorMatrix {
        let mut d: Vec<f64> = (0..self.dim()).map(|i| if self.is_even(i) { 0.0 } else { 1.0 }).collect();
        for &z in &self.zero_modes {
            d[z] = 1.0;
        }
        self.wrap(linalg::diag_real(&d))
    }

    /// Interior residuals of the relations satisfied by the family.
    pub fn relations(&self) -> Result<FamilyRelations> {
        let m = RELATION_MARGIN;
        let e = self.e_operator();
        let r = self.r_operator();
        let b = self.b_operator();
        let r2 = r.mul(&r)?;
        let ab = self.a.mul(&b)?;
        Ok(FamilyRelations {
            idempotent: e.mul(&e)?.interior_residual(&e, m)?,
            a_intertwines_r: self.a.mul(&r)?.interior_residual(&r.mul(&self.a)?, m)?,
            b_intertwines_r: b.mul(&r)?.interior_residual(&r.mul(&b)?, m)?,
            ab_identity: ab.interior_residual(&r.sub(&r2)?, m)?,
            r_mehler: r.interior_residual(&self.r_from_mehler()?, 0)?,
            self_adjoint: {
                let blk = e.interior_block(m);
                linalg::max_abs(&(blk.adjoint() - &blk))
            },
        })
    }
}

/// Interior residuals from [`DeformationFamily::relations`].
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct FamilyRelations {
    pub idempotent: f64,
    pub a_intertwines_r: f64,
    pub b_intertwines_r: f64,
    /// `‖ÂB − (R − R²)‖`.
    pub ab_identity: f64,
    pub r_mehler: f64,
    /// `‖e − e*‖`; nonzero because `e` is an idempotent, not a projection.
    pub self_adjoint: f64,
}

pub fn r_operator(tau: f64, spec: HermiteBasisSpec) -> Result<OperatorMatrix> {
    Ok(DeformationFamily::new(tau, spec)?.r_operator())
}

pub fn b_operator(tau: f64, spec: HermiteBasisSpec) -> Result<OperatorMatrix> {
    Ok(DeformationFamily::new(tau, spec)?.b_operator())
}

pub fn idempotent_e(tau: f64, spec: HermiteBasisSpec) -> Result<OperatorMatrix> {
    Ok(DeformationFamily::new(tau, spec)?.e_operator())
}
