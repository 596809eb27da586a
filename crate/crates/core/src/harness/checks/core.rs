use serde_json::json;

use super::{max_of, CheckDef, CheckRng};
use crate::error::Result;
use crate::exterior::{self, ExteriorBasis};
use crate::harness::SuiteConfig;
use crate::linalg::{self, CMatrix, C64};
use crate::sampling::{random_complex_vec, random_real_vec, random_unitary};
use crate::symplectic::{make_standard_space, to_complex};

const NS: [usize; 3] = [1, 2, 3];
const SAMPLES: usize = 50;

fn inner(z: &[C64], w: &[C64]) -> C64 {
    z.iter().zip(w).map(|(a, b)| a * b.conj()).sum()
}

fn scalar(dim: usize, s: C64) -> CMatrix {
    linalg::identity(dim) * s
}

/// Antisymmetry, unit determinant and canonical values of `ω`.
pub fn symplectic_form_residual(n: usize) -> Result<f64> {
    let s = make_standard_space(n)?;
    let mut r = (&s.omega + s.omega.transpose()).abs().max();
    r = r.max((s.omega.determinant() - 1.0).abs());
    for j in 0..n {
        for k in 0..n {
            let e = s.basis_vector(&s.labels[j]).expect("label");
            let f = s.basis_vector(&s.labels[n + k]).expect("label");
            let expected = if j == k { 1.0 } else { 0.0 };
            r = r.max((s.omega_form(&e, &f)? - expected).abs());
        }
    }
    Ok(r)
}

/// `J² = −1`, `J` symplectic, `g = ωJ` symmetric positive definite.
pub fn complex_structure_residual(n: usize) -> Result<f64> {
    let s = make_standard_space(n)?;
    let j = &s.complex_structure;
    let id = nalgebra::DMatrix::<f64>::identity(2 * n, 2 * n);
    let mut r = (j * j + &id).abs().max();
    r = r.max((j.transpose() * &s.omega * j - &s.omega).abs().max());
    r = r.max((&s.metric - s.metric.transpose()).abs().max());
    let min_eig = s.metric.clone().symmetric_eigen().eigenvalues.min();
    Ok(r.max((1.0 - min_eig).max(0.0)))
}

/// `h(v, w) = g(v, w) − iω(v, w)` against `Σ z_v conj(z_w)`.
pub fn hermitian_form_residual(rng: &mut CheckRng, n: usize) -> Result<f64> {
    let s = make_standard_space(n)?;
    max_of((0..SAMPLES).map(|_| {
        let v = random_real_vec(rng, 2 * n);
        let w = random_real_vec(rng, 2 * n);
        Ok((s.hermitian_form(&v, &w)? - inner(&to_complex(&v), &to_complex(&w))).norm())
    }))
}

pub fn clifford_square_residual(rng: &mut CheckRng, n: usize) -> Result<f64> {
    let b = ExteriorBasis::new(n)?;
    max_of((0..SAMPLES).map(|_| {
        let z = random_complex_vec(rng, n);
        let c = exterior::clifford_c(&b, &z)?;
        Ok(linalg::max_abs(&(linalg::mul(&c, &c) - scalar(b.dim(), inner(&z, &z)))))
    }))
}

pub fn clifford_ct_square_residual(rng: &mut CheckRng, n: usize) -> Result<f64> {
    let b = ExteriorBasis::new(n)?;
    max_of((0..SAMPLES).map(|_| {
        let z = random_complex_vec(rng, n);
        let t = random_real_vec(rng, 1)[0];
        let c = exterior::clifford_ct(&b, &z, t)?;
        let expected = inner(&z, &z) + t * t;
        Ok(linalg::max_abs(&(linalg::mul(&c, &c) - scalar(b.dim(), expected))))
    }))
}

/// `{c(z), c(w)} = 2 Re⟨z, w⟩`.
pub fn clifford_anticommutator_residual(rng: &mut CheckRng, n: usize) -> Result<f64> {
    let b = ExteriorBasis::new(n)?;
    max_of((0..SAMPLES).map(|_| {
        let z = random_complex_vec(rng, n);
        let w = random_complex_vec(rng, n);
        let ac = linalg::anticommutator(&exterior::clifford_c(&b, &z)?, &exterior::clifford_c(&b, &w)?);
        let expected = C64::new(2.0 * inner(&z, &w).re, 0.0);
        Ok(linalg::max_abs(&(ac - scalar(b.dim(), expected))))
    }))
}

/// `c(z)` is odd and self-adjoint; `Γ` is a self-adjoint involution.
pub fn clifford_grading_residual(rng: &mut CheckRng, n: usize) -> Result<f64> {
    let b = ExteriorBasis::new(n)?;
    let g = b.grading();
    let mut r = linalg::max_abs(&(linalg::mul(&g, &g) - linalg::identity(b.dim())));
    r = r.max(linalg::hermitian_residual(&g));
    let odd = max_of((0..SAMPLES).map(|_| {
        let c = exterior::clifford_c(&b, &random_complex_vec(rng, n))?;
        Ok(linalg::max_abs(&linalg::anticommutator(&g, &c)).max(linalg::hermitian_residual(&c)))
    }))?;
    Ok(r.max(odd))
}

/// `{ε_j, ι_k} = δ_jk`, `ε_j ε_k = −ε_k ε_j`, `ι = ε*`.
pub fn car_residual(n: usize) -> Result<f64> {
    let b = ExteriorBasis::new(n)?;
    let eps: Vec<CMatrix> = (0..n).map(|j| exterior::eps_matrix(&b, &exterior::unit_vector(n, j))).collect::<Result<_>>()?;
    let iota: Vec<CMatrix> = (0..n).map(|j| exterior::iota_matrix(&b, &exterior::unit_vector(n, j))).collect::<Result<_>>()?;
    let mut r: f64 = 0.0;
    for j in 0..n {
        r = r.max(linalg::max_abs(&(&iota[j] - eps[j].adjoint())));
        for k in 0..n {
            let d = if j == k { 1.0 } else { 0.0 };
            r = r.max(linalg::max_abs(&(linalg::anticommutator(&eps[j], &iota[k]) - linalg::diag_real(&vec![d; b.dim()]))));
            r = r.max(linalg::max_abs(&linalg::anticommutator(&eps[j], &eps[k])));
        }
    }
    Ok(r)
}

/// `Λ(UV) = ΛU ΛV`, `ΛU` unitary and commuting with `N`.
pub fn exterior_power_residual(rng: &mut CheckRng, n: usize) -> Result<f64> {
    let b = ExteriorBasis::new(n)?;
    let nop = exterior::number_operator(&b);
    max_of((0..SAMPLES / 5).map(|_| {
        let u = random_unitary(rng, n);
        let v = random_unitary(rng, n);
        let lu = exterior::exterior_power_unitary(&b, &u)?;
        let lv = exterior::exterior_power_unitary(&b, &v)?;
        let luv = exterior::exterior_power_unitary(&b, &(&u * &v))?;
        Ok(linalg::max_abs(&(luv - &lu * &lv))
            .max(linalg::unitarity_residual(&lu))
            .max(linalg::max_abs(&linalg::commutator(&lu, &nop))))
    }))
}

/// `ΛU c(z) ΛU* = c(Uz)`.
pub fn clifford_intertwining_residual(rng: &mut CheckRng, n: usize, unitaries: usize) -> Result<f64> {
    let b = ExteriorBasis::new(n)?;
    max_of((0..unitaries).map(|_| {
        let u = random_unitary(rng, n);
        let lu = exterior::exterior_power_unitary(&b, &u)?;
        let z = random_complex_vec(rng, n);
        let uz: Vec<C64> = (0..n).map(|i| (0..n).map(|j| u[(i, j)] * z[j]).sum()).collect();
        let lhs = &lu * exterior::clifford_c(&b, &z)? * lu.adjoint();
        Ok(linalg::max_abs(&(lhs - exterior::clifford_c(&b, &uz)?)))
    }))
}

/// Dimension bookkeeping: `2ⁿ` total, equal even and odd halves, `N` spectrum.
pub fn exterior_dimension_defect(n: usize) -> Result<f64> {
    let b = ExteriorBasis::new(n)?;
    let mut defect = (b.dim() as f64 - 2f64.powi(n as i32)).abs();
    defect += (b.even_indices().len() as f64 - b.odd_indices().len() as f64).abs();
    let nop = exterior::number_operator(&b);
    for i in 0..b.dim() {
        defect += (nop[(i, i)].re - (2.0 * b.degree(i) as f64 - n as f64)).abs();
    }
    Ok(defect)
}

pub fn register(cfg: &SuiteConfig) -> Vec<CheckDef> {
    let ns = json!({ "n": NS });
    let us = cfg.unitary_samples;
    vec![
        CheckDef::at_most("core.symplectic_form", "symplectic-structures", ns.clone(), 1e-14, |_| {
            max_of(NS.map(symplectic_form_residual))
        }),
        CheckDef::at_most("core.complex_structure", "symplectic-structures", ns.clone(), 1e-14, |_| {
            max_of(NS.map(complex_structure_residual))
        }),
        CheckDef::at_most("core.hermitian_form", "symplectic-structures", ns.clone(), 1e-12, |rng| {
            max_of(NS.map(|n| hermitian_form_residual(rng, n)))
        }),
        CheckDef::at_most("core.clifford_anticommutator", "clifford-multiplication", ns.clone(), 1e-12, |rng| {
            max_of(NS.map(|n| clifford_anticommutator_residual(rng, n)))
        }),
        CheckDef::at_most("core.clifford_grading", "clifford-multiplication", ns.clone(), 1e-14, |rng| {
            max_of(NS.map(|n| clifford_grading_residual(rng, n)))
        }),
        CheckDef::at_most("core.car_relations", "clifford-multiplication", ns.clone(), 1e-15, |_| {
            max_of(NS.map(car_residual))
        }),
        CheckDef::at_most("core.exterior_power", "clifford-multiplication", ns.clone(), 1e-12, |rng| {
            max_of(NS.map(|n| exterior_power_residual(rng, n)))
        }),
        CheckDef::at_most("core.exterior_dimensions", "clifford-multiplication", ns.clone(), 0.5, |_| {
            max_of((1..=6).map(exterior_dimension_defect))
        }),
        CheckDef::at_most("core.clifford_square", "clifford-square", ns.clone(), 1e-12, |rng| {
            max_of(NS.map(|n| clifford_square_residual(rng, n)))
        }),
        CheckDef::at_most("core.clifford_ct_square", "clifford-square", ns.clone(), 1e-12, |rng| {
            max_of(NS.map(|n| clifford_ct_square_residual(rng, n)))
        }),
        CheckDef::at_most(
            "core.clifford_intertwining",
            "idempotent-equivariance",
            json!({ "n": NS, "unitaries": us }),
            1e-8,
            move |rng| max_of(NS.map(|n| clifford_intertwining_residual(rng, n, us))),
        ),
        CheckDef::at_most("core.clifford_unit_vectors", "clifford-multiplication", ns, 1e-15, |_| {
            max_of(NS.map(|n| {
                let b = ExteriorBasis::new(n)?;
                let mut r: f64 = 0.0;
                for j in 0..n {
                    let e = exterior::unit_vector(n, j);
                    let ie: Vec<C64> = e.iter().map(|x| x * C64::new(0.0, 1.0)).collect();
                    let expected = (exterior::eps_matrix(&b, &e)? - exterior::iota_matrix(&b, &e)?) * C64::new(0.0, 1.0);
                    r = r.max(linalg::max_abs(&(exterior::clifford_c(&b, &ie)? - expected)));
                }
                Ok(r)
            }))
        }),
    ]
}
