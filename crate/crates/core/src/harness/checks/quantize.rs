use serde_json::json;

use super::{max_of, CheckDef, CheckRng};
use crate::error::Result;
use crate::exterior::ExteriorBasis;
use crate::harness::SuiteConfig;
use crate::linalg::{self, C64};
use crate::quantize::{
    a_plus_index, a_square_expected, bargmann_fock_matrices, build_a_operator, ground_tensor,
    kernel_analysis, oscillator_diagonal, position_matrices, quantize_gaussian, quantize_poly,
    total_unitary, HermiteBasisSpec,
};
use crate::sampling::{random_diagonal_unitary, random_unitary, random_weyl_poly};
use crate::symbols::{moyal_gauss, moyal_poly, vacuum_symbol, GaussianSymbol, WeylPoly};
use crate::symplectic::make_standard_space;

pub const KERNEL_THRESHOLD: f64 = 1e-6;

/// `‖π(f # g) − π(f)π(g)‖` on the interior for random polynomials of degree `<= 3`.
pub fn homomorphism_residual(rng: &mut CheckRng, n: usize, lambda: f64, n_max: usize, pairs: usize) -> Result<f64> {
    let spec = HermiteBasisSpec::with_margin(n, lambda, n_max, 3)?;
    max_of((0..pairs).map(|_| {
        let f = random_weyl_poly(rng, n, 3, 3);
        let g = random_weyl_poly(rng, n, 3, 3);
        let lhs = quantize_poly(&moyal_poly(&f, &g, lambda)?, &spec)?;
        let rhs = quantize_poly(&f, &spec)?.mul(&quantize_poly(&g, &spec)?)?;
        lhs.interior_residual(&rhs, 3)
    }))
}

/// `[x̂_j, p̂_k] = iλδ_jk` on the interior.
pub fn ccr_operator_residual(n: usize, lambda: f64, n_max: usize) -> Result<f64> {
    let spec = HermiteBasisSpec::new(n, lambda, n_max)?;
    let xp = position_matrices(&spec);
    let id = linalg::identity(spec.dim());
    let mut worst: f64 = 0.0;
    for j in 0..n {
        for k in 0..n {
            let c = xp[j].0.commutator(&xp[k].1)?;
            let d = if j == k { C64::new(0.0, lambda) } else { C64::new(0.0, 0.0) };
            let expected = crate::quantize::OperatorMatrix::new(&id * d, spec, false)?;
            worst = worst.max(c.interior_residual(&expected, 1)?);
        }
    }
    Ok(worst)
}

/// Interior eigenvalues of `π(Q)` against `|λ|(n + 2k)`.
pub fn oscillator_spectrum_residual(n: usize, lambda: f64, n_max: usize) -> Result<f64> {
    let spec = HermiteBasisSpec::with_margin(n, lambda, n_max, 2)?;
    let q = quantize_poly(&WeylPoly::oscillator(n), &spec)?;
    let (mut vals, _) = linalg::eigh(&q.interior_block(2));
    let idx = spec.interior(2);
    let diag = oscillator_diagonal(&spec);
    let mut expected: Vec<f64> = idx.iter().map(|&i| diag[i]).collect();
    vals.sort_by(f64::total_cmp);
    expected.sort_by(f64::total_cmp);
    let explicit = idx
        .iter()
        .map(|&i| (diag[i] - lambda.abs() * (n as f64 + 2.0 * spec.total_degree(i) as f64)).abs())
        .fold(0.0, f64::max);
    Ok(vals.iter().zip(&expected).map(|(a, b)| (a - b).abs()).fold(explicit, f64::max))
}

/// `π(s_λ)` is a rank-one projection of trace one onto the ground state.
pub fn vacuum_projection_residual(n: usize, lambda: f64, n_max: usize) -> Result<f64> {
    let spec = HermiteBasisSpec::new(n, lambda, n_max)?;
    let p = quantize_gaussian(&vacuum_symbol(&lambda, n)?, &spec)?;
    let m = &p.matrix;
    let (vals, _) = linalg::eigh(m);
    let rank = vals.iter().filter(|v| v.abs() > 1e-10).count();
    let mut r = (m.trace().re - 1.0).abs();
    r = r.max(linalg::max_abs(&(linalg::mul(m, m) - m)));
    r = r.max((m[(0, 0)].re - 1.0).abs());
    r = r.max((rank as f64 - 1.0).abs());
    Ok(r)
}

/// `π(g # h) = π(g)π(h)` for Gaussians in the Mehler range.
pub fn gaussian_product_residual(n: usize, lambda: f64, n_max: usize) -> Result<f64> {
    let spec = HermiteBasisSpec::new(n, lambda, n_max)?;
    let g = GaussianSymbol::real(n, 1.0, 0.5 / lambda)?;
    let h = GaussianSymbol::real(n, 1.0, 0.25 / lambda)?;
    let lhs = quantize_gaussian(&moyal_gauss(&g, &h, &lambda)?, &spec)?;
    let rhs = quantize_gaussian(&g, &spec)?.mul(&quantize_gaussian(&h, &spec)?)?;
    lhs.interior_residual(&rhs, 0)
}

/// Spectrum of `λ(n + 2 z·∂)` on polynomials of degree `< d` against `π(Q)`.
pub fn bargmann_spectrum_residual(n: usize, lambda: f64, deg_max: usize) -> Result<f64> {
    let bf = bargmann_fock_matrices(n, deg_max)?;
    let interior = bf.interior();
    let num = bf.orthonormal(&bf.number_operator());
    let (vals, _) = linalg::eigh(&linalg::select(&num, &interior, &interior));
    let mut bargmann: Vec<f64> = vals.iter().map(|v| lambda * (n as f64 + 2.0 * v)).collect();
    let spec = HermiteBasisSpec::new(n, lambda, deg_max)?;
    let diag = oscillator_diagonal(&spec);
    let mut hermite: Vec<f64> = (0..spec.dim())
        .filter(|&i| spec.total_degree(i) < deg_max)
        .map(|i| diag[i])
        .collect();
    if bargmann.len() != hermite.len() {
        return Ok(f64::INFINITY);
    }
    bargmann.sort_by(f64::total_cmp);
    hermite.sort_by(f64::total_cmp);
    Ok(bargmann.iter().zip(&hermite).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
}

/// `[∂_j, z_k] = δ_jk` and `∂_j* = z_j` in the orthonormal basis, on the interior.
pub fn bargmann_ccr_residual(n: usize, deg_max: usize) -> Result<f64> {
    let bf = bargmann_fock_matrices(n, deg_max)?;
    let interior = bf.interior();
    let mut worst: f64 = 0.0;
    for j in 0..n {
        let dj = bf.orthonormal(&bf.dz[j]);
        worst = worst.max(linalg::max_abs(&(dj.adjoint() - bf.orthonormal(&bf.z[j]))));
        for k in 0..n {
            let c = linalg::commutator(&dj, &bf.orthonormal(&bf.z[k]));
            let d = if j == k { 1.0 } else { 0.0 };
            let block = linalg::select(&c, &interior, &interior) - linalg::identity(interior.len()) * C64::new(d, 0.0);
            worst = worst.max(linalg::max_abs(&block));
        }
    }
    Ok(worst)
}

/// `Â² = Q̂ ⊗ 1 + λ(1 ⊗ N)` on the interior.
pub fn a_square_operator_residual(n: usize, lambda: f64, n_max: usize) -> Result<f64> {
    let spec = HermiteBasisSpec::new(n, lambda, n_max)?;
    let basis = ExteriorBasis::new(n)?;
    let a = build_a_operator(&make_standard_space(n)?, &basis, &spec)?;
    a.mul(&a)?.interior_residual(&a_square_expected(&basis, &spec), 1)
}

/// Kernel data of `Â⁺` at `λ = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelSummary {
    pub kernel: usize,
    pub cokernel: usize,
    /// `|⟨v, |0⟩ ⊗ 1⟩|²` for the kernel vector.
    pub ground_overlap: f64,
}

pub fn kernel_summary(n: usize, n_max: usize) -> Result<KernelSummary> {
    let spec = HermiteBasisSpec::new(n, 1.0, n_max)?;
    let basis = ExteriorBasis::new(n)?;
    let a = build_a_operator(&make_standard_space(n)?, &basis, &spec)?;
    let r = a_plus_index(&a, &basis, KERNEL_THRESHOLD)?;
    let ground_overlap = if r.kernel.dim == 1 {
        let v = r.kernel_vector(0, a.dim());
        (ground_tensor(&basis, &spec, basis.vacuum_index()).adjoint() * v)[(0, 0)].norm_sqr()
    } else {
        0.0
    };
    Ok(KernelSummary {
        kernel: r.kernel.dim,
        cokernel: r.cokernel.dim,
        ground_overlap,
    })
}

/// At `λ = −1` the kernel of `Â` is one line on which `T(U) ⊗ ΛU` acts by `det U`.
pub fn determinant_action_residual(rng: &mut CheckRng, n: usize, n_max: usize, samples: usize) -> Result<f64> {
    let spec = HermiteBasisSpec::new(n, -1.0, n_max)?;
    let basis = ExteriorBasis::new(n)?;
    let a = build_a_operator(&make_standard_space(n)?, &basis, &spec)?;
    let all_ext: Vec<usize> = (0..basis.dim()).collect();
    let cols = spec.with_exterior(&spec.interior(1), &all_ext);
    let rows: Vec<usize> = (0..a.dim()).collect();
    let k = kernel_analysis(&linalg::select(&a.matrix, &rows, &cols), KERNEL_THRESHOLD)?;
    if k.dim != 1 {
        return Ok(f64::INFINITY);
    }
    let v = crate::quantize::dirac::lift(&k.basis.column(0).into_owned(), &cols, a.dim());
    let top = ground_tensor(&basis, &spec, basis.top_index());
    let mut worst = 1.0 - (top.adjoint() * &v)[(0, 0)].norm_sqr();
    for _ in 0..samples {
        let u = random_diagonal_unitary(rng, n);
        let t = total_unitary(&basis, &spec, &u)?;
        let r = (&t.matrix * &v - &v * u.determinant()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        worst = worst.max(r);
    }
    Ok(worst)
}

/// `[T(U) ⊗ ΛU, Â]` on total degree `<= n_max − 2`.
pub fn a_equivariance_residual(rng: &mut CheckRng, n: usize, lambda: f64, n_max: usize, samples: usize) -> Result<f64> {
    let spec = HermiteBasisSpec::new(n, lambda, n_max)?;
    let basis = ExteriorBasis::new(n)?;
    let a = build_a_operator(&make_standard_space(n)?, &basis, &spec)?;
    let all_ext: Vec<usize> = (0..basis.dim()).collect();
    let idx = spec.with_exterior(&spec.degree_at_most(n_max - 2), &all_ext);
    max_of((0..samples).map(|_| {
        let t = total_unitary(&basis, &spec, &random_unitary(rng, n))?;
        Ok(linalg::max_abs(&linalg::select(&linalg::commutator(&t.matrix, &a.matrix), &idx, &idx)))
    }))
}

pub fn register(cfg: &SuiteConfig) -> Vec<CheckDef> {
    let ns = cfg.n_values.clone();
    let lambdas = cfg.lambda_values.clone();
    let cells: Vec<(usize, f64, usize)> = ns
        .iter()
        .flat_map(|&n| lambdas.iter().map(move |&l| (n, l, 0)))
        .map(|(n, l, _)| (n, l, cfg.n_max_for(n)))
        .collect();
    let grid = json!({ "n": ns, "lambda": lambdas, "N_max": cfg.n_max, "N_max_multi": cfg.n_max_multi });
    let pairs = cfg.random_pairs;
    let us = cfg.unitary_samples;
    let per_n: Vec<(usize, usize)> = ns.iter().map(|&n| (n, cfg.n_max_for(n))).collect();
    let (c1, c2, c3, c4, c5, c6) = (cells.clone(), cells.clone(), cells.clone(), cells.clone(), cells.clone(), cells.clone());
    let (p1, p2, p3, p4, p5) = (per_n.clone(), per_n.clone(), per_n.clone(), per_n.clone(), per_n.clone());
    vec![
        CheckDef::at_most(
            "quantize.homomorphism",
            "weyl-quantization",
            json!({ "n": ns, "lambda": lambdas, "N_max": cfg.n_max, "N_max_multi": cfg.n_max_multi, "pairs": pairs, "max_degree": 3, "margin": 3 }),
            1e-10,
            move |rng| max_of(c1.iter().map(|&(n, l, m)| homomorphism_residual(rng, n, l, m, pairs)).collect::<Vec<_>>()),
        ),
        CheckDef::at_most("quantize.canonical_commutation", "weyl-quantization", grid.clone(), 1e-12, move |_| {
            max_of(c2.iter().map(|&(n, l, m)| ccr_operator_residual(n, l, m)))
        }),
        CheckDef::at_most("quantize.gaussian_product", "weyl-quantization", grid.clone(), 1e-14, move |_| {
            max_of(c3.iter().map(|&(n, l, m)| gaussian_product_residual(n, l, m)))
        }),
        CheckDef::at_most("quantize.oscillator_spectrum", "harmonic-oscillator", grid.clone(), 1e-10, move |_| {
            max_of(c4.iter().map(|&(n, l, m)| oscillator_spectrum_residual(n, l, m)))
        }),
        CheckDef::at_most("quantize.vacuum_projection", "harmonic-oscillator", grid.clone(), 1e-12, move |_| {
            max_of(c5.iter().map(|&(n, l, m)| vacuum_projection_residual(n, l, m)))
        }),
        CheckDef::at_most("quantize.bargmann_spectrum", "bargmann-fock", json!({ "n": ns, "lambda": lambdas, "deg_max": 8 }), 1e-10, {
            let ns = ns.clone();
            let lambdas = lambdas.clone();
            move |_| max_of(ns.iter().flat_map(|&n| lambdas.iter().map(move |&l| bargmann_spectrum_residual(n, l, 8))))
        }),
        CheckDef::at_most("quantize.bargmann_ccr", "bargmann-fock", json!({ "n": ns, "deg_max": 8 }), 1e-12, {
            let ns = ns.clone();
            move |_| max_of(ns.iter().map(|&n| bargmann_ccr_residual(n, 8)))
        }),
        CheckDef::at_most("quantize.a_square_operator", "clifford-square", grid.clone(), 1e-10, move |_| {
            max_of(c6.iter().map(|&(n, l, m)| a_square_operator_residual(n, l, m)))
        }),
        CheckDef::at_most("quantize.kernel_index", "kernel-index", json!({ "n": ns, "lambda": 1.0, "threshold": KERNEL_THRESHOLD }), 0.5, move |_| {
            max_of(p1.iter().map(|&(n, m)| {
                let s = kernel_summary(n, m)?;
                Ok((s.kernel as f64 - 1.0).abs() + s.cokernel as f64)
            }))
        }),
        CheckDef::at_most("quantize.kernel_ground_overlap", "kernel-index", json!({ "n": ns, "lambda": 1.0 }), 1e-8, move |_| {
            max_of(p2.iter().map(|&(n, m)| Ok(1.0 - kernel_summary(n, m)?.ground_overlap)))
        }),
        CheckDef::at_most("quantize.kernel_truncation_stability", "kernel-index", json!({ "n": ns, "lambda": 1.0, "refinement": 2 }), 0.5, move |_| {
            max_of(p3.iter().map(|&(n, m)| {
                let a = kernel_summary(n, m)?;
                let b = kernel_summary(n, if n == 1 { 2 * m } else { m + 4 })?;
                Ok((a.kernel as f64 - b.kernel as f64).abs() + (a.cokernel as f64 - b.cokernel as f64).abs())
            }))
        }),
        CheckDef::at_most("quantize.determinant_action", "kernel-index", json!({ "n": ns, "lambda": -1.0, "unitaries": us }), 1e-8, move |rng| {
            max_of(p4.iter().map(|&(n, m)| determinant_action_residual(rng, n, m, us)).collect::<Vec<_>>())
        }),
        CheckDef::at_most("quantize.a_equivariance", "idempotent-equivariance", json!({ "n": ns, "lambda": 1.0, "unitaries": us }), 1e-8, move |rng| {
            max_of(p5.iter().map(|&(n, m)| a_equivariance_residual(rng, n, 1.0, m, us)).collect::<Vec<_>>())
        }),
    ]
}
