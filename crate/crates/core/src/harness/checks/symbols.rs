use num_rational::BigRational;
use serde_json::json;

use super::{max_of, CheckDef, CheckRng};
use crate::error::Result;
use crate::exterior::ExteriorBasis;
use crate::harness::SuiteConfig;
use crate::linalg::C64;
use crate::sampling::{random_real_vec, random_weyl_poly};
use crate::symbols::{
    a_square_expected, build_a_symbol, fourier_iso_check, mehler, moyal_commutator, moyal_gauss,
    moyal_poly, moyal_poly_matrix, rational, scaling_iso, scaling_iso_prefactored, vacuum_symbol,
    GaussianSymbol, WeylPoly,
};
use crate::symplectic::make_standard_space;

/// `λ ∈ {1/2, 1, 2}` as exact fractions.
pub const EXACT_LAMBDAS: [(i64, i64); 3] = [(1, 2), (1, 1), (2, 1)];

/// Number of `(λ, n)` cells where `s_λ # s_λ ≠ s_λ` in exact arithmetic.
pub fn vacuum_idempotent_failures(lambdas: &[(i64, i64)], ns: &[usize]) -> Result<f64> {
    let mut failures = 0;
    for &(p, q) in lambdas {
        let lambda: BigRational = rational(p, q);
        for &n in ns {
            let s = vacuum_symbol(&lambda, n)?;
            if moyal_gauss(&s, &s, &lambda)? != s {
                failures += 1;
            }
        }
    }
    Ok(failures as f64)
}

/// `max ‖K_λ(τ₁) # K_λ(τ₂) − K_λ(τ₁ + τ₂)‖` over a grid.
pub fn mehler_semigroup_residual(taus: &[f64], lambdas: &[f64], n: usize) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for &lambda in lambdas {
        for &t1 in taus {
            for &t2 in taus {
                let lhs = moyal_gauss(&mehler(t1, lambda, n)?, &mehler(t2, lambda, n)?, &lambda)?;
                worst = worst.max(lhs.distance(&mehler(t1 + t2, lambda, n)?));
            }
        }
    }
    Ok(worst)
}

/// Coefficient distance between `A # A` and `Q ⊗ 1 + λ(1 ⊗ N)`.
pub fn a_square_symbol_residual(n: usize, lambda: f64) -> Result<f64> {
    let space = make_standard_space(n)?;
    let basis = ExteriorBasis::new(n)?;
    let a = build_a_symbol(&space, &basis)?;
    Ok(moyal_poly_matrix(&a, &a, lambda)?.distance(&a_square_expected(&basis, lambda)))
}

pub fn associativity_residual(rng: &mut CheckRng, n: usize, lambda: f64, triples: usize) -> Result<f64> {
    max_of((0..triples).map(|_| {
        let f = random_weyl_poly(rng, n, 3, 4);
        let g = random_weyl_poly(rng, n, 3, 4);
        let h = random_weyl_poly(rng, n, 3, 4);
        let left = moyal_poly(&moyal_poly(&f, &g, lambda)?, &h, lambda)?;
        let right = moyal_poly(&f, &moyal_poly(&g, &h, lambda)?, lambda)?;
        Ok(left.distance(&right))
    }))
}

/// `[x_j, ξ_k] = iλδ_jk`, `[x_j, x_k] = [ξ_j, ξ_k] = 0`.
pub fn ccr_symbol_residual(n: usize, lambda: f64) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for j in 0..n {
        for k in 0..n {
            let d = if j == k { lambda } else { 0.0 };
            let xp = moyal_commutator(&WeylPoly::x(n, j), &WeylPoly::xi(n, k), lambda)?;
            worst = worst.max(xp.distance(&WeylPoly::constant(n, C64::new(0.0, d))));
            for (a, b) in [(WeylPoly::x(n, j), WeylPoly::x(n, k)), (WeylPoly::xi(n, j), WeylPoly::xi(n, k))] {
                worst = worst.max(moyal_commutator(&a, &b, lambda)?.distance(&WeylPoly::zero(n)));
            }
        }
    }
    Ok(worst)
}

/// `f #₀ g = fg` pointwise.
pub fn lambda_zero_pointwise_residual(rng: &mut CheckRng, n: usize, pairs: usize) -> Result<f64> {
    max_of((0..pairs).map(|_| {
        let f = random_weyl_poly(rng, n, 3, 4);
        let g = random_weyl_poly(rng, n, 3, 4);
        let p = random_real_vec(rng, 2 * n);
        let prod = moyal_poly(&f, &g, 0.0)?;
        Ok((prod.evaluate(&p) - f.evaluate(&p) * g.evaluate(&p)).norm())
    }))
}

/// Largest coefficient change of a Gaussian product between `λ = 0` and `λ = ε`.
pub fn gaussian_family_continuity(epsilon: f64) -> Result<f64> {
    let a = GaussianSymbol::real(1, 1.0, 0.7)?;
    let b = GaussianSymbol::real(1, 2.0, 1.3)?;
    Ok(moyal_gauss(&a, &b, &epsilon)?.distance(&moyal_gauss(&a, &b, &0.0)?))
}

fn scaling_pairs() -> Result<Vec<(GaussianSymbol, GaussianSymbol)>> {
    Ok(vec![
        (GaussianSymbol::real(1, 1.0, 0.5)?, GaussianSymbol::real(1, 1.0, 0.25)?),
        (GaussianSymbol::real(2, 2.0, 0.3)?, GaussianSymbol::real(2, 0.5, 1.1)?),
    ])
}

/// `‖φ_λ(f #₁ g) − φ_λ(f) #_λ φ_λ(g)‖` for the given scaling map.
fn scaling_defect(
    map: fn(&GaussianSymbol, &f64) -> Result<GaussianSymbol>,
    lambda: f64,
) -> Result<f64> {
    max_of(scaling_pairs()?.into_iter().map(|(f, g)| {
        let lhs = map(&moyal_gauss(&f, &g, &1.0)?, &lambda)?;
        let rhs = moyal_gauss(&map(&f, &lambda)?, &map(&g, &lambda)?, &lambda)?;
        Ok(lhs.distance(&rhs))
    }))
}

pub fn scaling_multiplicativity_residual(lambda: f64) -> Result<f64> {
    scaling_defect(scaling_iso, lambda)
}

/// The same defect with the `λ^{-n}` amplitude factor included.
pub fn scaling_prefactor_defect(lambda: f64) -> Result<f64> {
    scaling_defect(scaling_iso_prefactored, lambda)
}

pub fn fourier_residual(lambda: f64, tolerance: f64) -> Result<f64> {
    let g = GaussianSymbol::real(1, 1.0, 2.0)?;
    let h = GaussianSymbol::real(1, 1.0, 0.5)?;
    Ok(fourier_iso_check(&g, &h, lambda, tolerance)?.residual)
}

pub fn register(cfg: &SuiteConfig) -> Vec<CheckDef> {
    let lambdas = cfg.lambda_values.clone();
    let taus = cfg.tau_values.clone();
    let pairs = cfg.random_pairs;
    let l1 = lambdas.clone();
    let l2 = lambdas.clone();
    let l3 = lambdas.clone();
    let l4 = lambdas.clone();
    let l5 = lambdas.clone();
    let l6 = lambdas.clone();
    vec![
        CheckDef::at_most(
            "symbols.vacuum_idempotent_exact",
            "symbol-families",
            json!({ "lambda": ["1/2", "1", "2"], "n": [1, 2, 3], "arithmetic": "rational" }),
            0.5,
            |_| vacuum_idempotent_failures(&EXACT_LAMBDAS, &[1, 2, 3]),
        ),
        CheckDef::at_most(
            "symbols.gaussian_family_continuity",
            "symbol-families",
            json!({ "epsilon": 1e-4 }),
            1e-6,
            |_| gaussian_family_continuity(1e-4),
        ),
        CheckDef::at_most(
            "symbols.lambda_zero_pointwise",
            "symbol-families",
            json!({ "n": [1, 2], "pairs": pairs }),
            1e-9,
            move |rng| max_of([1, 2].map(|n| lambda_zero_pointwise_residual(rng, n, pairs))),
        ),
        CheckDef::at_most(
            "symbols.mehler_semigroup",
            "mehler-kernel",
            json!({ "tau": taus, "lambda": lambdas, "n": [1, 2] }),
            1e-14,
            move |_| max_of([1, 2].map(|n| mehler_semigroup_residual(&taus, &l1, n))),
        ),
        CheckDef::at_most(
            "symbols.a_square_symbolic",
            "clifford-square",
            json!({ "n": [1, 2, 3], "lambda": l2 }),
            1e-12,
            move |_| max_of(l2.iter().flat_map(|&l| [1, 2, 3].map(|n| a_square_symbol_residual(n, l)))),
        ),
        CheckDef::at_most(
            "symbols.associativity",
            "polynomial-weyl-algebra",
            json!({ "n": [1, 2], "lambda": l3, "max_degree": 3, "triples": 10 }),
            1e-9,
            move |rng| max_of(l3.iter().flat_map(|&l| [1, 2].map(|n| associativity_residual(rng, n, l, 10))).collect::<Vec<_>>()),
        ),
        CheckDef::at_most(
            "symbols.canonical_commutation",
            "polynomial-weyl-algebra",
            json!({ "n": [1, 2, 3], "lambda": l4 }),
            1e-15,
            move |_| max_of(l4.iter().flat_map(|&l| [1, 2, 3].map(|n| ccr_symbol_residual(n, l)))),
        ),
        CheckDef::at_most(
            "symbols.fourier_twisted_convolution",
            "twisted-convolution-fourier",
            json!({ "n": 1, "lambda": [0.0, 1.0], "alpha": [2.0, 0.5] }),
            1e-6,
            |_| max_of([0.0, 1.0].map(|l| fourier_residual(l, 1e-6))),
        ),
        CheckDef::at_most(
            "symbols.scaling_multiplicative",
            "scaling-maps",
            json!({ "lambda": l5 }),
            1e-14,
            move |_| max_of(l5.iter().map(|&l| scaling_multiplicativity_residual(l))),
        ),
        CheckDef::at_least(
            "symbols.scaling_prefactor_not_multiplicative",
            "scaling-maps",
            json!({ "lambda": l6, "note": "the lambda^-n amplitude factor breaks multiplicativity" }),
            1e-3,
            move |_| {
                max_of(l6.iter().filter(|&&l| (l - 1.0).abs() > 1e-12).map(|&l| scaling_prefactor_defect(l)))
            },
        ),
    ]
}
