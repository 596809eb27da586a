use serde_json::json;

use super::{max_of, CheckDef};
use crate::error::Result;
use crate::harness::toeplitz::{
    circle_szego, composite_symbols, equivariant_toeplitz_demo, monomial_symbol,
    multiplication_operator, toeplitz_index, winding, FourierSymbol,
};
use crate::harness::SuiteConfig;
use crate::linalg;

/// `|index(T_f) + winding(f)|`.
pub fn index_defect(f: &FourierSymbol, n: usize) -> Result<f64> {
    Ok((toeplitz_index(f, n)? + winding(f, n)?).abs() as f64)
}

/// `S² = S = S*`, `tr S = N + 1`, and `rank [S, M_{e^{ikθ}}] <= 2k`.
pub fn szego_defect(n: usize) -> Result<f64> {
    let s = circle_szego(n)?;
    let mut d = linalg::max_abs(&(linalg::mul(&s, &s) - &s)) + linalg::hermitian_residual(&s);
    d += (s.trace().re - (n + 1) as f64).abs();
    for k in 1..=3i64 {
        let c = linalg::commutator(&s, &multiplication_operator(&monomial_symbol(k), n));
        let (sv, _) = linalg::svd_ascending(&c);
        let rank = sv.iter().filter(|&&v| v > 1e-10).count();
        d += rank.saturating_sub(2 * k as usize) as f64;
    }
    Ok(d)
}

pub fn register(cfg: &SuiteConfig) -> Vec<CheckDef> {
    let n = cfg.toeplitz_n;
    vec![
        CheckDef::at_most("toeplitz.szego_projection", "toeplitz-index-circle", json!({ "N": 32 }), 1e-12, |_| szego_defect(32)),
        CheckDef::at_most(
            "toeplitz.index_monomials",
            "toeplitz-index-circle",
            json!({ "N": n, "k": [-3, -2, -1, 0, 1, 2, 3], "band_edge": "top N/8 modes excluded" }),
            0.5,
            move |_| max_of((-3..=3).map(|k| index_defect(&monomial_symbol(k), n))),
        ),
        CheckDef::at_most(
            "toeplitz.index_composite",
            "toeplitz-index-circle",
            json!({ "N": n, "symbols": composite_symbols().into_iter().map(|(s, _)| s).collect::<Vec<_>>() }),
            0.5,
            move |_| max_of(composite_symbols().iter().map(|(_, f)| index_defect(f, n))),
        ),
        CheckDef::at_most(
            "toeplitz.index_stability",
            "toeplitz-index-circle",
            json!({ "N": [n / 2, n] }),
            0.5,
            move |_| {
                max_of(composite_symbols().iter().map(|(_, f)| {
                    Ok((toeplitz_index(f, n / 2)? - toeplitz_index(f, n)?).abs() as f64)
                }))
            },
        ),
        CheckDef::at_most(
            "toeplitz.equivariant_weights",
            "toeplitz-index-circle",
            json!({ "N": n, "k": [0, 1, 3], "character_samples": 8 }),
            1e-12,
            move |_| {
                max_of([0, 1, 3].map(|k| {
                    let r = equivariant_toeplitz_demo(k, 8, n)?;
                    Ok(if r.pass { r.character_residual } else { f64::INFINITY })
                }))
            },
        ),
    ]
}
