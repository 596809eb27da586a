//! Toeplitz operators on the circle: index against winding number.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, C64};
use crate::quantize::{kernel_analysis, KernelAnalysis};

/// Singular values below this count towards a kernel.
pub const KERNEL_THRESHOLD: f64 = 1e-6;

/// Fourier coefficients of a trigonometric polynomial, keyed by mode.
pub type FourierSymbol = BTreeMap<i64, C64>;

pub fn monomial_symbol(k: i64) -> FourierSymbol {
    FourierSymbol::from([(k, C64::new(1.0, 0.0))])
}

/// `f(θ) = Σ_m f̂(m) e^{imθ}`.
pub fn evaluate_symbol(f: &FourierSymbol, theta: f64) -> C64 {
    f.iter().map(|(&m, &c)| c * C64::from_polar(1.0, m as f64 * theta)).sum()
}

/// The Hardy projection on modes `−N..=N`: identity on modes `>= 0`.
pub fn circle_szego(n: usize) -> Result<CMatrix> {
    if n < 8 {
        return Err(Error::InvalidArgument("circle_szego needs N >= 8".into()));
    }
    let d: Vec<f64> = (0..=2 * n).map(|i| if i >= n { 1.0 } else { 0.0 }).collect();
    Ok(linalg::diag_real(&d))
}

/// Multiplication by `f` on modes `−N..=N`, truncated.
pub fn multiplication_operator(f: &FourierSymbol, n: usize) -> CMatrix {
    let size = 2 * n + 1;
    CMatrix::from_fn(size, size, |r, c| {
        f.get(&(r as i64 - c as i64)).copied().unwrap_or_default()
    })
}

/// `T_f` on modes `0..=N`, with entries `f̂(m − j)`.
pub fn toeplitz_matrix(f: &FourierSymbol, n: usize) -> CMatrix {
    CMatrix::from_fn(n + 1, n + 1, |r, c| {
        f.get(&(r as i64 - c as i64)).copied().unwrap_or_default()
    })
}

fn conj_symbol(f: &FourierSymbol) -> FourierSymbol {
    f.iter().map(|(&m, c)| (-m, c.conj())).collect()
}

/// Winding number by argument tracking on a `4N`-point grid.
pub fn winding(f: &FourierSymbol, n: usize) -> Result<i64> {
    let samples = 4 * n.max(8);
    let mut min_abs = f64::INFINITY;
    let mut total = 0.0;
    let mut prev = evaluate_symbol(f, 0.0);
    min_abs = min_abs.min(prev.norm());
    for k in 1..=samples {
        let v = evaluate_symbol(f, 2.0 * PI * k as f64 / samples as f64);
        min_abs = min_abs.min(v.norm());
        let mut d = v.arg() - prev.arg();
        while d > PI {
            d -= 2.0 * PI;
        }
        while d < -PI {
            d += 2.0 * PI;
        }
        total += d;
        prev = v;
    }
    if min_abs <= 1e-6 {
        return Err(Error::NotInvertible(min_abs));
    }
    Ok((total / (2.0 * PI)).round() as i64)
}

fn check_symbol(f: &FourierSymbol, n: usize) -> Result<()> {
    if n < 8 {
        return Err(Error::InvalidArgument("Toeplitz truncation needs N >= 8".into()));
    }
    let bound = (n / 4) as i64;
    if let Some((&m, _)) = f.iter().find(|(&m, _)| m.abs() > bound) {
        return Err(Error::InvalidArgument(format!(
            "Fourier mode {m} outside the support bound N/4 = {bound}"
        )));
    }
    Ok(())
}

/// Kernel and cokernel of `T_f`, counted on columns `0..=N − N/8`.
#[derive(Debug, Clone)]
pub struct ToeplitzKernels {
    pub kernel: KernelAnalysis,
    pub cokernel: KernelAnalysis,
}

pub fn toeplitz_kernels(f: &FourierSymbol, n: usize) -> Result<ToeplitzKernels> {
    check_symbol(f, n)?;
    winding(f, n)?;
    let cols: Vec<usize> = (0..=n - n / 8).collect();
    let rows: Vec<usize> = (0..=n).collect();
    let t = toeplitz_matrix(f, n);
    let ts = toeplitz_matrix(&conj_symbol(f), n);
    Ok(ToeplitzKernels {
        kernel: kernel_analysis(&linalg::select(&t, &rows, &cols), KERNEL_THRESHOLD)?,
        cokernel: kernel_analysis(&linalg::select(&ts, &rows, &cols), KERNEL_THRESHOLD)?,
    })
}

/// `dim ker T_f − dim ker T_f*`.
pub fn toeplitz_index(f: &FourierSymbol, n: usize) -> Result<i64> {
    let k = toeplitz_kernels(f, n)?;
    Ok(k.kernel.dim as i64 - k.cokernel.dim as i64)
}

/// Rotation weights of an orthonormal family of mode vectors.
fn weights(k: &KernelAnalysis) -> Vec<i64> {
    if k.dim == 0 {
        return Vec::new();
    }
    let modes: Vec<f64> = (0..k.basis.nrows()).map(|m| m as f64).collect();
    let g = k.basis.adjoint() * linalg::diag_real(&modes) * &k.basis;
    let (vals, _) = linalg::eigh(&g);
    let mut w: Vec<i64> = vals.iter().map(|v| v.round() as i64).collect();
    w.sort_unstable();
    w
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquivariantRecord {
    pub k: i64,
    pub n: usize,
    pub kernel_weights: Vec<i64>,
    pub cokernel_weights: Vec<i64>,
    pub expected_kernel: Vec<i64>,
    pub expected_cokernel: Vec<i64>,
    /// Largest deviation of the computed character from the predicted one.
    pub character_residual: f64,
    pub pass: bool,
}

/// Kernel and cokernel of `T_{e^{ikθ}}` as rotation representations, compared
/// with mode counting. The virtual character is sampled at `samples` angles.
pub fn equivariant_toeplitz_demo(k: i64, samples: usize, n: usize) -> Result<EquivariantRecord> {
    if k.unsigned_abs() as usize > n / 8 {
        return Err(Error::InvalidArgument(format!("|k| = {} exceeds N/8", k.abs())));
    }
    let kers = toeplitz_kernels(&monomial_symbol(k), n)?;
    let kernel_weights = weights(&kers.kernel);
    let cokernel_weights = weights(&kers.cokernel);
    let expected_cokernel: Vec<i64> = (0..k.max(0)).collect();
    let expected_kernel: Vec<i64> = (0..(-k).max(0)).collect();
    let character = |ker: &[i64], coker: &[i64], phi: f64| -> C64 {
        let s = |ws: &[i64]| -> C64 { ws.iter().map(|&w| C64::from_polar(1.0, w as f64 * phi)).sum() };
        s(ker) - s(coker)
    };
    let character_residual = (0..samples.max(1))
        .map(|j| {
            let phi = 2.0 * PI * j as f64 / samples.max(1) as f64 + 0.1;
            (character(&kernel_weights, &cokernel_weights, phi)
                - character(&expected_kernel, &expected_cokernel, phi))
            .norm()
        })
        .fold(0.0, f64::max);
    let pass = kernel_weights == expected_kernel && cokernel_weights == expected_cokernel;
    Ok(EquivariantRecord {
        k,
        n,
        kernel_weights,
        cokernel_weights,
        expected_kernel,
        expected_cokernel,
        character_residual,
        pass,
    })
}

/// The composite symbols used by the demo.
pub fn composite_symbols() -> Vec<(String, FourierSymbol)> {
    vec![
        (
            "e^{-2i t}(2 + 0.5 e^{i t})".into(),
            FourierSymbol::from([(-2, C64::new(2.0, 0.0)), (-1, C64::new(0.5, 0.0))]),
        ),
        (
            "e^{3i t} + 0.4 e^{i t} - 0.1".into(),
            FourierSymbol::from([(3, C64::new(1.0, 0.0)), (1, C64::new(0.4, 0.0)), (0, C64::new(-0.1, 0.0))]),
        ),
    ]
}
