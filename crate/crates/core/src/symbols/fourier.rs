//! Quadrature check that the Fourier transform `f̂(x) = ∫ e^{-ix·v} f(v) dv`
//! carries twisted convolution on `V = R²` to the Moyal product on `V*`.

use rayon::prelude::*;

use super::gaussian::{moyal_gauss, GaussianSymbol};
use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::quadrature::gauss_legendre_on;

/// Outcome of a twisted-convolution check.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierCheck {
    /// Largest deviation from the closed form over the sample grid.
    pub residual: f64,
    /// Change between the last two node counts.
    pub error_estimate: f64,
    pub nodes: usize,
}

/// Fourier transform of `coef · e^{-a|v|²}` on `R^{2n}`.
pub fn fourier_gaussian(g: &GaussianSymbol) -> Result<GaussianSymbol> {
    if g.alpha.is_nan() || g.alpha <= 0.0 {
        return Err(Error::InvalidArgument("Fourier transform needs alpha > 0".into()));
    }
    let scale = (std::f64::consts::PI / g.alpha).powi(g.n as i32);
    GaussianSymbol::new(g.n, g.coef * scale, 0.25 / g.alpha)
}

fn sample_points(width: f64) -> Vec<[f64; 2]> {
    let ticks = [-1.0, -0.4, 0.0, 0.7, 1.3];
    let mut pts = Vec::new();
    for &a in &ticks {
        for &b in &ticks {
            pts.push([a * width, b * width]);
        }
    }
    pts
}

/// `(g ∗_λ h)^` at the sample points, with `k` Gauss–Legendre nodes per axis.
///
/// For isotropic Gaussians the tensor rule separates: the phase
/// `ω(v,w) = v₁w₂ − v₂w₁` couples `w₁` only to `v₂` and `w₂` only to `v₁`, so the
/// four-dimensional sum is evaluated as products of one-dimensional sums.
fn transform_on_samples(
    g: &GaussianSymbol,
    h: &GaussianSymbol,
    lambda: f64,
    half_width: f64,
    k: usize,
    samples: &[[f64; 2]],
) -> Vec<C64> {
    let (t, w) = gauss_legendre_on(k, -half_width, half_width);
    let (a, b) = (g.alpha, h.alpha);
    // line[i][j] = Σ_m w_m exp(-a (t_i - t_m)² - b t_m² + (iλ/2) t_j t_m)
    let line: Vec<Vec<C64>> = (0..k)
        .into_par_iter()
        .map(|i| {
            (0..k)
                .map(|j| {
                    (0..k)
                        .map(|m| {
                            let d = t[i] - t[m];
                            let amp = w[m] * (-a * d * d - b * t[m] * t[m]).exp();
                            C64::from_polar(amp, 0.5 * lambda * t[j] * t[m])
                        })
                        .sum()
                })
                .collect()
        })
        .collect();
    let coef = g.coef * h.coef;
    // f(t_i, t_j): the w₁-sum carries phase -(λ/2) t_j w₁, the w₂-sum +(λ/2) t_i w₂.
    let conv = |i: usize, j: usize| coef * line[i][j].conj() * line[j][i];
    samples
        .iter()
        .map(|x| {
            let mut acc = C64::new(0.0, 0.0);
            for i in 0..k {
                for j in 0..k {
                    let phase = -(x[0] * t[i] + x[1] * t[j]);
                    acc += conv(i, j) * C64::from_polar(w[i] * w[j], phase);
                }
            }
            acc
        })
        .collect()
}

/// Compares the numerical transform of `g ∗_λ h` with `ĝ #_λ ĥ` for `n = 1`.
pub fn fourier_iso_check(
    g: &GaussianSymbol,
    h: &GaussianSymbol,
    lambda: f64,
    tolerance: f64,
) -> Result<FourierCheck> {
    if g.n != 1 || h.n != 1 {
        return Err(Error::InvalidArgument(
            "the quadrature check is implemented for n = 1".into(),
        ));
    }
    let expected = moyal_gauss(&fourier_gaussian(g)?, &fourier_gaussian(h)?, &lambda)?;
    let amin = g.alpha.min(h.alpha);
    let half_width = (40.0 / amin).sqrt();
    let samples = sample_points(expected.alpha.recip().sqrt().min(3.0));
    let closed: Vec<C64> = samples.iter().map(|x| expected.evaluate(x)).collect();

    let mut k = 24;
    let mut prev = transform_on_samples(g, h, lambda, half_width, k, &samples);
    let mut estimate = f64::INFINITY;
    while k < 192 {
        k *= 2;
        let next = transform_on_samples(g, h, lambda, half_width, k, &samples);
        estimate = prev
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        prev = next;
        if estimate < 0.1 * tolerance {
            let residual = prev
                .iter()
                .zip(&closed)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            return Ok(FourierCheck {
                residual,
                error_estimate: estimate,
                nodes: k,
            });
        }
    }
    Err(Error::QuadratureNonConvergence {
        estimate,
        tolerance,
    })
}
