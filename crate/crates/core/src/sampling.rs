//! Seeded random samples used by tests and the verification suites.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::linalg::{CMatrix, C64};
use crate::symbols::WeylPoly;

pub fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

pub fn random_complex_vec<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<C64> {
    (0..n).map(|_| C64::new(normal(rng), normal(rng))).collect()
}

pub fn random_real_vec<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    (0..n).map(|_| normal(rng)).collect()
}

/// Haar-distributed unitary from the QR decomposition of a Ginibre matrix.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    let g = CMatrix::from_fn(n, n, |_, _| C64::new(normal(rng), normal(rng)));
    let qr = g.qr();
    let q = qr.q();
    let r = qr.r();
    let mut out = q.clone();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..n {
            out[(i, j)] = q[(i, j)] * phase;
        }
    }
    out
}

/// Diagonal unitary `diag(e^{i θ_j})` with uniform angles.
pub fn random_diagonal_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> CMatrix {
    let mut u = CMatrix::zeros(n, n);
    for j in 0..n {
        let t = rng.random::<f64>() * std::f64::consts::TAU;
        u[(j, j)] = C64::from_polar(1.0, t);
    }
    u
}

/// Uniform point on the unit sphere in `R^m`.
pub fn random_sphere_point<R: Rng + ?Sized>(rng: &mut R, m: usize) -> Vec<f64> {
    loop {
        let v = random_real_vec(rng, m);
        let r = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if r > 1e-6 {
            return v.into_iter().map(|x| x / r).collect();
        }
    }
}

/// A polynomial with `terms` random monomials of degree `<= max_degree` in `2n` variables.
pub fn random_weyl_poly<R: Rng + ?Sized>(rng: &mut R, n: usize, max_degree: u32, terms: usize) -> WeylPoly {
    let mut f = WeylPoly::zero(n);
    for _ in 0..terms {
        let degree = rng.random_range(0..=max_degree);
        let mut exponent = vec![0u32; 2 * n];
        for _ in 0..degree {
            exponent[rng.random_range(0..2 * n)] += 1;
        }
        f.add_term(exponent, C64::new(normal(rng), normal(rng)));
    }
    f
}
