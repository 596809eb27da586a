//! Dense complex matrix helpers shared by the operator modules.
//!
//! Most operators built here (ladder words, Dirac-type operators, spectral
//! functions of a diagonal Hamiltonian) are very sparse even though they are
//! stored densely, so [`mul`] skips exact zeros.

use nalgebra::{DMatrix, DVector};

pub type C64 = nalgebra::Complex<f64>;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };
pub const I: C64 = C64 { re: 0.0, im: 1.0 };

#[inline]
pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

#[inline]
pub fn real(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub fn nnz(m: &CMatrix) -> usize {
    m.iter().filter(|z| z.re != 0.0 || z.im != 0.0).count()
}

/// Matrix product that skips structural zeros.
///
/// Falls back to the dense kernel when both factors are more than a quarter full.
pub fn mul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    assert_eq!(a.ncols(), b.nrows(), "inner dimensions differ");
    let na = nnz(a);
    let nb = nnz(b);
    let dense_a = na * 4 > a.len().max(1);
    let dense_b = nb * 4 > b.len().max(1);
    if dense_a && dense_b {
        return a * b;
    }
    if nb <= na || dense_a {
        mul_sparse_right(a, b)
    } else {
        mul_sparse_right(&b.transpose(), &a.transpose()).transpose()
    }
}

fn mul_sparse_right(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let mut out = CMatrix::zeros(a.nrows(), b.ncols());
    for j in 0..b.ncols() {
        for k in 0..b.nrows() {
            let bkj = b[(k, j)];
            if bkj.re == 0.0 && bkj.im == 0.0 {
                continue;
            }
            let col = a.column(k);
            let mut dst = out.column_mut(j);
            for (d, s) in dst.iter_mut().zip(col.iter()) {
                if s.re != 0.0 || s.im != 0.0 {
                    *d += *s * bkj;
                }
            }
        }
    }
    out
}

/// Product of a chain of matrices, left to right.
pub fn mul_chain(factors: &[&CMatrix]) -> CMatrix {
    let mut it = factors.iter();
    let first = (*it.next().expect("empty product")).clone();
    it.fold(first, |acc, m| mul(&acc, m))
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn diag(values: &[C64]) -> CMatrix {
    CMatrix::from_diagonal(&CVector::from_column_slice(values))
}

pub fn diag_real(values: &[f64]) -> CMatrix {
    CMatrix::from_fn(values.len(), values.len(), |i, j| {
        if i == j {
            real(values[i])
        } else {
            ZERO
        }
    })
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    mul(a, b) - mul(b, a)
}

pub fn anticommutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    mul(a, b) + mul(b, a)
}

/// Largest entry modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Spectral norm (largest singular value).
pub fn op_norm(m: &CMatrix) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone()
        .singular_values()
        .iter()
        .copied()
        .fold(0.0, f64::max)
}

pub fn hermitian_residual(m: &CMatrix) -> f64 {
    max_abs(&(m - m.adjoint()))
}

pub fn select(m: &CMatrix, rows: &[usize], cols: &[usize]) -> CMatrix {
    CMatrix::from_fn(rows.len(), cols.len(), |i, j| m[(rows[i], cols[j])])
}

/// Residual of `u* u - I`.
pub fn unitarity_residual(u: &CMatrix) -> f64 {
    let n = u.ncols();
    max_abs(&(u.adjoint() * u - identity(n)))
}

/// Rescales a vector so its first non-negligible component is real positive.
pub fn normalize_phase(v: &mut CVector) {
    let scale = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if scale == 0.0 {
        return;
    }
    if let Some(first) = v.iter().find(|z| z.norm() > 1e-8 * scale).copied() {
        let phase = first.conj() / first.norm();
        for z in v.iter_mut() {
            *z *= phase;
        }
    }
}

/// Hermitian eigendecomposition with ascending eigenvalues and phase-normalized columns.
pub fn eigh(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let sym = (m + m.adjoint()) * real(0.5);
    let eig = sym.symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = CMatrix::zeros(m.nrows(), order.len());
    for (dst, &src) in order.iter().enumerate() {
        let mut col: CVector = eig.eigenvectors.column(src).into_owned();
        normalize_phase(&mut col);
        vectors.set_column(dst, &col);
    }
    (values, vectors)
}

/// Singular values in ascending order together with the matching right singular vectors.
pub fn svd_ascending(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    // Right singular vectors are eigenvectors of m* m; use the SVD for accuracy.
    let rows = m.nrows();
    let cols = m.ncols();
    // Pad short matrices so every right singular vector is returned.
    let padded = if rows < cols {
        let mut p = CMatrix::zeros(cols, cols);
        p.view_mut((0, 0), (rows, cols)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&i, &j| svd.singular_values[i].total_cmp(&svd.singular_values[j]));
    let values = order.iter().map(|&i| svd.singular_values[i]).collect();
    let mut vectors = CMatrix::zeros(cols, order.len());
    for (dst, &src) in order.iter().enumerate() {
        let mut col: CVector = v_t.row(src).adjoint();
        normalize_phase(&mut col);
        vectors.set_column(dst, &col);
    }
    (values, vectors)
}

/// Least-squares slope and intercept of `y` against `x`.
pub fn linear_fit(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(n: usize, seed: u64) -> CMatrix {
        let mut s = seed;
        CMatrix::from_fn(n, n, |_, _| {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let a = ((s >> 33) as f64) / (1u64 << 31) as f64 - 1.0;
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let b = ((s >> 33) as f64) / (1u64 << 31) as f64 - 1.0;
            if a.abs() < 0.6 {
                ZERO
            } else {
                c(a, b)
            }
        })
    }

    #[test]
    fn sparse_product_matches_dense() {
        let a = sample(17, 1);
        let b = sample(17, 2);
        assert!(max_abs(&(mul(&a, &b) - &a * &b)) < 1e-13);
        let d = CMatrix::from_fn(17, 17, |i, j| c((i + 2 * j) as f64, 1.0));
        assert!(max_abs(&(mul(&a, &d) - &a * &d)) < 1e-11);
        assert!(max_abs(&(mul(&d, &a) - &d * &a)) < 1e-11);
    }

    #[test]
    fn eigh_is_sorted_and_phase_normalized() {
        let a = sample(8, 3);
        let h = &a + a.adjoint();
        let (vals, vecs) = eigh(&h);
        assert!(vals.windows(2).all(|w| w[0] <= w[1]));
        let recon = &vecs * diag_real(&vals) * vecs.adjoint();
        assert!(max_abs(&(recon - &h)) < 1e-10);
        for j in 0..vecs.ncols() {
            let first = vecs.column(j).iter().find(|z| z.norm() > 1e-8).copied().unwrap();
            assert!(first.im.abs() < 1e-12 && first.re > 0.0);
        }
    }

    #[test]
    fn svd_ascending_finds_null_vector() {
        let m = CMatrix::from_row_slice(2, 3, &[real(1.0), ZERO, ZERO, ZERO, real(2.0), ZERO]);
        let (s, v) = svd_ascending(&m);
        assert_eq!(s.len(), 3);
        assert!(s[0] < 1e-14);
        assert!((v[(2, 0)].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fit_recovers_line() {
        let x = [0.0, 1.0, 2.0, 3.0];
        let y: Vec<f64> = x.iter().map(|t| 3.0 - 2.0 * t).collect();
        let (s, i) = linear_fit(&x, &y);
        assert!((s + 2.0).abs() < 1e-14 && (i - 3.0).abs() < 1e-14);
    }
}
