//! Bargmann–Fock matrices on holomorphic polynomials of bounded degree.
//!
//! The inner product `⟨f, g⟩ = π^{-n} ∫ f ḡ e^{-|z|²} dz` makes monomials orthogonal
//! with `⟨z^a, z^a⟩ = a!`.

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};

#[derive(Debug, Clone)]
pub struct BargmannFock {
    pub n: usize,
    pub deg_max: usize,
    /// Exponent vectors ordered by total degree, then lexicographically.
    pub monomials: Vec<Vec<usize>>,
    /// Multiplication by `z_j` in the monomial basis.
    pub z: Vec<CMatrix>,
    /// Differentiation `∂/∂z_j` in the monomial basis.
    pub dz: Vec<CMatrix>,
    /// `⟨z^a, z^a⟩ = a!`.
    pub norms: Vec<f64>,
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|t| t as f64).product()
}

fn exponents(n: usize, deg_max: usize) -> Vec<Vec<usize>> {
    fn rec(j: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if j == cur.len() {
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur[j] = k;
            rec(j + 1, left - k, cur, out);
        }
        cur[j] = 0;
    }
    let mut out = Vec::new();
    rec(0, deg_max, &mut vec![0; n], &mut out);
    out.sort_by(|a, b| {
        let (da, db): (usize, usize) = (a.iter().sum(), b.iter().sum());
        da.cmp(&db).then_with(|| b.cmp(a))
    });
    out
}

pub fn bargmann_fock_matrices(n: usize, deg_max: usize) -> Result<BargmannFock> {
    if n == 0 || deg_max == 0 {
        return Err(Error::InvalidArgument("need n >= 1 and deg_max >= 1".into()));
    }
    let monomials = exponents(n, deg_max);
    let pos = |e: &[usize]| monomials.iter().position(|m| m == e);
    let dim = monomials.len();
    let mut z = vec![CMatrix::zeros(dim, dim); n];
    let mut dz = vec![CMatrix::zeros(dim, dim); n];
    for (col, a) in monomials.iter().enumerate() {
        for j in 0..n {
            let mut up = a.clone();
            up[j] += 1;
            if let Some(row) = pos(&up) {
                z[j][(row, col)] = linalg::ONE;
            }
            if a[j] > 0 {
                let mut down = a.clone();
                down[j] -= 1;
                let row = pos(&down).expect("lower degree present");
                dz[j][(row, col)] = linalg::real(a[j] as f64);
            }
        }
    }
    let norms = monomials
        .iter()
        .map(|a| a.iter().map(|&k| factorial(k)).product())
        .collect();
    Ok(BargmannFock {
        n,
        deg_max,
        monomials,
        z,
        dz,
        norms,
    })
}

impl BargmannFock {
    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    /// Conjugates a monomial-basis matrix into the orthonormal basis `z^a/√a!`.
    pub fn orthonormal(&self, m: &CMatrix) -> CMatrix {
        let s: Vec<f64> = self.norms.iter().map(|x| x.sqrt()).collect();
        CMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)] * (s[i] / s[j]))
    }

    /// Indices of monomials with degree `< deg_max`.
    pub fn interior(&self) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.monomials[i].iter().sum::<usize>() < self.deg_max)
            .collect()
    }

    /// `Σ_j z_j ∂/∂z_j`, the degree operator.
    pub fn number_operator(&self) -> CMatrix {
        self.z
            .iter()
            .zip(&self.dz)
            .map(|(a, b)| linalg::mul(a, b))
            .fold(CMatrix::zeros(self.dim(), self.dim()), |acc, m| acc + m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::max_abs;
    use crate::quadrature::gauss_legendre_on;
    use crate::quantize::{basis::HermiteBasisSpec, weyl};

    #[test]
    fn monomial_norms_match_radial_integral() {
        // (1/π) ∫ |z|^{2k} e^{-|z|²} d²z = ∫_0^∞ 2 r^{2k+1} e^{-r²} dr
        let (r, w) = gauss_legendre_on(200, 0.0, 12.0);
        let bf = bargmann_fock_matrices(1, 4).unwrap();
        for k in 0..=4 {
            let q: f64 = r
                .iter()
                .zip(&w)
                .map(|(r, w)| w * 2.0 * r.powi(2 * k as i32 + 1) * (-r * r).exp())
                .sum();
            assert!((q - bf.norms[k]).abs() < 1e-10 * bf.norms[k].max(1.0));
        }
    }

    #[test]
    fn derivative_is_adjoint_of_multiplication() {
        let bf = bargmann_fock_matrices(2, 5).unwrap();
        for j in 0..2 {
            let z = bf.orthonormal(&bf.z[j]);
            let d = bf.orthonormal(&bf.dz[j]);
            assert!(max_abs(&(d - z.adjoint())) < 1e-14);
        }
    }

    #[test]
    fn canonical_commutator_on_interior() {
        let bf = bargmann_fock_matrices(2, 5).unwrap();
        let idx = bf.interior();
        for j in 0..2 {
            for k in 0..2 {
                let comm = linalg::commutator(&bf.dz[j], &bf.z[k]);
                let block = linalg::select(&comm, &idx, &idx);
                let expected = if j == k { linalg::identity(idx.len()) } else { CMatrix::zeros(idx.len(), idx.len()) };
                assert!(max_abs(&(block - expected)) < 1e-14);
            }
        }
    }

    #[test]
    fn degree_spectrum_matches_oscillator() {
        let n = 2;
        let deg = 4;
        let bf = bargmann_fock_matrices(n, deg).unwrap();
        let mut bf_spec: Vec<i64> = (0..bf.dim()).map(|i| bf.number_operator()[(i, i)].re.round() as i64).collect();
        bf_spec.sort();
        let spec = HermiteBasisSpec::new(n, 1.0, deg + 2).unwrap();
        let q = weyl::oscillator_diagonal(&spec);
        let mut osc: Vec<i64> = q
            .iter()
            .map(|v| ((v - n as f64) / 2.0).round() as i64)
            .filter(|&k| k <= deg as i64)
            .collect();
        osc.sort();
        assert_eq!(bf_spec, osc);
    }
}
