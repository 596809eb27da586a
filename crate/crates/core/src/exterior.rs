//! The exterior algebra `Λ V^{1,0}` with exterior/interior multiplication and
//! Clifford multiplication `c(z) = ε_z + ι_z`.
//!
//! Basis vectors are wedge products `e_S` of subsets `S ⊂ {1..n}`. They are
//! ordered even-degree first, then by degree, then lexicographically, so the
//! grading `Λ = Λ⁺ ⊕ Λ⁻` splits every matrix into contiguous blocks.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, C64, ONE, ZERO};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExteriorBasis {
    n: usize,
    subsets: Vec<u32>,
    position: Vec<usize>,
}

impl ExteriorBasis {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > 16 {
            return Err(Error::InvalidArgument(format!(
                "exterior basis needs 1 <= n <= 16, got {n}"
            )));
        }
        let mut subsets: Vec<u32> = (0..(1u32 << n)).collect();
        subsets.sort_by_key(|&s| {
            let elems: Vec<u32> = (0..n as u32).filter(|k| s & (1 << k) != 0).collect();
            (s.count_ones() % 2, s.count_ones(), elems)
        });
        let mut position = vec![0; subsets.len()];
        for (i, &s) in subsets.iter().enumerate() {
            position[s as usize] = i;
        }
        Ok(Self {
            n,
            subsets,
            position,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.subsets.len()
    }

    /// Subset at basis position `i`, as a bitmask (bit `k` = element `k+1`).
    pub fn subset(&self, i: usize) -> u32 {
        self.subsets[i]
    }

    pub fn index_of(&self, mask: u32) -> usize {
        self.position[mask as usize]
    }

    /// Elements of the subset at position `i`, 1-based.
    pub fn elements(&self, i: usize) -> Vec<usize> {
        let s = self.subsets[i];
        (0..self.n).filter(|k| s & (1 << k) != 0).map(|k| k + 1).collect()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.subsets[i].count_ones() as usize
    }

    pub fn parity(&self, i: usize) -> usize {
        self.degree(i) % 2
    }

    pub fn even_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.parity(i) == 0).collect()
    }

    pub fn odd_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.parity(i) == 1).collect()
    }

    pub fn degree_indices(&self, k: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degree(i) == k).collect()
    }

    pub fn vacuum_index(&self) -> usize {
        self.index_of(0)
    }

    pub fn top_index(&self) -> usize {
        self.index_of((1u32 << self.n) - 1)
    }

    /// Grading operator: `+1` on `Λ⁺`, `-1` on `Λ⁻`.
    pub fn grading(&self) -> CMatrix {
        let d: Vec<f64> = (0..self.dim())
            .map(|i| if self.parity(i) == 0 { 1.0 } else { -1.0 })
            .collect();
        linalg::diag_real(&d)
    }

    /// Stable textual label, e.g. `{}` or `{1,3}`.
    pub fn label(&self, i: usize) -> String {
        let e: Vec<String> = self.elements(i).iter().map(|k| k.to_string()).collect();
        format!("{{{}}}", e.join(","))
    }

    pub fn parse_label(&self, label: &str) -> Option<usize> {
        let inner = label.trim().strip_prefix('{')?.strip_suffix('}')?;
        let mut mask = 0u32;
        for part in inner.split(',').filter(|p| !p.trim().is_empty()) {
            let k: usize = part.trim().parse().ok()?;
            if k == 0 || k > self.n {
                return None;
            }
            mask |= 1 << (k - 1);
        }
        Some(self.index_of(mask))
    }

    fn check(&self, z: &[C64]) -> Result<()> {
        if z.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: z.len(),
            });
        }
        Ok(())
    }

    // Sign of moving e_j past the elements of S smaller than j.
    fn sign(mask: u32, j: usize) -> f64 {
        if (mask & ((1u32 << j) - 1)).count_ones().is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }
}

/// Exterior multiplication `α ↦ z ∧ α`.
pub fn eps_matrix(basis: &ExteriorBasis, z: &[C64]) -> Result<CMatrix> {
    basis.check(z)?;
    let mut m = CMatrix::zeros(basis.dim(), basis.dim());
    for col in 0..basis.dim() {
        let s = basis.subset(col);
        for (j, zj) in z.iter().enumerate() {
            if s & (1 << j) == 0 {
                let row = basis.index_of(s | (1 << j));
                m[(row, col)] += zj * ExteriorBasis::sign(s, j);
            }
        }
    }
    Ok(m)
}

/// Interior multiplication, the adjoint of [`eps_matrix`].
pub fn iota_matrix(basis: &ExteriorBasis, z: &[C64]) -> Result<CMatrix> {
    basis.check(z)?;
    let mut m = CMatrix::zeros(basis.dim(), basis.dim());
    for col in 0..basis.dim() {
        let s = basis.subset(col);
        for (j, zj) in z.iter().enumerate() {
            if s & (1 << j) != 0 {
                let row = basis.index_of(s & !(1 << j));
                m[(row, col)] += zj.conj() * ExteriorBasis::sign(s, j);
            }
        }
    }
    Ok(m)
}

/// Clifford multiplication `c(z) = ε_z + ι_z`; squares to `|z|^2`.
pub fn clifford_c(basis: &ExteriorBasis, z: &[C64]) -> Result<CMatrix> {
    Ok(eps_matrix(basis, z)? + iota_matrix(basis, z)?)
}

/// `c(z, t) = [[t, c(z)], [c(z), -t]]` over `Λ⁺ ⊕ Λ⁻`, i.e. `c(z) + t Γ`.
pub fn clifford_ct(basis: &ExteriorBasis, z: &[C64], t: f64) -> Result<CMatrix> {
    Ok(clifford_c(basis, z)? + basis.grading() * linalg::real(t))
}

/// Clifford multiplication by a real vector `(x, xi)` via `z = x + i xi`.
pub fn clifford_real(basis: &ExteriorBasis, v: &[f64]) -> Result<CMatrix> {
    if v.len() != 2 * basis.n() {
        return Err(Error::DimensionMismatch {
            expected: 2 * basis.n(),
            got: v.len(),
        });
    }
    clifford_c(basis, &crate::symplectic::to_complex(v))
}

/// `N = Σ_j (ε_j ι_j - ι_j ε_j)`, acting on degree `k` by `2k - n`.
pub fn number_operator(basis: &ExteriorBasis) -> CMatrix {
    let n = basis.n() as f64;
    let d: Vec<f64> = (0..basis.dim())
        .map(|i| 2.0 * basis.degree(i) as f64 - n)
        .collect();
    linalg::diag_real(&d)
}

pub fn unit_vector(n: usize, j: usize) -> Vec<C64> {
    let mut z = vec![ZERO; n];
    z[j] = ONE;
    z
}

/// The induced action `ΛU` of a unitary `U` on wedge products.
///
/// The matrix entry from `e_S` to `e_T` is the minor `det U[T, S]`.
pub fn exterior_power_unitary(basis: &ExteriorBasis, u: &CMatrix) -> Result<CMatrix> {
    const TOL: f64 = 1e-10;
    if u.nrows() != basis.n() || u.ncols() != basis.n() {
        return Err(Error::DimensionMismatch {
            expected: basis.n(),
            got: u.nrows(),
        });
    }
    let residual = linalg::unitarity_residual(u);
    if residual > TOL {
        return Err(Error::NotUnitary {
            residual,
            tolerance: TOL,
        });
    }
    let dim = basis.dim();
    let mut out = CMatrix::zeros(dim, dim);
    for col in 0..dim {
        let s: Vec<usize> = basis.elements(col).iter().map(|k| k - 1).collect();
        for row in 0..dim {
            if basis.degree(row) != s.len() {
                continue;
            }
            let t: Vec<usize> = basis.elements(row).iter().map(|k| k - 1).collect();
            out[(row, col)] = if s.is_empty() {
                ONE
            } else {
                let minor = DMatrix::from_fn(t.len(), s.len(), |a, b| u[(t[a], s[b])]);
                minor.determinant()
            };
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, max_abs, mul, real};
    use crate::testutil::{random_complex_vec, random_unitary};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn ordering_is_graded_then_degree_then_lex() {
        let b = ExteriorBasis::new(3).unwrap();
        let labels: Vec<String> = (0..b.dim()).map(|i| b.label(i)).collect();
        assert_eq!(
            labels,
            ["{}", "{1,2}", "{1,3}", "{2,3}", "{1}", "{2}", "{3}", "{1,2,3}"]
        );
        for i in 0..b.dim() {
            assert_eq!(b.parse_label(&b.label(i)), Some(i));
        }
    }

    #[test]
    fn even_and_odd_halves_have_equal_dimension() {
        for n in 1..=6 {
            let b = ExteriorBasis::new(n).unwrap();
            assert_eq!(b.even_indices().len(), 1 << (n - 1));
            assert_eq!(b.odd_indices().len(), 1 << (n - 1));
        }
        assert!(ExteriorBasis::new(0).is_err());
    }

    #[test]
    fn n1_shift_matrices() {
        let b = ExteriorBasis::new(1).unwrap();
        let e = eps_matrix(&b, &[ONE]).unwrap();
        let i = iota_matrix(&b, &[ONE]).unwrap();
        assert_eq!(e, CMatrix::from_row_slice(2, 2, &[ZERO, ZERO, ONE, ZERO]));
        assert_eq!(i, e.transpose());
        assert!(eps_matrix(&b, &[ONE, ONE]).is_err());
    }

    #[test]
    fn eps_squares_to_zero_and_shifts_degree() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 1..=4 {
            let b = ExteriorBasis::new(n).unwrap();
            let z = random_complex_vec(&mut rng, n);
            let e = eps_matrix(&b, &z).unwrap();
            let i = iota_matrix(&b, &z).unwrap();
            assert!(max_abs(&mul(&e, &e)) < 1e-14);
            assert!(max_abs(&mul(&i, &i)) < 1e-14);
            for r in 0..b.dim() {
                for col in 0..b.dim() {
                    if e[(r, col)].norm() > 0.0 {
                        assert_eq!(b.degree(r), b.degree(col) + 1);
                    }
                    if i[(r, col)].norm() > 0.0 {
                        assert_eq!(b.degree(r) + 1, b.degree(col));
                    }
                }
            }
        }
    }

    #[test]
    fn clifford_t_at_zero() {
        let b = ExteriorBasis::new(2).unwrap();
        let m = clifford_ct(&b, &[ZERO, ZERO], 1.0).unwrap();
        assert_eq!(m, b.grading());
        assert!(max_abs(&(mul(&m, &m) - linalg::identity(4))) == 0.0);
    }

    #[test]
    fn number_operator_spectrum() {
        let b = ExteriorBasis::new(1).unwrap();
        assert_eq!(number_operator(&b), linalg::diag_real(&[-1.0, 1.0]));
        let b2 = ExteriorBasis::new(2).unwrap();
        let mut d: Vec<f64> = (0..4).map(|i| number_operator(&b2)[(i, i)].re).collect();
        d.sort_by(f64::total_cmp);
        assert_eq!(d, vec![-2.0, 0.0, 0.0, 2.0]);
        for n in 1..=4 {
            let b = ExteriorBasis::new(n).unwrap();
            assert_eq!(number_operator(&b).trace(), ZERO);
            let mut sum = CMatrix::zeros(b.dim(), b.dim());
            for j in 0..n {
                let z = unit_vector(n, j);
                let e = eps_matrix(&b, &z).unwrap();
                let i = iota_matrix(&b, &z).unwrap();
                sum += mul(&e, &i) - mul(&i, &e);
            }
            assert_eq!(sum, number_operator(&b));
        }
    }

    #[test]
    fn exterior_power_identity_and_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in 1..=4 {
            let b = ExteriorBasis::new(n).unwrap();
            let id = exterior_power_unitary(&b, &linalg::identity(n)).unwrap();
            assert_eq!(id, linalg::identity(b.dim()));
            let u = random_unitary(&mut rng, n);
            let lu = exterior_power_unitary(&b, &u).unwrap();
            let top = b.top_index();
            assert!((lu[(top, top)] - u.determinant()).norm() < 1e-12);
            assert!(linalg::unitarity_residual(&lu) < 1e-12);
        }
    }

    #[test]
    fn rejects_non_unitary() {
        let b = ExteriorBasis::new(2).unwrap();
        let m = CMatrix::from_row_slice(2, 2, &[real(2.0), ZERO, ZERO, ONE]);
        assert!(matches!(
            exterior_power_unitary(&b, &m),
            Err(Error::NotUnitary { .. })
        ));
    }

    #[test]
    fn clifford_intertwining_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=3 {
            let b = ExteriorBasis::new(n).unwrap();
            for _ in 0..10 {
                let u = random_unitary(&mut rng, n);
                let z = random_complex_vec(&mut rng, n);
                let uz: Vec<C64> = (0..n)
                    .map(|i| (0..n).map(|k| u[(i, k)] * z[k]).sum())
                    .collect();
                let lu = exterior_power_unitary(&b, &u).unwrap();
                let lhs = clifford_c(&b, &uz).unwrap();
                let rhs = mul(&mul(&lu, &clifford_c(&b, &z).unwrap()), &lu.adjoint());
                assert!(max_abs(&(lhs - rhs)) < 1e-10);
                let nop = number_operator(&b);
                assert!(max_abs(&(mul(&nop, &lu) - mul(&lu, &nop))) < 1e-12);
            }
        }
    }

    #[test]
    fn clifford_of_f_is_i_times_eps_minus_iota() {
        let b = ExteriorBasis::new(2).unwrap();
        let cf = clifford_real(&b, &[0.0, 0.0, 1.0, 0.0]).unwrap();
        let z = unit_vector(2, 0);
        let expected =
            (eps_matrix(&b, &z).unwrap() - iota_matrix(&b, &z).unwrap()) * c(0.0, 1.0);
        assert_eq!(cf, expected);
    }

    fn cvec(n: usize) -> impl Strategy<Value = Vec<C64>> {
        proptest::collection::vec((-2.0..2.0f64, -2.0..2.0f64), n)
            .prop_map(|v| v.into_iter().map(|(a, b)| c(a, b)).collect())
    }

    proptest! {
        #[test]
        fn polarization_identity(n in 1usize..=4, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let b = ExteriorBasis::new(n).unwrap();
            let z = random_complex_vec(&mut rng, n);
            let w = random_complex_vec(&mut rng, n);
            let cz = clifford_c(&b, &z).unwrap();
            let cw = clifford_c(&b, &w).unwrap();
            let re: f64 = z.iter().zip(&w).map(|(a, b)| (a * b.conj()).re).sum();
            let lhs = mul(&cz, &cw) + mul(&cw, &cz);
            prop_assert!(max_abs(&(lhs - linalg::identity(b.dim()) * real(2.0 * re))) < 1e-12);
        }

        #[test]
        fn eps_iota_adjoint(z in cvec(3), a in cvec(8), bb in cvec(8)) {
            let b = ExteriorBasis::new(3).unwrap();
            let e = eps_matrix(&b, &z).unwrap();
            let i = iota_matrix(&b, &z).unwrap();
            let av = linalg::CVector::from_vec(a);
            let bv = linalg::CVector::from_vec(bb);
            let lhs = (&e * &av).dotc(&bv);
            let rhs = av.dotc(&(&i * &bv));
            prop_assert!((lhs - rhs).norm() < 1e-12);
        }

        #[test]
        fn clifford_ct_square(z in cvec(2), t in -3.0..3.0f64) {
            let b = ExteriorBasis::new(2).unwrap();
            let m = clifford_ct(&b, &z, t).unwrap();
            let nz: f64 = z.iter().map(|w| w.norm_sqr()).sum();
            prop_assert!(linalg::hermitian_residual(&m) < 1e-14);
            prop_assert!(max_abs(&(mul(&m, &m) - linalg::identity(4) * real(nz + t * t))) < 1e-12);
        }

        #[test]
        fn exterior_power_is_multiplicative(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let b = ExteriorBasis::new(3).unwrap();
            let u = random_unitary(&mut rng, 3);
            let v = random_unitary(&mut rng, 3);
            let luv = exterior_power_unitary(&b, &(&u * &v)).unwrap();
            let lu = exterior_power_unitary(&b, &u).unwrap();
            let lv = exterior_power_unitary(&b, &v).unwrap();
            prop_assert!(max_abs(&(luv - lu * lv)) < 1e-12);
        }
    }
}
