//! The quantized Clifford symbol `Â = Σ_j x̂_j ⊗ c(e_j) + p̂_j ⊗ c(f_j)` and
//! singular-value kernel counting.

use super::basis::{HermiteBasisSpec, OperatorMatrix};
use super::weyl::{self, oscillator_diagonal};
use crate::error::{Error, Result};
use crate::exterior::{self, ExteriorBasis};
use crate::linalg::{self, CMatrix, CVector};
use crate::symplectic::SymplecticSpace;

/// Required ratio between the smallest uncounted and largest counted singular value.
pub const REQUIRED_GAP: f64 = 100.0;

fn check_dims(space: &SymplecticSpace, basis: &ExteriorBasis, spec: &HermiteBasisSpec) -> Result<()> {
    for got in [basis.n(), spec.n] {
        if got != space.n {
            return Err(Error::DimensionMismatch {
                expected: space.n,
                got,
            });
        }
    }
    Ok(())
}

/// `Â` on `Hermite ⊗ Λ`.
pub fn build_a_operator(
    space: &SymplecticSpace,
    basis: &ExteriorBasis,
    spec: &HermiteBasisSpec,
) -> Result<OperatorMatrix> {
    check_dims(space, basis, spec)?;
    let n = space.n;
    let xp = weyl::position_matrices(spec);
    let mut a = CMatrix::zeros(spec.dim() * basis.dim(), spec.dim() * basis.dim());
    for (j, (x, p)) in xp.iter().enumerate() {
        let ce = exterior::clifford_real(basis, &space.basis_vector(&space.labels[j]).expect("label"))?;
        let cf = exterior::clifford_real(basis, &space.basis_vector(&space.labels[n + j]).expect("label"))?;
        a += linalg::kron(&x.matrix, &ce);
        a += linalg::kron(&p.matrix, &cf);
    }
    OperatorMatrix::new(a, *spec, true)
}

/// Diagonal of `Q̂ ⊗ I + λ I ⊗ N`, the exact square of `Â` in this basis.
pub fn a_square_diagonal(basis: &ExteriorBasis, spec: &HermiteBasisSpec) -> Vec<f64> {
    let q = oscillator_diagonal(spec);
    let n = basis.n() as f64;
    q.iter()
        .flat_map(|&qk| {
            (0..basis.dim()).map(move |s| qk + spec.lambda * (2.0 * basis.degree(s) as f64 - n))
        })
        .collect()
}

/// `Q̂ ⊗ I + λ I ⊗ N` as an operator.
pub fn a_square_expected(basis: &ExteriorBasis, spec: &HermiteBasisSpec) -> OperatorMatrix {
    OperatorMatrix {
        matrix: linalg::diag_real(&a_square_diagonal(basis, spec)),
        spec: *spec,
        exterior: true,
    }
}

/// Full indices of `Hermite ⊗ Λ^±` (`even = true` for `Λ⁺`).
pub fn graded_indices(basis: &ExteriorBasis, spec: &HermiteBasisSpec, hermite: &[usize], even: bool) -> Vec<usize> {
    let ext = if even { basis.even_indices() } else { basis.odd_indices() };
    spec.with_exterior(hermite, &ext)
}

/// Result of counting small singular values.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelAnalysis {
    pub dim: usize,
    /// Orthonormal kernel vectors as columns, in the domain coordinates.
    pub basis: CMatrix,
    pub singular_values: Vec<f64>,
    pub gap_ratio: f64,
}

/// Counts singular values below `gap_threshold`, demanding a clear spectral gap.
pub fn kernel_analysis(op: &CMatrix, gap_threshold: f64) -> Result<KernelAnalysis> {
    let (values, vectors) = linalg::svd_ascending(op);
    let dim = values.iter().filter(|&&s| s < gap_threshold).count();
    let smallest_kept = values.get(dim).copied().unwrap_or(f64::INFINITY);
    let largest_counted = if dim == 0 { gap_threshold } else { values[dim - 1] };
    let gap_ratio = if largest_counted == 0.0 {
        f64::INFINITY
    } else {
        smallest_kept / largest_counted
    };
    if gap_ratio < REQUIRED_GAP {
        return Err(Error::IndeterminateKernel {
            ratio: gap_ratio,
            required: REQUIRED_GAP,
        });
    }
    let basis = vectors.columns(0, dim).into_owned();
    Ok(KernelAnalysis {
        dim,
        basis,
        singular_values: values,
        gap_ratio,
    })
}

/// Kernel and cokernel data for `Â⁺ : Hermite ⊗ Λ⁺ → Hermite ⊗ Λ⁻`.
#[derive(Debug, Clone)]
pub struct IndexReport {
    pub kernel: KernelAnalysis,
    pub cokernel: KernelAnalysis,
    /// Domain indices (full basis) of the kernel coordinates.
    pub kernel_domain: Vec<usize>,
    pub cokernel_domain: Vec<usize>,
}

impl IndexReport {
    pub fn index(&self) -> i64 {
        self.kernel.dim as i64 - self.cokernel.dim as i64
    }

    /// Lifts the `i`-th kernel vector to the full `Hermite ⊗ Λ` space.
    pub fn kernel_vector(&self, i: usize, full_dim: usize) -> CVector {
        lift(&self.kernel.basis.column(i).into_owned(), &self.kernel_domain, full_dim)
    }
}

pub fn lift(v: &CVector, idx: &[usize], full_dim: usize) -> CVector {
    let mut out = CVector::zeros(full_dim);
    for (k, &i) in idx.iter().enumerate() {
        out[i] = v[k];
    }
    out
}

/// Restricts `Â` to interior columns of one parity and all rows of the other.
pub fn graded_block(a: &OperatorMatrix, basis: &ExteriorBasis, from_even: bool) -> (CMatrix, Vec<usize>) {
    let spec = &a.spec;
    let interior = spec.interior(1);
    let all: Vec<usize> = (0..spec.dim()).collect();
    let cols = graded_indices(basis, spec, &interior, from_even);
    let rows = graded_indices(basis, spec, &all, !from_even);
    (linalg::select(&a.matrix, &rows, &cols), cols)
}

/// `dim ker Â⁺` and `dim ker Â⁻` on the interior domain.
pub fn a_plus_index(a: &OperatorMatrix, basis: &ExteriorBasis, gap_threshold: f64) -> Result<IndexReport> {
    let (plus, kernel_domain) = graded_block(a, basis, true);
    let (minus, cokernel_domain) = graded_block(a, basis, false);
    Ok(IndexReport {
        kernel: kernel_analysis(&plus, gap_threshold)?,
        cokernel: kernel_analysis(&minus, gap_threshold)?,
        kernel_domain,
        cokernel_domain,
    })
}

/// `|0⟩ ⊗ e_S` as a vector on `Hermite ⊗ Λ`.
pub fn ground_tensor(basis: &ExteriorBasis, spec: &HermiteBasisSpec, exterior_index: usize) -> CVector {
    let mut v = CVector::zeros(spec.dim() * basis.dim());
    v[spec.full_index(0, exterior_index)] = linalg::ONE;
    v
}

/// Combined action `T(U) ⊗ ΛU` on `Hermite ⊗ Λ`.
pub fn total_unitary(basis: &ExteriorBasis, spec: &HermiteBasisSpec, u: &CMatrix) -> Result<OperatorMatrix> {
    let t = weyl::fock_unitary(spec, u)?;
    let lu = exterior::exterior_power_unitary(basis, u)?;
    OperatorMatrix::new(linalg::kron(&t.matrix, &lu), *spec, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{max_abs, mul, real};
    use crate::symplectic::make_standard_space;
    use crate::testutil::{random_diagonal_unitary, random_unitary};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn setup(n: usize, lam: f64, n_max: usize) -> (ExteriorBasis, HermiteBasisSpec, OperatorMatrix) {
        let space = make_standard_space(n).unwrap();
        let basis = ExteriorBasis::new(n).unwrap();
        let spec = HermiteBasisSpec::new(n, lam, n_max).unwrap();
        let a = build_a_operator(&space, &basis, &spec).unwrap();
        (basis, spec, a)
    }

    #[test]
    fn a_is_hermitian_and_odd() {
        let (basis, spec, a) = setup(2, 1.0, 6);
        assert!(a.hermitian_residual() < 1e-15);
        let all: Vec<usize> = (0..spec.dim()).collect();
        let even = graded_indices(&basis, &spec, &all, true);
        let odd = graded_indices(&basis, &spec, &all, false);
        assert_eq!(max_abs(&linalg::select(&a.matrix, &even, &even)), 0.0);
        assert_eq!(max_abs(&linalg::select(&a.matrix, &odd, &odd)), 0.0);
    }

    #[test]
    fn square_identity_on_interior() {
        for (n, lam, n_max) in [(1, 1.0, 16), (2, 1.0, 8), (1, -0.5, 12), (2, 0.25, 6)] {
            let (basis, spec, a) = setup(n, lam, n_max);
            let sq = a.mul(&a).unwrap();
            let r = sq.interior_residual(&a_square_expected(&basis, &spec), 1).unwrap();
            assert!(r < 1e-12, "n={n} lambda={lam}: {r}");
        }
    }

    #[test]
    fn ladder_form_of_a() {
        // Â = √(2λ) Σ (a_j ε_j + a_j† ι_j) for λ > 0.
        let (basis, spec, a) = setup(1, 0.5, 6);
        let lad = weyl::ladder_matrices(&spec);
        let e = exterior::eps_matrix(&basis, &exterior::unit_vector(1, 0)).unwrap();
        let i = exterior::iota_matrix(&basis, &exterior::unit_vector(1, 0)).unwrap();
        let expected = (linalg::kron(&lad[0].0.matrix, &e) + linalg::kron(&lad[0].1.matrix, &i)) * real(1.0);
        assert!(max_abs(&(&a.matrix - expected)) < 1e-14);
    }

    #[test]
    fn zero_mode_is_ground_times_scalars() {
        for n in [1, 2] {
            let (basis, spec, a) = setup(n, 1.0, if n == 1 { 16 } else { 8 });
            let report = a_plus_index(&a, &basis, 1e-6).unwrap();
            assert_eq!(report.kernel.dim, 1);
            assert_eq!(report.cokernel.dim, 0);
            assert_eq!(report.index(), 1);
            let v = report.kernel_vector(0, a.dim());
            let g = ground_tensor(&basis, &spec, basis.vacuum_index());
            let overlap = (g.adjoint() * v)[(0, 0)].norm();
            assert!(overlap > 1.0 - 1e-12);
        }
    }

    #[test]
    fn negative_lambda_kernel_is_top_form_with_determinant_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in [1, 2] {
            let (basis, spec, a) = setup(n, -1.0, if n == 1 { 16 } else { 8 });
            let interior = spec.interior(1);
            let all_ext: Vec<usize> = (0..basis.dim()).collect();
            let cols = spec.with_exterior(&interior, &all_ext);
            let rows: Vec<usize> = (0..a.dim()).collect();
            let k = kernel_analysis(&linalg::select(&a.matrix, &rows, &cols), 1e-6).unwrap();
            assert_eq!(k.dim, 1);
            let v = lift(&k.basis.column(0).into_owned(), &cols, a.dim());
            let top = ground_tensor(&basis, &spec, basis.top_index());
            assert!((top.adjoint() * &v)[(0, 0)].norm() > 1.0 - 1e-12);
            for _ in 0..5 {
                let u = random_diagonal_unitary(&mut rng, n);
                let t = total_unitary(&basis, &spec, &u).unwrap();
                let det = u.determinant();
                let r = (&t.matrix * &v - &v * det).iter().map(|z| z.norm()).fold(0.0, f64::max);
                assert!(r < 1e-12);
            }
        }
    }

    #[test]
    fn a_commutes_with_unitary_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let (basis, spec, a) = setup(2, 1.0, 8);
        let u = random_unitary(&mut rng, 2);
        let t = total_unitary(&basis, &spec, &u).unwrap();
        let low = spec.degree_at_most(spec.n_max - 2);
        let idx: Vec<usize> = spec.with_exterior(&low, &(0..4).collect::<Vec<_>>());
        let comm = linalg::commutator(&t.matrix, &a.matrix);
        assert!(max_abs(&linalg::select(&comm, &idx, &idx)) < 1e-12);
    }

    #[test]
    fn kernel_gap_policy() {
        let m = linalg::diag_real(&[0.0, 5e-3, 0.2]);
        assert!(matches!(kernel_analysis(&m, 1e-2), Err(Error::IndeterminateKernel { .. })));
        let m = linalg::diag_real(&[0.0, 1e-13, 1.0]);
        let k = kernel_analysis(&m, 1e-6).unwrap();
        assert_eq!(k.dim, 2);
        assert!(max_abs(&(mul(&k.basis.adjoint(), &k.basis) - linalg::identity(2))) < 1e-14);
        let k = kernel_analysis(&linalg::identity(3), 1e-6).unwrap();
        assert_eq!(k.dim, 0);
    }
}
