//! Idempotents from almost-inverse pairs.

use super::family::{parametrix_weight, DeformationFamily, RELATION_MARGIN};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};

/// `[[s², y r(1 + r)], [x s, 1 − r²]]` with `r = 1 − xy`, `s = 1 − yx`.
///
/// `x` maps the first summand (dimension `k`) to the second (dimension `m`).
pub fn boundary_idempotent(x: &CMatrix, y: &CMatrix) -> Result<CMatrix> {
    let (m, k) = x.shape();
    if y.shape() != (k, m) {
        return Err(Error::DimensionMismatch {
            expected: k * m,
            got: y.nrows() * y.ncols(),
        });
    }
    let r = linalg::identity(m) - linalg::mul(x, y);
    let s = linalg::identity(k) - linalg::mul(y, x);
    let mut e = CMatrix::zeros(k + m, k + m);
    e.view_mut((0, 0), (k, k)).copy_from(&linalg::mul(&s, &s));
    let yr = linalg::mul(y, &r);
    e.view_mut((0, k), (k, m)).copy_from(&(&yr + linalg::mul(&yr, &r)));
    e.view_mut((k, 0), (m, k)).copy_from(&linalg::mul(x, &s));
    e.view_mut((k, k), (m, m)).copy_from(&(linalg::identity(m) - linalg::mul(&r, &r)));
    Ok(e)
}

/// Compares `e_λ(τ)` with the idempotent built from `x = Â: Λ⁺ → Λ⁻` and the
/// parametrix `y = Â(1 − e^{−τM})/M`, on the interior.
pub fn parametrix_cross_check(family: &DeformationFamily) -> Result<f64> {
    let even: Vec<usize> = (0..family.dim()).filter(|&i| family.is_even(i)).collect();
    let odd: Vec<usize> = (0..family.dim()).filter(|&i| !family.is_even(i)).collect();
    let w: Vec<f64> = family.mu.iter().map(|&m| parametrix_weight(family.tau, m)).collect();
    let aw = linalg::mul(&family.a.matrix, &linalg::diag_real(&w));
    let x = linalg::select(&family.a.matrix, &odd, &even);
    let y = linalg::select(&aw, &even, &odd);
    let template = boundary_idempotent(&x, &y)?;
    let order: Vec<usize> = even.iter().chain(odd.iter()).copied().collect();
    let e = linalg::select(&family.e_operator().matrix, &order, &order);
    let interior = family.a.interior_indices(RELATION_MARGIN);
    let keep: Vec<usize> = (0..order.len()).filter(|&p| interior.binary_search(&order[p]).is_ok()).collect();
    let diff = template - e;
    Ok(linalg::max_abs(&linalg::select(&diff, &keep, &keep)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantize::HermiteBasisSpec;
    use crate::testutil::random_unitary;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn template_is_idempotent_for_any_pair() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (m, k) in [(1, 1), (2, 3), (4, 2)] {
            let x = random_unitary(&mut rng, m.max(k)).view((0, 0), (m, k)).into_owned() * linalg::real(0.7);
            let y = random_unitary(&mut rng, m.max(k)).view((0, 0), (k, m)).into_owned() * linalg::real(1.3);
            let e = boundary_idempotent(&x, &y).unwrap();
            assert!(linalg::max_abs(&(linalg::mul(&e, &e) - &e)) < 1e-12);
        }
    }

    #[test]
    fn exact_inverse_gives_the_lower_projection() {
        let x = linalg::diag_real(&[2.0, 0.5]);
        let y = linalg::diag_real(&[0.5, 2.0]);
        let e = boundary_idempotent(&x, &y).unwrap();
        assert!(linalg::max_abs(&(e - linalg::diag_real(&[0.0, 0.0, 1.0, 1.0]))) < 1e-15);
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        assert!(boundary_idempotent(&CMatrix::zeros(2, 3), &CMatrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn family_matches_template() {
        for (n, lambda, n_max) in [(1, 1.0, 20), (2, 0.5, 8)] {
            let f = DeformationFamily::new(1.3, HermiteBasisSpec::new(n, lambda, n_max).unwrap()).unwrap();
            assert!(parametrix_cross_check(&f).unwrap() < 1e-12);
        }
    }
}
