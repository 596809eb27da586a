//! Weyl quantization on the `|λ|`-scaled Hermite basis.
//!
//! Per coordinate, `x̂ = √(|λ|/2)(a + a†)` and `p̂ = sign(λ)·i√(|λ|/2)(a† − a)`, so
//! that `[x̂, p̂] = iλ`. With this choice `π_{−λ}(f)` is the complex conjugate of
//! `π_λ(f̄)`, and the oscillator `Q̂ = Σ x̂_j² + p̂_j²` is diagonal with entries
//! `|λ|(n + 2|k|)`.

use std::collections::HashMap;

use super::basis::{HermiteBasisSpec, OperatorMatrix};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector, C64, I, ONE, ZERO};
use crate::symbols::{GaussianSymbol, WeylPoly};

/// Largest polynomial degree accepted by [`quantize_poly`].
pub const MAX_QUANTIZE_DEGREE: usize = 6;

fn lowering(size: usize) -> CMatrix {
    let mut a = CMatrix::zeros(size, size);
    for k in 1..size {
        a[(k - 1, k)] = linalg::real((k as f64).sqrt());
    }
    a
}

fn position_1d(size: usize, lambda: f64) -> (CMatrix, CMatrix) {
    let a = lowering(size);
    let ad = a.adjoint();
    let s = (lambda.abs() / 2.0).sqrt();
    let x = (&a + &ad) * linalg::real(s);
    let p = (&ad - &a) * (I * s * lambda.signum());
    (x, p)
}

/// Embeds a one-coordinate operator as `I ⊗ ... ⊗ m ⊗ ... ⊗ I`.
pub fn embed(spec: &HermiteBasisSpec, j: usize, m: &CMatrix) -> CMatrix {
    let left = linalg::identity(spec.n_max.pow(j as u32));
    let right = linalg::identity(spec.n_max.pow((spec.n - 1 - j) as u32));
    linalg::kron(&linalg::kron(&left, m), &right)
}

fn wrap(spec: &HermiteBasisSpec, m: CMatrix) -> OperatorMatrix {
    OperatorMatrix {
        matrix: m,
        spec: *spec,
        exterior: false,
    }
}

/// `(a_j, a_j†)` for every coordinate.
pub fn ladder_matrices(spec: &HermiteBasisSpec) -> Vec<(OperatorMatrix, OperatorMatrix)> {
    let a = lowering(spec.n_max);
    let ad = a.adjoint();
    (0..spec.n)
        .map(|j| (wrap(spec, embed(spec, j, &a)), wrap(spec, embed(spec, j, &ad))))
        .collect()
}

/// `(x̂_j, p̂_j)` for every coordinate.
pub fn position_matrices(spec: &HermiteBasisSpec) -> Vec<(OperatorMatrix, OperatorMatrix)> {
    let (x, p) = position_1d(spec.n_max, spec.lambda);
    (0..spec.n)
        .map(|j| (wrap(spec, embed(spec, j, &x)), wrap(spec, embed(spec, j, &p))))
        .collect()
}

/// Diagonal entries `|λ|(n + 2|k|)` of the quantized oscillator.
pub fn oscillator_diagonal(spec: &HermiteBasisSpec) -> Vec<f64> {
    let l = spec.lambda.abs();
    (0..spec.dim())
        .map(|i| l * (spec.n + 2 * spec.total_degree(i)) as f64)
        .collect()
}

pub fn oscillator(spec: &HermiteBasisSpec) -> OperatorMatrix {
    wrap(spec, linalg::diag_real(&oscillator_diagonal(spec)))
}

/// Rank-one projection onto `|0, ..., 0⟩`.
pub fn ground_projection(spec: &HermiteBasisSpec) -> OperatorMatrix {
    let mut m = CMatrix::zeros(spec.dim(), spec.dim());
    m[(0, 0)] = ONE;
    wrap(spec, m)
}

/// Weyl-symmetrized `x^a p^b` in one coordinate, computed on a basis of size
/// `size + a + b` and cropped, so every entry equals the exact matrix element.
fn symmetrized_1d(size: usize, lambda: f64, a: u32, b: u32) -> CMatrix {
    let d = (a + b) as usize;
    let big = size + d;
    let (x, p) = position_1d(big, lambda);
    let mut acc = CMatrix::zeros(big, big);
    let mut count = 0usize;
    for mask in 0u32..(1u32 << d) {
        if mask.count_ones() != a {
            continue;
        }
        let mut word = linalg::identity(big);
        for bit in 0..d {
            let f = if mask & (1 << bit) != 0 { &x } else { &p };
            word = linalg::mul(&word, f);
        }
        acc += word;
        count += 1;
    }
    let acc = acc / linalg::real(count as f64);
    acc.view((0, 0), (size, size)).into_owned()
}

/// Weyl quantization of a polynomial symbol (symmetric ordering).
pub fn quantize_poly(f: &WeylPoly, spec: &HermiteBasisSpec) -> Result<OperatorMatrix> {
    if f.n() != spec.n {
        return Err(Error::DimensionMismatch {
            expected: spec.n,
            got: f.n(),
        });
    }
    if f.degree() > MAX_QUANTIZE_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree: f.degree(),
            max: MAX_QUANTIZE_DEGREE,
        });
    }
    let n = spec.n;
    let mut cache: HashMap<(u32, u32), CMatrix> = HashMap::new();
    let mut out = CMatrix::zeros(spec.dim(), spec.dim());
    for (e, c) in f.terms() {
        let mut m = linalg::identity(1);
        for j in 0..n {
            let key = (e[j], e[n + j]);
            let factor = cache
                .entry(key)
                .or_insert_with(|| symmetrized_1d(spec.n_max, spec.lambda, key.0, key.1));
            m = linalg::kron(&m, factor);
        }
        out += m * *c;
    }
    Ok(wrap(spec, out))
}

/// Diagonal of `π_λ(coef · e^{−α|x|²})` for `0 <= λα <= 1`.
///
/// With `y = λα = tanh(λτ)` the Mehler correspondence gives the entry
/// `coef (1+y)^{−n} ((1−y)/(1+y))^{|k|}`; at `y = 1` this is `coef 2^{−n} P₀`.
pub fn gaussian_diagonal(sym: &GaussianSymbol, spec: &HermiteBasisSpec) -> Result<Vec<C64>> {
    if sym.n != spec.n {
        return Err(Error::DimensionMismatch {
            expected: spec.n,
            got: sym.n,
        });
    }
    if spec.lambda <= 0.0 {
        return Err(Error::UnsupportedLambda(spec.lambda));
    }
    let mut y = spec.lambda * sym.alpha;
    if y > 1.0 {
        if y - 1.0 > 1e-12 {
            return Err(Error::OutsideMehlerRange {
                alpha: sym.alpha,
                limit: 1.0 / spec.lambda,
            });
        }
        y = 1.0;
    }
    let base = (1.0 + y).powi(-(spec.n as i32));
    let ratio = (1.0 - y) / (1.0 + y);
    Ok((0..spec.dim())
        .map(|i| sym.coef * base * ratio.powi(spec.total_degree(i) as i32))
        .collect())
}

/// Spectral quantization of an isotropic Gaussian symbol (`λ > 0`, `α <= 1/λ`).
pub fn quantize_gaussian(sym: &GaussianSymbol, spec: &HermiteBasisSpec) -> Result<OperatorMatrix> {
    Ok(wrap(spec, linalg::diag(&gaussian_diagonal(sym, spec)?)))
}

/// Coherent state `⊗_j e^{−|α_j|²/2} Σ_k α_j^k/√k! |k⟩`, truncated.
pub fn coherent_state(spec: &HermiteBasisSpec, alpha: &[C64]) -> Result<CVector> {
    if alpha.len() != spec.n {
        return Err(Error::DimensionMismatch {
            expected: spec.n,
            got: alpha.len(),
        });
    }
    let factors: Vec<Vec<C64>> = alpha
        .iter()
        .map(|&a| {
            let mut v = Vec::with_capacity(spec.n_max);
            let mut term = C64::from(f64::exp(-0.5 * a.norm_sqr()));
            for k in 0..spec.n_max {
                v.push(term);
                term = term * a / ((k + 1) as f64).sqrt();
            }
            v
        })
        .collect();
    Ok(CVector::from_fn(spec.dim(), |i, _| {
        spec.multi_index(i)
            .iter()
            .zip(&factors)
            .map(|(&k, f)| f[k])
            .product()
    }))
}

/// Action of a unitary `U` of `C^n` on the oscillator states.
///
/// `|a⟩ = (a†)^a/√a! |0⟩` maps to `Π_j (Σ_k U_kj a_k†)^{a_j}/√a! |0⟩`, i.e. the
/// symmetric powers of `U`, truncated to the box. Components leaving the box are
/// dropped, so the result is exact only on total degree `< n_max`. For `λ < 0`
/// the conjugate representation is used, matching `π_{−λ}(f) = conj π_λ(f̄)`.
pub fn fock_unitary(spec: &HermiteBasisSpec, u: &CMatrix) -> Result<OperatorMatrix> {
    let n = spec.n;
    if u.nrows() != n || u.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: u.nrows(),
        });
    }
    let u = if spec.lambda < 0.0 {
        u.map(|z| z.conj())
    } else {
        u.clone()
    };
    let fact = |k: usize| (1..=k).map(|t| t as f64).product::<f64>();
    let mut out = CMatrix::zeros(spec.dim(), spec.dim());
    for col in 0..spec.dim() {
        let a = spec.multi_index(col);
        // polynomial in y_1..y_n as a map from exponent vectors
        let mut poly: HashMap<Vec<usize>, C64> = HashMap::from([(vec![0; n], ONE)]);
        for (j, &aj) in a.iter().enumerate() {
            for _ in 0..aj {
                let mut next: HashMap<Vec<usize>, C64> = HashMap::new();
                for (e, c) in &poly {
                    for k in 0..n {
                        let ukj = u[(k, j)];
                        if ukj == ZERO {
                            continue;
                        }
                        let mut e2 = e.clone();
                        e2[k] += 1;
                        *next.entry(e2).or_insert(ZERO) += c * ukj;
                    }
                }
                poly = next;
            }
        }
        let norm_a: f64 = a.iter().map(|&k| fact(k)).product::<f64>().sqrt();
        for (b, c) in poly {
            if b.iter().any(|&k| k >= spec.n_max) {
                continue;
            }
            let norm_b: f64 = b.iter().map(|&k| fact(k)).product::<f64>().sqrt();
            out[(spec.index_of(&b), col)] += c * (norm_b / norm_a);
        }
    }
    Ok(wrap(spec, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, max_abs, mul, real};
    use crate::symbols::{mehler, moyal_gauss, moyal_poly, vacuum_symbol};
    use crate::testutil::{random_unitary, random_diagonal_unitary};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn lowering_operator_small() {
        let s = HermiteBasisSpec::new(1, 1.0, 3).unwrap();
        let (a, ad) = &ladder_matrices(&s)[0];
        let expected = CMatrix::from_row_slice(
            3,
            3,
            &[ZERO, ONE, ZERO, ZERO, ZERO, real(2f64.sqrt()), ZERO, ZERO, ZERO],
        );
        assert_eq!(a.matrix, expected);
        let comm = a.commutator(ad).unwrap();
        let one = wrap(&s, linalg::identity(3));
        assert!(comm.interior_residual(&one, 1).unwrap() < 1e-15);
        assert!((comm.matrix[(2, 2)] - real(-2.0)).norm() < 1e-15);
        let number = ad.mul(a).unwrap();
        for k in 0..3 {
            assert!((number.matrix[(k, k)] - real(k as f64)).norm() < 1e-14);
        }
    }

    #[test]
    fn canonical_commutator() {
        for lam in [1.0, 0.5, -1.0] {
            let s = HermiteBasisSpec::new(2, lam, 8).unwrap();
            let xp = position_matrices(&s);
            let id = wrap(&s, linalg::identity(s.dim()));
            for j in 0..2 {
                let (x, p) = &xp[j];
                assert!(x.hermitian_residual() == 0.0 && p.hermitian_residual() == 0.0);
                let comm = x.commutator(p).unwrap();
                assert!(comm.interior_residual(&id.scale(c(0.0, lam)), 1).unwrap() < 1e-12);
                let other = &xp[1 - j];
                assert!(max_abs(&x.commutator(&other.1).unwrap().matrix) < 1e-14);
            }
        }
    }

    #[test]
    fn oscillator_matches_quantized_symbol() {
        for (n, lam) in [(1, 1.0), (2, 1.0), (1, 0.5), (2, -1.0)] {
            let s = HermiteBasisSpec::with_margin(n, lam, 10, 2).unwrap();
            let q = quantize_poly(&WeylPoly::oscillator(n), &s).unwrap();
            assert!(q.sub(&oscillator(&s)).unwrap().matrix.iter().all(|z| z.norm() < 1e-12));
        }
    }

    #[test]
    fn symmetric_ordering_of_two_letters() {
        let s = HermiteBasisSpec::new(1, 1.0, 12).unwrap();
        let xp = &position_matrices(&s)[0];
        let q = quantize_poly(&WeylPoly::monomial(1, vec![1, 1], ONE), &s).unwrap();
        let sym = (xp.0.mul(&xp.1).unwrap().add(&xp.1.mul(&xp.0).unwrap()).unwrap()).scale(real(0.5));
        assert!(q.interior_residual(&sym, 1).unwrap() < 1e-14);
    }

    #[test]
    fn linear_homomorphism() {
        let s = HermiteBasisSpec::new(1, 1.0, 16).unwrap();
        let e = WeylPoly::x(1, 0);
        let f = WeylPoly::xi(1, 0);
        let lhs = quantize_poly(&moyal_poly(&e, &f, 1.0).unwrap(), &s).unwrap();
        let rhs = quantize_poly(&e, &s).unwrap().mul(&quantize_poly(&f, &s).unwrap()).unwrap();
        assert!(lhs.interior_residual(&rhs, 1).unwrap() < 1e-12);
    }

    #[test]
    fn oscillator_square_matches_symbol_product() {
        // Q # Q as an operator identity, coefficient list checked against π(Q)².
        let s = HermiteBasisSpec::with_margin(1, 1.0, 32, 2).unwrap();
        let q = WeylPoly::oscillator(1);
        let lhs = quantize_poly(&moyal_poly(&q, &q, 1.0).unwrap(), &s).unwrap();
        let pq = quantize_poly(&q, &s).unwrap();
        assert!(lhs.interior_residual(&pq.mul(&pq).unwrap(), 2).unwrap() < 1e-10);
    }

    #[test]
    fn conjugation_symmetry_in_lambda() {
        let f = WeylPoly::monomial(1, vec![2, 1], c(0.5, 1.0)).add(&WeylPoly::xi(1, 0));
        let sp = HermiteBasisSpec::new(1, 0.7, 10).unwrap();
        let sm = HermiteBasisSpec::new(1, -0.7, 10).unwrap();
        let plus = quantize_poly(&f.conj(), &sp).unwrap().matrix.map(|z| z.conj());
        let minus = quantize_poly(&f, &sm).unwrap().matrix;
        assert!(max_abs(&(plus - minus)) < 1e-13);
    }

    #[test]
    fn vacuum_quantizes_to_ground_projection() {
        for n in [1, 2] {
            let s = HermiteBasisSpec::new(n, 1.0, 8).unwrap();
            let p = quantize_gaussian(&vacuum_symbol(&1.0, n).unwrap(), &s).unwrap();
            assert!(max_abs(&(&p.matrix - ground_projection(&s).matrix)) < 1e-15);
        }
        let s = HermiteBasisSpec::new(2, 0.5, 6).unwrap();
        let p = quantize_gaussian(&vacuum_symbol(&0.5, 2).unwrap(), &s).unwrap();
        assert!(max_abs(&(mul(&p.matrix, &p.matrix) - &p.matrix)) < 1e-15);
        assert!((p.matrix.trace() - ONE).norm() < 1e-15);
    }

    #[test]
    fn mehler_quantizes_to_heat_semigroup() {
        let s = HermiteBasisSpec::new(2, 1.0, 6).unwrap();
        let tau = 0.8;
        let d = gaussian_diagonal(&mehler(tau, 1.0, 2).unwrap(), &s).unwrap();
        for (i, z) in d.iter().enumerate() {
            let expected = (-tau * (2.0 + 2.0 * s.total_degree(i) as f64)).exp();
            assert!((z - real(expected)).norm() < 1e-14);
        }
    }

    #[test]
    fn gaussian_products_match_operator_products() {
        let s = HermiteBasisSpec::new(1, 1.0, 32).unwrap();
        let a = GaussianSymbol::real(1, 1.0, 0.5).unwrap();
        let prod = moyal_gauss(&a, &a, &1.0).unwrap();
        let pa = quantize_gaussian(&a, &s).unwrap();
        let lhs = quantize_gaussian(&prod, &s).unwrap();
        assert!(lhs.interior_residual(&pa.mul(&pa).unwrap(), 1).unwrap() < 1e-8);

        let s = HermiteBasisSpec::new(2, 2.0, 16).unwrap();
        let a = GaussianSymbol::real(2, 1.0, 0.5).unwrap();
        let b = GaussianSymbol::real(2, 1.0, 0.25).unwrap();
        let prod = moyal_gauss(&a, &b, &2.0).unwrap();
        assert!((prod.coef - real(4.0 / 9.0)).norm() < 1e-15 && (prod.alpha - 0.5).abs() < 1e-15);
        let lhs = quantize_gaussian(&prod, &s).unwrap();
        let rhs = quantize_gaussian(&a, &s).unwrap().mul(&quantize_gaussian(&b, &s).unwrap()).unwrap();
        assert!(lhs.interior_residual(&rhs, 1).unwrap() < 1e-8);
    }

    #[test]
    fn gaussian_range_errors() {
        let s = HermiteBasisSpec::new(1, 1.0, 4).unwrap();
        let wide = GaussianSymbol::real(1, 1.0, 1.5).unwrap();
        assert!(matches!(quantize_gaussian(&wide, &s), Err(Error::OutsideMehlerRange { .. })));
        let neg = HermiteBasisSpec::new(1, -1.0, 4).unwrap();
        assert!(matches!(
            quantize_gaussian(&GaussianSymbol::real(1, 1.0, 0.5).unwrap(), &neg),
            Err(Error::UnsupportedLambda(_))
        ));
    }

    #[test]
    fn coherent_state_expectations() {
        let s = HermiteBasisSpec::new(1, 0.5, 40).unwrap();
        let alpha = c(0.7, -0.4);
        let v = coherent_state(&s, &[alpha]).unwrap();
        assert!((v.norm() - 1.0).abs() < 1e-12);
        let (x, p) = &position_matrices(&s)[0];
        let ex = (v.adjoint() * &x.matrix * &v)[(0, 0)];
        let ep = (v.adjoint() * &p.matrix * &v)[(0, 0)];
        let scale = (2.0 * 0.5f64).sqrt();
        assert!((ex.re - scale * alpha.re).abs() < 1e-12);
        assert!((ep.re - scale * alpha.im).abs() < 1e-12);
    }

    #[test]
    fn fock_action_is_unitary_and_multiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s = HermiteBasisSpec::new(2, 1.0, 8).unwrap();
        let low = s.degree_at_most(s.n_max - 1);
        let u = random_unitary(&mut rng, 2);
        let v = random_unitary(&mut rng, 2);
        let tu = fock_unitary(&s, &u).unwrap().matrix;
        let tv = fock_unitary(&s, &v).unwrap().matrix;
        let tuv = fock_unitary(&s, &(&u * &v)).unwrap().matrix;
        let blk = |m: &CMatrix| linalg::select(m, &low, &low);
        assert!(linalg::unitarity_residual(&blk(&tu)) < 1e-12);
        assert!(max_abs(&(blk(&tuv) - blk(&tu) * blk(&tv))) < 1e-12);
    }

    #[test]
    fn diagonal_fock_action_is_a_phase() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let s = HermiteBasisSpec::new(2, 1.0, 6).unwrap();
        let u = random_diagonal_unitary(&mut rng, 2);
        let t = fock_unitary(&s, &u).unwrap().matrix;
        for i in 0..s.dim() {
            let k = s.multi_index(i);
            let phase = u[(0, 0)].powu(k[0] as u32) * u[(1, 1)].powu(k[1] as u32);
            assert!((t[(i, i)] - phase).norm() < 1e-14);
        }
    }

    #[test]
    fn fock_action_transforms_ladder_operators() {
        // T a_j† T* = Σ_k U_kj a_k† on low degrees.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let s = HermiteBasisSpec::new(2, 1.0, 8).unwrap();
        let u = random_unitary(&mut rng, 2);
        let t = fock_unitary(&s, &u).unwrap().matrix;
        let lad = ladder_matrices(&s);
        let low = s.degree_at_most(s.n_max - 2);
        for j in 0..2 {
            let lhs = mul(&mul(&t, &lad[j].1.matrix), &t.adjoint());
            let rhs = &lad[0].1.matrix * u[(0, j)] + &lad[1].1.matrix * u[(1, j)];
            assert!(max_abs(&(linalg::select(&lhs, &low, &low) - linalg::select(&rhs, &low, &low))) < 1e-12);
        }
    }
}
