//! Isotropic Gaussian symbols `coef · exp(-alpha |x|^2)` on `V* = R^{2n}`.
//!
//! The Moyal product of two such symbols is again Gaussian:
//!
//! ```text
//! e^{-α|x|²} #_λ e^{-β|x|²} = (1 + λ²αβ)^{-n} e^{-(α+β)/(1+λ²αβ) |x|²}
//! ```
//!
//! The closed form is a rational function of `(α, β, λ)`, so every operation here
//! is generic over the scalar field and can be run in exact rational arithmetic.

use std::fmt::Debug;

use nalgebra::Complex;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::C64;

/// Field operations needed by the closed-form Gaussian calculus.
pub trait Field:
    Clone + Debug + PartialEq + PartialOrd + num_traits::Num + num_traits::Signed
{
}

impl<T> Field for T where
    T: Clone + Debug + PartialEq + PartialOrd + num_traits::Num + num_traits::Signed
{
}

#[derive(Debug, Clone, PartialEq)]
pub struct GaussianSymbol<T = f64> {
    pub n: usize,
    pub coef: Complex<T>,
    pub alpha: T,
}

pub type RationalGaussian = GaussianSymbol<BigRational>;

impl<T: Field> GaussianSymbol<T> {
    pub fn new(n: usize, coef: Complex<T>, alpha: T) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be >= 1".into()));
        }
        if alpha < T::zero() {
            return Err(Error::InvalidArgument("alpha must be >= 0".into()));
        }
        Ok(Self { n, coef, alpha })
    }

    pub fn real(n: usize, coef: T, alpha: T) -> Result<Self> {
        Self::new(n, Complex::new(coef, T::zero()), alpha)
    }
}

fn pow<T: Field>(base: &T, n: usize) -> T {
    (0..n).fold(T::one(), |acc, _| acc * base.clone())
}

/// Closed-form Moyal product; at `lambda = 0` this is the pointwise product.
pub fn moyal_gauss<T: Field>(
    a: &GaussianSymbol<T>,
    b: &GaussianSymbol<T>,
    lambda: &T,
) -> Result<GaussianSymbol<T>> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch {
            expected: a.n,
            got: b.n,
        });
    }
    let denom = T::one() + lambda.clone() * lambda.clone() * a.alpha.clone() * b.alpha.clone();
    let scale = pow(&denom, a.n);
    let coef = (a.coef.clone() * b.coef.clone()) / scale;
    let alpha = (a.alpha.clone() + b.alpha.clone()) / denom;
    Ok(GaussianSymbol {
        n: a.n,
        coef,
        alpha,
    })
}

/// The vacuum idempotent `s_λ = 2^n e^{-|x|²/λ}`.
pub fn vacuum_symbol<T: Field>(lambda: &T, n: usize) -> Result<GaussianSymbol<T>> {
    if *lambda <= T::zero() {
        return Err(Error::InvalidArgument(
            "vacuum symbol needs lambda > 0".into(),
        ));
    }
    let two = T::one() + T::one();
    GaussianSymbol::real(n, pow(&two, n), T::one() / lambda.clone())
}

/// Rescaling `f ↦ f(·/√λ)`, an isomorphism `#_1 → #_λ` on Gaussians.
pub fn scaling_iso<T: Field>(f: &GaussianSymbol<T>, lambda: &T) -> Result<GaussianSymbol<T>> {
    if *lambda <= T::zero() {
        return Err(Error::InvalidArgument("scaling needs lambda > 0".into()));
    }
    Ok(GaussianSymbol {
        n: f.n,
        coef: f.coef.clone(),
        alpha: f.alpha.clone() / lambda.clone(),
    })
}

/// Rescaling with the extra `λ^{-n}` amplitude factor; not multiplicative.
pub fn scaling_iso_prefactored<T: Field>(
    f: &GaussianSymbol<T>,
    lambda: &T,
) -> Result<GaussianSymbol<T>> {
    let g = scaling_iso(f, lambda)?;
    let s = pow(lambda, f.n);
    Ok(GaussianSymbol {
        coef: g.coef / s,
        ..g
    })
}

/// Mehler family `K_λ(τ)`: `(1, τ)` at `λ = 0`, else `(cosh(λτ)^{-n}, tanh(λτ)/λ)`.
pub fn mehler(tau: f64, lambda: f64, n: usize) -> Result<GaussianSymbol<f64>> {
    if tau.is_nan() || tau <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "Mehler kernel needs tau > 0, got {tau}"
        )));
    }
    if lambda == 0.0 {
        return GaussianSymbol::real(n, 1.0, tau);
    }
    let lt = lambda * tau;
    GaussianSymbol::real(n, lt.cosh().powi(-(n as i32)), lt.tanh() / lambda)
}

impl GaussianSymbol<f64> {
    pub fn evaluate(&self, x: &[f64]) -> C64 {
        let r2: f64 = x.iter().map(|t| t * t).sum();
        self.coef * (-self.alpha * r2).exp()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(GaussianJson::from(self)).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let g: GaussianJson = serde_json::from_value(v.clone())
            .map_err(|e| Error::InvalidArgument(e.to_string()))?;
        GaussianSymbol::new(g.n, C64::new(g.coef[0], g.coef[1]), g.alpha)
    }

    /// Largest deviation in coefficient and exponent.
    pub fn distance(&self, other: &Self) -> f64 {
        (self.coef - other.coef).norm().max((self.alpha - other.alpha).abs())
    }
}

impl RationalGaussian {
    pub fn to_f64(&self) -> GaussianSymbol<f64> {
        let f = |q: &BigRational| rational_to_f64(q);
        GaussianSymbol {
            n: self.n,
            coef: C64::new(f(&self.coef.re), f(&self.coef.im)),
            alpha: f(&self.alpha),
        }
    }
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

#[derive(Serialize, Deserialize)]
struct GaussianJson {
    n: usize,
    coef: [f64; 2],
    alpha: f64,
}

impl From<&GaussianSymbol<f64>> for GaussianJson {
    fn from(g: &GaussianSymbol<f64>) -> Self {
        Self {
            n: g.n,
            coef: [g.coef.re, g.coef.im],
            alpha: g.alpha,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        rational(n, d)
    }

    fn rg(n: usize, c: BigRational, a: BigRational) -> RationalGaussian {
        GaussianSymbol::real(n, c, a).unwrap()
    }

    #[test]
    fn unit_gaussians_at_lambda_one() {
        let a = rg(1, q(1, 1), q(1, 1));
        let p = moyal_gauss(&a, &a, &q(1, 1)).unwrap();
        assert_eq!(p, rg(1, q(1, 2), q(1, 1)));
    }

    #[test]
    fn lambda_zero_is_pointwise() {
        let a = GaussianSymbol::new(2, C64::new(0.5, -1.0), 0.3).unwrap();
        let b = GaussianSymbol::new(2, C64::new(2.0, 0.25), 1.7).unwrap();
        let p = moyal_gauss(&a, &b, &0.0).unwrap();
        assert_eq!(p.coef, a.coef * b.coef);
        assert_eq!(p.alpha, a.alpha + b.alpha);
    }

    #[test]
    fn two_dimensional_example() {
        let a = rg(2, q(1, 1), q(1, 2));
        let b = rg(2, q(1, 1), q(1, 4));
        assert_eq!(
            moyal_gauss(&a, &b, &q(2, 1)).unwrap(),
            rg(2, q(4, 9), q(1, 2))
        );
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let a = GaussianSymbol::real(1, 1.0, 1.0).unwrap();
        let b = GaussianSymbol::real(2, 1.0, 1.0).unwrap();
        assert!(moyal_gauss(&a, &b, &1.0).is_err());
    }

    #[test]
    fn vacuum_values_and_idempotency() {
        assert_eq!(vacuum_symbol(&q(1, 1), 1).unwrap(), rg(1, q(2, 1), q(1, 1)));
        assert_eq!(vacuum_symbol(&q(1, 1), 3).unwrap(), rg(3, q(8, 1), q(1, 1)));
        assert_eq!(vacuum_symbol(&q(1, 2), 2).unwrap(), rg(2, q(4, 1), q(2, 1)));
        for lam in [q(1, 2), q(1, 1), q(2, 1), q(3, 7)] {
            for n in 1..=3 {
                let s = vacuum_symbol(&lam, n).unwrap();
                assert_eq!(moyal_gauss(&s, &s, &lam).unwrap(), s);
            }
        }
        assert!(vacuum_symbol(&0.0, 1).is_err());
        assert!(vacuum_symbol(&-1.0, 1).is_err());
    }

    #[test]
    fn mehler_values() {
        assert_eq!(mehler(2.0, 0.0, 1).unwrap(), GaussianSymbol::real(1, 1.0, 2.0).unwrap());
        let far = mehler(20.0, 1.0, 1).unwrap();
        assert!(far.coef.norm() < 1e-8 && (far.alpha - 1.0).abs() < 1e-8);
        let mut prev = mehler(0.5, 1.0, 1).unwrap();
        for k in 2..40 {
            let m = mehler(0.5 * k as f64, 1.0, 1).unwrap();
            assert!(m.coef.re < prev.coef.re && m.alpha > prev.alpha);
            prev = m;
        }
        assert!(mehler(0.0, 1.0, 1).is_err());
        assert!(mehler(-1.0, 1.0, 1).is_err());
    }

    #[test]
    fn mehler_semigroup_example() {
        let h = mehler(0.5, 1.0, 1).unwrap();
        let p = moyal_gauss(&h, &h, &1.0).unwrap();
        assert!(p.distance(&mehler(1.0, 1.0, 1).unwrap()) <= 1e-14);
    }

    #[test]
    fn scaling_values() {
        let s1 = vacuum_symbol(&q(1, 1), 2).unwrap();
        let lam = q(3, 5);
        assert_eq!(scaling_iso(&s1, &q(1, 1)).unwrap(), s1);
        assert_eq!(scaling_iso(&s1, &lam).unwrap(), vacuum_symbol(&lam, 2).unwrap());
        assert!(scaling_iso(&s1, &q(0, 1)).is_err());
    }

    #[test]
    fn prefactor_breaks_multiplicativity() {
        let a = rg(1, q(1, 1), q(1, 1));
        let lam = q(1, 2);
        let lhs = scaling_iso_prefactored(&moyal_gauss(&a, &a, &q(1, 1)).unwrap(), &lam).unwrap();
        let fa = scaling_iso_prefactored(&a, &lam).unwrap();
        let rhs = moyal_gauss(&fa, &fa, &lam).unwrap();
        assert_eq!(lhs.alpha, rhs.alpha);
        assert_ne!(lhs.coef, rhs.coef);
    }

    #[test]
    fn json_round_trip() {
        let g = GaussianSymbol::new(2, C64::new(0.25, -1.5), 0.75).unwrap();
        let v = g.to_json();
        assert_eq!(v, serde_json::json!({"n": 2, "coef": [0.25, -1.5], "alpha": 0.75}));
        assert_eq!(GaussianSymbol::from_json(&v).unwrap(), g);
    }

    fn small_q() -> impl Strategy<Value = BigRational> {
        (0i64..20, 1i64..12).prop_map(|(a, b)| q(a, b))
    }

    proptest! {
        #[test]
        fn associativity_is_exact(a in small_q(), b in small_q(), c in small_q(), lam in small_q(), n in 1usize..=3) {
            let ga = rg(n, q(1, 1), a);
            let gb = rg(n, q(2, 1), b);
            let gc = rg(n, q(1, 3), c);
            let left = moyal_gauss(&moyal_gauss(&ga, &gb, &lam).unwrap(), &gc, &lam).unwrap();
            let right = moyal_gauss(&ga, &moyal_gauss(&gb, &gc, &lam).unwrap(), &lam).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn scaling_is_a_homomorphism(a in small_q(), b in small_q(), num in 1i64..20, den in 1i64..20) {
            let lam = q(num, den);
            let ga = rg(1, q(1, 1), a);
            let gb = rg(1, q(5, 2), b);
            let lhs = scaling_iso(&moyal_gauss(&ga, &gb, &q(1, 1)).unwrap(), &lam).unwrap();
            let rhs = moyal_gauss(&scaling_iso(&ga, &lam).unwrap(), &scaling_iso(&gb, &lam).unwrap(), &lam).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
