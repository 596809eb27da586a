//! Weyl-ordered polynomial symbols and their exact Moyal product.
//!
//! A monomial is stored by its exponent vector `(a_1..a_n, b_1..b_n)`, denoting
//! `x^a ξ^b` with `x_j = e_j`, `ξ_j = f_j` as linear functions on `V*`. The Moyal
//! product of polynomials is the terminating bidifferential series
//!
//! ```text
//! f # g = Σ_k (iλ/2)^k / k! · Π^k(f, g),   Π = Σ_j (∂_{x_j} ⊗ ∂_{ξ_j} − ∂_{ξ_j} ⊗ ∂_{x_j})
//! ```
//!
//! so that `x_j # ξ_j = x_j ξ_j + iλ/2` and `[x_j, ξ_j]_# = iλ`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{self, ExteriorBasis};
use crate::linalg::{self, CMatrix, C64, ZERO};
use crate::symplectic::SymplecticSpace;

pub type Exponent = Vec<u32>;

#[derive(Debug, Clone, PartialEq)]
pub struct WeylPoly {
    n: usize,
    terms: BTreeMap<Exponent, C64>,
}

impl WeylPoly {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: C64) -> Self {
        let mut p = Self::zero(n);
        p.add_term(vec![0; 2 * n], c);
        p
    }

    /// Linear coordinate function: index `0..n` is `x_j`, `n..2n` is `ξ_j`.
    pub fn coordinate(n: usize, index: usize) -> Self {
        let mut e = vec![0; 2 * n];
        e[index] = 1;
        Self::monomial(n, e, linalg::ONE)
    }

    pub fn x(n: usize, j: usize) -> Self {
        Self::coordinate(n, j)
    }

    pub fn xi(n: usize, j: usize) -> Self {
        Self::coordinate(n, n + j)
    }

    pub fn monomial(n: usize, exponent: Exponent, c: C64) -> Self {
        assert_eq!(exponent.len(), 2 * n, "exponent length must be 2n");
        let mut p = Self::zero(n);
        p.add_term(exponent, c);
        p
    }

    /// The linear function `v ↦ Σ_k v_k · coordinate_k`.
    pub fn linear(v: &[f64]) -> Self {
        let n = v.len() / 2;
        let mut p = Self::zero(n);
        for (k, &vk) in v.iter().enumerate() {
            let mut e = vec![0; 2 * n];
            e[k] = 1;
            p.add_term(e, linalg::real(vk));
        }
        p
    }

    /// `Q = Σ_j (x_j² + ξ_j²)`.
    pub fn oscillator(n: usize) -> Self {
        let mut p = Self::zero(n);
        for k in 0..2 * n {
            let mut e = vec![0; 2 * n];
            e[k] = 2;
            p.add_term(e, linalg::ONE);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &C64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponent: &[u32]) -> C64 {
        self.terms.get(exponent).copied().unwrap_or(ZERO)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn add_term(&mut self, exponent: Exponent, c: C64) {
        let vanished = {
            let entry = self.terms.entry(exponent.clone()).or_insert(ZERO);
            *entry += c;
            entry.re == 0.0 && entry.im == 0.0
        };
        if vanished {
            self.terms.remove(&exponent);
        }
    }

    pub fn scale(&self, c: C64) -> Self {
        let mut out = Self::zero(self.n);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (e, v) in &other.terms {
            out.add_term(e.clone(), *v);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(linalg::real(-1.0)))
    }

    /// Complex conjugate of every coefficient.
    pub fn conj(&self) -> Self {
        let mut out = Self::zero(self.n);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v.conj());
        }
        out
    }

    pub fn evaluate(&self, point: &[f64]) -> C64 {
        self.terms
            .iter()
            .map(|(e, c)| {
                c * e
                    .iter()
                    .zip(point)
                    .map(|(&k, x)| x.powi(k as i32))
                    .product::<f64>()
            })
            .sum()
    }

    /// Largest coefficient deviation.
    pub fn distance(&self, other: &Self) -> f64 {
        let keys: std::collections::BTreeSet<&Exponent> =
            self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter()
            .map(|k| (self.coefficient(k) - other.coefficient(k)).norm())
            .fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<TermJson> = self
            .terms
            .iter()
            .map(|(e, c)| TermJson {
                exp: e.clone(),
                coef: [c.re, c.im],
            })
            .collect();
        serde_json::to_value(PolyJson { n: self.n, terms }).expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let p: PolyJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::InvalidArgument(e.to_string()))?;
        let mut out = Self::zero(p.n);
        for t in p.terms {
            if t.exp.len() != 2 * p.n {
                return Err(Error::DimensionMismatch {
                    expected: 2 * p.n,
                    got: t.exp.len(),
                });
            }
            out.add_term(t.exp, C64::new(t.coef[0], t.coef[1]));
        }
        Ok(out)
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    exp: Vec<u32>,
    coef: [f64; 2],
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    n: usize,
    terms: Vec<TermJson>,
}

fn falling(a: u32, k: u32) -> f64 {
    (0..k).map(|i| (a - i) as f64).product()
}

fn factorial(k: u32) -> f64 {
    (1..=k).map(f64::from).product()
}

/// Moyal product of two monomials, as a list of `(exponent, coefficient)` terms.
pub fn moyal_monomials(n: usize, ea: &[u32], eb: &[u32], lambda: f64) -> Vec<(Exponent, C64)> {
    let half = C64::new(0.0, 0.5 * lambda);
    let mut out = Vec::new();
    let mut exp = vec![0u32; 2 * n];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        j: usize,
        n: usize,
        ea: &[u32],
        eb: &[u32],
        half: C64,
        acc: C64,
        exp: &mut Vec<u32>,
        out: &mut Vec<(Exponent, C64)>,
    ) {
        if j == n {
            out.push((exp.clone(), acc));
            return;
        }
        let (ax, aξ, bx, bξ) = (ea[j], ea[n + j], eb[j], eb[n + j]);
        // p derivatives hit x on the left and ξ on the right, q hit ξ on the left and x on the right.
        for p in 0..=ax.min(bξ) {
            for q in 0..=aξ.min(bx) {
                let sign = if q % 2 == 0 { 1.0 } else { -1.0 };
                let w = sign * falling(ax, p) * falling(bξ, p) * falling(aξ, q) * falling(bx, q)
                    / (factorial(p) * factorial(q));
                let c = acc * half.powu(p + q) * w;
                exp[j] = ax - p + bx - q;
                exp[n + j] = aξ - q + bξ - p;
                rec(j + 1, n, ea, eb, half, c, exp, out);
            }
        }
    }
    rec(0, n, ea, eb, half, linalg::ONE, &mut exp, &mut out);
    out
}

/// Exact Moyal product `f #_λ g`.
pub fn moyal_poly(f: &WeylPoly, g: &WeylPoly, lambda: f64) -> Result<WeylPoly> {
    if f.n != g.n {
        return Err(Error::DimensionMismatch {
            expected: f.n,
            got: g.n,
        });
    }
    let mut out = WeylPoly::zero(f.n);
    for (ea, ca) in &f.terms {
        for (eb, cb) in &g.terms {
            for (e, c) in moyal_monomials(f.n, ea, eb, lambda) {
                out.add_term(e, c * ca * cb);
            }
        }
    }
    Ok(out)
}

/// `f #_λ g − g #_λ f`.
pub fn moyal_commutator(f: &WeylPoly, g: &WeylPoly, lambda: f64) -> Result<WeylPoly> {
    Ok(moyal_poly(f, g, lambda)?.sub(&moyal_poly(g, f, lambda)?))
}

/// `End(Λ)`-valued polynomial.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixWeylPoly {
    n: usize,
    dim: usize,
    terms: BTreeMap<Exponent, CMatrix>,
}

impl MatrixWeylPoly {
    pub fn zero(n: usize, dim: usize) -> Self {
        Self {
            n,
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize, dim: usize) -> Self {
        let mut p = Self::zero(n, dim);
        p.add_term(vec![0; 2 * n], linalg::identity(dim));
        p
    }

    /// `f ⊗ M`.
    pub fn tensor(f: &WeylPoly, m: &CMatrix) -> Self {
        let mut p = Self::zero(f.n, m.nrows());
        for (e, c) in f.terms() {
            p.add_term(e.clone(), m * *c);
        }
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &CMatrix)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &[u32]) -> CMatrix {
        self.terms
            .get(e)
            .cloned()
            .unwrap_or_else(|| CMatrix::zeros(self.dim, self.dim))
    }

    pub fn add_term(&mut self, exponent: Exponent, m: CMatrix) {
        let zero = {
            let entry = self
                .terms
                .entry(exponent.clone())
                .or_insert_with(|| CMatrix::zeros(m.nrows(), m.ncols()));
            *entry += m;
            entry.iter().all(|z| z.re == 0.0 && z.im == 0.0)
        };
        if zero {
            self.terms.remove(&exponent);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, m) in &other.terms {
            out.add_term(e.clone(), m.clone());
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn evaluate(&self, point: &[f64]) -> CMatrix {
        let mut out = CMatrix::zeros(self.dim, self.dim);
        for (e, m) in &self.terms {
            let w: f64 = e
                .iter()
                .zip(point)
                .map(|(&k, x)| x.powi(k as i32))
                .product();
            out += m * linalg::real(w);
        }
        out
    }

    pub fn distance(&self, other: &Self) -> f64 {
        let keys: std::collections::BTreeSet<&Exponent> =
            self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter()
            .map(|k| linalg::max_abs(&(self.coefficient(k) - other.coefficient(k))))
            .fold(0.0, f64::max)
    }
}

/// Entrywise Moyal product composed with matrix multiplication.
pub fn moyal_poly_matrix(
    f: &MatrixWeylPoly,
    g: &MatrixWeylPoly,
    lambda: f64,
) -> Result<MatrixWeylPoly> {
    if f.n != g.n {
        return Err(Error::DimensionMismatch {
            expected: f.n,
            got: g.n,
        });
    }
    if f.dim != g.dim {
        return Err(Error::DimensionMismatch {
            expected: f.dim,
            got: g.dim,
        });
    }
    let mut out = MatrixWeylPoly::zero(f.n, f.dim);
    for (ea, ma) in &f.terms {
        for (eb, mb) in &g.terms {
            let prod = linalg::mul(ma, mb);
            for (e, c) in moyal_monomials(f.n, ea, eb, lambda) {
                out.add_term(e, &prod * c);
            }
        }
    }
    Ok(out)
}

/// The linear symbol `A(z) = c(z) = Σ_j x_j ⊗ c(e_j) + ξ_j ⊗ c(f_j)`.
pub fn build_a_symbol(space: &SymplecticSpace, basis: &ExteriorBasis) -> Result<MatrixWeylPoly> {
    let n = space.n;
    if basis.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: basis.n(),
        });
    }
    let mut a = MatrixWeylPoly::zero(n, basis.dim());
    for k in 0..2 * n {
        let label = &space.labels[k];
        let v = space.basis_vector(label).expect("label exists");
        let cv = exterior::clifford_real(basis, &v)?;
        a = a.add(&MatrixWeylPoly::tensor(&WeylPoly::coordinate(n, k), &cv));
    }
    Ok(a)
}

/// Right-hand side of the square identity: `Q ⊗ 1 + λ (1 ⊗ N)`.
pub fn a_square_expected(basis: &ExteriorBasis, lambda: f64) -> MatrixWeylPoly {
    let n = basis.n();
    let q = MatrixWeylPoly::tensor(&WeylPoly::oscillator(n), &linalg::identity(basis.dim()));
    let nop = MatrixWeylPoly::tensor(
        &WeylPoly::constant(n, linalg::real(lambda)),
        &exterior::number_operator(basis),
    );
    q.add(&nop)
}
