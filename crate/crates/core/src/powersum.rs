//! The power-sum determinant `P(n) = det Σ_{m<n} (A^m)ᵀ H A^m` of a
//! unipotent `A` against a positive definite `H`, and its degree law
//! `deg P = Σ k²` over the Jordan blocks of `A`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::rational::{factorial, is_positive};
use crate::algebra::{discrete_sum, det_poly_with, PolyMatrix, RatMatrix, Rational, UniPoly, Var};
use crate::error::{Error, Result};
use crate::jordan::jordan_profile;
use crate::{serde_exact, Exec};

/// A rational symmetric positive definite matrix, certified by Sylvester's
/// criterion on exact leading principal minors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpdMatrix(RatMatrix);

impl SpdMatrix {
    pub fn new(m: RatMatrix) -> Result<Self> {
        if !m.is_symmetric() {
            return Err(Error::NotSpd("matrix is not symmetric".into()));
        }
        for k in 1..=m.dim() {
            let lead = RatMatrix::from_fn(k, |i, j| m.get(i, j).clone());
            let minor = lead.det();
            if !is_positive(&minor) {
                return Err(Error::NotSpd(format!("leading principal minor of order {k} is {minor}")));
            }
        }
        Ok(SpdMatrix(m))
    }

    pub fn identity(dim: usize) -> Self {
        SpdMatrix(RatMatrix::identity(dim))
    }

    pub fn matrix(&self) -> &RatMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerSumResult {
    #[serde(with = "serde_exact::poly")]
    pub poly: UniPoly,
    pub degree: usize,
    #[serde(with = "serde_exact::rational")]
    pub leading_coeff: Rational,
    /// `Σ k²` over every Jordan block of `A`.
    pub profile_degree: usize,
}

fn check_inputs(a: &RatMatrix, h: &SpdMatrix) -> Result<()> {
    if a.dim() != h.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: h.dim() });
    }
    if !a.is_unipotent() {
        return Err(Error::NotUnipotent);
    }
    Ok(())
}

/// `S(n)` with `S(n₀) = Σ_{m=0}^{n₀-1} (A^m)ᵀ H A^m` for every integer
/// `n₀ ≥ 0`. Expanding `A^m = Σ_i C(m, i) N^i` with `N = A - I` gives
/// `S(n) = Σ_{i,j} (Σ_{m<n} C(m,i) C(m,j)) · (N^i)ᵀ H N^j`.
pub fn power_sum_matrix(a: &RatMatrix, h: &SpdMatrix) -> Result<PolyMatrix> {
    check_inputs(a, h)?;
    let k = a.dim();
    let nil = a - &RatMatrix::identity(k);
    let mut nil_powers = vec![RatMatrix::identity(k)];
    loop {
        let next = nil_powers.last().unwrap() * &nil;
        if next.is_zero() {
            break;
        }
        nil_powers.push(next);
    }
    let left: Vec<RatMatrix> = nil_powers.iter().map(|p| &p.transpose() * h.matrix()).collect();
    let mut terms = Vec::new();
    for (i, l) in left.iter().enumerate() {
        for (j, r) in nil_powers.iter().enumerate() {
            let weight = &UniPoly::binomial_basis(i, Var::M) * &UniPoly::binomial_basis(j, Var::M);
            terms.push((discrete_sum(&weight), l * r));
        }
    }
    Ok(PolyMatrix::linear_combination(&terms, Var::N))
}

pub fn power_sum_det(a: &RatMatrix, h: &SpdMatrix) -> Result<PowerSumResult> {
    power_sum_det_with(a, h, Exec::default())
}

/// Interpolates `P` from `K(2K - 1) + 1` nodes (entries of `S` have degree at
/// most `2K - 1`) and re-verifies the degree law.
pub fn power_sum_det_with(a: &RatMatrix, h: &SpdMatrix, exec: Exec) -> Result<PowerSumResult> {
    let s = power_sum_matrix(a, h)?;
    let k = a.dim();
    let poly = det_poly_with(&s, k * (2 * k - 1), exec);
    let degree = poly
        .degree()
        .ok_or_else(|| Error::InternalCrossCheck("power-sum determinant vanished identically".into()))?;
    let leading_coeff = poly.leading_coeff().cloned().unwrap_or_else(Rational::zero);
    let profile_degree = jordan_profile(a)?.sum_of_squared_sizes();
    if degree != profile_degree {
        return Err(Error::InternalCrossCheck(format!(
            "power-sum determinant has degree {degree}, Jordan profile predicts {profile_degree}"
        )));
    }
    if !is_positive(&leading_coeff) {
        return Err(Error::InternalCrossCheck(format!("leading coefficient {leading_coeff} is not positive")));
    }
    Ok(PowerSumResult { poly, degree, leading_coeff, profile_degree })
}

/// `det Σ_{m=0}^{n-1} (A^m)ᵀ H A^m` by literal summation.
pub fn power_sum_brute(a: &RatMatrix, h: &SpdMatrix, n: u64) -> Rational {
    let k = a.dim();
    let mut sum = RatMatrix::zero(k);
    let mut p = RatMatrix::identity(k);
    for _ in 0..n {
        sum = &sum + &(&(&p.transpose() * h.matrix()) * &p);
        p = &p * a;
    }
    sum.det()
}

fn superfactorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * factorial(i))
}

/// `(Π_{i=1}^{k-1} i!)² / Π_{i=1}^{2k-1} i!`, the coefficient of `n^{k²}` in
/// `P` for a single block `J_{1,k}` and `H = I`.
pub fn single_block_leading_coeff(k: usize) -> Rational {
    assert!(k >= 1);
    let num = superfactorial(k as u64 - 1);
    Rational::new(&num * &num, superfactorial(2 * k as u64 - 1))
}

/// The `k × k` Hilbert matrix `(1/(i + j - 1))`.
pub fn hilbert_matrix(k: usize) -> RatMatrix {
    RatMatrix::from_fn(k, |i, j| Rational::new(BigInt::one(), BigInt::from(i + j + 1)))
}

pub fn hilbert_det(k: usize) -> Rational {
    hilbert_matrix(k).det()
}

/// `(Π_{i=1}^{k-1} i!)⁴ / Π_{i=1}^{2k-1} i!`.
pub fn hilbert_det_closed_form(k: usize) -> Rational {
    assert!(k >= 1);
    let s = superfactorial(k as u64 - 1);
    Rational::new(s.pow(4), superfactorial(2 * k as u64 - 1))
}
