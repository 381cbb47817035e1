//! Cyclotomic polynomials and the Kronecker-style quasi-unipotency test.
//!
//! A matrix with integer characteristic polynomial is quasi-unipotent exactly
//! when that polynomial is a product of cyclotomic factors. Since
//! `φ(n) ≥ √(n/2)`, every `Φ_n` of degree at most `d` has `n ≤ 2d²`, so the
//! candidates can be enumerated and stripped off by exact division.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::algebra::{RatMatrix, UniPoly, Var};
use crate::error::{Error, Result};
use crate::serde_exact;

pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1);
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1;
    while i * i <= n {
        if n.is_multiple_of(i) {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn cache() -> &'static Mutex<HashMap<u64, UniPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, UniPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `Φ_n(t)`, memoised. The cache is a pure memo: results are identical to
/// [`cyclotomic_poly_uncached`].
pub fn cyclotomic_poly(n: u64) -> UniPoly {
    assert!(n >= 1, "cyclotomic index must be positive");
    if let Some(p) = cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    let p = build_cyclotomic(n, cyclotomic_poly);
    cache().lock().unwrap().entry(n).or_insert(p).clone()
}

/// `Φ_n(t)` recomputed from scratch without touching the cache.
pub fn cyclotomic_poly_uncached(n: u64) -> UniPoly {
    assert!(n >= 1, "cyclotomic index must be positive");
    build_cyclotomic(n, cyclotomic_poly_uncached)
}

/// `(t^n - 1) / Π_{d | n, d < n} Φ_d(t)`, every division exact.
fn build_cyclotomic(n: u64, sub: fn(u64) -> UniPoly) -> UniPoly {
    let mut coeffs = vec![0i64; n as usize + 1];
    coeffs[0] = -1;
    coeffs[n as usize] = 1;
    let mut p = UniPoly::from_ints(&coeffs, Var::T);
    for d in divisors(n) {
        if d == n {
            continue;
        }
        p = p
            .exact_div(&sub(d))
            .expect("proper cyclotomic factors divide t^n - 1");
    }
    p
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclotomicFactor {
    pub order: u64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiUnipotencyVerdict {
    pub is_quasi_unipotent: bool,
    /// Least `N` with `M^N` unipotent.
    pub order: Option<u64>,
    /// `char_poly = Π Φ_n^mult`, orders ascending.
    pub cyclotomic_factorization: Option<Vec<CyclotomicFactor>>,
    /// Non-cyclotomic cofactor of the characteristic polynomial.
    #[serde(with = "serde_exact::opt_poly")]
    pub residual: Option<UniPoly>,
    #[serde(with = "serde_exact::poly")]
    pub char_poly: UniPoly,
}

/// Decides quasi-unipotency by cyclotomic stripping of `det(tI - M)`.
///
/// A characteristic polynomial with a non-integer coefficient is rejected
/// outright: eigenvalues of a quasi-unipotent matrix are algebraic integers.
pub fn quasi_unipotency(m: &RatMatrix) -> QuasiUnipotencyVerdict {
    let p = m.char_poly();
    let reject = |residual: UniPoly, p: UniPoly| QuasiUnipotencyVerdict {
        is_quasi_unipotent: false,
        order: None,
        cyclotomic_factorization: None,
        residual: Some(residual),
        char_poly: p,
    };
    if !p.has_integer_coeffs() {
        return reject(p.clone(), p);
    }
    let d = p.degree().unwrap_or(0) as u64;
    let mut rest = p.clone();
    let mut factors = Vec::new();
    for n in 1..=2 * d * d {
        let remaining = rest.degree().unwrap_or(0) as u64;
        if remaining == 0 {
            break;
        }
        if euler_phi(n) > remaining {
            continue;
        }
        let phi = cyclotomic_poly(n);
        let mut mult = 0;
        while let Some(q) = rest.exact_div(&phi) {
            rest = q;
            mult += 1;
        }
        if mult > 0 {
            factors.push(CyclotomicFactor { order: n, multiplicity: mult });
        }
    }
    if rest.degree() != Some(0) {
        return reject(rest, p);
    }
    let order = factors.iter().fold(1u64, |acc, f| acc.lcm(&f.order));
    QuasiUnipotencyVerdict {
        is_quasi_unipotent: true,
        order: Some(order),
        cyclotomic_factorization: Some(factors),
        residual: None,
        char_poly: p,
    }
}

/// `(N, M^N)` with `N` the least exponent making `M^N` unipotent.
///
/// The lcm of the cyclotomic orders is re-verified: `M^N` must be unipotent
/// and `M^{N/p}` must not be for any prime `p | N`.
pub fn unipotent_power(m: &RatMatrix) -> Result<(u64, RatMatrix)> {
    let verdict = quasi_unipotency(m);
    let order = verdict.order.ok_or(Error::NotQuasiUnipotent)?;
    let u = m.pow(order);
    if !u.is_unipotent() {
        return Err(Error::InternalCrossCheck(format!("M^{order} is not unipotent")));
    }
    for p in prime_factors(order) {
        if m.pow(order / p).is_unipotent() {
            return Err(Error::InternalCrossCheck(format!(
                "M^{} is already unipotent; order {order} is not minimal",
                order / p
            )));
        }
    }
    Ok((order, u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    fn phi6_companion() -> RatMatrix {
        RatMatrix::ints([[0, -1], [1, 1]])
    }

    #[test]
    fn totients_and_divisors() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(13), 12);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(prime_factors(360), vec![2, 3, 5]);
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_poly(1), UniPoly::from_ints(&[-1, 1], Var::T));
        assert_eq!(cyclotomic_poly(6), UniPoly::from_ints(&[1, -1, 1], Var::T));
        assert_eq!(cyclotomic_poly(8), UniPoly::from_ints(&[1, 0, 0, 0, 1], Var::T));
        // Φ_105 is the first with a coefficient outside {-1, 0, 1}.
        assert!(cyclotomic_poly(105).coeffs().iter().any(|c| *c == int(-2)));
    }

    #[test]
    fn cyclotomic_product_identity() {
        for n in 1..=40u64 {
            let phi = cyclotomic_poly(n);
            assert_eq!(phi.degree(), Some(euler_phi(n) as usize));
            assert!(phi.has_integer_coeffs() && phi.is_monic());
            let prod = divisors(n)
                .into_iter()
                .fold(UniPoly::one_in(Var::T), |acc, d| &acc * &cyclotomic_poly(d));
            let mut c = vec![0i64; n as usize + 1];
            c[0] = -1;
            c[n as usize] = 1;
            assert_eq!(prod, UniPoly::from_ints(&c, Var::T));
        }
    }

    #[test]
    fn memo_is_transparent() {
        let handles: Vec<_> = (0..4)
            .map(|k| std::thread::spawn(move || (1..=30u64).map(|n| cyclotomic_poly(n * (k + 1))).collect::<Vec<_>>()))
            .collect();
        for (k, h) in handles.into_iter().enumerate() {
            for (i, p) in h.join().unwrap().into_iter().enumerate() {
                assert_eq!(p, cyclotomic_poly_uncached((i as u64 + 1) * (k as u64 + 1)));
            }
        }
    }

    #[test]
    fn verdict_examples() {
        let v = quasi_unipotency(&RatMatrix::identity(2));
        assert!(v.is_quasi_unipotent);
        assert_eq!(v.order, Some(1));
        assert_eq!(v.cyclotomic_factorization, Some(vec![CyclotomicFactor { order: 1, multiplicity: 2 }]));

        let v = quasi_unipotency(&phi6_companion());
        assert_eq!(v.order, Some(6));
        assert_eq!(v.cyclotomic_factorization, Some(vec![CyclotomicFactor { order: 6, multiplicity: 1 }]));

        let fib = RatMatrix::ints([[0, 1], [1, 1]]);
        // Oracle: traces of powers are Lucas numbers, unbounded; tr(A^12) = 322.
        assert_eq!(fib.pow(12).trace(), int(322));
        let v = quasi_unipotency(&fib);
        assert!(!v.is_quasi_unipotent);
        assert_eq!(v.residual, Some(UniPoly::from_ints(&[-1, -1, 1], Var::T)));
        assert_eq!(v.order, None);
    }

    #[test]
    fn non_integer_char_poly_is_rejected() {
        let m = RatMatrix::from_rows(vec![
            vec![crate::algebra::rat(1, 2), int(0)],
            vec![int(0), int(2)],
        ])
        .unwrap();
        let v = quasi_unipotency(&m);
        assert!(!v.is_quasi_unipotent);
        assert_eq!(v.residual.as_ref(), Some(&v.char_poly));
        // Rational entries are fine when the characteristic polynomial is integral.
        let r = RatMatrix::from_rows(vec![
            vec![int(1), crate::algebra::rat(1, 3)],
            vec![int(0), int(1)],
        ])
        .unwrap();
        assert!(quasi_unipotency(&r).is_quasi_unipotent);
    }

    #[test]
    fn unipotent_power_examples() {
        assert_eq!(unipotent_power(&RatMatrix::identity(3)).unwrap(), (1, RatMatrix::identity(3)));
        assert_eq!(unipotent_power(&phi6_companion()).unwrap(), (6, RatMatrix::identity(2)));
        let neg = RatMatrix::jordan_block(int(-1), 2);
        assert_eq!(neg.pow(2), RatMatrix::ints([[1, -2], [0, 1]]));
        assert_eq!(unipotent_power(&neg).unwrap(), (2, RatMatrix::ints([[1, -2], [0, 1]])));
        assert_eq!(unipotent_power(&RatMatrix::ints([[0, 1], [1, 1]])), Err(Error::NotQuasiUnipotent));
    }

    #[test]
    fn mixed_orders_take_lcm() {
        let m = RatMatrix::direct_sum(&[
            RatMatrix::companion(&cyclotomic_poly(4)),
            RatMatrix::companion(&cyclotomic_poly(6)),
            RatMatrix::jordan_block(int(1), 2),
        ]);
        let v = quasi_unipotency(&m);
        assert_eq!(v.order, Some(12));
        let (n, u) = unipotent_power(&m).unwrap();
        assert_eq!(n, 12);
        assert!(u.is_unipotent());
    }
}
