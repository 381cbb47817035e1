//! Dense univariate polynomials with rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::rational::{int, is_integer, Rational};

/// Name of the indeterminate. Purely a label: `t` for characteristic
/// polynomials, `n` for growth polynomials, `m` for summands.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    T,
    N,
    M,
}

impl Var {
    pub fn symbol(self) -> &'static str {
        match self {
            Var::T => "t",
            Var::N => "n",
            Var::M => "m",
        }
    }
}

/// `coeffs[i]` is the coefficient of `var^i`; the last stored coefficient is
/// nonzero, and the zero polynomial stores nothing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
    var: Var,
}

impl UniPoly {
    pub fn from_coeffs(mut coeffs: Vec<Rational>, var: Var) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs, var }
    }

    pub fn from_ints(coeffs: &[i64], var: Var) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| int(c)).collect(), var)
    }

    pub fn zero_in(var: Var) -> Self {
        UniPoly { coeffs: Vec::new(), var }
    }

    pub fn one_in(var: Var) -> Self {
        Self::constant(Rational::one(), var)
    }

    pub fn constant(c: Rational, var: Var) -> Self {
        Self::from_coeffs(vec![c], var)
    }

    /// `c * var^k`.
    pub fn monomial(c: Rational, k: usize, var: Var) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs, var)
    }

    /// The variable itself.
    pub fn x(var: Var) -> Self {
        Self::monomial(Rational::one(), 1, var)
    }

    /// `C(var, k) = var (var - 1) ... (var - k + 1) / k!`.
    pub fn binomial_basis(k: usize, var: Var) -> Self {
        let mut acc = Self::one_in(var);
        for i in 0..k {
            let factor = Self::from_coeffs(vec![int(-(i as i64)), Rational::one()], var);
            acc = &acc * &factor;
            acc = acc.scale(&Rational::new(1.into(), ((i + 1) as i64).into()));
        }
        acc
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial (degree minus infinity).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(One::is_one)
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(is_integer)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: i64) -> Rational {
        self.eval(&int(x))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect(), self.var)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one_in(self.var);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.leading_coeff().unwrap();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Self::zero_in(self.var), Self::zero_in(self.var));
        };
        if nd < dd {
            return (Self::zero_in(self.var), self.clone());
        }
        let mut quot = vec![Rational::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = &rem[i + dd] / lead;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
            quot[i] = c;
        }
        (
            Self::from_coeffs(quot, self.var),
            Self::from_coeffs(rem, self.var),
        )
    }

    /// `Some(q)` with `self = q * divisor`, or `None` if the division leaves a
    /// remainder.
    pub fn exact_div(&self, divisor: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    fn combine_var(&self, other: &UniPoly) -> Var {
        if self.is_constant() {
            other.var
        } else {
            debug_assert!(
                other.is_constant() || other.var == self.var,
                "mixing polynomials in {} and {}",
                self.var.symbol(),
                other.var.symbol()
            );
            self.var
        }
    }
}

impl Zero for UniPoly {
    fn zero() -> Self {
        Self::zero_in(Var::N)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<'a> Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let var = self.combine_var(rhs);
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        UniPoly::from_coeffs(coeffs, var)
    }
}

impl<'a> Sub<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let var = self.combine_var(rhs);
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        UniPoly::from_coeffs(coeffs, var)
    }
}

impl<'a> Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        let var = self.combine_var(rhs);
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero_in(var);
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(coeffs, var)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect(), self.var)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr<UniPoly> for UniPoly {
            type Output = UniPoly;
            fn $method(self, rhs: UniPoly) -> UniPoly {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let x = self.var.symbol();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = abs.is_one();
            match (i, unit) {
                (0, _) => write!(f, "{abs}")?,
                (_, true) => write!(f, "{x}")?,
                (_, false) => write!(f, "{abs}*{x}")?,
            }
            if i > 1 {
                write!(f, "^{i}")?;
            }
        }
        Ok(())
    }
}

/// Interpolates the unique polynomial of degree `< values.len()` taking
/// `values[i]` at `x = i`, using Newton's forward-difference form on the
/// consecutive nodes `0, 1, ..., len - 1`.
pub fn interpolate_consecutive(values: &[Rational], var: Var) -> UniPoly {
    let newton = forward_differences(values);
    let mut acc = UniPoly::zero_in(var);
    let mut basis = UniPoly::one_in(var);
    for (i, c) in newton.iter().enumerate() {
        if !c.is_zero() {
            acc = &acc + &basis.scale(c);
        }
        if i + 1 < newton.len() {
            let factor = UniPoly::from_coeffs(vec![int(-(i as i64)), Rational::one()], var);
            basis = (&basis * &factor).scale(&Rational::new(1.into(), ((i + 1) as i64).into()));
        }
    }
    acc
}

/// `[f(0), Δf(0), Δ²f(0), ...]`: the coefficients of `f` in the binomial basis
/// `C(x, i)`.
pub fn forward_differences(values: &[Rational]) -> Vec<Rational> {
    let mut row = values.to_vec();
    let mut out = Vec::with_capacity(values.len());
    while !row.is_empty() {
        out.push(row[0].clone());
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    out
}

/// `Q(n) = Σ_{m=0}^{n-1} q(m)`.
///
/// `q` is rewritten in the binomial basis `q(m) = Σ c_i C(m, i)`, after which
/// `Σ_{m<n} C(m, i) = C(n, i + 1)` gives `Q` termwise.
pub fn discrete_sum(q: &UniPoly) -> UniPoly {
    let Some(d) = q.degree() else {
        return UniPoly::zero_in(Var::N);
    };
    let samples: Vec<Rational> = (0..=d as i64).map(|m| q.eval_int(m)).collect();
    let newton = forward_differences(&samples);
    let mut acc = UniPoly::zero_in(Var::N);
    for (i, c) in newton.iter().enumerate() {
        if !c.is_zero() {
            acc = &acc + &UniPoly::binomial_basis(i + 1, Var::N).scale(c);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;
    use proptest::prelude::*;

    fn p(c: &[i64], v: Var) -> UniPoly {
        UniPoly::from_ints(c, v)
    }

    #[test]
    fn normalisation_and_degree() {
        let z = p(&[0, 0, 0], Var::T);
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        assert_eq!(p(&[1, 2, 0], Var::T).degree(), Some(1));
    }

    #[test]
    fn arithmetic() {
        let a = p(&[-1, 1], Var::T);
        let b = p(&[1, 1], Var::T);
        assert_eq!(&a * &b, p(&[-1, 0, 1], Var::T));
        assert_eq!(&a + &b, p(&[0, 2], Var::T));
        assert_eq!(&a - &a, UniPoly::zero_in(Var::T));
        let (q, r) = p(&[-1, 0, 0, 1], Var::T).div_rem(&a);
        assert_eq!(q, p(&[1, 1, 1], Var::T));
        assert!(r.is_zero());
        assert!(p(&[1, 0, 1], Var::T).exact_div(&a).is_none());
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -1, 1], Var::T).to_string(), "t^2 - t + 1");
        let q = UniPoly::from_coeffs(vec![int(0), int(0), rat(11, 12), int(0), rat(1, 12)], Var::N);
        assert_eq!(q.to_string(), "1/12*n^4 + 11/12*n^2");
        assert_eq!(UniPoly::zero_in(Var::N).to_string(), "0");
    }

    #[test]
    fn binomial_basis_values() {
        let c3 = UniPoly::binomial_basis(3, Var::N);
        for n in 0..10i64 {
            let expect = crate::algebra::rational::binomial(n as u64, 3);
            assert_eq!(c3.eval_int(n), Rational::from_integer(expect));
        }
    }

    #[test]
    fn discrete_sum_examples() {
        // Σ 1 = n
        assert_eq!(discrete_sum(&p(&[1], Var::M)), p(&[0, 1], Var::N));
        // Σ m = n(n-1)/2
        let tri = UniPoly::from_coeffs(vec![int(0), rat(-1, 2), rat(1, 2)], Var::N);
        assert_eq!(discrete_sum(&p(&[0, 1], Var::M)), tri);
        // Σ m² = n(n-1)(2n-1)/6; expected value frozen from direct summation at
        // n = 0..=3 (0, 0, 1, 5) interpolated: (2n³ - 3n² + n)/6.
        let sq = UniPoly::from_coeffs(vec![int(0), rat(1, 6), rat(-1, 2), rat(1, 3)], Var::N);
        let got = discrete_sum(&p(&[0, 0, 1], Var::M));
        assert_eq!(got, sq);
        for n in 1..=5i64 {
            let direct: i64 = (0..n).map(|m| m * m).sum();
            assert_eq!(got.eval_int(n), int(direct));
        }
        assert!(discrete_sum(&UniPoly::zero_in(Var::M)).is_zero());
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = UniPoly::from_coeffs(vec![rat(1, 3), int(-2), int(0), rat(5, 7)], Var::N);
        let vals: Vec<Rational> = (0..7).map(|x| f.eval_int(x)).collect();
        assert_eq!(interpolate_consecutive(&vals, Var::N), f);
    }

    proptest! {
        #[test]
        fn discrete_sum_matches_direct_summation(
            coeffs in prop::collection::vec(-20i64..20, 0..=7),
        ) {
            let q = p(&coeffs, Var::M);
            let big_q = discrete_sum(&q);
            if let Some(d) = q.degree() {
                prop_assert_eq!(big_q.degree(), Some(d + 1));
            }
            let mut running = Rational::zero();
            for n in 0..=20i64 {
                prop_assert_eq!(big_q.eval_int(n), running.clone());
                running += q.eval_int(n);
            }
        }
    }
}
