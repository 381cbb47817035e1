//! Square matrices over ℚ.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::minors;
use super::poly::{UniPoly, Var};
use super::rational::{denominator_lcm, int, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    dim: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    /// Builds a matrix from rows, rejecting empty and non-square input.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::Empty);
        }
        let mut data = Vec::with_capacity(dim * dim);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != dim {
                return Err(Error::NotSquare { row, len: r.len(), expected: dim });
            }
            data.extend(r);
        }
        Ok(RatMatrix { dim, data })
    }

    /// Integer matrix from a fixed-size array literal.
    pub fn ints<const K: usize>(rows: [[i64; K]; K]) -> Self {
        assert!(K > 0, "matrix dimension must be positive");
        RatMatrix {
            dim: K,
            data: rows.iter().flat_map(|r| r.iter().map(|&x| int(x))).collect(),
        }
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        RatMatrix { dim, data }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { Rational::one() } else { Rational::zero() })
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_fn(dim, |_, _| Rational::zero())
    }

    /// Jordan block with eigenvalue `lambda` and ones on the superdiagonal.
    pub fn jordan_block(lambda: Rational, size: usize) -> Self {
        Self::from_fn(size, |i, j| {
            if i == j {
                lambda.clone()
            } else if j == i + 1 {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    /// Companion matrix of a monic polynomial of degree ≥ 1: subdiagonal ones
    /// and the negated coefficients in the last column.
    pub fn companion(p: &UniPoly) -> Self {
        let d = p.degree().expect("companion of the zero polynomial");
        assert!(d >= 1 && p.is_monic(), "companion needs a monic polynomial of degree >= 1");
        Self::from_fn(d, |i, j| {
            if j == d - 1 {
                -p.coeff(i)
            } else if i == j + 1 {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
    }

    /// Block-diagonal sum of `blocks` in order.
    pub fn direct_sum(blocks: &[RatMatrix]) -> Self {
        let dim: usize = blocks.iter().map(|b| b.dim).sum();
        let mut out = Self::zero(dim);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.dim {
                for j in 0..b.dim {
                    out.data[(off + i) * dim + off + j] = b.get(i, j).clone();
                }
            }
            off += b.dim;
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.dim + j] = v;
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<Rational>> {
        self.data.chunks(self.dim).map(<[Rational]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RatMatrix { dim: self.dim, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.dim)
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn trace(&self) -> Rational {
        (0..self.dim).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.denom().is_one())
    }

    /// Entries as integers, if every entry is integral.
    pub fn to_integer_rows(&self) -> Option<Vec<Vec<BigInt>>> {
        self.is_integral().then(|| {
            self.data
                .chunks(self.dim)
                .map(|r| r.iter().map(|x| x.numer().clone()).collect())
                .collect()
        })
    }

    pub fn try_mul(&self, rhs: &RatMatrix) -> Result<RatMatrix> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: rhs.dim });
        }
        let k = self.dim;
        let mut data = vec![Rational::zero(); k * k];
        for i in 0..k {
            for l in 0..k {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..k {
                    let b = rhs.get(l, j);
                    if !b.is_zero() {
                        data[i * k + j] += a * b;
                    }
                }
            }
        }
        Ok(RatMatrix { dim: k, data })
    }

    /// `self^e` by binary exponentiation; `self^0` is the identity.
    pub fn pow(&self, mut e: u64) -> RatMatrix {
        let mut acc = Self::identity(self.dim);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `S · self · S⁻¹`.
    pub fn conjugate_by(&self, s: &RatMatrix, s_inv: &RatMatrix) -> RatMatrix {
        &(s * self) * s_inv
    }

    /// `p(self)` by Horner's rule.
    pub fn eval_poly(&self, p: &UniPoly) -> RatMatrix {
        let mut acc = Self::zero(self.dim);
        for c in p.coeffs().iter().rev() {
            acc = &acc * self;
            for i in 0..self.dim {
                acc.data[i * self.dim + i] += c;
            }
        }
        acc
    }

    /// Each row multiplied by the lcm of its denominators; the product of those
    /// multipliers is returned alongside.
    fn integer_rows_scaled(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let mut scale = BigInt::one();
        let rows = self
            .data
            .chunks(self.dim)
            .map(|r| {
                let l = denominator_lcm(r);
                let row = r.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
                scale *= &l;
                row
            })
            .collect();
        (rows, scale)
    }

    /// Exact determinant: rows are cleared of denominators, then fraction-free
    /// (Bareiss) elimination runs over ℤ.
    pub fn det(&self) -> Rational {
        let (rows, scale) = self.integer_rows_scaled();
        Rational::new(bareiss_det(rows), scale)
    }

    /// Rank over ℚ.
    pub fn rank(&self) -> usize {
        let (rows, _) = self.integer_rows_scaled();
        integer_rank(rows)
    }

    /// Basis of the right kernel `{v : self · v = 0}` from the reduced row
    /// echelon form.
    pub fn kernel(&self) -> Vec<Vec<Rational>> {
        let k = self.dim;
        let mut a = self.rows();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..k {
            let Some(p) = (row..k).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            a.swap(row, p);
            let inv = a[row][col].recip();
            for x in a[row].iter_mut() {
                *x *= &inv;
            }
            let pivot_row = a[row].clone();
            for (i, target) in a.iter_mut().enumerate() {
                if i != row && !target[col].is_zero() {
                    let f = target[col].clone();
                    for (x, p) in target.iter_mut().zip(&pivot_row) {
                        *x -= &f * p;
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == k {
                break;
            }
        }
        let free: Vec<usize> = (0..k).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); k];
                v[f] = Rational::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -a[r][f].clone();
                }
                v
            })
            .collect()
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    /// Gauss–Jordan inverse, or `None` when singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        let k = self.dim;
        let mut a = self.rows();
        let mut inv = Self::identity(k).rows();
        for col in 0..k {
            let p = (col..k).find(|&i| !a[i][col].is_zero())?;
            a.swap(col, p);
            inv.swap(col, p);
            let piv = a[col][col].recip();
            for j in 0..k {
                a[col][j] *= &piv;
                inv[col][j] *= &piv;
            }
            for i in 0..k {
                if i != col && !a[i][col].is_zero() {
                    let f = a[i][col].clone();
                    for j in 0..k {
                        let s1 = &f * &a[col][j];
                        a[i][j] -= s1;
                        let s2 = &f * &inv[col][j];
                        inv[i][j] -= s2;
                    }
                }
            }
        }
        Some(RatMatrix::from_rows(inv).expect("square by construction"))
    }

    /// Smallest `e` with `self^e = 0`, or `None` if the matrix is not nilpotent.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let mut p = Self::identity(self.dim);
        for e in 0..=self.dim {
            if p.is_zero() {
                return Some(e);
            }
            p = &p * self;
        }
        None
    }

    /// All eigenvalues equal 1, i.e. `(self - I)^K = 0`.
    pub fn is_unipotent(&self) -> bool {
        (self - &Self::identity(self.dim)).pow(self.dim as u64).is_zero()
    }

    /// `det(t·I - self)`, via reduction to upper Hessenberg form by exact
    /// similarity transforms followed by the Hessenberg recurrence.
    pub fn char_poly(&self) -> UniPoly {
        let k = self.dim;
        let mut h = self.rows();
        for j in 0..k.saturating_sub(2) {
            let Some(p) = (j + 1..k).find(|&i| !h[i][j].is_zero()) else {
                continue;
            };
            if p != j + 1 {
                h.swap(p, j + 1);
                for row in h.iter_mut() {
                    row.swap(p, j + 1);
                }
            }
            let piv = h[j + 1][j].clone();
            for r in j + 2..k {
                if h[r][j].is_zero() {
                    continue;
                }
                let u = &h[r][j] / &piv;
                let src = h[j + 1].clone();
                for (x, s) in h[r].iter_mut().zip(&src) {
                    *x -= &u * s;
                }
                for row in h.iter_mut() {
                    let add = &u * &row[r];
                    row[j + 1] += add;
                }
            }
        }
        // p_m = (t - h_mm) p_{m-1} - Σ_{i<m} h_im (Π_{l=i+1}^{m} h_{l,l-1}) p_{i-1}
        let t = UniPoly::x(Var::T);
        let mut polys: Vec<UniPoly> = vec![UniPoly::one_in(Var::T)];
        for m in 0..k {
            let lin = &t - &UniPoly::constant(h[m][m].clone(), Var::T);
            let mut pm = &lin * &polys[m];
            let mut prod = Rational::one();
            for i in (0..m).rev() {
                prod *= &h[i + 1][i];
                if prod.is_zero() {
                    break;
                }
                let c = &prod * &h[i][m];
                if !c.is_zero() {
                    pm = &pm - &polys[i].scale(&c);
                }
            }
            polys.push(pm);
        }
        polys.pop().unwrap()
    }

    /// The `r`-th compound matrix: all `r × r` minors, rows and columns
    /// indexed by `r`-subsets in lexicographic order.
    pub fn compound(&self, r: usize) -> RatMatrix {
        assert!(r >= 1 && r <= self.dim, "compound order out of range");
        let rows = self.rows();
        let table = minors::compound_table(&rows, r, crate::Exec::default());
        RatMatrix::from_rows(table).expect("square by construction")
    }
}

/// Determinant of an integer matrix by Bareiss elimination; every division is
/// exact.
pub(crate) fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Rank over ℚ of an integer matrix by fraction-free row echelon reduction.
fn integer_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..rows {
            if a[i][col].is_zero() {
                continue;
            }
            let (piv, lead) = (a[rank][col].clone(), a[i][col].clone());
            let g = piv.gcd(&lead);
            let (fp, fl) = (&piv / &g, &lead / &g);
            let pivot_row = a[rank].clone();
            for (x, p) in a[i][col..cols].iter_mut().zip(&pivot_row[col..cols]) {
                *x = &*x * &fp - p * &fl;
            }
            let content = a[i][col + 1..].iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            if content > BigInt::one() {
                for x in a[i][col + 1..].iter_mut() {
                    *x = &*x / &content;
                }
            }
        }
        rank += 1;
    }
    rank
}

impl<'a> Mul<&'a RatMatrix> for &'a RatMatrix {
    type Output = RatMatrix;
    /// Panics on a dimension mismatch; use [`RatMatrix::try_mul`] to get an error.
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        self.try_mul(rhs).expect("matrix dimensions differ")
    }
}

impl<'a> Add<&'a RatMatrix> for &'a RatMatrix {
    type Output = RatMatrix;
    fn add(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimensions differ");
        RatMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a RatMatrix> for &'a RatMatrix {
    type Output = RatMatrix;
    fn sub(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix dimensions differ");
        RatMatrix {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.data.chunks(self.dim).enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Exact product; errors on a dimension mismatch.
pub fn mat_mul(a: &RatMatrix, b: &RatMatrix) -> Result<RatMatrix> {
    a.try_mul(b)
}

pub fn mat_pow(a: &RatMatrix, e: u64) -> RatMatrix {
    a.pow(e)
}

pub fn det_exact(m: &RatMatrix) -> Rational {
    m.det()
}

pub fn rank_exact(m: &RatMatrix) -> usize {
    m.rank()
}

pub fn char_poly(m: &RatMatrix) -> UniPoly {
    m.char_poly()
}

/// Largest absolute numerator among the entries; handy for diagnostics.
pub fn max_abs_entry(m: &RatMatrix) -> BigInt {
    m.entries().iter().map(|x| x.numer().abs()).max().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rat;

    fn hilbert(k: usize) -> RatMatrix {
        RatMatrix::from_fn(k, |i, j| rat(1, (i + j + 1) as i64))
    }

    /// Cofactor expansion along the first row; independent of elimination.
    fn cofactor_det(m: &[Vec<Rational>]) -> Rational {
        let k = m.len();
        if k == 1 {
            return m[0][0].clone();
        }
        let mut acc = Rational::zero();
        for c in 0..k {
            if m[0][c].is_zero() {
                continue;
            }
            let minor: Vec<Vec<Rational>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(j, _)| j != c).map(|(_, x)| x.clone()).collect())
                .collect();
            let term = &m[0][c] * cofactor_det(&minor);
            if c % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn product_examples() {
        let i2 = RatMatrix::identity(2);
        assert_eq!(mat_mul(&i2, &i2).unwrap(), i2);
        let j = RatMatrix::ints([[1, 1], [0, 1]]);
        assert_eq!(mat_mul(&j, &j).unwrap(), RatMatrix::ints([[1, 2], [0, 1]]));
        let c6 = RatMatrix::ints([[0, -1], [1, 1]]);
        let mut acc = RatMatrix::identity(2);
        for _ in 0..6 {
            acc = mat_mul(&acc, &c6).unwrap();
        }
        assert_eq!(acc, i2);
        assert_eq!(
            mat_mul(&i2, &RatMatrix::identity(3)),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        );
    }

    #[test]
    fn power_examples() {
        let j = RatMatrix::ints([[1, 1], [0, 1]]);
        assert_eq!(mat_pow(&j, 0), RatMatrix::identity(2));
        assert_eq!(mat_pow(&j, 5), RatMatrix::ints([[1, 5], [0, 1]]));
        let c6 = RatMatrix::ints([[0, -1], [1, 1]]);
        assert_eq!(mat_pow(&c6, 6), RatMatrix::identity(2));
        for k in 1..6 {
            assert!(!mat_pow(&c6, k).is_identity());
        }
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(det_exact(&RatMatrix::identity(5)), int(1));
        assert_eq!(cofactor_det(&hilbert(3).rows()), rat(1, 2160));
        assert_eq!(det_exact(&hilbert(3)), rat(1, 2160));
        assert_eq!(det_exact(&RatMatrix::ints([[2, 1], [1, 3]])), int(5));
        assert_eq!(det_exact(&RatMatrix::ints([[0, 1], [1, 0]])), int(-1));
        assert_eq!(det_exact(&RatMatrix::ints([[1, 2], [2, 4]])), int(0));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_exact(&RatMatrix::zero(3)), 0);
        assert_eq!(rank_exact(&RatMatrix::identity(4)), 4);
        let j3 = RatMatrix::jordan_block(int(1), 3);
        assert_eq!(rank_exact(&(&j3 - &RatMatrix::identity(3))), 2);
        let m = RatMatrix::from_rows(vec![
            vec![rat(1, 2), int(1), int(0)],
            vec![int(1), int(2), int(0)],
            vec![int(0), int(0), rat(-3, 7)],
        ])
        .unwrap();
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn char_poly_examples() {
        let t1 = UniPoly::from_ints(&[-1, 1], Var::T);
        assert_eq!(char_poly(&RatMatrix::identity(2)), &t1 * &t1);
        assert_eq!(
            char_poly(&RatMatrix::ints([[0, -1], [1, 1]])),
            UniPoly::from_ints(&[1, -1, 1], Var::T)
        );
        let j = RatMatrix::jordan_block(int(1), 2);
        assert_eq!(char_poly(&RatMatrix::direct_sum(&[j.clone(), j])), t1.pow(4));
        // Hessenberg pivoting path: zero subdiagonal entry needs a swap.
        let m = RatMatrix::ints([[2, 1, 3], [0, 1, 4], [5, 6, 0]]);
        assert_eq!(m.char_poly().coeff(0), -m.det());
        assert_eq!(m.char_poly().coeff(2), -m.trace());
    }

    #[test]
    fn companion_has_its_polynomial() {
        let p = UniPoly::from_ints(&[3, 0, -2, 5, 1], Var::T);
        assert_eq!(RatMatrix::companion(&p).char_poly(), p);
    }

    #[test]
    fn inverse_and_kernel() {
        let m = RatMatrix::ints([[2, 1, 0], [1, 3, 1], [0, 1, 4]]);
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
        assert!(RatMatrix::ints([[1, 2], [2, 4]]).inverse().is_none());
        let s = RatMatrix::ints([[1, 2, 3], [2, 4, 6], [1, 0, 1]]);
        let ker = s.kernel();
        assert_eq!(ker.len(), 1);
        assert!(s.mul_vec(&ker[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn nilpotency_and_unipotency() {
        let n = &RatMatrix::jordan_block(int(1), 3) - &RatMatrix::identity(3);
        assert_eq!(n.nilpotency_index(), Some(3));
        assert_eq!(RatMatrix::identity(2).nilpotency_index(), None);
        assert!(RatMatrix::jordan_block(int(1), 4).is_unipotent());
        assert!(!RatMatrix::jordan_block(int(-1), 2).is_unipotent());
    }

    #[test]
    fn compound_of_small_matrix() {
        let m = RatMatrix::ints([[1, 2, 0], [0, 1, 3], [4, 0, 1]]);
        let c2 = m.compound(2);
        // rows/cols ordered {0,1}, {0,2}, {1,2}
        assert_eq!(*c2.get(0, 0), int(1));
        assert_eq!(*c2.get(0, 2), int(6));
        assert_eq!(*c2.get(2, 1), int(-12));
        assert_eq!(m.compound(3).get(0, 0), &m.det());
        assert_eq!(m.compound(1), m);
    }
}
