//! Square matrices whose entries are polynomials in one variable.

use num_traits::Zero;

use super::matrix::RatMatrix;
use super::poly::{interpolate_consecutive, UniPoly, Var};
use super::rational::{int, Rational};
use crate::error::{Error, Result};
use crate::Exec;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    dim: usize,
    var: Var,
    data: Vec<UniPoly>,
}

impl PolyMatrix {
    pub fn from_fn(dim: usize, var: Var, mut f: impl FnMut(usize, usize) -> UniPoly) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j).with_var(var));
            }
        }
        PolyMatrix { dim, var, data }
    }

    pub fn from_rows(rows: Vec<Vec<UniPoly>>, var: Var) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::Empty);
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != dim {
                return Err(Error::NotSquare { row, len: r.len(), expected: dim });
            }
        }
        let data = rows.into_iter().flatten().map(|p| p.with_var(var)).collect();
        Ok(PolyMatrix { dim, var, data })
    }

    /// Constant polynomial matrix.
    pub fn constant(m: &RatMatrix, var: Var) -> Self {
        Self::from_fn(m.dim(), var, |i, j| UniPoly::constant(m.get(i, j).clone(), var))
    }

    /// `Σ_i c_i(var) · M_i`.
    pub fn linear_combination(terms: &[(UniPoly, RatMatrix)], var: Var) -> Self {
        let dim = terms.first().expect("at least one term").1.dim();
        let mut data = vec![UniPoly::zero_in(var); dim * dim];
        for (c, m) in terms {
            assert_eq!(m.dim(), dim, "matrix dimensions differ");
            for (slot, x) in data.iter_mut().zip(m.entries()) {
                if !x.is_zero() {
                    *slot = &*slot + &c.scale(x);
                }
            }
        }
        PolyMatrix { dim, var, data }
    }

    /// The symbolic power `U(n) = Σ_i C(n, i) (U - I)^i` of a unipotent matrix,
    /// equal to `U^n` at every integer `n ≥ 0`.
    pub fn symbolic_power(u: &RatMatrix) -> Result<Self> {
        if !u.is_unipotent() {
            return Err(Error::NotUnipotent);
        }
        let k = u.dim();
        let nil = u - &RatMatrix::identity(k);
        let mut terms = Vec::new();
        let mut p = RatMatrix::identity(k);
        let mut i = 0;
        while !p.is_zero() {
            terms.push((UniPoly::binomial_basis(i, Var::N), p.clone()));
            p = &p * &nil;
            i += 1;
        }
        Ok(Self::linear_combination(&terms, Var::N))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn get(&self, i: usize, j: usize) -> &UniPoly {
        &self.data[i * self.dim + j]
    }

    pub fn eval(&self, x: &Rational) -> RatMatrix {
        RatMatrix::from_fn(self.dim, |i, j| self.get(i, j).eval(x))
    }

    pub fn eval_int(&self, x: i64) -> RatMatrix {
        self.eval(&int(x))
    }

    /// Largest entry degree (`None` when every entry is zero).
    pub fn max_entry_degree(&self) -> Option<usize> {
        self.data.iter().filter_map(UniPoly::degree).max()
    }

    /// Σ over rows of the largest entry degree in that row: an upper bound on
    /// the degree of the determinant.
    pub fn det_degree_bound(&self) -> usize {
        (0..self.dim)
            .map(|i| (0..self.dim).filter_map(|j| self.get(i, j).degree()).max().unwrap_or(0))
            .sum()
    }

    pub fn det_poly(&self, degree_bound: usize) -> UniPoly {
        det_poly_with(self, degree_bound, Exec::default())
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }
}

/// Determinant of a polynomial matrix: evaluate at `0, 1, …, degree_bound`,
/// take exact determinants, interpolate. `degree_bound` must be at least the
/// true degree.
pub fn det_poly(m: &PolyMatrix, degree_bound: usize) -> UniPoly {
    det_poly_with(m, degree_bound, Exec::default())
}

pub fn det_poly_with(m: &PolyMatrix, degree_bound: usize, exec: Exec) -> UniPoly {
    let values = exec.map_range(degree_bound + 1, |x| m.eval_int(x as i64).det());
    interpolate_consecutive(&values, m.var)
}

/// Identity as a polynomial matrix.
pub fn poly_identity(dim: usize, var: Var) -> PolyMatrix {
    PolyMatrix::from_fn(dim, var, |i, j| {
        if i == j {
            UniPoly::one_in(var)
        } else {
            UniPoly::zero_in(var)
        }
    })
}
