//! Independent oracles shared by the integration tests. None of these reuse
//! the library's fast paths.
#![allow(dead_code)]

use plov_core::algebra::minors::lex_subsets;
use plov_core::algebra::{int, PolyMatrix, RatMatrix, Rational, UniPoly, Var};

/// Determinant by cofactor expansion along the first row.
pub fn cofactor_det(m: &RatMatrix) -> Rational {
    let rows = m.rows();
    let cols: Vec<usize> = (0..m.dim()).collect();
    cofactor(&rows, 0, &cols)
}

fn cofactor(rows: &[Vec<Rational>], top: usize, cols: &[usize]) -> Rational {
    if cols.is_empty() {
        return int(1);
    }
    let mut acc = int(0);
    for (idx, &c) in cols.iter().enumerate() {
        if rows[top][c] == int(0) {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = &rows[top][c] * cofactor(rows, top + 1, &rest);
        acc = if idx % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

/// Polynomial minor on the given rows and columns by symbolic Laplace
/// expansion.
pub fn poly_minor(m: &PolyMatrix, rows: &[usize], cols: &[usize]) -> UniPoly {
    if rows.is_empty() {
        return UniPoly::one_in(m.var());
    }
    let mut acc = UniPoly::zero_in(m.var());
    for (idx, &c) in cols.iter().enumerate() {
        let e = m.get(rows[0], c);
        if e.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let term = e * &poly_minor(m, &rows[1..], &rest);
        acc = if idx % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Largest degree among all `r × r` minors of the symbolic power of `u`.
pub fn symbolic_exponent(u: &RatMatrix, r: usize) -> usize {
    let sym = PolyMatrix::symbolic_power(u).unwrap();
    let subsets = lex_subsets(u.dim(), r);
    subsets
        .iter()
        .flat_map(|rs| subsets.iter().map(move |cs| (rs, cs)))
        .filter_map(|(rs, cs)| poly_minor(&sym, rs, cs).degree())
        .max()
        .unwrap()
}

/// Exponent on `∧^r` of a unipotent matrix with Jordan sizes `sizes`: a block
/// of size `k` carries weights `k-1, k-3, …, 1-k`, and the exponent is the sum
/// of the `r` largest weights.
pub fn weight_exponent(sizes: &[usize], r: usize) -> usize {
    let mut weights: Vec<i64> = sizes
        .iter()
        .flat_map(|&k| (0..k).map(move |i| k as i64 - 1 - 2 * i as i64))
        .collect();
    weights.sort_unstable_by(|a, b| b.cmp(a));
    let s: i64 = weights[..r].iter().sum();
    s as usize
}

pub fn j1(k: usize) -> RatMatrix {
    RatMatrix::jordan_block(int(1), k)
}

pub fn n_poly(coeffs: Vec<Rational>) -> UniPoly {
    UniPoly::from_coeffs(coeffs, Var::N)
}
