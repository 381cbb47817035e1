//! Exact arithmetic substrate: rationals, polynomials, matrices over both.

pub mod matrix;
pub mod minors;
pub mod poly;
pub mod polymatrix;
pub mod rational;

pub use matrix::{char_poly, det_exact, mat_mul, mat_pow, rank_exact, RatMatrix};
pub use poly::{discrete_sum, interpolate_consecutive, UniPoly, Var};
pub use polymatrix::{det_poly, det_poly_with, PolyMatrix};
pub use rational::{int, parse_rational, rat, to_exact_string, Rational};
