//! Exact rational arithmetic, dense matrices and a simplex solver.

mod matrix;
mod rational;
mod simplex;

pub use matrix::RatMatrix;
pub use rational::{clear_denominators, normalize_integer_direction, ParseRationalError, Rational};
pub use simplex::{lp_max_min_slack, maximize, LpError, LpResult, LpStatus};

/// Rank of `m` over the rationals.
pub fn rank(m: &RatMatrix) -> usize {
    m.rank()
}

/// Exact inner product.
pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}
