//! Exact multivariate polynomials over the rationals.

mod mpoly;
mod ratfun;
pub mod symmetric;
mod var;

pub use mpoly::{MPoly, Monomial};
pub use ratfun::{product_of_differences, product_of_differences_at, LinearFractionSum, RatFun, ZDiff};
pub use var::Var;
