//! Exact computational algebra for Gaudin-type Bethe algebras acting on
//! `V^{⊗n} ⊗ ℂ[z]`, equivariant cohomology of partial flag varieties, and
//! Wronskians of quasi-exponentials.

pub mod bethe;
pub mod cohomology;
pub mod combinat;
pub mod error;
pub mod geometric;
pub mod linalg;
pub mod poly;
pub mod quasiexp;
pub mod rat;
pub mod series;
pub mod tensor;

pub use error::{Error, Result};
pub use poly::{MPoly, Monomial, RatFun, Var};
pub use rat::Rat;
pub use series::{rdet, DiffOpSeries, Ring, UInvSeries};
