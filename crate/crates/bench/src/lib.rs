//! Shared inputs for the benchmarks.

use flagbethe_core::tensor::Weight;
use flagbethe_core::{MPoly, Var};

pub fn weight(parts: &[usize]) -> Weight {
    Weight::new(parts.to_vec()).expect("valid weight")
}

/// `(1 + z1 + … + zn)^d`, a dense-ish polynomial for arithmetic timings.
pub fn dense_poly(n: u8, d: u32) -> MPoly {
    let mut base = MPoly::one();
    for s in 1..=n {
        base = &base + &MPoly::var(Var::Z(s));
    }
    (0..d).fold(MPoly::one(), |acc, _| &acc * &base)
}
