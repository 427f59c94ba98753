//! The current-algebra module `𝕍 = V^{⊗n} ⊗ ℂ[z]`, its `S_n`-isotypic
//! parts, Shapovalov pairings, quotients by the symmetric ideal, and
//! singular vectors.

mod element;
mod quotient;
mod weight;

pub use element::{
    act_generator, global_denominator, project_symmetric, shapovalov, shapovalov_pm, sn_act,
    FracVElement, VElement,
};
pub use quotient::{
    graded_piece_quotient, monomial_symmetric, pairing_matrix, singular_character,
    singular_subspace, singular_vectors, GradedQuotient, GradedSubspaceBasis, InvariantModel,
    Space,
};
pub use weight::{enumerate_decompositions, Decomposition, Weight};
