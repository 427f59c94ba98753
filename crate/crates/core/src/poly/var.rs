use std::fmt;

/// A polynomial indeterminate.
///
/// Namespaces are kept disjoint so that coordinates `z`, Chern roots,
/// quasi-exponential coefficients and twisting parameters can never be
/// confused. Indices are 1-based, matching the usual mathematical labels.
/// The spectral variable `u` is deliberately absent: it only lives inside
/// series types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// Equivariant parameter `z_s`.
    Z(u8),
    /// Chern root `γ_{ij}` of the `i`-th tautological quotient.
    G(u8, u8),
    /// Coefficient `Σ_{ij}` of the `i`-th quasi-exponential.
    S(u8, u8),
    /// Twisting parameter `K_i`.
    K(u8),
    /// Formal power-sum symbol `p_r` of the `i`-th Chern-root block; only
    /// used when rewriting block-symmetric classes as diagonal currents.
    P(u8, u16),
}

impl Var {
    pub fn is_z(&self) -> bool {
        matches!(self, Var::Z(_))
    }

    pub fn is_k(&self) -> bool {
        matches!(self, Var::K(_))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Z(s) => write!(f, "z{s}"),
            Var::G(i, j) => write!(f, "g{i}_{j}"),
            Var::S(i, j) => write!(f, "S{i}_{j}"),
            Var::K(i) => write!(f, "K{i}"),
            Var::P(i, r) => write!(f, "p{i}_{r}"),
        }
    }
}
