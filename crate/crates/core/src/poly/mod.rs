//! Exact and modular polynomial arithmetic.

mod int;
mod modular;
mod sturm;

use thiserror::Error;

pub use int::{geometric, IntPolynomial};
pub use modular::{reduce_mod, ModPolynomial, MAX_MODULUS};
pub use sturm::{
    count_real_roots, eisenstein_irreducible, is_increasing, odd_multiplicity_part,
    squarefree_decomposition, SturmChain,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomial is not exactly divisible over the integers")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("modulus {0} outside the supported range 2..=65535")]
    BadModulus(u32),
    #[error("formal degree {formal_degree} is below the actual degree {degree}")]
    FormalDegreeTooSmall { degree: usize, formal_degree: usize },
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("cannot parse coefficient {0:?}")]
    Parse(String),
}
