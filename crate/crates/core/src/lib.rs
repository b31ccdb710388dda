//! Stern polynomials: exact computation, coefficient congruences modulo `m`,
//! closed-form index families with their identity checks, and real-root
//! experiments.

pub mod conjecture;
pub mod families;
pub mod golden;
pub mod grid;
pub mod poly;
pub mod search;
pub mod stern;

pub use poly::{IntPolynomial, ModPolynomial, PolyError};
pub use search::{CongruenceSpec, SearchConfig, SearchReport};
pub use stern::SternIndex;
