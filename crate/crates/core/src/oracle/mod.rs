//! Independent linear-algebra oracle over small prime fields.

pub mod brute;
pub mod linalg;
pub mod rep;

pub use brute::{indecs_up_to, Oracle, DEFAULT_BUDGET};
pub use linalg::{Mat, PrimeField};
pub use rep::{build_indec, hom_basis, hom_dim, QuiverRep, Shape};
