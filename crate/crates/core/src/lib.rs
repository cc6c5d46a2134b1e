//! Stability data, Harder-Narasimhan filtrations and torsion pairs on tubes,
//! linearly oriented `A_n` quivers and windowed sheaf models.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod ambient;
pub mod bits;
pub mod error;
pub mod indec;
pub mod interval;
pub mod oracle;
pub mod order;
pub mod sheaves;
pub mod stability;
pub mod torsion;
pub mod tube;

pub use ambient::{Ambient, CategoryModel};
pub use bits::Members;
pub use indec::{Indec, Point};
pub use order::{LinearOrder, Phase};
pub use stability::StabilityData;
pub use torsion::TorsionPair;
