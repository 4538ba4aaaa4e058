//! Bijective decomposition of permutations into registries of bicolored
//! families, the associated tree and decimal-code forms, and the shifted
//! multinomial counting theory.

pub mod bijection;
pub mod counting;
pub mod decimal;
pub mod error;
pub mod family;
pub mod oracle;
pub mod perm;
pub mod primitive;
pub mod series;
pub mod tree;

pub use error::{Error, Result};
pub use family::{Family, Registry};
pub use num_bigint::BigUint;
pub use perm::Permutation;
