//! Group models with canonical normal forms, word length, torsion detection
//! and ball enumeration.

mod arith;
mod ball;
mod element;
mod model;
mod powers;
mod word;

use alloc::string::String;

pub use arith::{Length, Order};
pub use ball::{Ball, DEFAULT_BALL_CAP};
pub use element::{Element, Syllable};
pub use model::{FiniteModel, GroupModel, NilpotentModel};
pub use word::{Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("invalid group model: {0}")]
    InvalidModel(String),
    #[error("model mismatch: {0}")]
    ModelMismatch(String),
    #[error("ball of radius {radius} exceeds the cap of {cap} elements")]
    BallOverflow { cap: usize, radius: u32 },
    #[error("cannot parse element {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}
