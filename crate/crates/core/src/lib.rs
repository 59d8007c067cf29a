//! Exact group arithmetic and the algorithms built on it: conjugacy solvers
//! with conjugator-length bookkeeping, Cayley and coned-off Cayley graphs,
//! closed-form conjugator-length bound evaluators, weighted ℓ¹ seminorms on
//! group algebras, and exact Hochschild/cyclic homology of finite group
//! algebras split along conjugacy classes.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, caching,
//! parallel drivers and the command-line front end live in the `rdconj`
//! companion crate.
#![no_std]

extern crate alloc;

pub mod bounds;
pub mod cayley;
pub mod conjugacy;
pub mod group;
pub mod homology;
pub mod linalg;
pub mod rdalgebra;
pub mod rational_serde;

pub use group::{Ball, Element, GroupError, GroupModel, Length, Letter, Order, Word};
