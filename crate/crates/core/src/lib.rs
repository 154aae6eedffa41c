//! Four-valued relational logics over De Morgan lattices: syntax, finite
//! matrix semantics, Leibniz congruences, axiom systems and proof search.

pub mod algebra;
pub mod cli;
mod error;
pub mod engine;
pub mod json;
pub mod leibniz;
pub mod structures;
pub mod syntax;
pub mod systems;
pub mod verify;

pub use error::{Error, Result};
