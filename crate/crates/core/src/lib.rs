//! Exact construction and verification of unipotent Galois extensions.

pub mod arith;
pub mod as_u4;
pub mod classes;
pub mod descent;
pub mod error;
pub mod expr;
pub mod galois;
pub mod kummer_u4;
pub mod massey;
pub mod tower;
pub mod trace;

pub use error::{Error, Result};
