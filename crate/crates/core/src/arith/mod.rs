pub mod base;
pub mod factor;
pub mod finite;
pub mod poly;
pub mod scalar;

pub use base::{BaseElem, BaseField};
pub use finite::FiniteField;
pub use poly::Poly;
pub use scalar::{CoeffField, Scalar};
