pub mod algebra;
pub mod catalog;
pub mod error;
pub mod field;
pub mod frobenius;
pub mod linalg;
pub mod multipoly;
pub mod rng;
pub mod solver;
pub mod upoly;

pub use error::{Error, Result};
pub use field::{Embedding, Field, FieldElem};
