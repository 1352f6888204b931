pub mod algebra;
pub mod cli;
pub mod error;
pub mod factorization;
pub mod geometry;
pub mod linkage;
pub mod polynomials;

pub use error::{Error, Result};
