pub mod acceptance;
pub mod algebra;
pub mod complex;
pub mod corpus;
pub mod error;
pub mod lsop;
pub mod moves;
pub mod certify;
pub mod reduction;

pub use error::{Error, Result};
