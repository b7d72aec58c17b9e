pub mod additive_code;
pub mod cli;
pub mod cyclotomic;
pub mod distance;
pub mod error;
pub mod finite_field;
pub mod linalg;
pub mod polyring;
pub mod quantum;
pub mod search;
pub mod symplectic;
pub mod tables;

pub use error::{Error, Result};
