pub mod cli;
pub mod error;
pub mod field;
pub mod hypersurface;
pub mod quadric;
pub mod verifier;

pub use error::{Error, Result};
