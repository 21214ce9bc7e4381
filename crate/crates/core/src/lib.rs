pub mod cli;
pub mod codes;
pub mod enumerate;
pub mod error;
pub mod kolmogorov;
pub mod qpl;
pub mod qstate;
pub mod theorems;

pub use error::{Error, Result};
