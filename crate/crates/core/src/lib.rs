pub mod algebra;
pub mod cartan;
pub mod error;
pub mod format;
pub mod linalg;
pub mod module;
pub mod report;
pub mod simple;
pub mod sl2;
pub mod structure;

pub use error::{Error, Result};
