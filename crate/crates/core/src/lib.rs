pub mod error;
pub mod exact;
pub mod fields;
pub mod finite;
pub mod quad;
pub mod sd;

pub use error::{Error, Result};
