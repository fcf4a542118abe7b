//! Marked monomial ideals on chart complexes, their blow-ups, order reduction,
//! principalization and an exact polynomial oracle.

pub mod arithmetic;
pub mod drivers;
pub mod error;
pub mod format;
pub mod model;
pub mod reduction;
pub mod render;
pub mod resolution;
pub mod transform;

pub use error::{Error, ErrorClass, Result};
