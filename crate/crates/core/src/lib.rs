pub mod error;
pub mod factory;
pub mod formulas;
pub mod invariants;
pub mod report;
pub mod verify;

pub use error::{CurveError, Result};
