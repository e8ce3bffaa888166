pub mod error;
pub mod exact;
pub mod fields;
pub mod gl;
pub mod report;
pub mod sample;
pub mod tcalc;
pub mod verify;
pub mod witt;

pub use error::{Error, Result};
pub use report::{IdentityReport, Status};
