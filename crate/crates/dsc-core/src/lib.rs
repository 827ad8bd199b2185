pub mod boundary;
pub mod error;
pub mod grid;
pub mod interp;
pub mod jet;
pub mod kernel;
pub mod matrix;
pub mod solvers;
pub mod weights;
pub mod zoo;

pub use error::{DscError, Result};
