//! Nilpotency index of the radical of the module category of a
//! representation-finite bound quiver algebra over the rationals.

pub mod error;
pub mod linalg;
pub mod quiver;
pub mod rep;
pub mod artrans;
pub mod radical;
pub mod theorems;
pub mod cli;

pub use error::{Error, Result};
