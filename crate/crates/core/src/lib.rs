//! Exact computational graded homological algebra.

pub mod coeff;
pub mod complex;
pub mod error;
pub mod gmod;
pub mod gring;
pub mod io;
pub mod linalg;
pub mod site;
pub mod sympow;

pub use error::{Error, Result};
