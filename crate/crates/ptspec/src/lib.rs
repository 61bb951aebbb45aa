//! File formats, Monte Carlo sweeps and the command-line front end for
//! [`ptspec_core`].

mod error;
pub mod interchange;
pub mod report;
pub mod sweep;

pub use error::{Error, Result};
pub use ptspec_core as core;
