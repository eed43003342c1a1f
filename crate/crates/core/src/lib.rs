//! Cobar constructions of coalgebras over cooperads along twisting morphisms,
//! with exact homology at finite truncation.

pub mod cli;
pub mod coalg;
pub mod cobar;
pub mod error;
pub mod fixtures;
pub mod gradedlin;
pub mod sigmaop;
pub mod twisting;

pub use error::{Error, Result};
