//! Exact adapted Chevalley bases and structure tables for real semisimple
//! Lie algebras, built from Satake diagrams.

pub mod error;
pub mod linalg;
pub mod rational;
pub mod adaptation;
pub mod cli;
pub mod chevalley;
pub mod root_system;
pub mod nilpotent;
pub mod real_algebra;
pub mod satake;

pub use error::{Error, Result};
