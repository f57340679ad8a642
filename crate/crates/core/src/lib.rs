//! Toffoli lowering, resource accounting and state-vector verification for
//! reversible arithmetic circuits.

pub mod arith;
pub mod circuit;
pub mod cli;
pub mod error;
pub mod resources;
pub mod sim;
pub mod toffoli;
pub mod topology;

pub use error::{Error, Result};
