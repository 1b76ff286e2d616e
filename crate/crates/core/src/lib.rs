//! Exact topological data of finite-group quantum double models.

pub mod builtin;
pub mod chartable;
pub mod consistency;
pub mod double;
pub mod error;
pub mod fusion;
pub mod group;
pub mod oracle;
pub mod pairing;
pub mod sectors;

pub use double::QuantumDouble;
pub use error::{Error, Result};
