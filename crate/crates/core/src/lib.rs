//! A workbench for finite doctrines: indexed finite inf-semilattices over a
//! finite base category, their elementary and existential structure, and the
//! completions built from them.

pub mod allegory;
pub mod compare;
pub mod completions;
pub mod config;
pub mod doctrine;
pub mod error;
pub mod fincat;
pub mod fixtures;
pub mod format;
mod par;
pub mod report;
pub mod structure;

pub use config::{ConditionV, Config};
pub use error::{Error, Result};
