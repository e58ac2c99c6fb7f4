//! The canonical fixtures shipped with the workbench.

use crate::config::Config;
use crate::error::Result;
use crate::format::{parse, Document};

pub const TRIV: &str = include_str!("../../../fixtures/triv.dtn");
pub const CHAIN: &str = include_str!("../../../fixtures/chain.dtn");
pub const FS2: &str = include_str!("../../../fixtures/fs2.dtn");
pub const NOCHOICE: &str = include_str!("../../../fixtures/nochoice.dtn");

/// Fixture names in demo order.
pub const NAMES: [&str; 4] = ["triv", "chain", "fs2", "nochoice"];

pub fn source(name: &str) -> Option<&'static str> {
    match name {
        "triv" => Some(TRIV),
        "chain" => Some(CHAIN),
        "fs2" => Some(FS2),
        "nochoice" => Some(NOCHOICE),
        _ => None,
    }
}

/// Parses a named fixture.
///
/// Panics on an unknown name; the shipped fixtures always parse.
pub fn load(name: &str, cfg: &Config) -> Result<Document> {
    parse(source(name).unwrap_or_else(|| panic!("unknown fixture {name}")), cfg)
}
