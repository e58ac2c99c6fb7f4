//! The textual doctrine format.
//!
//! A document starts with a `base` block (an explicit table, or `base finset`
//! for a window of finite sets) and continues with `fiber`, `reindex`, `core`
//! and `subobjects` sections. Identities `id_A` are implicit. Reindexing maps
//! are written target-to-source and must be total.

mod emit;
mod lex;
mod parse;

use std::sync::Arc;

use crate::doctrine::Doctrine;
use crate::fincat::FinCat;

pub use emit::{emit_category, emit_doctrine};
pub use parse::parse;

/// A parsed document: a base category and, when fibers were given, a doctrine over it.
#[derive(Clone, Debug)]
pub struct Document {
    pub base: FinCat,
    pub doctrine: Option<Arc<Doctrine>>,
}
