//! Exact computations on Lucas sequences: terms, degeneracy, bounded-root
//! census, sets of attainable terms, growth bounds and Pell families.

pub mod census;
pub mod error;
pub mod growth;
pub mod lucas;
pub mod numutil;
pub mod oracle;
pub mod pell;
pub mod poly;
pub mod precision;
pub mod term_sets;
pub mod verify;

pub use error::{Error, Result};
pub use lucas::{classify, term, term_via_ring, Kind, LucasParams, SequenceClass};
