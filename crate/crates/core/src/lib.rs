//! Polycyclic groups for group-based key exchange.
//!
//! * [`presentation`], [`word`], [`collect`], [`consistency`]: polycyclic
//!   presentations and the collection algorithm for the word problem.
//! * [`zoo`]: dihedral, Heisenberg, direct product and cyclotomic
//!   semidirect product groups with integer matrix embeddings.
//! * [`conjugacy`]: orbit-stabilizer and bounded conjugacy search, and
//!   the reduction of multiple conjugacy to single conjugacy.
//! * [`kex`]: commutator (AAG) and non-commutative Diffie-Hellman key
//!   exchange, classic Diffie-Hellman, transcripts and attacks.
//! * [`bench`]: word problem versus conjugacy timing tables.

pub mod bench;
pub mod collect;
pub mod conjugacy;
pub mod consistency;
pub mod kex;
pub mod presentation;
pub mod random;
pub mod word;
pub mod zoo;

pub use collect::{collect, commutator, conjugate, inverse, multiply, power, CollectError, Collector};
pub use consistency::{check_consistency, ConsistencyReport, Violation};
pub use presentation::{parse_presentation, PcPresentation, PresentationError};
pub use random::{random_word, WordParams};
pub use word::{NormalWord, Word};
pub use zoo::GroupSpec;
