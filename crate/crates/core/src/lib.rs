//! A toolkit for finite semigroupoids with restriction structure.
//!
//! The crate models finite semigroupoids (sets with a partial associative
//! composition) and verifies every axiom system attached to them: Exel
//! associativity, the left/right restriction laws, distinct sets, and the
//! graph laws. On top of the checkers it computes derived structure
//! (idempotents, natural orders, identity relations, categoricity,
//! graphings), builds the embedding of any left restriction semigroupoid
//! into a category of partial maps between fibers, and constructs the
//! Szendrei expansion with its premorphism factorization and functoriality.
//!
//! Checkers report violations with concrete witnesses and come with
//! early-exit boolean twins for search loops. All heavy scans run
//! data-parallel under the `parallel` feature (on by default) and fall
//! back to sequential iteration without it.

pub mod axioms;
pub mod enumerate;
mod exec;
pub mod fixtures;
pub mod partialmaps;
pub mod representation;
pub mod semigroupoid;
pub mod structure;
pub mod szendrei;

pub use semigroupoid::{
    CoreError, ElementId, ElementMapping, RestrictionSemigroupoid, Semigroupoid, StarMap,
};
