//! Canonical succinct acceptors for regular languages.
//!
//! Given a regular language (as a regex or an automaton), this crate builds
//! the minimal DFA, its system of *profiles* (the atoms of the language), the
//! closure algebras generated by the residuals (join-semilattice, distributive
//! lattice, Boolean, and GF(2) vector-space closures), and from those the five
//! canonical succinct acceptors:
//!
//! * the **canonical RFSA** (join-irreducibles of the semilattice closure),
//! * the **átomaton** (atoms of the Boolean closure),
//! * the **distromaton** (join-irreducibles of the lattice closure),
//! * the **minimal xor automaton** (a GF(2) basis of the span of residuals),
//! * the **minimal xor-CABA automaton** (a generating set of the Boolean
//!   closure viewed as a GF(2) vector space).
//!
//! Every construction is verified against the input language by exact
//! equivalence checking, and the [`analysis`] module provides closure-size
//! reports, closedness checks, and a desk-scale brute-force minimality oracle.

pub mod alphabet;
pub mod analysis;
pub mod builders;
pub mod caps;
pub mod cli;
pub mod closure;
pub mod dfa;
pub mod equiv;
pub mod error;
pub mod generators;
pub mod io;
pub mod nfa;
pub mod profiles;
pub mod regex;
pub mod xfa;

mod bits;

pub use alphabet::Alphabet;
pub use caps::Caps;
pub use dfa::Dfa;
pub use equiv::{equivalent, AutRef, Equivalence};
pub use error::Error;
pub use nfa::Nfa;
pub use xfa::Xfa;

/// Result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
