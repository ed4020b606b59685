//! Deciding subalgebra independence and congruence independence of finite
//! first-order structures.
//!
//! Two subuniverses `A` and `B` of a structure are *subalgebra-independent*
//! when every pair of endomorphisms `α` of `A` and `β` of `B` extends to a
//! single endomorphism of the subuniverse they generate together. They are
//! *congruence-independent* when every pair of congruences of `A` and `B` is
//! the exact trace of one congruence of that join.

pub mod congruence;
pub mod error;
pub mod format;
pub mod generation;
pub mod independence;
pub mod morphisms;
pub mod structure;
pub mod suite;
pub mod zoo;
mod tuples;

pub use congruence::Congruence;
pub use error::{Error, Result};
pub use morphisms::{HomClass, Homomorphism, Mode};
pub use structure::{Signature, Structure, SubUniverse, Symbol};
